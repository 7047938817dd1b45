#include "congesim/net/random_delay.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace congesim::net {

namespace {

// (dir_edge, window) -> ordered protocol list.
struct Assignment {
  std::map<std::pair<DirEdgeId, int>, std::vector<int>> slots;
  int width = 1;

  // sub-slot of protocol p on edge d in window w, or -1.
  int subslot(DirEdgeId d, int w, int p) const {
    auto it = slots.find({d, w});
    if (it == slots.end()) return -1;
    for (size_t i = 0; i < it->second.size(); ++i)
      if (it->second[i] == p) return int(i);
    return -1;
  }
  // protocol assigned to (d, w, sub-slot), or -1.
  int owner(DirEdgeId d, int w, int k) const {
    auto it = slots.find({d, w});
    if (it == slots.end() || k >= int(it->second.size())) return -1;
    return it->second[k];
  }
};

Assignment build_assignment(const std::vector<SubProtocol>& protos,
                            const std::vector<int>& delays) {
  Assignment a;
  for (int p = 0; p < int(protos.size()); ++p) {
    for (int r = 0; r < protos[p].rounds; ++r) {
      int w = delays[p] + r;
      if (r < int(protos[p].usage.size()))
        for (DirEdgeId d : protos[p].usage[r]) a.slots[{d, w}].push_back(p);
    }
  }
  for (auto& [key, list] : a.slots) {
    std::sort(list.begin(), list.end());
    a.width = std::max(a.width, int(list.size()));
  }
  return a;
}

// Forwards draws into a per-protocol tag namespace.
class ProtoRandomness : public RandomnessProvider {
 public:
  ProtoRandomness(RandomnessProvider* base, uint64_t proto_tag)
      : base_(base), tag_(proto_tag) {}
  uint64_t draw(NodeId node, uint64_t tag, int bits) override {
    return base_->draw(node, mix64(tag_ ^ mix64(tag)), bits);
  }

 private:
  RandomnessProvider* base_;
  uint64_t tag_;
};

class CompositeProgram : public NodeProgram {
 public:
  CompositeProgram(NodeId v, const std::vector<SubProtocol>* protos,
                   const std::vector<int>* delays, const Assignment* assign, int width)
      : protos_(protos), delays_(delays), assign_(assign), width_(width) {
    for (const auto& p : *protos) subs_.push_back(p.factory(v));
  }

  void init(const NodeContext& ctx) override {
    ctx_ = ctx;
    proto_rand_.clear();
    sub_ctx_.clear();
    for (int p = 0; p < int(subs_.size()); ++p) {
      proto_rand_.push_back(std::make_unique<ProtoRandomness>(ctx.random, 0x70726f74 + p));
      NodeContext c = ctx;
      c.input = (*protos_)[p].inputs[ctx.id];
      c.random = proto_rand_.back().get();
      sub_ctx_.push_back(c);
      subs_[p]->init(sub_ctx_[p]);
      pending_in_.emplace_back(ctx.neighbors().size());
      next_in_.emplace_back(ctx.neighbors().size());
    }
    queued_.assign(ctx.neighbors().size(), {});
  }

  void on_round(int round, const SlotVec& in, SlotVec& out) override {
    const auto& nbrs = ctx_.neighbors();
    int w = round / width_, k = round % width_;

    // Route words delivered at the previous boundary to their sub-protocols.
    int prev = round - 1;
    if (prev >= 0) {
      int pw = prev / width_, pk = prev % width_;
      for (size_t i = 0; i < nbrs.size(); ++i) {
        if (!in[i]) continue;
        DirEdgeId d = ctx_.graph->dir_edge_id(nbrs[i], ctx_.id);
        int p = assign_->owner(d, pw, pk);
        if (p < 0) continue;  // stray word (adversarial injection on idle slot)
        next_in_[p][i] = in[i];
      }
    }

    if (k == 0) {
      // New window: step every protocol due here with last window's words.
      for (int p = 0; p < int(subs_.size()); ++p) {
        int r = w - (*delays_)[p];
        if (r < 0 || r >= (*protos_)[p].rounds) continue;
        if (r > 0) {
          pending_in_[p] = next_in_[p];
          std::fill(next_in_[p].begin(), next_in_[p].end(), std::nullopt);
        }
        SlotVec sub_out(nbrs.size());
        subs_[p]->on_round(r, pending_in_[p], sub_out);
        std::fill(pending_in_[p].begin(), pending_in_[p].end(), std::nullopt);
        for (size_t i = 0; i < nbrs.size(); ++i) {
          if (!sub_out[i]) continue;
          DirEdgeId d = ctx_.graph->dir_edge_id(ctx_.id, nbrs[i]);
          int slot = assign_->subslot(d, w, p);
          if (slot < 0)
            throw std::runtime_error("random-delay: protocol sent on an undeclared edge");
          queued_[i].push_back({slot, *sub_out[i]});
        }
      }
    }

    for (size_t i = 0; i < nbrs.size(); ++i) {
      for (auto it = queued_[i].begin(); it != queued_[i].end(); ++it) {
        if (it->first == k) {
          out[i] = it->second;
          queued_[i].erase(it);
          break;
        }
      }
    }
  }

  std::vector<uint64_t> output() const override {
    std::vector<uint64_t> flat;
    for (const auto& s : subs_) {
      auto o = s->output();
      flat.push_back(o.size());
      flat.insert(flat.end(), o.begin(), o.end());
    }
    return flat;
  }

  std::vector<std::vector<uint64_t>> sub_outputs() const {
    std::vector<std::vector<uint64_t>> outs;
    for (const auto& s : subs_) outs.push_back(s->output());
    return outs;
  }

 private:
  const std::vector<SubProtocol>* protos_;
  const std::vector<int>* delays_;
  const Assignment* assign_;
  int width_;
  NodeContext ctx_;
  std::vector<std::unique_ptr<NodeProgram>> subs_;
  std::vector<std::unique_ptr<ProtoRandomness>> proto_rand_;
  std::vector<NodeContext> sub_ctx_;
  std::vector<SlotVec> pending_in_, next_in_;
  std::vector<std::vector<std::pair<int, Word>>> queued_;  // per neighbor
};

}  // namespace

DelaySchedule plan_random_delay(const Graph& graph, const std::vector<SubProtocol>& protos,
                                uint64_t seed, int delay_range) {
  DelaySchedule s;
  std::vector<int> edge_total(graph.dir_edge_count(), 0);
  for (const auto& p : protos) {
    s.max_dilation = std::max(s.max_dilation, p.rounds);
    for (const auto& per_round : p.usage)
      for (DirEdgeId d : per_round) ++edge_total[d];
  }
  for (int t : edge_total) s.declared_congestion = std::max(s.declared_congestion, t);
  if (delay_range < 0) delay_range = std::max(1, s.declared_congestion);

  Prf prf{seed};
  s.delays.resize(protos.size());
  for (size_t p = 0; p < protos.size(); ++p)
    s.delays[p] = int(prf.at(0x646c79, p) % uint64_t(delay_range + 1));

  Assignment a = build_assignment(protos, s.delays);
  s.window_width = a.width;
  s.windows = 0;
  for (size_t p = 0; p < protos.size(); ++p)
    s.windows = std::max(s.windows, s.delays[p] + protos[p].rounds);
  s.windows += 1;  // final boundary so last words are routed
  s.total_rounds = s.windows * s.window_width;
  return s;
}

RandomDelayResult run_random_delay(const Graph& graph, const std::vector<SubProtocol>& protos,
                                   const Adversary& adversary, int bandwidth, uint64_t seed,
                                   int delay_range) {
  for (const auto& p : protos)
    if (int(p.inputs.size()) != graph.node_count())
      throw std::invalid_argument("random-delay: sub-protocol inputs size mismatch");

  RandomDelayResult res;
  res.schedule = plan_random_delay(graph, protos, seed, delay_range);
  Assignment assign = build_assignment(protos, res.schedule.delays);

  std::vector<std::unique_ptr<NodeProgram>> programs;
  for (NodeId v = 0; v < graph.node_count(); ++v)
    programs.push_back(std::make_unique<CompositeProgram>(v, &protos, &res.schedule.delays,
                                                          &assign, res.schedule.window_width));
  RunConfig cfg;
  cfg.rounds = res.schedule.total_rounds;
  cfg.bandwidth = bandwidth;
  cfg.seed = seed;
  std::vector<uint64_t> inputs(graph.node_count(), 0);
  res.execution = run(graph, programs, inputs, adversary, cfg);

  res.outputs.assign(protos.size(), {});
  for (size_t p = 0; p < protos.size(); ++p) res.outputs[p].resize(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    auto subs = static_cast<CompositeProgram*>(programs[v].get())->sub_outputs();
    for (size_t p = 0; p < protos.size(); ++p) res.outputs[p][v] = subs[p];
  }
  return res;
}

}  // namespace congesim::net
