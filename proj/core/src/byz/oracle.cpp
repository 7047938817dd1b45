#include "congesim/byz/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "congesim/rng.hpp"

namespace congesim::byz {

namespace {

// Slot table: owner[edge * eta + slot] = protocol index, -1 when unused.
struct SlotTable {
  int eta = 1;
  int max_rounds = 0;
  std::vector<int> owner;

  int owner_at(net::EdgeId e, int slot) const { return owner[size_t(e) * eta + slot]; }
};

SlotTable build_slots(const net::Graph& g, const std::vector<OracleProtocol>& protos) {
  std::vector<std::vector<int>> users(g.edge_count());
  for (size_t p = 0; p < protos.size(); ++p) {
    if (protos[p].rounds <= 0)
      throw std::invalid_argument("schedule_rs: protocol rounds must be positive");
    if (protos[p].edges.empty())
      throw std::invalid_argument("schedule_rs: protocol has no edges");
    std::vector<net::EdgeId> seen;
    for (net::EdgeId e : protos[p].edges) {
      if (e < 0 || e >= g.edge_count())
        throw std::invalid_argument("schedule_rs: protocol edge outside the graph");
      if (std::find(seen.begin(), seen.end(), e) != seen.end())
        throw std::invalid_argument("schedule_rs: protocol lists an edge twice");
      seen.push_back(e);
      users[e].push_back(int(p));
    }
  }
  SlotTable t;
  for (const auto& u : users) t.eta = std::max(t.eta, int(u.size()));
  for (const auto& p : protos) t.max_rounds = std::max(t.max_rounds, p.rounds);
  t.owner.assign(size_t(g.edge_count()) * t.eta, -1);
  for (net::EdgeId e = 0; e < g.edge_count(); ++e)
    for (size_t s = 0; s < users[e].size(); ++s) t.owner[size_t(e) * t.eta + s] = users[e][s];
  return t;
}

// Sends pseudorandom filler bits on every slot its protocol owns; reads
// nothing. Content never feeds outputs, so corrupting it only moves the
// tally.
class TrafficProgram : public net::NodeProgram {
 public:
  TrafficProgram(const SlotTable* slots, const std::vector<OracleProtocol>* protos,
                 uint64_t seed)
      : slots_(slots), protos_(protos), prf_{seed} {}

  void init(const net::NodeContext& ctx) override { ctx_ = ctx; }

  void on_round(int round, const net::SlotVec&, net::SlotVec& out) override {
    if (round >= slots_->max_rounds * slots_->eta) return;  // dilation slack
    int phase = round / slots_->eta;
    int slot = round % slots_->eta;
    const auto& nbrs = ctx_.graph->neighbors(ctx_.id);
    for (size_t s = 0; s < nbrs.size(); ++s) {
      net::EdgeId e = ctx_.graph->edge_id(ctx_.id, nbrs[s]);
      int p = slots_->owner_at(e, slot);
      if (p < 0 || phase >= (*protos_)[p].rounds) continue;
      out[s] = net::Word{prf_.at(uint64_t(p), uint64_t(2 * e + (ctx_.id < nbrs[s] ? 0 : 1)),
                                 uint64_t(round)) &
                             1,
                         1};
    }
  }

  std::vector<uint64_t> output() const override { return {}; }

 private:
  const SlotTable* slots_;
  const std::vector<OracleProtocol>* protos_;
  Prf prf_;
  net::NodeContext ctx_;
};

class TallyObserver : public net::RoundObserver {
 public:
  TallyObserver(const SlotTable* slots, const std::vector<OracleProtocol>* protos,
                ScheduleResult* res)
      : slots_(slots), protos_(protos), res_(res) {}

  void after_round(int round, const std::vector<net::DirEdgeId>& corrupted) override {
    int phase = round / slots_->eta;
    int slot = round % slots_->eta;
    for (net::DirEdgeId d : corrupted) {
      int p = round < slots_->max_rounds * slots_->eta
                  ? slots_->owner_at(net::EdgeId(d / 2), slot)
                  : -1;
      if (p >= 0 && phase < (*protos_)[p].rounds) {
        ++res_->tally[p];
        ++res_->attributed;
      } else {
        ++res_->stray;
      }
    }
  }

 private:
  const SlotTable* slots_;
  const std::vector<OracleProtocol>* protos_;
  ScheduleResult* res_;
};

}  // namespace

ScheduleResult run_schedule_rs(const net::Graph& g,
                               const std::vector<OracleProtocol>& protocols,
                               const ByzConstants& cb, const net::Adversary& adversary,
                               uint64_t seed) {
  if (protocols.empty()) throw std::invalid_argument("schedule_rs: no protocols");
  if (cb.theta <= 1) throw std::invalid_argument("schedule_rs: theta must exceed 1");
  if (cb.theta_time < 1) throw std::invalid_argument("schedule_rs: theta_time must be >= 1");
  SlotTable slots = build_slots(g, protocols);

  ScheduleResult res;
  res.eta = slots.eta;
  res.scheduled_rounds = slots.max_rounds * slots.eta;
  res.total_rounds = cb.theta_time * res.scheduled_rounds;
  res.tally.assign(protocols.size(), 0);
  res.failed.assign(protocols.size(), false);

  std::vector<std::unique_ptr<net::NodeProgram>> programs;
  for (net::NodeId v = 0; v < g.node_count(); ++v)
    programs.push_back(std::make_unique<TrafficProgram>(&slots, &protocols, seed));

  TallyObserver tally(&slots, &protocols, &res);
  net::RoundObserver* obs[] = {&tally};
  net::RunConfig cfg;
  cfg.rounds = res.total_rounds;
  cfg.bandwidth = 1;
  cfg.seed = seed;
  res.execution =
      net::run(g, programs, std::vector<uint64_t>(g.node_count(), 0), adversary, cfg, obs);

  Prf garbage{mix64(seed ^ 0x6f7261636c65ull)};
  res.outputs.resize(protocols.size());
  for (size_t p = 0; p < protocols.size(); ++p) {
    const OracleProtocol& proto = protocols[p];
    // Fails strictly above a 1/(theta*m) fraction of 2*m*rounds words.
    res.failed[p] = res.tally[p] * cb.theta > 2 * (long long)proto.rounds;
    if (res.failed[p]) ++res.failed_count;
    res.outputs[p].resize(g.node_count());
    uint64_t mask = proto.output_bits >= 64 ? ~uint64_t(0)
                                            : ((uint64_t(1) << proto.output_bits) - 1);
    for (net::NodeId v = 0; v < g.node_count(); ++v) {
      std::vector<uint64_t> out =
          v < net::NodeId(proto.clean_outputs.size()) ? proto.clean_outputs[v]
                                                      : std::vector<uint64_t>{};
      if (res.failed[p]) {
        for (size_t i = 0; i < out.size(); ++i)
          out[i] = garbage.at(uint64_t(p), uint64_t(v), uint64_t(i)) & mask;
        if (adversary.strategy) adversary.strategy->targeted_oracle_output(int(p), v, out);
      }
      res.outputs[p][v] = std::move(out);
    }
  }
  return res;
}

}  // namespace congesim::byz
