#include "congesim/secure/static_to_mobile.hpp"

#include <memory>
#include <stdexcept>

namespace congesim::secure {

namespace {

// Shared, precomputed view of the traffic declaration.
struct TrafficPlan {
  std::vector<int> uses;                       // per directed edge
  std::vector<std::vector<int>> key_index;     // per directed edge, per inner round; -1 undeclared
  int r = 0;
};

TrafficPlan plan_traffic(const net::Graph& g, int r, const TrafficSchedule& traffic) {
  TrafficPlan tp;
  tp.r = r;
  tp.uses.assign(g.dir_edge_count(), 0);
  tp.key_index.assign(g.dir_edge_count(), std::vector<int>(r, -1));
  if (traffic.empty()) {
    for (int d = 0; d < g.dir_edge_count(); ++d) {
      tp.uses[d] = r;
      for (int i = 0; i < r; ++i) tp.key_index[d][i] = i;
    }
    return tp;
  }
  if (int(traffic.size()) != r)
    throw std::invalid_argument("traffic schedule: one entry per wrapped round required");
  for (int i = 0; i < r; ++i)
    for (net::DirEdgeId d : traffic[i]) {
      if (d < 0 || d >= g.dir_edge_count())
        throw std::invalid_argument("traffic schedule: directed edge out of range");
      if (tp.key_index[d][i] >= 0)
        throw std::invalid_argument("traffic schedule: duplicate declaration");
      tp.key_index[d][i] = tp.uses[d]++;
    }
  return tp;
}

struct MobileWrapper : net::NodeProgram {
  SecureParams p;
  int ell;
  std::shared_ptr<const TrafficPlan> plan;
  std::unique_ptr<net::NodeProgram> inner;
  KeyExchange kx;
  net::NodeContext ctx;
  std::vector<net::DirEdgeId> in_dir_, out_dir_;  // per slot

  MobileWrapper(SecureParams p_, std::shared_ptr<const TrafficPlan> plan_,
                std::unique_ptr<net::NodeProgram> inner_)
      : p(p_),
        ell(exchange_rounds(p_.r, p_.t)),
        plan(std::move(plan_)),
        inner(std::move(inner_)),
        kx(exchange_rounds(p_.r, p_.t), p_.t, p_.key_bits) {}

  void init(const net::NodeContext& c) override {
    ctx = c;
    kx.init(ctx, plan->uses);
    const auto& nbr = ctx.neighbors();
    in_dir_.resize(nbr.size());
    out_dir_.resize(nbr.size());
    for (size_t s = 0; s < nbr.size(); ++s) {
      out_dir_[s] = ctx.graph->dir_edge_id(ctx.id, nbr[s]);
      in_dir_[s] = ctx.graph->dir_edge_id(nbr[s], ctx.id);
    }
  }

  void on_round(int round, const net::SlotVec& in, net::SlotVec& out) override {
    if (round < ell) {
      kx.on_round(round, in, out);
      return;
    }
    int i = round - ell;  // wrapped protocol's round
    net::SlotVec inner_in(in.size());
    if (i == 0) {
      kx.finish(in);
      inner->init(ctx);
    } else {
      for (size_t s = 0; s < in.size(); ++s) {
        if (!in[s]) continue;
        int h = plan->key_index[in_dir_[s]][i - 1];
        if (h < 0) throw std::runtime_error("mobile compile: word outside declared traffic");
        inner_in[s] =
            net::Word{otp_decrypt(in[s]->value, kx.recv_keys(int(s))[h], in[s]->width),
                      in[s]->width};
      }
    }
    net::SlotVec raw(out.size());
    inner->on_round(i, inner_in, raw);
    for (size_t s = 0; s < out.size(); ++s) {
      if (!raw[s]) continue;
      if (raw[s]->width > p.key_bits)
        throw std::runtime_error("mobile compile: message wider than the key");
      int h = plan->key_index[out_dir_[s]][i];
      if (h < 0) throw std::runtime_error("mobile compile: send outside declared traffic");
      out[s] = net::Word{otp_encrypt(raw[s]->value, kx.send_keys(int(s))[h], raw[s]->width),
                        raw[s]->width};
    }
  }

  std::vector<uint64_t> output() const override { return inner->output(); }
};

}  // namespace

MobileCompiled compile_static_to_mobile(const net::ProgramFactory& inner, const SecureParams& p,
                                        const net::Graph& g, const TrafficSchedule& traffic) {
  if (p.r < 1) throw std::invalid_argument("mobile compile: need r >= 1");
  auto plan = std::make_shared<const TrafficPlan>(plan_traffic(g, p.r, traffic));
  MobileCompiled out;
  out.rounds = compiled_rounds(p.r, p.t);
  out.exchange_rounds = exchange_rounds(p.r, p.t);
  out.f_mobile = mobile_budget(p.f, p.r, p.t);
  out.key_bits = p.key_bits;
  out.factory = [inner, p, plan](net::NodeId v) {
    return std::make_unique<MobileWrapper>(p, plan, inner(v));
  };
  return out;
}

}  // namespace congesim::secure
