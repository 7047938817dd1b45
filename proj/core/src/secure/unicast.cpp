#include "congesim/secure/unicast.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "congesim/pack/connectivity.hpp"
#include "congesim/rng.hpp"

namespace congesim::secure {

namespace {

struct SendEntry {
  int round;
  net::NodeId to;
  int share;
};
struct RelayEntry {
  int round;  // inbox round the word arrives in (= the round it is forwarded)
  net::NodeId from;
  net::NodeId to;
};
struct AbsorbEntry {
  int round;
  net::NodeId from;
};

struct UniTables {
  int bits = 0;
  int shares = 0;
  bool mobile = false;
  net::NodeId src = 0;
  net::NodeId tgt = 0;
  std::vector<std::vector<SendEntry>> sends;      // per node
  std::vector<std::vector<RelayEntry>> relays;    // per node
  std::vector<std::vector<AbsorbEntry>> absorbs;  // per node (target only)
  std::vector<std::vector<net::NodeId>> key_out;  // per node: neighbors to ship a pad to
  std::vector<std::vector<net::NodeId>> key_in;   // per node: neighbors a pad arrives from
};

struct UnicastProgram : net::NodeProgram {
  std::shared_ptr<const UniTables> t;
  net::NodeContext ctx;
  std::unordered_map<net::NodeId, int> slot_of;
  std::unordered_map<net::DirEdgeId, uint64_t> pads;
  uint64_t acc = 0;
  int arrived = 0;

  explicit UnicastProgram(std::shared_ptr<const UniTables> t_) : t(std::move(t_)) {}

  void init(const net::NodeContext& c) override {
    ctx = c;
    const auto& nbr = ctx.neighbors();
    for (size_t s = 0; s < nbr.size(); ++s) slot_of[nbr[s]] = int(s);
    for (net::NodeId to : t->key_out[ctx.id]) {
      net::DirEdgeId d = ctx.graph->dir_edge_id(ctx.id, to);
      pads[d] = ctx.draw(key_tag(d, 0), t->bits);
    }
  }

  uint64_t pad_of(net::NodeId from, net::NodeId to) const {
    if (!t->mobile) return 0;
    auto it = pads.find(ctx.graph->dir_edge_id(from, to));
    return it == pads.end() ? 0 : it->second;
  }

  void on_round(int round, const net::SlotVec& in, net::SlotVec& out) override {
    const auto& nbr = ctx.neighbors();
    if (t->mobile && round == 0) {
      for (net::NodeId to : t->key_out[ctx.id])
        out[slot_of.at(to)] = net::Word{pads.at(ctx.graph->dir_edge_id(ctx.id, to)), t->bits};
      return;
    }
    if (t->mobile && round == 1) {
      for (net::NodeId from : t->key_in[ctx.id]) {
        const net::Slot& w = in[slot_of.at(from)];
        if (w) pads[ctx.graph->dir_edge_id(from, ctx.id)] = w->value;
      }
    }
    for (const SendEntry& e : t->sends[ctx.id]) {
      if (e.round != round) continue;
      uint64_t share;
      if (e.share < t->shares - 1) {
        share = ctx.draw(share_tag(e.share), t->bits);
      } else {
        share = ctx.input;
        for (int i = 0; i + 1 < t->shares; ++i) share ^= ctx.draw(share_tag(i), t->bits);
        share &= width_mask(t->bits);
      }
      out[slot_of.at(e.to)] =
          net::Word{otp_encrypt(share, pad_of(ctx.id, e.to), t->bits), t->bits};
    }
    for (const RelayEntry& e : t->relays[ctx.id]) {
      if (e.round != round) continue;
      const net::Slot& w = in[slot_of.at(e.from)];
      if (!w) continue;
      uint64_t plain = otp_decrypt(w->value, pad_of(e.from, ctx.id), t->bits);
      out[slot_of.at(e.to)] =
          net::Word{otp_encrypt(plain, pad_of(ctx.id, e.to), t->bits), t->bits};
    }
    for (const AbsorbEntry& e : t->absorbs[ctx.id]) {
      if (e.round != round) continue;
      const net::Slot& w = in[slot_of.at(e.from)];
      if (!w) continue;
      acc ^= otp_decrypt(w->value, pad_of(e.from, ctx.id), t->bits);
      ++arrived;
    }
    (void)nbr;
  }

  std::vector<uint64_t> output() const override {
    if (ctx.id == t->tgt && arrived == t->shares) return {acc & width_mask(t->bits)};
    return {};
  }
};

UnicastPlan build(const net::Graph& g, net::NodeId src, net::NodeId tgt, int bits, int f,
                  bool mobile) {
  if (bits < 1 || bits > 64) throw std::invalid_argument("secure unicast: bits must be in 1..64");
  if (f < 0) throw std::invalid_argument("secure unicast: f must be >= 0");
  if (src == tgt) throw std::invalid_argument("secure unicast: src == tgt");
  auto all = pack::edge_disjoint_paths(g, src, tgt);
  if (int(all.size()) < f + 1)
    throw std::invalid_argument("secure unicast: connectivity below f + 1");
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  all.resize(f + 1);

  auto t = std::make_shared<UniTables>();
  t->bits = bits;
  t->shares = f + 1;
  t->mobile = mobile;
  t->src = src;
  t->tgt = tgt;
  t->sends.resize(g.node_count());
  t->relays.resize(g.node_count());
  t->absorbs.resize(g.node_count());
  t->key_out.resize(g.node_count());
  t->key_in.resize(g.node_count());

  int shift = mobile ? 1 : 0;
  int lmax = 0;
  UnicastPlan plan;
  plan.paths = all;
  for (int i = 0; i < f + 1; ++i) {
    const auto& p = all[i];
    int len = int(p.size()) - 1;
    lmax = std::max(lmax, len);
    t->sends[p[0]].push_back({shift, p[1], i});
    for (int h = 1; h < len; ++h) t->relays[p[h]].push_back({h + shift, p[h - 1], p[h + 1]});
    t->absorbs[p[len]].push_back({len + shift, p[len - 1]});
    if (mobile)
      for (int h = 0; h < len; ++h) {
        t->key_out[p[h]].push_back(p[h + 1]);
        t->key_in[p[h + 1]].push_back(p[h]);
      }
  }

  plan.rounds = lmax + 1 + shift;
  plan.bits = bits;
  plan.src = src;
  plan.tgt = tgt;
  plan.f = f;
  plan.mobile = mobile;
  plan.usage.assign(plan.rounds, {});
  for (const auto& p : all) {
    int len = int(p.size()) - 1;
    for (int h = 0; h < len; ++h) {
      net::DirEdgeId d = g.dir_edge_id(p[h], p[h + 1]);
      plan.usage[h + shift].push_back(d);
      if (mobile) plan.usage[0].push_back(d);
    }
  }
  plan.factory = [t](net::NodeId) { return std::make_unique<UnicastProgram>(t); };
  return plan;
}

}  // namespace

uint64_t share_tag(int i) { return mix64(0x73686172 ^ uint64_t(i)); }

UnicastPlan secure_unicast_static(const net::Graph& g, net::NodeId src, net::NodeId tgt, int bits,
                                  int f) {
  return build(g, src, tgt, bits, f, false);
}

UnicastPlan mobile_secure_unicast(const net::Graph& g, net::NodeId src, net::NodeId tgt, int bits,
                                  int f) {
  return build(g, src, tgt, bits, f, true);
}

MulticastResult mobile_secure_multicast(const net::Graph& g,
                                        const std::vector<MulticastInstance>& instances, int bits,
                                        int f, const net::Adversary& adversary, uint64_t seed) {
  std::vector<net::SubProtocol> protos;
  std::vector<net::NodeId> tgts;
  for (const auto& inst : instances) {
    UnicastPlan plan = mobile_secure_unicast(g, inst.src, inst.tgt, bits, f);
    net::SubProtocol sp;
    sp.factory = plan.factory;
    sp.inputs.assign(g.node_count(), 0);
    sp.inputs[inst.src] = inst.msg;
    sp.rounds = plan.rounds;
    sp.usage = plan.usage;
    protos.push_back(std::move(sp));
    tgts.push_back(inst.tgt);
  }
  MulticastResult res;
  res.run = net::run_random_delay(g, protos, adversary, bits, seed);
  for (size_t i = 0; i < instances.size(); ++i)
    res.target_outputs.push_back(res.run.outputs[i][tgts[i]]);
  return res;
}

}  // namespace congesim::secure
