#include "congesim/secure/broadcast.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "congesim/rng.hpp"

namespace congesim::secure {

namespace {

struct RecvEntry {
  int p;  // payload-phase round whose inbox holds the share
  net::NodeId from;
  int tree;
  int h;  // key index on the incoming direction
};
struct SendEntry {
  int p;
  net::NodeId to;
  int tree;
  int h;
};

struct BcastTables {
  int bits = 0;
  int k = 0;
  int ell = 0;
  int t = 0;
  int total_phase = 0;
  net::NodeId src = 0;
  std::vector<int> uses;  // per directed edge
  std::vector<std::vector<RecvEntry>> recvs;
  std::vector<std::vector<SendEntry>> sends;
};

struct BroadcastProgram : net::NodeProgram {
  std::shared_ptr<const BcastTables> tb;
  KeyExchange kx;
  net::NodeContext ctx;
  std::unordered_map<net::NodeId, int> slot_of;
  std::vector<std::optional<uint64_t>> share;

  explicit BroadcastProgram(std::shared_ptr<const BcastTables> tb_)
      : tb(std::move(tb_)), kx(tb->ell, tb->t, tb->bits) {}

  void init(const net::NodeContext& c) override {
    ctx = c;
    kx.init(ctx, tb->uses);
    const auto& nbr = ctx.neighbors();
    for (size_t s = 0; s < nbr.size(); ++s) slot_of[nbr[s]] = int(s);
    share.assign(tb->k, std::nullopt);
    if (ctx.id == tb->src) {
      uint64_t rest = 0;
      for (int i = 0; i + 1 < tb->k; ++i) {
        uint64_t w = ctx.draw(broadcast_share_tag(i), tb->bits);
        share[i] = w;
        rest ^= w;
      }
      share[tb->k - 1] = (ctx.input ^ rest) & width_mask(tb->bits);
    }
  }

  void on_round(int round, const net::SlotVec& in, net::SlotVec& out) override {
    if (round < tb->ell) {
      kx.on_round(round, in, out);
      return;
    }
    int p = round - tb->ell;
    if (p == 0) kx.finish(in);
    for (const RecvEntry& e : tb->recvs[ctx.id]) {
      if (e.p != p) continue;
      int s = slot_of.at(e.from);
      const net::Slot& w = in[s];
      if (!w) continue;
      share[e.tree] = otp_decrypt(w->value, kx.recv_keys(s)[e.h], tb->bits);
    }
    for (const SendEntry& e : tb->sends[ctx.id]) {
      if (e.p != p) continue;
      if (!share[e.tree]) throw std::runtime_error("broadcast: share not yet available");
      int s = slot_of.at(e.to);
      out[s] = net::Word{otp_encrypt(*share[e.tree], kx.send_keys(s)[e.h], tb->bits), tb->bits};
    }
  }

  std::vector<uint64_t> output() const override {
    if (ctx.id == tb->src) return {ctx.input & width_mask(tb->bits)};
    uint64_t acc = 0;
    for (const auto& s : share) {
      if (!s) return {};
      acc ^= *s;
    }
    return {acc & width_mask(tb->bits)};
  }
};

}  // namespace

uint64_t broadcast_share_tag(int tree) { return mix64(0x62636173 ^ uint64_t(tree)); }

BroadcastPlan mobile_broadcast(const net::Graph& g, net::NodeId src, int bits,
                               const pack::TreePacking& packing, int f, int t) {
  int k = int(packing.trees.size());
  if (bits < 1 || bits > 32) throw std::invalid_argument("broadcast: bits must be in 1..32");
  if (f < 0 || t < 0) throw std::invalid_argument("broadcast: f and t must be >= 0");
  if (k <= f) throw std::invalid_argument("broadcast: need k >= f + 1 trees");
  if (packing.root != src) throw std::invalid_argument("broadcast: packing not rooted at src");
  if (g.node_count() < 2) throw std::invalid_argument("broadcast: nothing to broadcast to");
  for (const auto& tr : packing.trees)
    if (!pack::is_spanning_tree(g, tr)) throw std::invalid_argument("broadcast: invalid tree");

  // Depth per node per tree and greedy start offsets keeping every
  // (direction, phase round) pair unique.
  std::vector<std::vector<int>> depth(k);
  std::vector<int> start(k, 0);
  std::set<std::pair<net::DirEdgeId, int>> claimed;
  for (int i = 0; i < k; ++i) {
    const auto& tr = packing.trees[i];
    depth[i].assign(g.node_count(), 0);
    auto kids = tr.children();
    std::vector<net::NodeId> order{tr.root};
    for (size_t q = 0; q < order.size(); ++q)
      for (net::NodeId c : kids[order[q]]) {
        depth[i][c] = depth[i][order[q]] + 1;
        order.push_back(c);
      }
    auto clashes = [&](int st) {
      for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v) {
        if (v == tr.root) continue;
        net::DirEdgeId d = g.dir_edge_id(tr.parent[v], v);
        if (claimed.count({d, st + depth[i][v] - 1})) return true;
      }
      return false;
    };
    while (clashes(start[i])) ++start[i];
    for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v)
      if (v != tr.root)
        claimed.insert({g.dir_edge_id(tr.parent[v], v), start[i] + depth[i][v] - 1});
  }

  // Key index = rank of the use among all sends on its direction, by phase
  // round; both endpoints consume the exchange stream in that order.
  std::map<net::DirEdgeId, std::vector<int>> use_rounds;
  for (int i = 0; i < k; ++i)
    for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v)
      if (v != packing.trees[i].root)
        use_rounds[g.dir_edge_id(packing.trees[i].parent[v], v)].push_back(start[i] +
                                                                           depth[i][v] - 1);
  for (auto& [d, rs] : use_rounds) std::sort(rs.begin(), rs.end());

  auto tb = std::make_shared<BcastTables>();
  tb->bits = bits;
  tb->k = k;
  tb->t = t;
  tb->src = src;
  tb->uses.assign(g.dir_edge_count(), 0);
  tb->recvs.resize(g.node_count());
  tb->sends.resize(g.node_count());
  int max_uses = 0;
  for (const auto& [d, rs] : use_rounds) {
    tb->uses[d] = int(rs.size());
    max_uses = std::max(max_uses, int(rs.size()));
  }
  tb->ell = exchange_rounds(max_uses, t);

  int total_phase = 0;
  for (int i = 0; i < k; ++i) {
    const auto& tr = packing.trees[i];
    for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v) {
      if (v == tr.root) continue;
      net::DirEdgeId d = g.dir_edge_id(tr.parent[v], v);
      int p_send = start[i] + depth[i][v] - 1;
      const auto& rs = use_rounds.at(d);
      int h = int(std::lower_bound(rs.begin(), rs.end(), p_send) - rs.begin());
      tb->sends[tr.parent[v]].push_back({p_send, v, i, h});
      tb->recvs[v].push_back({p_send + 1, tr.parent[v], i, h});
      total_phase = std::max(total_phase, p_send + 1);
    }
  }
  tb->total_phase = total_phase;

  BroadcastPlan plan;
  plan.rounds = tb->ell + total_phase + 1;
  plan.exchange_rounds = tb->ell;
  plan.k = k;
  plan.bits = bits;
  plan.tree_start = start;
  plan.max_edge_keys = max_uses;
  plan.usage.assign(total_phase + 1, {});
  for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v)
    for (const SendEntry& e : tb->sends[v])
      plan.usage[e.p].push_back(g.dir_edge_id(v, e.to));
  plan.factory = [tb](net::NodeId) { return std::make_unique<BroadcastProgram>(tb); };
  return plan;
}

}  // namespace congesim::secure
