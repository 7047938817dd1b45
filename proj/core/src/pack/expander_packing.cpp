#include "congesim/pack/expander_packing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace congesim::pack {

namespace {

constexpr uint64_t kColorTag = 0x45585043;  // per-edge color draws

int bits_for(int n) {
  int b = 1;
  while ((1 << b) < n) ++b;
  return b;
}

struct ExpanderProgram : net::NodeProgram {
  int k, z, color_bits, id_bits;
  net::NodeContext ctx;
  std::vector<int> edge_color;     // per incident slot, -1 unknown
  std::vector<uint64_t> best;      // per color, max id heard
  std::vector<net::NodeId> par;    // per color, -1 none

  ExpanderProgram(int k_, int z_, int cb, int ib) : k(k_), z(z_), color_bits(cb), id_bits(ib) {}

  void init(const net::NodeContext& c) override {
    ctx = c;
    edge_color.assign(ctx.neighbors().size(), -1);
    best.assign(k, uint64_t(ctx.id));
    par.assign(k, -1);
  }

  void absorb(const net::SlotVec& in) {
    const auto& nbr = ctx.neighbors();
    for (size_t s = 0; s < nbr.size(); ++s) {
      if (!in[s] || edge_color[s] < 0) continue;
      int c = edge_color[s];
      if (in[s]->value > best[c]) {
        best[c] = in[s]->value;
        par[c] = nbr[s];
      }
    }
  }

  void on_round(int round, const net::SlotVec& in, net::SlotVec& out) override {
    const auto& nbr = ctx.neighbors();
    if (round == 0) {
      for (size_t s = 0; s < nbr.size(); ++s) {
        if (ctx.id < nbr[s]) continue;  // higher endpoint samples
        int e = ctx.graph->edge_id(ctx.id, nbr[s]);
        int c = int(ctx.draw(kColorTag + uint64_t(e), 62) % uint64_t(k));
        edge_color[s] = c;
        out[s] = net::Word{uint64_t(c), color_bits};
      }
      return;
    }
    if (round == 1) {
      // colors from higher-id endpoints; anything the adversary mangled is
      // folded back into [k), an absent word leaves the edge colorless
      for (size_t s = 0; s < nbr.size(); ++s)
        if (nbr[s] > ctx.id && in[s]) edge_color[s] = int(in[s]->value % uint64_t(k));
    } else {
      absorb(in);
    }
    if (round <= z) {
      for (size_t s = 0; s < nbr.size(); ++s)
        if (edge_color[s] >= 0) out[s] = net::Word{best[edge_color[s]], id_bits};
    }
  }

  std::vector<uint64_t> output() const override {
    std::vector<uint64_t> enc(k, 0);
    for (int c = 0; c < k; ++c) {
      if (par[c] >= 0)
        enc[c] = uint64_t(par[c]) + 2;
      else if (best[c] == uint64_t(ctx.id))
        enc[c] = 1;  // local maximum: claims the root
    }
    return enc;
  }
};

}  // namespace

ExpanderPackingProtocol expander_weak_packing(const net::Graph& g, int f, double phi,
                                              uint64_t seed) {
  if (phi <= 0) throw std::invalid_argument("expander packing: need phi > 0");
  if (f < 0) throw std::invalid_argument("expander packing: need f >= 0");
  (void)seed;  // randomness flows through the engine's provider
  int n = g.node_count();
  int z = int(std::ceil(3.0 * 4.0 * std::log2(std::max(2, n)) / phi));
  int k = std::max(1, 20 * f * z);
  return weak_packing_protocol(g, k, z);
}

ExpanderPackingProtocol weak_packing_protocol(const net::Graph& g, int k, int z) {
  if (k < 1 || z < 1) throw std::invalid_argument("weak packing: need k, z >= 1");
  ExpanderPackingProtocol p;
  p.k = k;
  p.z = z;
  p.rounds = z + 2;
  p.depth_bound = z;
  int cb = bits_for(k), ib = bits_for(g.node_count());
  p.bandwidth = std::max({cb, ib, 1});
  p.factory = [k, z, cb, ib](net::NodeId) {
    return std::make_unique<ExpanderProgram>(k, z, cb, ib);
  };
  return p;
}

WeakTreePacking assemble_weak_packing(const net::Graph& g, const ExpanderPackingProtocol& proto,
                                      const std::vector<std::vector<uint64_t>>& outputs) {
  int n = g.node_count();
  if (int(outputs.size()) != n)
    throw std::invalid_argument("weak packing assembly: one output vector per node required");
  WeakTreePacking wp;
  wp.root = n - 1;
  wp.depth_bound = proto.depth_bound;
  for (int c = 0; c < proto.k; ++c) {
    RootedTree t;
    t.root = wp.root;
    t.parent.assign(n, -1);
    for (net::NodeId v = 0; v < n; ++v) {
      if (int(outputs[v].size()) != proto.k)
        throw std::invalid_argument("weak packing assembly: output arity mismatch");
      uint64_t enc = outputs[v][c];
      t.parent[v] = enc >= 2 ? net::NodeId(enc - 2) : -1;
    }
    wp.subgraphs.push_back(std::move(t));
  }
  return revalidate_weak(g, std::move(wp));
}

}  // namespace congesim::pack
