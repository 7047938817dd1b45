#include "congesim/byz/mismatch.hpp"

#include <algorithm>
#include <stdexcept>

#include "congesim/byz/subgraph.hpp"

namespace congesim::byz {

int id_bits_for(int n) {
  int b = 1;
  while ((1 << b) < n) ++b;
  return b;
}

uint64_t pack_wire(uint64_t payload, net::NodeId u, net::NodeId v, int id_bits) {
  if (payload >> (64 - 2 * id_bits)) throw std::invalid_argument("pack_wire: payload too wide");
  return (payload << (2 * id_bits)) | (uint64_t(u) << id_bits) | uint64_t(v);
}

uint64_t unpack_payload(uint64_t wire, int id_bits) { return wire >> (2 * id_bits); }

net::NodeId unpack_sender(uint64_t wire, int id_bits) {
  return net::NodeId((wire >> id_bits) & ((uint64_t(1) << id_bits) - 1));
}

net::NodeId unpack_receiver(uint64_t wire, int id_bits) {
  return net::NodeId(wire & ((uint64_t(1) << id_bits) - 1));
}

int MismatchState::true_mismatches() const {
  int out = 0;
  for (size_t d = 0; d < sent.size(); ++d)
    if (sent[d] != est[d]) ++out;
  return out;
}

std::vector<sketch::SignedStream> mismatch_streams(const net::Graph& g,
                                                   const MismatchState& st) {
  if (int(st.sent.size()) != g.dir_edge_count() || int(st.est.size()) != g.dir_edge_count())
    throw std::invalid_argument("mismatch_streams: state size differs from the graph");
  std::vector<sketch::SignedStream> streams(g.node_count());
  for (net::DirEdgeId d = 0; d < g.dir_edge_count(); ++d) {
    streams[g.dir_source(d)].push_back({st.sent[d], +1});
    streams[g.dir_target(d)].push_back({st.est[d], -1});
  }
  return streams;
}

UpcastResult l0_upcast(const net::Graph& g, const pack::RootedTree& tree,
                       const std::vector<sketch::SignedStream>& streams, int t,
                       uint64_t randomness, const sketch::L0Config& cfg) {
  if (int(streams.size()) != g.node_count())
    throw std::invalid_argument("l0_upcast: one stream per node required");
  if (t < 1) throw std::invalid_argument("l0_upcast: need at least one sketch");
  std::vector<char> reach = subgraph_reachable(g, tree);

  UpcastResult res;
  for (int h = 0; h < t; ++h) {
    sketch::L0Sketch acc(cfg, mix64(randomness ^ uint64_t(h)));
    for (net::NodeId v = 0; v < g.node_count(); ++v) {
      if (!reach[v]) continue;
      sketch::L0Sketch local(cfg, acc.randomness_id());
      local.update(streams[v]);
      acc = sketch::L0Sketch::merge(acc, local);
    }
    res.samples.push_back(acc.query());
    res.merged.push_back(std::move(acc));
  }
  return res;
}

double dm_threshold(const ByzConstants& cb, int j, int eta, int t, bool budgeted) {
  return (budgeted ? 0.4 : 0.2) * cb.c_expand * double(uint64_t(1) << j) * eta * t;
}

std::vector<uint64_t> dominating_mismatches(
    const std::vector<std::vector<sketch::L0Query>>& samples_per_tree, double delta,
    std::map<uint64_t, int>* supp_out) {
  std::map<uint64_t, int> supp;
  for (const auto& tree : samples_per_tree)
    for (const auto& q : tree)
      if (!q.failed && !q.empty && q.frequency > 0) ++supp[q.element];
  std::vector<uint64_t> dm;
  for (const auto& [elem, count] : supp)
    if (double(count) >= delta) dm.push_back(elem);
  std::sort(dm.begin(), dm.end(), [&](uint64_t a, uint64_t b) {
    if (supp[a] != supp[b]) return supp[a] > supp[b];
    return a < b;
  });
  if (supp_out) *supp_out = std::move(supp);
  return dm;
}

}  // namespace congesim::byz
