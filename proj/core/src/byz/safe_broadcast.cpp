#include "congesim/byz/safe_broadcast.hpp"

#include <stdexcept>

#include "congesim/byz/subgraph.hpp"
#include "congesim/gf/reed_solomon.hpp"

namespace congesim::byz {

SafeBroadcastResult ecc_safe_broadcast(const net::Graph& g,
                                       const std::vector<uint64_t>& root_msg,
                                       int symbol_bits,
                                       const pack::WeakTreePacking& packing, int f,
                                       const ByzConstants& cb,
                                       const net::Adversary& adversary, uint64_t seed) {
  int k = int(packing.subgraphs.size());
  int l = int(root_msg.size());
  if (l < 1) throw std::invalid_argument("safe broadcast: empty message");
  if (symbol_bits < 1 || symbol_bits > 32)
    throw std::invalid_argument("safe broadcast: symbol_bits must be in [1,32]");
  if ((uint64_t(1) << symbol_bits) <= uint64_t(k))
    throw std::invalid_argument("safe broadcast: field too small for one share per tree");
  if (k < cb.c_expand * l)
    throw std::invalid_argument("safe broadcast: need k >= c_expand * l trees");
  if (k < cb.c_floor * packing.load * f)
    throw std::invalid_argument("safe broadcast: need k >= c_floor * eta * f trees");
  for (uint64_t s : root_msg)
    if (s >> symbol_bits) throw std::invalid_argument("safe broadcast: symbol outside the field");

  gf::Field field(symbol_bits);
  gf::RsCode code(field, l, k);
  std::vector<uint64_t> shares = code.encode(root_msg);

  // One word per share: depth_bound rounds of pipelining plus the payload.
  int share_rounds = std::max(1, packing.depth_bound) + 1;
  std::vector<OracleProtocol> protos(k);
  for (int i = 0; i < k; ++i) {
    protos[i].edges = subgraph_edges(g, packing.subgraphs[i]);
    if (protos[i].edges.empty())
      protos[i].edges = {net::EdgeId(0)};  // degenerate subgraph still gets a slot
    protos[i].rounds = share_rounds;
    protos[i].output_bits = symbol_bits;
    std::vector<char> reach = subgraph_reachable(g, packing.subgraphs[i]);
    protos[i].clean_outputs.resize(g.node_count());
    for (net::NodeId v = 0; v < g.node_count(); ++v)
      protos[i].clean_outputs[v] = {reach[v] ? shares[i] : 0};
  }

  ScheduleResult sched = run_schedule_rs(g, protos, cb, adversary, seed);

  SafeBroadcastResult res;
  res.tree_failed = sched.failed;
  res.failed_trees = sched.failed_count;
  res.rounds = sched.total_rounds;
  res.corrupted = sched.execution.total_corrupted_messages;
  res.decoded.resize(g.node_count());
  res.all_correct = true;
  for (net::NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<uint64_t> received(k);
    for (int i = 0; i < k; ++i) received[i] = sched.outputs[i][v][0] & field.mask();
    res.decoded[v] = code.decode(received).message;
    if (res.decoded[v] != root_msg) res.all_correct = false;
  }
  return res;
}

}  // namespace congesim::byz
