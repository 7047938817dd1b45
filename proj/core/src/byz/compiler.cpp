#include "congesim/byz/compiler.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "congesim/byz/safe_broadcast.hpp"
#include "congesim/byz/subgraph.hpp"
#include "congesim/rng.hpp"

namespace congesim::byz {

namespace {

int ceil_log2(int x) {
  int b = 0;
  while ((1 << b) < x) ++b;
  return b;
}

// One engine round rebroadcasting precomputed wire words.
class RawExchange : public net::NodeProgram {
 public:
  RawExchange(const std::vector<uint64_t>* wire, int wire_bits)
      : wire_(wire), bits_(wire_bits) {}
  void init(const net::NodeContext& ctx) override { ctx_ = ctx; }
  void on_round(int, const net::SlotVec&, net::SlotVec& out) override {
    const auto& nbrs = ctx_.graph->neighbors(ctx_.id);
    for (size_t s = 0; s < nbrs.size(); ++s)
      out[s] = net::Word{(*wire_)[ctx_.graph->dir_edge_id(ctx_.id, nbrs[s])], bits_};
  }
  std::vector<uint64_t> output() const override { return {}; }

 private:
  const std::vector<uint64_t>* wire_;
  int bits_;
  net::NodeContext ctx_;
};

// Sample transport encoding for upcast outputs: (element << 2) | code with
// code 0 positive, 1 negative, 2 empty, 3 failed.
uint64_t encode_sample(const sketch::L0Query& q) {
  if (q.failed) return 3;
  if (q.empty) return 2;
  return (q.element << 2) | (q.frequency > 0 ? 0 : 1);
}

sketch::L0Query decode_sample(uint64_t w) {
  sketch::L0Query q;
  switch (w & 3) {
    case 0: q.element = w >> 2; q.frequency = 1; break;
    case 1: q.element = w >> 2; q.frequency = -1; break;
    case 2: q.empty = true; break;
    default: q.failed = true; break;
  }
  return q;
}

}  // namespace

std::string ByzRunResult::traces_csv() const {
  std::ostringstream out;
  out << "alg_round,iteration,true_mismatches,dm_size,failed_upcast,failed_ecc,corrupted\n";
  for (const auto& t : traces)
    out << t.alg_round << ',' << t.iteration << ',' << t.true_mismatches << ',' << t.dm_size
        << ',' << t.failed_upcast_trees << ',' << t.failed_ecc_trees << ',' << t.corrupted
        << '\n';
  return out.str();
}

ByzRunResult compile_byz_run(const net::Graph& g, const net::ProgramFactory& alg,
                             const std::vector<uint64_t>& inputs, int alg_rounds,
                             const pack::WeakTreePacking& packing, int f,
                             const ByzCompileConfig& cfg, const net::Adversary& adversary,
                             uint64_t seed) {
  int n = g.node_count();
  int k = int(packing.subgraphs.size());
  if (alg_rounds < 1) throw std::invalid_argument("compile_byz: need at least one round");
  if (int(inputs.size()) != n) throw std::invalid_argument("compile_byz: one input per node");
  if (f < 0) throw std::invalid_argument("compile_byz: negative fault budget");
  if (k < cfg.consts.c_margin * cfg.consts.c_expand * packing.load * f)
    throw std::invalid_argument("compile_byz: need k >= c_margin * c_expand * eta * f trees");
  int idb = id_bits_for(n);
  int wire_bits = cfg.payload_bits + 2 * idb;
  if (cfg.payload_bits < 1 || wire_bits > 61)
    throw std::invalid_argument("compile_byz: payload plus ids must fit in 61 bits");

  ByzRunResult res;
  res.alg_rounds = alg_rounds;
  res.wire_bits = wire_bits;
  res.z = cfg.z_override >= 0 ? cfg.z_override : (f > 0 ? ceil_log2(2 * f) + 1 : 0);

  sketch::L0Config l0 = cfg.l0;
  l0.universe_bits = wire_bits;
  int t = cfg.t_sketches;
  int sketch_words = int(sketch::L0Sketch(l0, 0).serialize().size());
  int upcast_rounds = 2 * std::max(1, packing.depth_bound) + 1 + t * sketch_words;
  int sym_per_entry = (wire_bits + 15) / 16;
  int block_len = std::max(1, k / cfg.consts.c_expand);

  // In-process instances of the wrapped algorithm, advanced once per
  // simulated round on the corrected estimates.
  net::PrfRandomness inner_random(seed);
  std::vector<net::NodeContext> ctx(n);
  std::vector<std::unique_ptr<net::NodeProgram>> inner(n);
  for (net::NodeId v = 0; v < n; ++v) {
    ctx[v] = net::NodeContext{v, &g, inputs[v], cfg.payload_bits, &inner_random};
    inner[v] = alg(v);
    inner[v]->init(ctx[v]);
  }

  Prf rid_prf{mix64(seed ^ 0x75706373ull)};
  uint64_t segment = 0;
  auto segment_seed = [&] { return mix64(seed ^ 0x7365676dull ^ ++segment); };

  std::vector<net::Slot> delivered(g.dir_edge_count());
  MismatchState st;
  st.sent.assign(g.dir_edge_count(), 0);
  st.est.assign(g.dir_edge_count(), 0);

  for (int i = 0; i < alg_rounds; ++i) {
    // Wrapped algorithm emits this round's words given last round's
    // corrected estimates.
    for (net::NodeId v = 0; v < n; ++v) {
      const auto& nbrs = g.neighbors(v);
      net::SlotVec in(nbrs.size()), out(nbrs.size());
      if (i > 0)
        for (size_t s = 0; s < nbrs.size(); ++s)
          in[s] = delivered[g.dir_edge_id(nbrs[s], v)];
      inner[v]->on_round(i, in, out);
      for (size_t s = 0; s < nbrs.size(); ++s) {
        if (!out[s])
          throw std::invalid_argument("compile_byz: wrapped algorithm must send every round");
        if (out[s]->width > cfg.payload_bits ||
            (out[s]->width < 64 && (out[s]->value >> out[s]->width)))
          throw std::invalid_argument("compile_byz: word wider than payload_bits");
        st.sent[g.dir_edge_id(v, nbrs[s])] = pack_wire(out[s]->value, v, nbrs[s], idb);
      }
    }

    // Raw exchange under the live adversary.
    {
      std::vector<std::unique_ptr<net::NodeProgram>> programs;
      for (net::NodeId v = 0; v < n; ++v)
        programs.push_back(std::make_unique<RawExchange>(&st.sent, wire_bits));
      net::RunConfig rc;
      rc.rounds = 1;
      rc.bandwidth = wire_bits;
      rc.seed = segment_seed();
      rc.record_messages = true;
      net::Execution ex = net::run(g, programs, inputs, adversary, rc);
      for (net::DirEdgeId d = 0; d < g.dir_edge_count(); ++d) {
        const net::Slot& w = ex.delivered_log[0][d];
        st.est[d] = w ? w->value : 0;
      }
      res.engine_rounds += 1;
      if (cfg.record_traces)
        res.traces.push_back({i, 0, st.true_mismatches(), 0, 0, 0,
                              (long long)ex.total_corrupted_messages});
    }

    for (int j = 1; j <= res.z; ++j) {
      ByzIterationTrace trace{i, j, 0, 0, 0, 0, 0};

      // Mismatch upcast over every subgraph under the oracle.
      auto streams = mismatch_streams(g, st);
      std::vector<OracleProtocol> protos(k);
      std::vector<std::vector<sketch::L0Query>> samples(k);
      for (int tr = 0; tr < k; ++tr) {
        uint64_t rid = rid_prf.at(uint64_t(i), uint64_t(j), uint64_t(tr));
        UpcastResult up = l0_upcast(g, packing.subgraphs[tr], streams, t, rid, l0);
        protos[tr].edges = subgraph_edges(g, packing.subgraphs[tr]);
        if (protos[tr].edges.empty()) protos[tr].edges = {net::EdgeId(0)};
        protos[tr].rounds = upcast_rounds;
        protos[tr].output_bits = wire_bits + 2;
        protos[tr].clean_outputs.resize(n);
        std::vector<uint64_t> root_out;
        for (const auto& q : up.samples) root_out.push_back(encode_sample(q));
        protos[tr].clean_outputs[packing.root] = std::move(root_out);
      }
      ScheduleResult sched =
          run_schedule_rs(g, protos, cfg.consts, adversary, segment_seed());
      res.engine_rounds += sched.total_rounds;
      res.schedule_protocols += k;
      res.schedule_failures += sched.failed_count;
      trace.failed_upcast_trees = sched.failed_count;
      trace.corrupted += sched.execution.total_corrupted_messages;
      for (int tr = 0; tr < k; ++tr)
        for (uint64_t w : sched.outputs[tr][packing.root])
          samples[tr].push_back(decode_sample(w));

      // Dominating mismatches at the root, then the error-corrected
      // broadcast, block by block.
      double delta = dm_threshold(cfg.consts, j, packing.load, t, false);
      std::vector<uint64_t> dm = dominating_mismatches(samples, delta, &st.supp);
      int capacity = int(double(k) * t / delta);
      if (int(dm.size()) > capacity) dm.resize(capacity);
      st.dm = dm;
      st.iteration = j;
      trace.dm_size = int(dm.size());

      std::vector<uint64_t> symbols = {uint64_t(dm.size())};
      for (uint64_t entry : dm)
        for (int p = 0; p < sym_per_entry; ++p)
          symbols.push_back((entry >> (16 * p)) & 0xffff);
      symbols.resize(1 + size_t(capacity) * sym_per_entry, 0);

      std::vector<std::vector<uint64_t>> node_symbols(n);
      for (size_t off = 0; off < symbols.size(); off += block_len) {
        size_t len = std::min(size_t(block_len), symbols.size() - off);
        std::vector<uint64_t> block(symbols.begin() + off, symbols.begin() + off + len);
        SafeBroadcastResult bc =
            ecc_safe_broadcast(g, block, 16, packing, f, cfg.consts, adversary,
                               segment_seed());
        res.engine_rounds += bc.rounds;
        res.schedule_protocols += k;
        res.schedule_failures += bc.failed_trees;
        trace.failed_ecc_trees += bc.failed_trees;
        trace.corrupted += bc.corrupted;
        for (net::NodeId v = 0; v < n; ++v)
          node_symbols[v].insert(node_symbols[v].end(), bc.decoded[v].begin(),
                                 bc.decoded[v].end());
      }

      // Receivers adopt the first dominating entry keyed by their edge.
      for (net::NodeId v = 0; v < n; ++v) {
        uint64_t count = std::min<uint64_t>(node_symbols[v][0], uint64_t(capacity));
        for (const net::NodeId u : g.neighbors(v)) {
          net::DirEdgeId d = g.dir_edge_id(u, v);
          for (uint64_t e = 0; e < count; ++e) {
            uint64_t entry = 0;
            for (int p = 0; p < sym_per_entry; ++p)
              entry |= node_symbols[v][1 + e * sym_per_entry + p] << (16 * p);
            if (unpack_sender(entry, idb) == u && unpack_receiver(entry, idb) == v) {
              st.est[d] = entry;
              break;
            }
          }
        }
      }

      trace.true_mismatches = st.true_mismatches();
      if (cfg.record_traces) res.traces.push_back(trace);
    }

    for (net::DirEdgeId d = 0; d < g.dir_edge_count(); ++d)
      delivered[d] = net::Word{unpack_payload(st.est[d], idb) &
                                   ((uint64_t(1) << cfg.payload_bits) - 1),
                               cfg.payload_bits};
  }

  // Final round: estimates of the last round feed the closing step.
  res.outputs.resize(n);
  for (net::NodeId v = 0; v < n; ++v) res.outputs[v] = inner[v]->output();
  return res;
}

}  // namespace congesim::byz
