#include <benchmark/benchmark.h>

#include <algorithm>
#include <memory>

#include "congesim/gf/field.hpp"
#include "congesim/gf/reed_solomon.hpp"
#include "congesim/net/engine.hpp"
#include "congesim/sketch/l0_sketch.hpp"

using namespace congesim;

static void BM_FieldMul16(benchmark::State& state) {
  gf::Field f(16);
  uint64_t a = 0x1b3c, b = 0x52f7;
  for (auto _ : state) {
    a = f.mul(a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul16);

static void BM_FieldMul32(benchmark::State& state) {
  gf::Field f(32);
  uint64_t a = 0x1b3c5a21, b = 0x52f71e09;
  for (auto _ : state) {
    a = f.mul(a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul32);

static void BM_RsDecodeBW(benchmark::State& state) {
  gf::Field f(16);
  gf::RsCode code(f, 4, 12);
  auto word = code.encode({1, 2, 3, 4});
  word[0] ^= 5;
  word[7] ^= 9;
  for (auto _ : state) {
    auto res = code.decode_berlekamp_welch(word);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_RsDecodeBW);

static void BM_SketchUpdate(benchmark::State& state) {
  auto cfg = sketch::L0Config::for_size(64, 16);
  sketch::L0Sketch sk(cfg, 7);
  uint64_t e = 1;
  for (auto _ : state) {
    sk.update(e, 1);
    e = (e * 2862933555777941757ULL + 3037000493ULL) & 0xffff;
  }
  benchmark::DoNotOptimize(sk);
}
BENCHMARK(BM_SketchUpdate);

namespace {

struct Flood : net::NodeProgram {
  uint64_t best = 0;
  void init(const net::NodeContext& c) override { best = c.input; }
  void on_round(int, const net::SlotVec& in, net::SlotVec& out) override {
    for (const auto& s : in)
      if (s) best = std::max(best, s->value);
    for (auto& o : out) o = net::Word{best, 16};
  }
  std::vector<uint64_t> output() const override { return {best}; }
};

}  // namespace

static void BM_EngineRounds(benchmark::State& state) {
  net::Graph g = net::Graph::random_regular(64, 8, 3);
  std::vector<uint64_t> inputs(64);
  for (int i = 0; i < 64; ++i) inputs[i] = uint64_t(i) * 131 % 65536;
  net::RunConfig cfg;
  cfg.rounds = int(state.range(0));
  cfg.bandwidth = 16;
  for (auto _ : state) {
    auto ex = net::run(
        g, [](net::NodeId) { return std::make_unique<Flood>(); }, inputs, {}, cfg);
    benchmark::DoNotOptimize(ex);
  }
  state.SetItemsProcessed(state.iterations() * cfg.rounds * g.dir_edge_count());
}
BENCHMARK(BM_EngineRounds)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
