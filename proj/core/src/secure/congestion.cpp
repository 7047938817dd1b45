#include "congesim/secure/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "congesim/gf/hashing.hpp"
#include "congesim/rng.hpp"

namespace congesim::secure {

namespace {

int bits_for(uint64_t n) {
  int b = 1;
  while ((uint64_t(1) << b) < n) ++b;
  return b;
}

struct SeedSend {
  int p;  // phase-B round
  net::NodeId to;
  int chunk;
  int tree;
};
struct SeedRecv {
  int p;
  net::NodeId from;
  int chunk;
  int tree;
};

struct CongTables {
  CongestionParams cp;
  int id_bits = 0;
  int b_prime = 0;
  int j = 0;
  int ell = 0;
  int pb = 0;  // phase-B rounds
  int shares = 0;
  std::vector<int> uses;  // per dir, = pb + r
  std::vector<std::vector<SeedSend>> seed_sends;
  std::vector<std::vector<SeedRecv>> seed_recvs;
  std::shared_ptr<std::atomic<long long>> accepted;
};

struct CongProgram : net::NodeProgram {
  std::shared_ptr<const CongTables> tb;
  net::ProgramFactory inner_factory;
  std::unique_ptr<net::NodeProgram> inner;
  KeyExchange kx;
  net::NodeContext ctx;
  std::unordered_map<net::NodeId, int> slot_of;
  std::vector<net::DirEdgeId> in_dir, out_dir;
  std::vector<std::vector<uint64_t>> chunk_share;  // [chunk][tree]
  std::vector<bool> share_have;                    // flattened chunk*shares+tree
  std::unordered_map<uint64_t, uint64_t> table;    // h*(m') -> m_full
  bool table_ready = false;

  CongProgram(std::shared_ptr<const CongTables> tb_, net::ProgramFactory f)
      : tb(std::move(tb_)),
        inner_factory(std::move(f)),
        kx(tb->ell, tb->cp.t, tb->b_prime) {}

  void init(const net::NodeContext& c) override {
    ctx = c;
    kx.init(ctx, tb->uses);
    const auto& nbr = ctx.neighbors();
    in_dir.resize(nbr.size());
    out_dir.resize(nbr.size());
    for (size_t s = 0; s < nbr.size(); ++s) {
      slot_of[nbr[s]] = int(s);
      out_dir[s] = ctx.graph->dir_edge_id(ctx.id, nbr[s]);
      in_dir[s] = ctx.graph->dir_edge_id(nbr[s], ctx.id);
    }
    chunk_share.assign(tb->j, std::vector<uint64_t>(tb->shares, 0));
    share_have.assign(size_t(tb->j) * tb->shares, false);
    if (ctx.id == tb->cp.seed_src)
      for (int c2 = 0; c2 < tb->j; ++c2) {
        uint64_t word = ctx.draw(seed_word_tag(c2), tb->b_prime);
        uint64_t rest = 0;
        for (int q = 0; q + 1 < tb->shares; ++q) {
          uint64_t sh = ctx.draw(seed_share_tag(c2, q), tb->b_prime);
          put_share(c2, q, sh);
          rest ^= sh;
        }
        put_share(c2, tb->shares - 1, (word ^ rest) & width_mask(tb->b_prime));
      }
  }

  void put_share(int chunk, int tree, uint64_t v) {
    chunk_share[chunk][tree] = v;
    share_have[size_t(chunk) * tb->shares + tree] = true;
  }
  bool has_share(int chunk, int tree) const {
    return share_have[size_t(chunk) * tb->shares + tree];
  }

  uint64_t valid_message(uint64_t payload, net::NodeId u, net::NodeId v) const {
    return (payload << (2 * tb->id_bits)) | (uint64_t(u) << tb->id_bits) | uint64_t(v);
  }

  void build_table() {
    std::vector<uint64_t> seeds(tb->j);
    for (int c2 = 0; c2 < tb->j; ++c2) {
      uint64_t acc = 0;
      for (int q = 0; q < tb->shares; ++q) {
        if (!has_share(c2, q)) throw std::runtime_error("hash seed share missing");
        acc ^= chunk_share[c2][q];
      }
      seeds[c2] = acc & width_mask(tb->b_prime);
    }
    gf::HashFamily fam(tb->b_prime, tb->b_prime, tb->j);
    int shift_pad = tb->b_prime - tb->cp.B;
    for (int attempt = 0; attempt < 64; ++attempt) {
      table.clear();
      bool collided = false;
      gf::JwiseHash h = fam.from_seed(seeds);
      for (net::DirEdgeId d = 0; d < ctx.graph->dir_edge_count() && !collided; ++d) {
        net::NodeId u = ctx.graph->dir_source(d), v = ctx.graph->dir_target(d);
        for (uint64_t pay = 0; pay < (uint64_t(1) << tb->cp.payload_bits); ++pay) {
          uint64_t m = valid_message(pay, u, v);
          auto [it, fresh] = table.emplace(h(m << shift_pad), m);
          if (!fresh && it->second != m) {
            collided = true;
            break;
          }
        }
      }
      if (!collided) {
        hash_ = std::make_unique<gf::JwiseHash>(h);
        table_ready = true;
        return;
      }
      for (auto& s : seeds) s = (s + 1) & width_mask(tb->b_prime);
    }
    throw std::runtime_error("no collision-free hash seed after 64 bumps");
  }

  void on_round(int round, const net::SlotVec& in, net::SlotVec& out) override {
    if (round < tb->ell) {
      kx.on_round(round, in, out);
      return;
    }
    int post = round - tb->ell;  // pad index for this round's sends
    if (post == 0) kx.finish(in);

    // Scheduled seed-share arrivals (words sent at pad index post-1).
    if (post >= 1 && post <= tb->pb)
      for (const SeedRecv& e : tb->seed_recvs[ctx.id]) {
        if (e.p != post) continue;
        int s = slot_of.at(e.from);
        if (!in[s]) throw std::runtime_error("seed share missing from inbox");
        put_share(e.chunk, e.tree,
                  otp_decrypt(in[s]->value, kx.recv_keys(s)[post - 1], tb->b_prime));
      }

    std::vector<bool> claimed(out.size(), false);
    if (post < tb->pb) {
      for (const SeedSend& e : tb->seed_sends[ctx.id]) {
        if (e.p != post) continue;
        if (!has_share(e.chunk, e.tree)) throw std::runtime_error("seed share not yet here");
        int s = slot_of.at(e.to);
        out[s] = net::Word{
            otp_encrypt(chunk_share[e.chunk][e.tree], kx.send_keys(s)[post], tb->b_prime),
            tb->b_prime};
        claimed[s] = true;
      }
    } else {
      int i = post - tb->pb;  // wrapped protocol round
      net::SlotVec inner_in(in.size());
      if (i == 0) {
        build_table();
        inner = inner_factory(ctx.id);
        inner->init(ctx);
      } else {
        for (size_t s = 0; s < in.size(); ++s) {
          if (!in[s]) continue;
          uint64_t cand = otp_decrypt(in[s]->value, kx.recv_keys(int(s))[post - 1], tb->b_prime);
          auto it = table.find(cand);
          if (it == table.end()) continue;
          uint64_t m = it->second;
          net::NodeId u = net::NodeId((m >> tb->id_bits) & width_mask(tb->id_bits));
          net::NodeId v = net::NodeId(m & width_mask(tb->id_bits));
          if (u != ctx.graph->dir_source(in_dir[s]) || v != ctx.id) continue;
          inner_in[s] = net::Word{m >> (2 * tb->id_bits), tb->cp.payload_bits};
          ++*tb->accepted;
        }
      }
      net::SlotVec raw(out.size());
      inner->on_round(i, inner_in, raw);
      for (size_t s = 0; s < out.size(); ++s) {
        if (!raw[s]) continue;
        if (raw[s]->width > tb->cp.payload_bits)
          throw std::runtime_error("wrapped message wider than payload_bits");
        uint64_t m = valid_message(raw[s]->value & width_mask(tb->cp.payload_bits), ctx.id,
                                   ctx.neighbors()[s]);
        uint64_t hashed = hash_of(m << (tb->b_prime - tb->cp.B));
        out[s] = net::Word{otp_encrypt(hashed, kx.send_keys(int(s))[post], tb->b_prime),
                          tb->b_prime};
        claimed[s] = true;
      }
    }
    if (post < tb->pb + tb->cp.r)
      for (size_t s = 0; s < out.size(); ++s)
        if (!claimed[s] && !out[s])
          out[s] = net::Word{ctx.draw(noise_tag(out_dir[s], round), tb->b_prime), tb->b_prime};
  }

  uint64_t hash_of(uint64_t m_padded) {
    if (!hash_) throw std::runtime_error("hash used before the seed settled");
    return (*hash_)(m_padded);
  }
  std::unique_ptr<gf::JwiseHash> hash_;

  std::vector<uint64_t> output() const override {
    return inner ? inner->output() : std::vector<uint64_t>{};
  }
};

}  // namespace

uint64_t seed_word_tag(int chunk) { return mix64(0x52736565 ^ uint64_t(chunk)); }
uint64_t seed_share_tag(int chunk, int tree) {
  return mix64(0x73656564 ^ (uint64_t(chunk) << 8) ^ uint64_t(tree));
}
uint64_t noise_tag(net::DirEdgeId dir, int round) {
  return mix64(0x6e6f6973 ^ (uint64_t(dir) << 20) ^ uint64_t(round));
}

CongestionCompiled congestion_sensitive_compile(const net::ProgramFactory& inner,
                                                const CongestionParams& cp, const net::Graph& g,
                                                const pack::TreePacking& packing) {
  if (cp.r < 1) throw std::invalid_argument("congestion compile: need r >= 1");
  if (cp.f < 0 || cp.cgst < 1 || cp.t < 0)
    throw std::invalid_argument("congestion compile: bad budget parameters");
  int id_bits = bits_for(uint64_t(g.node_count()));
  if (cp.payload_bits < 1 || cp.payload_bits + 2 * id_bits > cp.B)
    throw std::invalid_argument("congestion compile: payload and IDs must fit in B bits");
  if (cp.B > 20)
    throw std::invalid_argument("congestion compile: preimage table too large, use a smaller B");
  int b_prime = cp.B + 3 * bits_for(uint64_t(g.node_count()) * uint64_t(cp.r));
  if (b_prime > 32)
    throw std::invalid_argument("congestion compile: B' exceeds 32, use a smaller B or r");
  int j = std::max(2, 4 * cp.f * cp.cgst);
  int shares = cp.f + 1;
  if (int(packing.trees.size()) < shares)
    throw std::invalid_argument("congestion compile: packing needs f + 1 trees");
  if (packing.root != cp.seed_src)
    throw std::invalid_argument("congestion compile: packing not rooted at seed source");
  for (int q = 0; q < shares; ++q)
    if (!pack::is_spanning_tree(g, packing.trees[q]))
      throw std::invalid_argument("congestion compile: invalid tree");

  auto tb = std::make_shared<CongTables>();
  tb->cp = cp;
  tb->id_bits = id_bits;
  tb->b_prime = b_prime;
  tb->j = j;
  tb->shares = shares;
  tb->seed_sends.resize(g.node_count());
  tb->seed_recvs.resize(g.node_count());
  tb->accepted = std::make_shared<std::atomic<long long>>(0);

  // Stagger the f + 1 share trees so no (direction, round) hosts two
  // scheduled words; chunks ride back-to-back behind each other.
  std::vector<std::vector<int>> depth(shares);
  std::vector<int> start(shares, 0);
  std::set<std::pair<net::DirEdgeId, int>> claimed;
  int pb = 0;
  for (int q = 0; q < shares; ++q) {
    const auto& tr = packing.trees[q];
    depth[q].assign(g.node_count(), 0);
    auto kids = tr.children();
    std::vector<net::NodeId> order{tr.root};
    for (size_t w = 0; w < order.size(); ++w)
      for (net::NodeId c2 : kids[order[w]]) {
        depth[q][c2] = depth[q][order[w]] + 1;
        order.push_back(c2);
      }
    auto clashes = [&](int st) {
      for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v) {
        if (v == tr.root) continue;
        net::DirEdgeId d = g.dir_edge_id(tr.parent[v], v);
        for (int c2 = 0; c2 < j; ++c2)
          if (claimed.count({d, st + c2 + depth[q][v] - 1})) return true;
      }
      return false;
    };
    while (clashes(start[q])) ++start[q];
    for (net::NodeId v = 0; v < net::NodeId(g.node_count()); ++v) {
      if (v == tr.root) continue;
      net::DirEdgeId d = g.dir_edge_id(tr.parent[v], v);
      for (int c2 = 0; c2 < j; ++c2) {
        int p = start[q] + c2 + depth[q][v] - 1;
        claimed.insert({d, p});
        tb->seed_sends[tr.parent[v]].push_back({p, v, c2, q});
        tb->seed_recvs[v].push_back({p + 1, tr.parent[v], c2, q});
        pb = std::max(pb, p + 1);
      }
    }
  }
  tb->pb = pb;
  tb->ell = exchange_rounds(pb + cp.r, cp.t);
  tb->uses.assign(g.dir_edge_count(), pb + cp.r);

  CongestionCompiled out;
  out.rounds = tb->ell + pb + cp.r;
  out.exchange_rounds = tb->ell;
  out.broadcast_rounds = pb;
  out.B = cp.B;
  out.B_prime = b_prime;
  out.j_indep = j;
  out.id_bits = id_bits;
  out.seed_words = j;
  out.accepted = tb->accepted;
  out.factory = [tb, inner](net::NodeId) { return std::make_unique<CongProgram>(tb, inner); };
  return out;
}

}  // namespace congesim::secure
