#include "congesim/secure/key_schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "congesim/gf/vandermonde.hpp"
#include "congesim/rng.hpp"

namespace congesim::secure {

int compiled_rounds(int r, int t) {
  if (r < 1 || t < 0) throw std::invalid_argument("compiled_rounds: need r >= 1, t >= 0");
  return 2 * r + t;
}

int exchange_rounds(int r, int t) {
  if (r < 1 || t < 0) throw std::invalid_argument("exchange_rounds: need r >= 1, t >= 0");
  return r + t;
}

int mobile_budget(int f, int r, int t) {
  if (f < 0 || r < 1 || t < 0) throw std::invalid_argument("mobile_budget: bad parameters");
  if (t >= 2 * f * r) return f;
  return (f * (t + 1)) / (r + t);
}

int bad_edge_bound(int phi, int r, int t) {
  if (phi < 0 || r < 1 || t < 0) throw std::invalid_argument("bad_edge_bound: bad parameters");
  return (phi * (r + t)) / (t + 1);
}

uint64_t otp_mask(uint64_t key, int width) {
  return width >= 64 ? key : (key & ((uint64_t(1) << width) - 1));
}

uint64_t key_tag(net::DirEdgeId dir, int j) {
  return mix64(0x6b657973 ^ (uint64_t(dir) << 20) ^ uint64_t(j));
}

KeyExchange::KeyExchange(int ell, int t, int width) : ell_(ell), t_(t), width_(width) {
  if (ell < t + 1) throw std::invalid_argument("key exchange: need ell >= t + 1");
  if (width < 1 || width > 32) throw std::invalid_argument("key exchange: width in [1, 32]");
}

void KeyExchange::init(const net::NodeContext& ctx, const std::vector<int>& uses_per_dir) {
  if (int(uses_per_dir.size()) != ctx.graph->dir_edge_count())
    throw std::invalid_argument("key exchange: one use count per directed edge required");
  ctx_ = ctx;
  const auto& nbr = ctx.neighbors();
  int slots = int(nbr.size());
  out_uses_.assign(slots, 0);
  in_uses_.assign(slots, 0);
  out_dir_.assign(slots, -1);
  sent_.assign(slots, {});
  got_.assign(slots, {});
  send_keys_.assign(slots, {});
  recv_keys_.assign(slots, {});
  for (int s = 0; s < slots; ++s) {
    net::DirEdgeId out = ctx.graph->dir_edge_id(ctx.id, nbr[s]);
    net::DirEdgeId in = ctx.graph->dir_edge_id(nbr[s], ctx.id);
    out_uses_[s] = uses_per_dir[out];
    in_uses_[s] = uses_per_dir[in];
    out_dir_[s] = out;
    if (out_uses_[s] + t_ > ell_ || in_uses_[s] + t_ > ell_)
      throw std::invalid_argument("key exchange: use count exceeds ell - t");
  }
}

void KeyExchange::absorb(const net::SlotVec& in, int round) {
  for (size_t s = 0; s < in.size(); ++s) {
    int j = round - 1;  // inbox of round j+1 holds the round-j word
    if (in_uses_[s] == 0 || j < 0 || j >= in_uses_[s] + t_) {
      if (in[s]) throw std::runtime_error("key exchange: unexpected word outside window");
      continue;
    }
    if (!in[s]) throw std::runtime_error("key exchange: missing exchange word");
    got_[s].push_back(in[s]->value);
  }
}

void KeyExchange::on_round(int round, const net::SlotVec& in, net::SlotVec& out) {
  if (round < 0 || round >= ell_) throw std::logic_error("key exchange: round out of phase");
  if (round > 0) absorb(in, round);
  for (size_t s = 0; s < out.size(); ++s) {
    if (out_uses_[s] == 0 || round >= out_uses_[s] + t_) continue;
    uint64_t w = ctx_.draw(key_tag(out_dir_[s], round), width_);
    sent_[s].push_back(w);
    out[s] = net::Word{w, width_};
  }
}

void KeyExchange::finish(const net::SlotVec& in) {
  absorb(in, ell_);
  extract();
  finished_ = true;
}

void KeyExchange::extract() {
  gf::Field field(width_);
  for (size_t s = 0; s < sent_.size(); ++s) {
    if (out_uses_[s] > 0) {
      if (int(sent_[s].size()) != out_uses_[s] + t_)
        throw std::logic_error("key exchange: short send stream");
      send_keys_[s] = gf::extract_uniform(field, sent_[s], t_);
    }
    if (in_uses_[s] > 0) {
      if (int(got_[s].size()) != in_uses_[s] + t_)
        throw std::logic_error("key exchange: short receive stream");
      recv_keys_[s] = gf::extract_uniform(field, got_[s], t_);
    }
  }
}

std::vector<int> full_traffic(const net::Graph& g, int uses) {
  return std::vector<int>(g.dir_edge_count(), uses);
}

std::vector<net::EdgeId> bad_edges(const std::vector<net::TapRecord>& taps, int ell, int t) {
  std::vector<std::pair<net::EdgeId, int>> seen;  // edge -> distinct tapped rounds
  std::vector<std::pair<net::EdgeId, int>> marks;
  for (const auto& tap : taps) {
    if (tap.round >= ell) continue;
    if (std::find(marks.begin(), marks.end(), std::pair{tap.edge, tap.round}) != marks.end())
      continue;
    marks.push_back({tap.edge, tap.round});
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == tap.edge; });
    if (it == seen.end())
      seen.push_back({tap.edge, 1});
    else
      ++it->second;
  }
  std::vector<net::EdgeId> bad;
  for (const auto& [e, c] : seen)
    if (c > t) bad.push_back(e);
  std::sort(bad.begin(), bad.end());
  return bad;
}

std::vector<std::vector<net::EdgeAction>> concentrated_taps(const net::Graph& g, int phi, int r,
                                                            int t) {
  int ell = exchange_rounds(r, t);
  int target = std::min(bad_edge_bound(phi, r, t), g.edge_count());
  std::vector<std::vector<net::EdgeAction>> script(ell);
  if (target == 0 || phi == 0) return script;
  std::vector<int> count(target, 0);
  for (int round = 0; round < ell; ++round) {
    // tap the phi least-served edges of the target set, lowest id first
    std::vector<int> order(target);
    for (int i = 0; i < target; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return count[a] < count[b]; });
    for (int b = 0; b < std::min(phi, target); ++b) {
      net::EdgeAction act;
      act.edge = order[b];
      script[round].push_back(act);
      ++count[order[b]];
    }
  }
  return script;
}

}  // namespace congesim::secure
