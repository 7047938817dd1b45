#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/adversary.hpp"
#include "congesim/net/graph.hpp"
#include "congesim/net/program.hpp"

// One-time-pad key schedules from plain randomness exchange.
//
// Every mobile-secure compile opens with an exchange phase of ell = r + t
// rounds: a directed edge that later carries u messages sends one fresh
// uniform word in each of its first u + t rounds, then both endpoints push
// those words through a Vandermonde extractor (n = u + t, slack t) to obtain
// u shared keys. An eavesdropper that reads at most t of an edge's exchange
// rounds learns nothing about its keys; concentrating the per-round budget
// can compromise only bad_edge_bound edges.

namespace congesim::secure {

struct SecureParams {
  int r = 1;          // rounds of the wrapped protocol
  int f = 0;          // static budget the wrapped protocol tolerates
  int t = 0;          // extraction slack
  int key_bits = 16;  // key width; keys live in GF(2^key_bits)
};

int compiled_rounds(int r, int t);  // 2r + t
int exchange_rounds(int r, int t);  // ell = r + t

// Mobile budget the compiled protocol withstands: floor(f(t+1)/(r+t)) in
// general, and exactly f once t >= 2fr.
int mobile_budget(int f, int r, int t);

// Edges an adversary with per-round budget phi can tap in more than t
// exchange rounds: floor(phi * (r+t) / (t+1)). Chains with mobile_budget:
// bad_edge_bound(mobile_budget(f, r, t), r, t) <= f.
int bad_edge_bound(int phi, int r, int t);

inline uint64_t width_mask(int bits) {
  return bits >= 64 ? ~uint64_t(0) : ((uint64_t(1) << bits) - 1);
}
uint64_t otp_mask(uint64_t key, int width);
inline uint64_t otp_encrypt(uint64_t value, uint64_t key, int width) {
  return value ^ otp_mask(key, width);
}
inline uint64_t otp_decrypt(uint64_t value, uint64_t key, int width) {
  return value ^ otp_mask(key, width);
}

// Tag of the randomness draw behind the exchange word sent on `dir` in
// exchange round j. Exposed so exhaustive view tests can pin the draws.
uint64_t key_tag(net::DirEdgeId dir, int j);

// Embeddable exchange driver. The owning program forwards rounds [0, ell)
// to on_round and the inbox of round ell to finish, then reads keys. A
// direction with u scheduled uses exchanges in rounds [0, u + t) and yields
// u keys; u = 0 means the direction stays silent.
class KeyExchange {
 public:
  KeyExchange(int ell, int t, int width);

  // uses_per_dir: planned message count per global directed edge id (sized
  // dir_edge_count, zeros for unused directions).
  void init(const net::NodeContext& ctx, const std::vector<int>& uses_per_dir);
  void on_round(int round, const net::SlotVec& in, net::SlotVec& out);
  void finish(const net::SlotVec& in);

  // Key h encrypts the h-th outgoing (send) / decrypts the h-th incoming
  // (recv) message of slot s.
  const std::vector<uint64_t>& send_keys(int slot) const { return send_keys_[slot]; }
  const std::vector<uint64_t>& recv_keys(int slot) const { return recv_keys_[slot]; }

 private:
  void absorb(const net::SlotVec& in, int round);
  void extract();

  int ell_, t_, width_;
  net::NodeContext ctx_;
  std::vector<int> out_uses_, in_uses_;              // per slot
  std::vector<net::DirEdgeId> out_dir_;              // per slot
  std::vector<std::vector<uint64_t>> sent_, got_;    // per slot, per exchange round
  std::vector<std::vector<uint64_t>> send_keys_, recv_keys_;
  bool finished_ = false;
};

// Uniform use count for every directed edge (the default full schedule).
std::vector<int> full_traffic(const net::Graph& g, int uses);

// Edges tapped in more than t of the exchange rounds [0, ell).
std::vector<net::EdgeId> bad_edges(const std::vector<net::TapRecord>& taps, int ell, int t);

// Scripted eavesdropper schedule concentrating phi taps per round so that
// bad_edge_bound(phi, r, t) edges get tapped t+1 times during the exchange;
// realizes the bound exactly when the graph has enough edges.
std::vector<std::vector<net::EdgeAction>> concentrated_taps(const net::Graph& g, int phi, int r,
                                                            int t);

}  // namespace congesim::secure
