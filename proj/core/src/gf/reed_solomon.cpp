#include "congesim/gf/reed_solomon.hpp"

#include <cmath>
#include <stdexcept>

namespace congesim::gf {

namespace {

// Solve A z = b over f (A is rows x cols, row-major, augmented solve).
// Returns false if inconsistent. Free variables are set to zero.
bool solve_linear(const Field& f, std::vector<uint64_t> a, std::vector<uint64_t> b,
                  int rows, int cols, std::vector<uint64_t>& z) {
  std::vector<int> pivot_col(rows, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[size_t(i) * cols + c] != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < cols; ++j) std::swap(a[size_t(p) * cols + j], a[size_t(r) * cols + j]);
      std::swap(b[p], b[r]);
    }
    uint64_t inv = f.inv(a[size_t(r) * cols + c]);
    for (int j = c; j < cols; ++j) a[size_t(r) * cols + j] = f.mul(a[size_t(r) * cols + j], inv);
    b[r] = f.mul(b[r], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint64_t m = a[size_t(i) * cols + c];
      if (m == 0) continue;
      for (int j = c; j < cols; ++j)
        a[size_t(i) * cols + j] = f.add(a[size_t(i) * cols + j], f.mul(m, a[size_t(r) * cols + j]));
      b[i] = f.add(b[i], f.mul(m, b[r]));
    }
    pivot_col[r] = c;
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  z.assign(cols, 0);
  for (int i = 0; i < r; ++i) z[pivot_col[i]] = b[i];
  return true;
}

// q = quotient of num / den; returns false if the division has a remainder
// or den is zero.
bool poly_divide(const Field& f, std::vector<uint64_t> num, const std::vector<uint64_t>& den,
                 std::vector<uint64_t>& q) {
  int dd = int(den.size()) - 1;
  while (dd >= 0 && den[dd] == 0) --dd;
  if (dd < 0) return false;
  int dn = int(num.size()) - 1;
  while (dn >= 0 && num[dn] == 0) --dn;
  q.assign(std::max(0, dn - dd + 1), 0);
  uint64_t lead_inv = f.inv(den[dd]);
  for (int i = dn; i >= dd; --i) {
    if (num[i] == 0) continue;
    uint64_t c = f.mul(num[i], lead_inv);
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j)
      num[i - dd + j] = f.add(num[i - dd + j], f.mul(c, den[j]));
  }
  for (int i = 0; i <= dn; ++i)
    if (num[i] != 0) return false;
  return true;
}

}  // namespace

RsCode::RsCode(const Field& f, int msg_len, int block_len)
    : f_(f), l_(msg_len), k_(block_len) {
  if (l_ < 1 || k_ < l_) throw std::invalid_argument("rs: need 1 <= msg_len <= block_len");
  if (uint64_t(k_) > f_.order() - 1)
    throw std::invalid_argument("rs: block_len exceeds number of non-zero field elements");
  points_.resize(k_);
  for (int i = 0; i < k_; ++i) points_[i] = uint64_t(i) + 1;
}

std::vector<uint64_t> RsCode::encode(const std::vector<uint64_t>& msg) const {
  if (int(msg.size()) != l_) throw std::invalid_argument("rs: message size mismatch");
  std::vector<uint64_t> cw(k_);
  for (int i = 0; i < k_; ++i) cw[i] = f_.eval_poly(msg, points_[i]);
  return cw;
}

RsDecodeResult RsCode::decode(const std::vector<uint64_t>& received) const {
  double space = std::pow(double(f_.order()), double(l_));
  if (space <= double(exhaustive_limit)) return decode_exhaustive(received);
  return decode_berlekamp_welch(received);
}

RsDecodeResult RsCode::decode_exhaustive(const std::vector<uint64_t>& received) const {
  if (int(received.size()) != k_) throw std::invalid_argument("rs: received size mismatch");
  std::vector<uint64_t> msg(l_, 0);
  RsDecodeResult best;
  best.distance = k_ + 1;
  bool tie = false;
  while (true) {
    int dist = 0;
    for (int i = 0; i < k_ && dist < best.distance; ++i)
      if (f_.eval_poly(msg, points_[i]) != received[i]) ++dist;
    if (dist < best.distance) {
      best.distance = dist;
      best.message = msg;
      tie = false;
    } else if (dist == best.distance) {
      tie = true;  // enumeration order is lexicographic, keep the first
    }
    int pos = 0;
    while (pos < l_ && ++msg[pos] == f_.order()) msg[pos++] = 0;
    if (pos == l_) break;
  }
  best.ok = best.distance <= unique_radius();
  best.ambiguous = !best.ok && tie;
  return best;
}

RsDecodeResult RsCode::decode_berlekamp_welch(const std::vector<uint64_t>& received) const {
  if (int(received.size()) != k_) throw std::invalid_argument("rs: received size mismatch");
  int e = unique_radius();
  int qlen = l_ + e;   // deg Q < l + e
  int cols = qlen + e; // plus e non-leading coefficients of monic E
  RsDecodeResult out;

  // Q(x_i) + y_i E_low(x_i) = y_i x_i^e  with E = x^e + E_low.
  std::vector<uint64_t> a(size_t(k_) * cols), b(k_);
  for (int i = 0; i < k_; ++i) {
    uint64_t x = points_[i], p = 1;
    for (int j = 0; j < qlen; ++j) {
      a[size_t(i) * cols + j] = p;
      p = f_.mul(p, x);
    }
    p = 1;
    for (int j = 0; j < e; ++j) {
      a[size_t(i) * cols + qlen + j] = f_.mul(received[i], p);
      p = f_.mul(p, x);
    }
    b[i] = f_.mul(received[i], f_.pow(x, uint64_t(e)));
  }

  std::vector<uint64_t> z;
  bool solvable = solve_linear(f_, a, b, k_, cols, z);
  if (solvable) {
    std::vector<uint64_t> qpoly(z.begin(), z.begin() + qlen);
    std::vector<uint64_t> epoly(z.begin() + qlen, z.end());
    epoly.push_back(1);  // monic x^e term
    std::vector<uint64_t> msg;
    if (poly_divide(f_, qpoly, epoly, msg)) {
      msg.resize(l_, 0);
      bool degree_ok = true;
      for (size_t i = l_; i < msg.size(); ++i)
        if (msg[i] != 0) degree_ok = false;
      if (degree_ok) {
        out.message.assign(msg.begin(), msg.begin() + l_);
        for (int i = 0; i < k_; ++i)
          if (f_.eval_poly(out.message, points_[i]) != received[i]) ++out.distance;
        out.ok = out.distance <= unique_radius();
        out.ambiguous = !out.ok;
        if (out.ok) return out;
      }
    }
  }

  // Beyond the radius (or inconsistent system): deterministic best effort,
  // interpolate through the first msg_len coordinates.
  std::vector<uint64_t> a2(size_t(l_) * l_), b2(l_);
  for (int i = 0; i < l_; ++i) {
    uint64_t x = points_[i], p = 1;
    for (int j = 0; j < l_; ++j) {
      a2[size_t(i) * l_ + j] = p;
      p = f_.mul(p, x);
    }
    b2[i] = received[i];
  }
  std::vector<uint64_t> msg;
  solve_linear(f_, a2, b2, l_, l_, msg);
  out.message = msg;
  out.distance = 0;
  for (int i = 0; i < k_; ++i)
    if (f_.eval_poly(out.message, points_[i]) != received[i]) ++out.distance;
  out.ok = out.distance <= unique_radius();
  out.ambiguous = !out.ok;
  return out;
}

}  // namespace congesim::gf
