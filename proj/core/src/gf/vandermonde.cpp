#include "congesim/gf/vandermonde.hpp"

#include <stdexcept>

namespace congesim::gf {

Vandermonde::Vandermonde(const Field& f, int n, int t) : f_(f), n_(n), cols_(n - t) {
  if (n < 1) throw std::invalid_argument("vandermonde: n must be >= 1");
  if (t < 0 || t >= n) throw std::invalid_argument("vandermonde: need 0 <= t < n");
  if (uint64_t(n) > f.order() - 1)
    throw std::invalid_argument("vandermonde: n exceeds number of non-zero field elements");
  m_.resize(size_t(n_) * cols_);
  for (int j = 0; j < n_; ++j) {
    uint64_t alpha = uint64_t(j) + 1;  // first n non-zero elements, numeric order
    uint64_t p = 1;
    for (int i = 0; i < cols_; ++i) {
      m_[size_t(j) * cols_ + i] = p;
      p = f_.mul(p, alpha);
    }
  }
}

uint64_t Vandermonde::entry(int row, int col) const {
  return m_[size_t(row) * cols_ + col];
}

std::vector<uint64_t> Vandermonde::apply(const std::vector<uint64_t>& x) const {
  if (int(x.size()) != n_) throw std::invalid_argument("vandermonde: input size mismatch");
  std::vector<uint64_t> y(cols_, 0);
  for (int j = 0; j < n_; ++j) {
    if (x[j] == 0) continue;
    const uint64_t* row = &m_[size_t(j) * cols_];
    for (int i = 0; i < cols_; ++i) y[i] = f_.add(y[i], f_.mul(row[i], x[j]));
  }
  return y;
}

std::vector<uint64_t> extract_uniform(const Field& f, const std::vector<uint64_t>& x, int t) {
  Vandermonde m(f, int(x.size()), t);
  return m.apply(x);
}

}  // namespace congesim::gf
