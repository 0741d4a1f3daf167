// Exact dense linear algebra over Q(zeta_m): products, inverses, ranks,
// characteristic polynomials.  All matrices in one group computation share
// a single conductor.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncgarside/cyclo.hpp"

namespace ncg {

class DimensionMismatch : public std::runtime_error {
 public:
  DimensionMismatch() : std::runtime_error("matrix dimension/conductor mismatch") {}
};

class Matrix {
 public:
  Matrix() : n_(0), m_(1) {}

  Matrix(int n, int conductor)
      : n_(n), m_(conductor), a_(static_cast<size_t>(n) * n, CycNum::zero(conductor)) {}

  static Matrix identity(int n, int conductor) {
    Matrix id(n, conductor);
    for (int i = 0; i < n; ++i) id.at(i, i) = CycNum::one(conductor);
    return id;
  }

  int size() const { return n_; }
  int conductor() const { return m_; }

  CycNum& at(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  const CycNum& at(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_ || a.m_ != b.m_) throw DimensionMismatch();
    Matrix r(a.n_, a.m_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const CycNum& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.n_; ++j) {
          const CycNum& bkj = b.at(k, j);
          if (bkj.is_zero()) continue;
          r.at(i, j) += aik * bkj;
        }
      }
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const CycNum& e = at(i, j);
        if (i == j) {
          if (!e.is_rational() || e.rational_value() != 1) return false;
        } else if (!e.is_zero()) {
          return false;
        }
      }
    return true;
  }

  // rank(this - lambda*I) by exact Gaussian elimination.
  int rank_minus_scalar(const CycNum& lambda) const {
    std::vector<CycNum> w = a_;
    for (int i = 0; i < n_; ++i) w[static_cast<size_t>(i) * n_ + i] -= lambda;
    return rank_in_place(w, n_);
  }

  // codim fix = rank(this - I)
  int fixed_space_codim() const { return rank_minus_scalar(CycNum::one(m_)); }

  Matrix inverse() const {
    // Gauss-Jordan on [A | I]
    Matrix inv = identity(n_, m_);
    std::vector<CycNum> w = a_;
    auto W = [&](int r, int c) -> CycNum& { return w[static_cast<size_t>(r) * n_ + c]; };
    for (int col = 0; col < n_; ++col) {
      int piv = -1;
      for (int r = col; r < n_; ++r)
        if (!W(r, col).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::runtime_error("matrix not invertible");
      if (piv != col) {
        for (int c = 0; c < n_; ++c) {
          std::swap(W(piv, c), W(col, c));
          std::swap(inv.at(piv, c), inv.at(col, c));
        }
      }
      CycNum d = W(col, col).inverse();
      for (int c = 0; c < n_; ++c) {
        W(col, c) *= d;
        inv.at(col, c) *= d;
      }
      for (int r = 0; r < n_; ++r) {
        if (r == col || W(r, col).is_zero()) continue;
        CycNum f = W(r, col);
        for (int c = 0; c < n_; ++c) {
          W(r, c) -= f * W(col, c);
          inv.at(r, c) -= f * inv.at(col, c);
        }
      }
    }
    return inv;
  }

  // Characteristic polynomial det(xI - A), monic, low degree first,
  // by the Faddeev-LeVerrier recursion (exact over Q(zeta_m)).
  std::vector<CycNum> char_poly() const {
    std::vector<CycNum> c(static_cast<size_t>(n_) + 1, CycNum::zero(m_));
    c[n_] = CycNum::one(m_);
    Matrix Mk = identity(n_, m_);
    for (int k = 1; k <= n_; ++k) {
      Mk = *this * Mk;
      CycNum tr = CycNum::zero(m_);
      for (int i = 0; i < n_; ++i) tr += Mk.at(i, i);
      CycNum ck = tr * CycNum::rational(m_, mpq_class(-1, k));
      c[n_ - k] = ck;
      for (int i = 0; i < n_; ++i) Mk.at(i, i) += ck;
    }
    return c;
  }

  Matrix pow(long k) const {
    Matrix r = identity(n_, m_);
    Matrix base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  // Canonical key: entries row-major, ';'-separated coefficient strings.
  std::string key() const {
    std::string s;
    s.reserve(a_.size() * 8);
    for (size_t i = 0; i < a_.size(); ++i) {
      if (i) s += ';';
      s += a_[i].to_string();
    }
    return s;
  }

 private:
  static int rank_in_place(std::vector<CycNum>& w, int n) {
    auto W = [&](int r, int c) -> CycNum& { return w[static_cast<size_t>(r) * n + c]; };
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
      int piv = -1;
      for (int r = rank; r < n; ++r)
        if (!W(r, col).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      if (piv != rank)
        for (int c = col; c < n; ++c) std::swap(W(piv, c), W(rank, c));
      CycNum d = W(rank, col).inverse();
      for (int c = col; c < n; ++c) W(rank, c) *= d;
      for (int r = rank + 1; r < n; ++r) {
        if (W(r, col).is_zero()) continue;
        CycNum f = W(r, col);
        for (int c = col; c < n; ++c) W(r, c) -= f * W(rank, c);
      }
      ++rank;
    }
    return rank;
  }

  int n_;
  int m_;
  std::vector<CycNum> a_;
};

}  // namespace ncg
