// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// Elements are stored as reduced coefficient vectors of length phi(m)
// (polynomials in zeta_m modulo the m-th cyclotomic polynomial), with
// arbitrary-precision rational coefficients.  Equality of field elements
// is coefficient-vector equality.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

class ZeroDivisionError : public std::runtime_error {
 public:
  ZeroDivisionError() : std::runtime_error("division by zero in Q(zeta_m)") {}
};

namespace detail {

// Phi_m as a monic integer polynomial, low degree first, computed by
// dividing x^m - 1 by the cyclotomic polynomials of the proper divisors.
inline std::vector<mpz_class> cyclotomic_poly(int m,
                                              std::map<int, std::vector<mpz_class>>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<mpz_class> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto phi_d = cyclotomic_poly(d, cache);
    // exact division num /= phi_d
    std::vector<mpz_class> quot(num.size() - phi_d.size() + 1, 0);
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
      mpz_class c = num[i + phi_d.size() - 1];
      quot[i] = c;  // phi_d is monic
      if (c != 0) {
        for (size_t j = 0; j < phi_d.size(); ++j) num[i + j] -= c * phi_d[j];
      }
    }
    num = std::move(quot);
  }
  cache[m] = num;
  return num;
}

}  // namespace detail

// Per-conductor reduction data, computed once and shared read-only.
class CycloContext {
 public:
  int conductor;
  int degree;                         // phi(m) = deg Phi_m
  std::vector<mpz_class> phi;         // Phi_m, monic, size degree+1
  std::vector<std::vector<mpq_class>> xpow;  // x^(degree+k) mod Phi_m, k=0..degree-2

  static const CycloContext& get(int m) {
    static std::mutex mu;
    static std::map<int, CycloContext> ctxs;
    std::lock_guard<std::mutex> lock(mu);
    auto it = ctxs.find(m);
    if (it != ctxs.end()) return it->second;
    if (m < 1) throw std::invalid_argument("conductor must be >= 1");
    CycloContext ctx;
    ctx.conductor = m;
    static std::map<int, std::vector<mpz_class>> poly_cache;
    ctx.phi = detail::cyclotomic_poly(m, poly_cache);
    ctx.degree = static_cast<int>(ctx.phi.size()) - 1;
    // x^(degree) mod Phi = -(phi[0] + ... + phi[degree-1] x^{degree-1})
    std::vector<mpq_class> cur(ctx.degree);
    for (int j = 0; j < ctx.degree; ++j) cur[j] = mpq_class(-ctx.phi[j]);
    if (ctx.degree >= 2) {
      ctx.xpow.push_back(cur);
      for (int k = 1; k + 1 < ctx.degree; ++k) {
        // multiply by x, reduce
        std::vector<mpq_class> nxt(ctx.degree);
        mpq_class top = cur[ctx.degree - 1];
        for (int j = ctx.degree - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top != 0)
          for (int j = 0; j < ctx.degree; ++j) nxt[j] += top * ctx.xpow[0][j];
        ctx.xpow.push_back(nxt);
        cur = std::move(nxt);
      }
    } else if (ctx.degree == 1) {
      ctx.xpow.push_back(cur);
    }
    auto [pos, ok] = ctxs.emplace(m, std::move(ctx));
    (void)ok;
    return pos->second;
  }

  static int euler_phi(int m) { return get(m).degree; }
};

class CycNum {
 public:
  CycNum() : m_(1), c_(1, mpq_class(0)) {}

  static CycNum zero(int m) { return CycNum(m); }

  static CycNum one(int m) {
    CycNum x(m);
    x.c_[0] = 1;
    return x;
  }

  static CycNum rational(int m, const mpq_class& q) {
    CycNum x(m);
    x.c_[0] = q;
    return x;
  }

  // zeta_m^k, k reduced mod m.
  static CycNum from_root(int m, long k) {
    const auto& ctx = CycloContext::get(m);
    k %= m;
    if (k < 0) k += m;
    CycNum x(m);
    if (k < ctx.degree) {
      x.c_[static_cast<size_t>(k)] = 1;
    } else {
      // reduce x^k via the power table by repeated use of xpow
      std::vector<mpq_class> raw(static_cast<size_t>(k) + 1, mpq_class(0));
      raw.back() = 1;
      x.c_ = reduce(ctx, raw);
    }
    return x;
  }

  int conductor() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  // Valid only when is_rational().
  const mpq_class& rational_value() const { return c_[0]; }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    int l = std::lcm(a.m_, b.m_);
    return a.embedded(l).c_ == b.embedded(l).c_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  CycNum operator-() const {
    CycNum r(*this);
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) {
    auto [x, y] = coerce(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }

  friend CycNum operator-(const CycNum& a, const CycNum& b) {
    auto [x, y] = coerce(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    auto [x, y] = coerce(a, b);
    const auto& ctx = CycloContext::get(x.m_);
    size_t d = x.c_.size();
    std::vector<mpq_class> raw(2 * d - 1, mpq_class(0));
    for (size_t i = 0; i < d; ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < d; ++j) {
        if (y.c_[j] == 0) continue;
        raw[i + j] += x.c_[i] * y.c_[j];
      }
    }
    CycNum r(x.m_);
    r.c_ = reduce(ctx, raw);
    return r;
  }

  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  // Multiplicative inverse via the extended Euclidean algorithm on
  // (this, Phi_m) in Q[x].
  CycNum inverse() const {
    if (is_zero()) throw ZeroDivisionError();
    const auto& ctx = CycloContext::get(m_);
    if (is_rational()) return rational(m_, mpq_class(1) / c_[0]);
    // r0 = Phi_m, r1 = this; track s only against r1.
    std::vector<mpq_class> r0(ctx.phi.size());
    for (size_t i = 0; i < ctx.phi.size(); ++i) r0[i] = mpq_class(ctx.phi[i]);
    std::vector<mpq_class> r1 = trimmed(c_);
    std::vector<mpq_class> s0{}, s1{mpq_class(1)};  // s0 = 0, s1 = 1
    while (!r1.empty()) {
      auto [q, rem] = poly_divmod(r0, r1);
      std::vector<mpq_class> s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant, since Phi_m is irreducible over Q)
    if (r0.size() != 1) throw std::logic_error("cyclotomic inverse: gcd not constant");
    mpq_class lead = r0[0];
    CycNum out(m_);
    for (size_t i = 0; i < s0.size() && i < out.c_.size(); ++i) out.c_[i] = s0[i] / lead;
    if (s0.size() > out.c_.size()) {
      // reduce (cannot happen: deg s0 < deg Phi), guard anyway
      std::vector<mpq_class> raw = s0;
      for (auto& q : raw) q /= lead;
      out.c_ = reduce(ctx, raw);
    }
    return out;
  }

  // Ring embedding Q(zeta_m) -> Q(zeta_l) for m | l, via zeta_m = zeta_l^(l/m).
  CycNum embedded(int l) const {
    if (l == m_) return *this;
    if (l % m_ != 0) throw std::invalid_argument("embedding conductor must be a multiple");
    const auto& ctx = CycloContext::get(l);
    long step = l / m_;
    std::vector<mpq_class> raw(static_cast<size_t>(step) * (c_.size() - 1) + 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
    CycNum r(l);
    r.c_ = reduce(ctx, raw);
    return r;
  }

  // Canonical serialization: comma-joined "p/q" coefficient strings.
  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += c_[i].get_num().get_str();
      s += '/';
      s += c_[i].get_den().get_str();
    }
    return s;
  }

  // Complex double approximation (debug/printing only, non-contractual).
  std::pair<double, double> approx() const {
    double re = 0, im = 0;
    const double pi = 3.14159265358979323846;
    for (size_t k = 0; k < c_.size(); ++k) {
      double q = c_[k].get_d();
      re += q * std::cos(2 * pi * static_cast<double>(k) / m_);
      im += q * std::sin(2 * pi * static_cast<double>(k) / m_);
    }
    return {re, im};
  }

 private:
  explicit CycNum(int m) : m_(m) {
    c_.assign(static_cast<size_t>(CycloContext::euler_phi(m)), mpq_class(0));
  }

  static std::pair<CycNum, CycNum> coerce(const CycNum& a, const CycNum& b) {
    if (a.m_ == b.m_) return {a, b};
    int l = std::lcm(a.m_, b.m_);
    return {a.embedded(l), b.embedded(l)};
  }

  static std::vector<mpq_class> reduce(const CycloContext& ctx,
                                       const std::vector<mpq_class>& raw) {
    std::vector<mpq_class> out(static_cast<size_t>(ctx.degree), mpq_class(0));
    std::vector<mpq_class> work = raw;
    // reduce from the top using precomputed x^(degree+k) tables where
    // possible, otherwise long division by Phi (monic)
    for (int i = static_cast<int>(work.size()) - 1; i >= ctx.degree; --i) {
      mpq_class q = work[i];
      if (q == 0) continue;
      work[i] = 0;
      int k = i - ctx.degree;
      if (k < static_cast<int>(ctx.xpow.size())) {
        for (int j = 0; j < ctx.degree; ++j)
          if (ctx.xpow[k][j] != 0) work[j] += q * ctx.xpow[k][j];
      } else {
        for (int j = 0; j <= ctx.degree; ++j)
          if (ctx.phi[j] != 0) work[i - ctx.degree + j] -= q * mpq_class(ctx.phi[j]);
        work[i] = 0;
      }
    }
    for (int j = 0; j < ctx.degree && j < static_cast<int>(work.size()); ++j) out[j] = work[j];
    return out;
  }

  static std::vector<mpq_class> trimmed(const std::vector<mpq_class>& p) {
    size_t n = p.size();
    while (n > 0 && p[n - 1] == 0) --n;
    return std::vector<mpq_class>(p.begin(), p.begin() + n);
  }

  static std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a,
                                         const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trimmed(r);
  }

  static std::vector<mpq_class> poly_sub(const std::vector<mpq_class>& a,
                                         const std::vector<mpq_class>& b) {
    std::vector<mpq_class> r = a;
    if (b.size() > r.size()) r.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trimmed(r);
  }

  static std::pair<std::vector<mpq_class>, std::vector<mpq_class>> poly_divmod(
      const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    std::vector<mpq_class> rem = a;
    if (b.empty()) throw std::logic_error("poly division by zero");
    if (a.size() < b.size()) return {{}, trimmed(rem)};
    std::vector<mpq_class> quot(a.size() - b.size() + 1, mpq_class(0));
    mpq_class lead = b.back();
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
      mpq_class c = rem[i + b.size() - 1] / lead;
      quot[i] = c;
      if (c != 0)
        for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
    }
    return {trimmed(quot), trimmed(rem)};
  }

  int m_;
  std::vector<mpq_class> c_;
};

}  // namespace ncg
