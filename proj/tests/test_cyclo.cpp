#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "ncgarside/cyclo.hpp"

using ncg::CycNum;
using ncg::CycloContext;

namespace {

// Deterministic small PRNG for the property tests.
struct Rng {
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

CycNum random_elem(Rng& rng, int m) {
  CycNum x = CycNum::zero(m);
  int phi = CycloContext::euler_phi(m);
  for (int k = 0; k < phi; ++k) {
    mpq_class q(rng.range(-5, 5), rng.range(1, 4));
    q.canonicalize();
    x += CycNum::rational(m, q) * CycNum::from_root(m, k);
  }
  return x;
}

}  // namespace

TEST_CASE("euler phi values") {
  CHECK(CycloContext::euler_phi(1) == 1);
  CHECK(CycloContext::euler_phi(2) == 1);
  CHECK(CycloContext::euler_phi(3) == 2);
  CHECK(CycloContext::euler_phi(4) == 2);
  CHECK(CycloContext::euler_phi(5) == 4);
  CHECK(CycloContext::euler_phi(12) == 4);
  CHECK(CycloContext::euler_phi(15) == 8);
}

TEST_CASE("primitive roots have multiplicative order m") {
  for (int m : {2, 3, 4, 5, 6, 7, 8, 12, 15}) {
    CycNum z = CycNum::from_root(m, 1);
    CycNum p = z;
    for (int k = 1; k < m; ++k) {
      CHECK(p != CycNum::one(m));
      p *= z;
    }
    CHECK(p == CycNum::one(m));
  }
}

TEST_CASE("golden ratio from fifth roots: x = zeta5 + zeta5^4 solves x^2 + x - 1 = 0") {
  CycNum x = CycNum::from_root(5, 1) + CycNum::from_root(5, 4);
  CycNum lhs = x * x + x - CycNum::one(5);
  CHECK(lhs.is_zero());
}

TEST_CASE("(zeta8 + zeta8^-1)^2 = 2") {
  CycNum x = CycNum::from_root(8, 1) + CycNum::from_root(8, -1);
  CycNum sq = x * x;
  CHECK(sq.is_rational());
  CHECK(sq.rational_value() == 2);
}

TEST_CASE("sum of all m-th roots vanishes for m > 1") {
  for (int m : {2, 3, 4, 6, 7, 9, 10, 12}) {
    CycNum s = CycNum::zero(m);
    for (int k = 0; k < m; ++k) s += CycNum::from_root(m, k);
    CHECK(s.is_zero());
  }
}

TEST_CASE("field axioms on random elements") {
  Rng rng;
  for (int m : {3, 4, 5, 7, 8, 12}) {
    for (int trial = 0; trial < 20; ++trial) {
      CycNum a = random_elem(rng, m);
      CycNum b = random_elem(rng, m);
      CycNum c = random_elem(rng, m);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == CycNum::zero(m));
      CHECK(a * CycNum::one(m) == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == CycNum::one(m));
    }
  }
}

TEST_CASE("inverse of zero throws") {
  CHECK_THROWS_AS(CycNum::zero(5).inverse(), ncg::ZeroDivisionError);
}

TEST_CASE("conductor embedding is a ring homomorphism") {
  Rng rng;
  for (auto [m, l] : std::vector<std::pair<int, int>>{{3, 6}, {3, 12}, {4, 12}, {5, 15}}) {
    for (int trial = 0; trial < 10; ++trial) {
      CycNum a = random_elem(rng, m);
      CycNum b = random_elem(rng, m);
      CHECK((a + b).embedded(l) == a.embedded(l) + b.embedded(l));
      CHECK((a * b).embedded(l) == a.embedded(l) * b.embedded(l));
    }
    // zeta_m maps to zeta_l^(l/m)
    CHECK(CycNum::from_root(m, 1).embedded(l) == CycNum::from_root(l, l / m));
  }
}

TEST_CASE("mixed-conductor arithmetic coerces to the lcm") {
  CycNum a = CycNum::from_root(3, 1);   // omega
  CycNum b = CycNum::from_root(4, 1);   // i
  CycNum prod = a * b;                  // zeta_12^7
  CHECK(prod == CycNum::from_root(12, 7));
  CHECK(prod.conductor() == 12);
}

TEST_CASE("canonicalization: exponents reduce mod Phi_m to identical vectors") {
  for (int m : {5, 7, 8, 9, 12}) {
    for (int k = 0; k < m; ++k) {
      CHECK(CycNum::from_root(m, k) == CycNum::from_root(m, k + m));
      CHECK(CycNum::from_root(m, k) == CycNum::from_root(m, k - m));
      CHECK(CycNum::from_root(m, k).to_string() ==
            CycNum::from_root(m, k + 3 * m).to_string());
    }
  }
}

TEST_CASE("quadratic Gauss sum: (sum of legendre-weighted 7th roots)^2 = -7") {
  // zeta + zeta^2 + zeta^4 - zeta^3 - zeta^5 - zeta^6 squares to -7
  CycNum s = CycNum::from_root(7, 1) + CycNum::from_root(7, 2) + CycNum::from_root(7, 4) -
             CycNum::from_root(7, 3) - CycNum::from_root(7, 5) - CycNum::from_root(7, 6);
  CycNum sq = s * s;
  CHECK(sq.is_rational());
  CHECK(sq.rational_value() == -7);
}

TEST_CASE("to_string round stability under arithmetic no-ops") {
  Rng rng;
  for (int trial = 0; trial < 20; ++trial) {
    CycNum a = random_elem(rng, 12);
    CHECK((a + CycNum::zero(12)).to_string() == a.to_string());
    CHECK((a * CycNum::one(12)).to_string() == a.to_string());
  }
}
