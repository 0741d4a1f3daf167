// The dual braid monoid as an interval Garside monoid over the simples
// [1,c]: left-greedy normal forms, the word problem, divisibility, the
// center, and the dual presentation on the atoms R_c.

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncgarside/interval.hpp"

namespace ncg {

class AtomResolutionFailure : public std::runtime_error {
 public:
  AtomResolutionFailure()
      : std::runtime_error("conjugated atom left R_c while emitting relations") {}
};

// Left-greedy normal form: factor sequence of simple indices, no identity
// factors, empty sequence = identity of M.
struct MonoidElement {
  std::vector<int> factors;

  friend bool operator==(const MonoidElement& a, const MonoidElement& b) {
    return a.factors == b.factors;
  }
  friend bool operator!=(const MonoidElement& a, const MonoidElement& b) {
    return !(a == b);
  }
};

struct Presentation {
  std::vector<int> generators;  // atom indices (positions in p.atoms)
  // each relation: lhs and rhs are length-2 atom-index words, equal in M
  std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> relations;
};

class DualBraidMonoid {
 public:
  explicit DualBraidMonoid(const IntervalPoset& p) : p_(&p) {}

  const IntervalPoset& poset() const { return *p_; }
  int delta() const { return p_->top; }

  // The partial product on simples: a*b when ranks add and ab stays in [1,c].
  std::optional<int> simple_product(int a, int b) const {
    Matrix m = p_->elements[a] * p_->elements[b];
    int idx = p_->index_of(m);
    if (idx < 0) return std::nullopt;
    if (p_->rank_of[a] + p_->rank_of[b] != p_->rank_of[idx]) return std::nullopt;
    return idx;
  }

  // m^-1 b for m <= b (the right complement of m in the simple b).
  int left_complement(int m, int b) const {
    Matrix q = p_->elements[m].inverse() * p_->elements[b];
    int idx = p_->index_of(q);
    if (idx < 0 || p_->rank_of[m] + p_->rank_of[idx] != p_->rank_of[b])
      throw std::logic_error("left_complement: m does not divide b");
    return idx;
  }

  MonoidElement normal_form(const std::vector<int>& word) const {
    std::vector<int> f;
    for (int s : word)
      if (s != p_->bottom) f.push_back(s);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i + 1 < f.size(); ++i) {
        int a = f[i], b = f[i + 1];
        int m = p_->meet(p_->kreweras(a), b);
        if (m < 0) throw std::logic_error("normal_form: meet undefined");
        if (m == p_->bottom) continue;
        auto ap = simple_product(a, m);
        if (!ap) throw std::logic_error("normal_form: absorbed product not simple");
        int bp = left_complement(m, b);
        f[i] = *ap;
        if (bp == p_->bottom) {
          f.erase(f.begin() + i + 1);
        } else {
          f[i + 1] = bp;
        }
        changed = true;
      }
    }
    return MonoidElement{std::move(f)};
  }

  MonoidElement multiply(const MonoidElement& x, const MonoidElement& y) const {
    std::vector<int> word = x.factors;
    word.insert(word.end(), y.factors.begin(), y.factors.end());
    return normal_form(word);
  }

  bool word_equal(const std::vector<int>& w1, const std::vector<int>& w2) const {
    return normal_form(w1) == normal_form(w2);
  }

  // x left-divides y.  A simple divides an element iff it is below the
  // first factor of the left-greedy normal form; peel factor by factor.
  bool left_divides(const MonoidElement& x, const MonoidElement& y) const {
    std::vector<int> rest = normal_form(y.factors).factors;
    for (int a : x.factors) {
      if (rest.empty()) return false;
      int head = rest.front();
      if (!p_->leq(a, head)) return false;
      int comp = left_complement(a, head);
      if (comp == p_->bottom) {
        rest.erase(rest.begin());
      } else {
        rest.front() = comp;
      }
      rest = normal_form(rest).factors;
    }
    return true;
  }

  // conjugation by delta: tau(s) = delta s delta^-1, a bijection of simples.
  int tau(int s) const {
    Matrix m = p_->coxeter * p_->elements[s] * p_->coxeter.inverse();
    int idx = p_->index_of(m);
    if (idx < 0) throw std::logic_error("tau left the simples");
    return idx;
  }

  int tau_inv(int s) const {
    Matrix m = p_->coxeter.inverse() * p_->elements[s] * p_->coxeter;
    int idx = p_->index_of(m);
    if (idx < 0) throw std::logic_error("tau^-1 left the simples");
    return idx;
  }

  // Image in W of a monoid element (monoid morphism M -> W).
  Matrix to_group(const MonoidElement& x) const {
    Matrix m = Matrix::identity(p_->entry.rank, p_->entry.conductor);
    for (int s : x.factors) m = m * p_->elements[s];
    return m;
  }

  // Dual presentation: atoms R_c, relations r r' = r' r'' for every ordered
  // pair of distinct atoms whose product is a simple.
  Presentation dual_presentation() const {
    Presentation pres;
    int k = static_cast<int>(p_->atoms.size());
    for (int a = 0; a < k; ++a) pres.generators.push_back(a);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        if (!simple_product(p_->atoms[a], p_->atoms[b])) continue;
        // r'' = r'^-1 r r'
        const Matrix& R = p_->elements[p_->atoms[a]];
        const Matrix& Rp = p_->elements[p_->atoms[b]];
        Matrix rpp = Rp * R * Rp;
        int idx = p_->index_of(rpp);
        if (idx < 0 || p_->rank_of[idx] != 1) throw AtomResolutionFailure();
        auto it = std::lower_bound(p_->atoms.begin(), p_->atoms.end(), idx);
        int c = static_cast<int>(it - p_->atoms.begin());
        std::array<int, 2> lhs{a, b}, rhs{b, c};
        if (rhs < lhs) std::swap(lhs, rhs);
        pres.relations.emplace_back(lhs, rhs);
      }
    std::sort(pres.relations.begin(), pres.relations.end());
    pres.relations.erase(std::unique(pres.relations.begin(), pres.relations.end()),
                         pres.relations.end());
    return pres;
  }

  std::string presentation_text(const Presentation& pres) const {
    auto name = [](int a) { return "r" + std::to_string(a + 1); };
    std::string s = "generators";
    for (int g : pres.generators) s += " " + name(g);
    s += "\n";
    for (const auto& [lhs, rhs] : pres.relations)
      s += name(lhs[0]) + "." + name(lhs[1]) + " = " + name(rhs[0]) + "." + name(rhs[1]) +
           "\n";
    return s;
  }

  nlohmann::json presentation_json(const Presentation& pres) const {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["group"] = p_->entry.name;
    doc["generator_count"] = pres.generators.size();
    std::vector<std::vector<std::vector<int>>> rels;
    for (const auto& [lhs, rhs] : pres.relations)
      rels.push_back({{lhs[0], lhs[1]}, {rhs[0], rhs[1]}});
    doc["relations"] = rels;
    return doc;
  }

 private:
  const IntervalPoset* p_;
};

// Smallest a >= 1 such that c^a is central in W.
inline int center_exponent(const GroupCatalogEntry& entry, const Matrix& c) {
  Matrix p = c;
  for (int a = 1; a <= entry.coxeter_number; ++a) {
    bool central = true;
    for (const auto& g : entry.generators)
      if (p * g != g * p) {
        central = false;
        break;
      }
    if (central) return a;
    p = p * c;
  }
  throw std::logic_error("c^h should act centrally");
}

}  // namespace ncg
