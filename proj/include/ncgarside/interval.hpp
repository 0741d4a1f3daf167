// The noncrossing-partition interval [1,c] in absolute order: poset
// construction by downward BFS from the Coxeter element, lattice
// verification, Kreweras complement, and the enumerative invariants
// (Catalan number, zeta counts, Poincare polynomial, chain counts).

#pragma once

#include <atomic>
#include <bit>
#include <cstring>
#include <chrono>
#include <tuple>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ncgarside/reflgroup.hpp"

namespace ncg {

class CardinalMismatch : public std::runtime_error {
 public:
  CardinalMismatch(std::uint64_t found, const std::string& expected)
      : std::runtime_error("interval has " + std::to_string(found) +
                           " elements, expected Cat(W) = " + expected) {}
};

class FormulaMismatch : public std::runtime_error {
 public:
  explicit FormulaMismatch(const std::string& what)
      : std::runtime_error("formula verification failed: " + what) {}
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what)
      : std::runtime_error("enumeration cap exceeded: " + what) {}
};

struct NotALattice {
  int u = -1;
  int w = -1;
  bool meet_side = true;
  std::vector<int> maximal_bounds;  // the offending maximal common bounds
};

struct LatticeReport {
  std::uint64_t pairs = 0;
  std::vector<NotALattice> failures;
  double elapsed_ms = 0.0;
  bool ok() const { return failures.empty(); }
};

// Dense bit table; row i holds a subset of {0..cols-1}.
class BitTable {
 public:
  BitTable() = default;
  BitTable(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
        w_(rows * stride_, 0) {}

  void set(size_t r, size_t c) { w_[r * stride_ + c / 64] |= 1ull << (c % 64); }
  bool get(size_t r, size_t c) const {
    return (w_[r * stride_ + c / 64] >> (c % 64)) & 1ull;
  }
  size_t rows() const { return rows_; }
  size_t stride() const { return stride_; }
  const std::uint64_t* row(size_t r) const { return w_.data() + r * stride_; }
  std::uint64_t* row(size_t r) { return w_.data() + r * stride_; }

  void or_row(size_t dst, size_t src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (size_t i = 0; i < stride_; ++i) d[i] |= s[i];
  }

 private:
  size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> w_;
};

namespace detail {

// Runs fn(t, begin, end) on `threads` workers over [0, n).
inline void parallel_ranges(size_t n, int threads,
                            const std::function<void(int, size_t, size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    fn(0, 0, n);
    return;
  }
  size_t t = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  size_t chunk = (n + t - 1) / t;
  for (size_t i = 0; i < t; ++i) {
    size_t b = i * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, static_cast<int>(i), b, e);
  }
  for (auto& th : pool) th.join();
}

// Integer fast path for conductor 1: group elements in a root basis have
// small integer entries, so the BFS can run on machine integers with
// fraction-free rank computation instead of rational arithmetic.

using IntMat = std::vector<long long>;

// nullopt when any entry is non-integral (or the conductor is not 1).
inline std::optional<IntMat> as_integer(const Matrix& m) {
  if (m.conductor() != 1) return std::nullopt;
  int n = m.size();
  IntMat out(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const mpq_class& q = m.at(i, j).coeffs()[0];
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
      out[static_cast<size_t>(i) * n + j] = q.get_num().get_si();
    }
  return out;
}

inline Matrix from_integer(const IntMat& a, int n) {
  Matrix m(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = CycNum::rational(
          1, mpq_class(static_cast<long>(a[static_cast<size_t>(i) * n + j])));
  return m;
}

inline IntMat imul(int n, const IntMat& a, const IntMat& b) {
  IntMat r(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        r[static_cast<size_t>(i) * n + j] += aik * b[static_cast<size_t>(k) * n + j];
    }
  return r;
}

// rank(a - I) by Bareiss fraction-free elimination; all intermediate values
// are minors of the original matrix, so they stay within 64 bits for the
// small entries arising here (128-bit products guard the updates).
inline int icodim(int n, const IntMat& a) {
  IntMat w = a;
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i) * n + i] -= 1;
  auto W = [&](int r, int c) -> long long& { return w[static_cast<size_t>(r) * n + c]; };
  int rank = 0;
  long long prev = 1;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (W(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = col; c < n; ++c) std::swap(W(piv, c), W(rank, c));
    for (int r = rank + 1; r < n; ++r) {
      for (int c = col + 1; c < n; ++c)
        W(r, c) = static_cast<long long>(
            (static_cast<__int128>(W(rank, col)) * W(r, c) -
             static_cast<__int128>(W(r, col)) * W(rank, c)) /
            prev);
      W(r, col) = 0;
    }
    prev = W(rank, col);
    ++rank;
  }
  return rank;
}

inline std::string ikey(const IntMat& a) {
  std::string s(a.size() * sizeof(long long), '\0');
  std::memcpy(s.data(), a.data(), s.size());
  return s;
}

}  // namespace detail

// u <= w in absolute order: codim fix(u) + codim fix(u^-1 w) = codim fix(w).
// Contractually restricted to elements of [1,c].
inline bool absolute_leq(const Matrix& u, const Matrix& w) {
  return u.fixed_space_codim() + (u.inverse() * w).fixed_space_codim() ==
         w.fixed_space_codim();
}

class IntervalPoset {
 public:
  GroupCatalogEntry entry;
  Matrix coxeter;
  std::vector<Matrix> elements;          // sorted by (rank, canonical key)
  std::vector<int> rank_of;
  std::vector<std::vector<std::pair<int, int>>> preds;  // u -> {(v, atom)}, v covered by u
  std::vector<int> atoms;                // element indices of the rank-1 simples (R_c)
  int bottom = -1, top = -1;
  BitTable down;                         // row u: {v : v <= u}
  BitTable up;                           // row u: {v : u <= v}
  std::vector<int> kreweras_of;          // u -> index of u^-1 c
  std::vector<mpz_class> chain_count;    // max chains of [1,u]

  int size() const { return static_cast<int>(elements.size()); }

  int index_of(const Matrix& g) const {
    auto it = key_index_.find(g.key());
    return it == key_index_.end() ? -1 : it->second;
  }

  bool leq(int u, int w) const { return down.get(w, u); }

  int kreweras(int u) const { return kreweras_of[u]; }
  int kreweras_inv(int u) const { return kreweras_inv_[u]; }

  // ---- lattice operations -------------------------------------------------

  // Unique maximal common lower bound; failure is reported, not thrown.
  int meet(int u, int w, NotALattice* fail = nullptr) const {
    size_t s = down.stride();
    const auto* a = down.row(u);
    const auto* b = down.row(w);
    std::vector<std::uint64_t> d(s);
    int last = -1;
    for (size_t i = 0; i < s; ++i) d[i] = a[i] & b[i];
    for (size_t i = s; i-- > 0;)
      if (d[i]) {
        last = static_cast<int>(i * 64 + 63 - std::countl_zero(d[i]));
        break;
      }
    // bottom is always a common lower bound
    const auto* m = down.row(last);
    for (size_t i = 0; i < s; ++i)
      if ((d[i] & ~m[i]) != 0) {
        if (fail) *fail = describe_failure(d, u, w, true);
        return -1;
      }
    return last;
  }

  int join(int u, int w, NotALattice* fail = nullptr) const {
    size_t s = up.stride();
    const auto* a = up.row(u);
    const auto* b = up.row(w);
    std::vector<std::uint64_t> d(s);
    int first = -1;
    for (size_t i = 0; i < s; ++i) d[i] = a[i] & b[i];
    for (size_t i = 0; i < s; ++i)
      if (d[i]) {
        first = static_cast<int>(i * 64 + std::countr_zero(d[i]));
        break;
      }
    const auto* m = up.row(first);
    for (size_t i = 0; i < s; ++i)
      if ((d[i] & ~m[i]) != 0) {
        if (fail) *fail = describe_failure(d, u, w, false);
        return -1;
      }
    return first;
  }

  // Machine verification of the lattice property over all unordered pairs.
  LatticeReport verify_lattice(int threads = 1) const {
    auto t0 = std::chrono::steady_clock::now();
    LatticeReport rep;
    size_t n = elements.size();
    rep.pairs = n * (n + 1) / 2;
    std::vector<std::vector<NotALattice>> local(std::max(threads, 1));
    detail::parallel_ranges(n, threads, [&](int t, size_t b, size_t e) {
      for (size_t u = b; u < e; ++u)
        for (size_t w = u; w < n; ++w) {
          NotALattice f;
          if (meet(static_cast<int>(u), static_cast<int>(w), &f) < 0)
            local[t].push_back(f);
          if (join(static_cast<int>(u), static_cast<int>(w), &f) < 0)
            local[t].push_back(f);
        }
    });
    for (auto& l : local)
      rep.failures.insert(rep.failures.end(), l.begin(), l.end());
    std::sort(rep.failures.begin(), rep.failures.end(),
              [](const NotALattice& a, const NotALattice& b) {
                return std::tie(a.u, a.w, a.meet_side) < std::tie(b.u, b.w, b.meet_side);
              });
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
  }

  // ---- enumerative invariants --------------------------------------------

  std::vector<mpz_class> poincare_polynomial() const {
    std::vector<mpz_class> coeff(entry.rank + 1, 0);
    for (int r : rank_of) coeff[r] += 1;
    return coeff;
  }

  mpz_class count_maximal_chains() const { return chain_count[top]; }

  // Weak N-chains s_1 <= ... <= s_N counted by DP over the order relation;
  // verified against the product formula.
  mpz_class zeta_count(int N) const {
    if (N < 1) throw std::invalid_argument("zeta_count: N >= 1 required");
    size_t n = elements.size();
    std::vector<mpz_class> v(n, 1);
    for (int step = 1; step < N; ++step) {
      std::vector<mpz_class> nv(n, 0);
      for (size_t u = 0; u < n; ++u) {
        const auto* d = down.row(u);
        mpz_class acc = 0;
        for (size_t i = 0; i < down.stride(); ++i) {
          std::uint64_t word = d[i];
          while (word) {
            int b = std::countr_zero(word);
            word &= word - 1;
            acc += v[i * 64 + b];
          }
        }
        nv[u] = std::move(acc);
      }
      v = std::move(nv);
    }
    mpz_class total = 0;
    for (auto& x : v) total += x;
    if (total != zeta_formula(entry, N))
      throw FormulaMismatch(entry.name + ": Z_W(" + std::to_string(N) + ") = " +
                            total.get_str() + " vs formula " +
                            zeta_formula(entry, N).get_str());
    return total;
  }

  // All reduced decompositions of element u, as sequences of atom indices
  // whose partial products climb a maximal chain of [1,u].
  std::vector<std::vector<int>> reduced_decompositions(int u,
                                                       std::uint64_t cap = 10000000) const {
    if (chain_count[u] > mpz_class(static_cast<unsigned long>(cap)))
      throw CapExceeded("Red_R for " + entry.name + " element " + std::to_string(u));
    std::vector<std::vector<int>> out;
    std::vector<int> labels;
    enumerate_chains(u, labels, out);
    return out;
  }

  // ---- construction -------------------------------------------------------

  static IntervalPoset build(const GroupCatalogEntry& entry, const Matrix& c,
                             const std::vector<Reflection>& reflections,
                             int threads = 1) {
    IntervalPoset p;
    p.entry = entry;
    p.coxeter = c;
    const int n_rank = c.fixed_space_codim();

    // Downward BFS from c: predecessors of u are {r*u : codim drops by 1}.
    struct Node {
      Matrix mat;
      int rank;
      std::vector<std::pair<int, int>> pred_keys;  // (pred node id, reflection id)
    };
    std::vector<Node> nodes;

    auto c_int = detail::as_integer(c);
    std::vector<detail::IntMat> refl_int;
    bool use_int = c_int.has_value();
    if (use_int)
      for (const auto& r : reflections) {
        auto ri = detail::as_integer(r.element);
        if (!ri) {
          use_int = false;
          break;
        }
        refl_int.push_back(std::move(*ri));
      }

    if (use_int) {
      const int n = c.size();
      struct INode {
        detail::IntMat mat;
        int rank;
        std::vector<std::pair<int, int>> pred_keys;
      };
      std::vector<INode> inodes;
      std::unordered_map<std::string, int> node_of;
      inodes.push_back({*c_int, n_rank, {}});
      node_of.emplace(detail::ikey(*c_int), 0);
      std::vector<int> level{0};
      for (int rank = n_rank; rank > 0; --rank) {
        size_t work = level.size();
        std::vector<std::vector<std::tuple<std::string, detail::IntMat, int, int>>>
            local(std::max(threads, 1));
        detail::parallel_ranges(work, threads, [&](int t, size_t b, size_t e) {
          for (size_t i = b; i < e; ++i) {
            const auto& u = inodes[level[i]].mat;
            for (size_t ri = 0; ri < refl_int.size(); ++ri) {
              auto v = detail::imul(n, refl_int[ri], u);
              if (detail::icodim(n, v) == rank - 1)
                local[t].emplace_back(detail::ikey(v), std::move(v), level[i],
                                      reflections[ri].index);
            }
          }
        });
        std::vector<int> next;
        for (auto& chunk : local)
          for (auto& [key, mat, from, ridx] : chunk) {
            auto it = node_of.find(key);
            int id;
            if (it == node_of.end()) {
              id = static_cast<int>(inodes.size());
              node_of.emplace(key, id);
              inodes.push_back({std::move(mat), rank - 1, {}});
              next.push_back(id);
            } else {
              id = it->second;
            }
            inodes[from].pred_keys.emplace_back(id, ridx);
          }
        level = std::move(next);
      }
      nodes.reserve(inodes.size());
      for (auto& in : inodes)
        nodes.push_back(
            {detail::from_integer(in.mat, n), in.rank, std::move(in.pred_keys)});
    } else {
      std::unordered_map<std::string, int> node_of;
      nodes.push_back({c, n_rank, {}});
      node_of.emplace(c.key(), 0);
      std::vector<int> level{0};
      for (int rank = n_rank; rank > 0; --rank) {
        // candidates: for each u in level, r*u for each reflection
        size_t work = level.size();
        std::vector<std::vector<std::tuple<std::string, Matrix, int, int>>> local(
            std::max(threads, 1));
        detail::parallel_ranges(work, threads, [&](int t, size_t b, size_t e) {
          for (size_t i = b; i < e; ++i) {
            const Matrix& u = nodes[level[i]].mat;
            for (const auto& r : reflections) {
              Matrix v = r.element * u;
              if (v.fixed_space_codim() == rank - 1)
                local[t].emplace_back(v.key(), std::move(v), level[i], r.index);
            }
          }
        });
        std::vector<int> next;
        for (auto& chunk : local)
          for (auto& [key, mat, from, ridx] : chunk) {
            auto it = node_of.find(key);
            int id;
            if (it == node_of.end()) {
              id = static_cast<int>(nodes.size());
              node_of.emplace(key, id);
              nodes.push_back({std::move(mat), rank - 1, {}});
              next.push_back(id);
            } else {
              id = it->second;
            }
            nodes[from].pred_keys.emplace_back(id, ridx);
          }
        level = std::move(next);
      }
    }

    // canonical element order: (rank, matrix key)
    std::vector<int> order(nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<std::string> keys(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) keys[i] = nodes[i].mat.key();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (nodes[a].rank != nodes[b].rank) return nodes[a].rank < nodes[b].rank;
      return keys[a] < keys[b];
    });
    std::vector<int> new_id(nodes.size());
    for (size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<int>(i);

    mpz_class cat = catalan_number(entry);
    if (mpz_class(static_cast<long>(nodes.size())) != cat)
      throw CardinalMismatch(nodes.size(), cat.get_str());

    size_t n = nodes.size();
    p.elements.resize(n, Matrix());
    p.rank_of.resize(n);
    p.preds.assign(n, {});
    for (size_t i = 0; i < n; ++i) {
      int id = new_id[i];
      p.elements[id] = nodes[i].mat;
      p.rank_of[id] = nodes[i].rank;
      p.key_index_.emplace(keys[i], id);
    }
    p.bottom = 0;
    p.top = static_cast<int>(n) - 1;

    // atoms and reflection->atom map
    std::vector<int> refl_to_atom(reflections.size(), -1);
    for (size_t i = 0; i < n; ++i)
      if (p.rank_of[i] == 1) p.atoms.push_back(static_cast<int>(i));
    for (size_t a = 0; a < p.atoms.size(); ++a) {
      // find the reflection with this matrix
      for (const auto& r : reflections)
        if (r.element == p.elements[p.atoms[a]]) {
          refl_to_atom[r.index] = static_cast<int>(a);
          break;
        }
    }
    // cover edges: nodes[u].pred_keys were stored on u with left label r
    for (size_t i = 0; i < n; ++i) {
      int u = new_id[i];
      for (auto [v_old, ridx] : nodes[i].pred_keys) {
        int atom = refl_to_atom[ridx];
        if (atom < 0)
          throw CatalogValidationError(entry.name + ": cover label not an atom");
        p.preds[u].emplace_back(new_id[v_old], atom);
      }
      std::sort(p.preds[u].begin(), p.preds[u].end());
      p.preds[u].erase(std::unique(p.preds[u].begin(), p.preds[u].end()),
                       p.preds[u].end());
    }

    // order relation: reachability closure of covers, by rank order
    p.down = BitTable(n, n);
    for (size_t u = 0; u < n; ++u) {
      p.down.set(u, u);
      for (auto [v, a] : p.preds[u]) p.down.or_row(u, v);
    }
    p.up = BitTable(n, n);
    for (size_t u = 0; u < n; ++u)
      for (size_t v = 0; v <= u; ++v)
        if (p.down.get(u, v)) p.up.set(v, u);

    // kreweras permutation u -> u^-1 c
    p.kreweras_of.resize(n);
    p.kreweras_inv_.resize(n);
    detail::parallel_ranges(n, threads, [&](int, size_t b, size_t e) {
      for (size_t u = b; u < e; ++u) {
        Matrix k = p.elements[u].inverse() * c;
        p.kreweras_of[u] = p.index_of(k);
      }
    });
    for (size_t u = 0; u < n; ++u) {
      if (p.kreweras_of[u] < 0)
        throw std::logic_error("kreweras complement left the interval");
      p.kreweras_inv_[p.kreweras_of[u]] = static_cast<int>(u);
    }

    // maximal chain DP
    p.chain_count.assign(n, 0);
    p.chain_count[p.bottom] = 1;
    for (size_t u = 1; u < n; ++u)
      for (auto [v, a] : p.preds[u]) p.chain_count[u] += p.chain_count[v];
    return p;
  }

  // ---- export -------------------------------------------------------------

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["group"] = entry.name;
    doc["catalog_checksum"] = entry.checksum;
    doc["n_elements"] = elements.size();
    std::vector<int> ranks = rank_of;
    doc["ranks"] = ranks;
    std::vector<mpz_class> poin = poincare_polynomial();
    std::vector<std::string> poin_s;
    for (auto& c : poin) poin_s.push_back(c.get_str());
    doc["poincare"] = poin_s;
    std::vector<std::vector<int>> covers;
    for (size_t u = 0; u < elements.size(); ++u)
      for (auto [v, a] : preds[u]) covers.push_back({v, static_cast<int>(u)});
    std::sort(covers.begin(), covers.end());
    doc["covers"] = covers;
    return doc;
  }

  std::string to_text() const {
    std::string s = "group " + entry.name + "\nelements " +
                    std::to_string(elements.size()) + "\nranks";
    for (int r : rank_of) s += " " + std::to_string(r);
    s += "\ncovers\n";
    std::vector<std::vector<int>> covers;
    for (size_t u = 0; u < elements.size(); ++u)
      for (auto [v, a] : preds[u]) covers.push_back({v, static_cast<int>(u)});
    std::sort(covers.begin(), covers.end());
    for (auto& e : covers) s += std::to_string(e[0]) + " " + std::to_string(e[1]) + "\n";
    return s;
  }

 private:
  std::unordered_map<std::string, int> key_index_;
  std::vector<int> kreweras_inv_;

  NotALattice describe_failure(const std::vector<std::uint64_t>& bound_set, int u, int w,
                               bool meet_side) const {
    NotALattice f;
    f.u = u;
    f.w = w;
    f.meet_side = meet_side;
    std::vector<int> members;
    for (size_t i = 0; i < bound_set.size(); ++i) {
      std::uint64_t word = bound_set[i];
      while (word) {
        int b = std::countr_zero(word);
        word &= word - 1;
        members.push_back(static_cast<int>(i * 64 + b));
      }
    }
    for (int x : members) {
      bool maximal = true;
      for (int y : members)
        if (y != x && (meet_side ? leq(x, y) : leq(y, x))) {
          maximal = false;
          break;
        }
      if (maximal) f.maximal_bounds.push_back(x);
    }
    return f;
  }

  void enumerate_chains(int u, std::vector<int>& labels,
                        std::vector<std::vector<int>>& out) const {
    if (u == bottom) {
      out.push_back(labels);  // labels already in decomposition order
      return;
    }
    for (auto [v, atom] : preds[u]) {
      labels.push_back(atom);
      enumerate_chains(v, labels, out);
      labels.pop_back();
    }
  }
};

// Convenience: load + build in one step.
inline IntervalPoset build_interval(const GroupCatalogEntry& entry, int threads = 1) {
  Matrix c = coxeter_element(entry);
  auto refl = enumerate_reflections(entry);
  return IntervalPoset::build(entry, c, refl, threads);
}

}  // namespace ncg
