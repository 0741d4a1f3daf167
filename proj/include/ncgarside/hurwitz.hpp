// Hurwitz action of the braid group B_k on k-tuples of reflections:
// elementary moves, orbit enumeration by BFS over packed tuples, and
// machine verification of transitivity on reduced decompositions.
//
// Conjugation is resolved through a precomputed atom table so that the
// orbit BFS is pure integer work.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ncgarside/interval.hpp"

namespace ncg {

class TransitivityFailure : public std::runtime_error {
 public:
  explicit TransitivityFailure(const std::string& what)
      : std::runtime_error("Hurwitz transitivity failed: " + what) {}
};

// Open-addressed set of packed tuples (keys are < 2^63; ~0 is the empty slot).
class PackedTupleSet {
 public:
  explicit PackedTupleSet(std::uint64_t expected) {
    std::size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    mask_ = cap - 1;
    slots_.assign(cap, kEmpty);
  }

  bool insert(std::uint64_t key) {
    std::size_t i = hash(key) & mask_;
    while (slots_[i] != kEmpty) {
      if (slots_[i] == key) return false;
      i = (i + 1) & mask_;
    }
    slots_[i] = key;
    ++size_;
    return true;
  }

  bool contains(std::uint64_t key) const {
    std::size_t i = hash(key) & mask_;
    while (slots_[i] != kEmpty) {
      if (slots_[i] == key) return true;
      i = (i + 1) & mask_;
    }
    return false;
  }

  std::uint64_t size() const { return size_; }

 private:
  static constexpr std::uint64_t kEmpty = ~0ull;
  static std::uint64_t hash(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDull;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ull;
    x ^= x >> 33;
    return x;
  }
  std::size_t mask_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> slots_;
};

struct OrbitStats {
  std::uint64_t size = 0;
  int bfs_depth = 0;
  std::vector<std::uint64_t> tuples;  // packed, sorted (omitted for huge runs)
};

struct TransitivityReport {
  std::uint64_t red_count = 0;
  std::uint64_t orbit_size = 0;
  bool transitive = false;
};

class HurwitzAction {
 public:
  // Tuples hold atom indices of the poset (R_c in canonical order).
  explicit HurwitzAction(const IntervalPoset& p) : p_(&p) {
    int k = static_cast<int>(p.atoms.size());
    if (k > 127) throw std::invalid_argument("atom index does not fit 7 bits");
    conj_.assign(k, std::vector<int>(k, -1));
    for (int a = 0; a < k; ++a) {
      const Matrix& A = p.elements[p.atoms[a]];
      for (int b = 0; b < k; ++b) {
        const Matrix& B = p.elements[p.atoms[b]];
        Matrix c = B * A * B;  // b^-1 a b, reflections are involutions
        int idx = p.index_of(c);
        if (idx >= 0 && p.rank_of[idx] == 1) {
          auto it = std::lower_bound(p.atoms.begin(), p.atoms.end(), idx);
          conj_[a][b] = static_cast<int>(it - p.atoms.begin());
        }
      }
    }
  }

  // b^-1 a b as an atom index, or -1 when the conjugate leaves R_c.
  int conjugate(int a, int b) const { return conj_[a][b]; }

  // sigma_i (forward) or sigma_i^-1 on a tuple; positions are 0-based.
  std::vector<int> move(const std::vector<int>& t, int i, bool inverse) const {
    std::vector<int> out = t;
    apply_move(out, i, inverse);
    return out;
  }

  std::uint64_t pack(const std::vector<int>& t) const {
    std::uint64_t key = 0;
    for (size_t i = 0; i < t.size(); ++i)
      key |= static_cast<std::uint64_t>(t[i]) << (7 * i);
    return key;
  }

  std::vector<int> unpack(std::uint64_t key, int width) const {
    std::vector<int> t(width);
    for (int i = 0; i < width; ++i) t[i] = static_cast<int>((key >> (7 * i)) & 0x7F);
    return t;
  }

  // BFS closure under all 2(k-1) moves.  Frontiers are processed in sorted
  // batches, so size/depth are schedule-independent.
  OrbitStats orbit(const std::vector<int>& start, std::uint64_t cap,
                   bool keep_tuples = true) const {
    const int width = static_cast<int>(start.size());
    OrbitStats stats;
    PackedTupleSet seen(cap + 1);
    std::vector<std::uint64_t> frontier{pack(start)};
    seen.insert(frontier[0]);
    if (keep_tuples) stats.tuples.push_back(frontier[0]);
    while (!frontier.empty()) {
      std::sort(frontier.begin(), frontier.end());
      std::vector<std::uint64_t> next;
      for (std::uint64_t key : frontier) {
        for (int i = 0; i + 1 < width; ++i) {
          for (int dir = 0; dir < 2; ++dir) {
            std::vector<int> t = unpack(key, width);
            apply_move(t, i, dir == 1);
            std::uint64_t nk = pack(t);
            if (seen.insert(nk)) {
              if (seen.size() > cap)
                throw CapExceeded("Hurwitz orbit for " + p_->entry.name);
              next.push_back(nk);
              if (keep_tuples) stats.tuples.push_back(nk);
            }
          }
        }
      }
      if (!next.empty()) ++stats.bfs_depth;
      frontier = std::move(next);
    }
    stats.size = seen.size();
    if (keep_tuples) std::sort(stats.tuples.begin(), stats.tuples.end());
    return stats;
  }

  // Enumerates Red_R(u) through the interval and checks it is one orbit.
  TransitivityReport verify_transitivity(int u, std::uint64_t cap) const {
    TransitivityReport rep;
    auto reds = p_->reduced_decompositions(u, cap);
    rep.red_count = reds.size();
    if (reds.empty()) throw std::logic_error("element has no reduced decomposition");
    if (reds[0].empty()) {  // bottom: the empty tuple, trivially one orbit
      rep.orbit_size = 1;
      rep.transitive = rep.red_count == 1;
      return rep;
    }
    auto stats = orbit(reds[0], cap, true);
    rep.orbit_size = stats.size;
    std::vector<std::uint64_t> expected;
    expected.reserve(reds.size());
    for (const auto& t : reds) expected.push_back(pack(t));
    std::sort(expected.begin(), expected.end());
    rep.transitive = (expected == stats.tuples);
    return rep;
  }

 private:
  void apply_move(std::vector<int>& t, int i, bool inverse) const {
    int a = t[i], b = t[i + 1];
    if (!inverse) {
      int c = conj_[a][b];
      if (c < 0) throw std::logic_error("Hurwitz conjugate left R_c");
      t[i] = b;
      t[i + 1] = c;
    } else {
      int c = conj_[b][a];
      if (c < 0) throw std::logic_error("Hurwitz conjugate left R_c");
      t[i] = c;
      t[i + 1] = a;
    }
  }

  const IntervalPoset* p_;
  std::vector<std::vector<int>> conj_;
};

}  // namespace ncg
