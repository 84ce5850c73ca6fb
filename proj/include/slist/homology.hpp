#pragma once

// Linearization, the alternating face complex, integer homology and the
// relative quotient.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "smith.hpp"
#include "truncated.hpp"

namespace slist {

/// Z(u): column x counts the occurrences of each target in u(x).
inline IntMatrix linearize(const Listing& u) {
  IntMatrix m(u.target_size(), u.source_size());
  for (Index x = 0; x < u.source_size(); ++x)
    for (Index y : u(x)) m.add(y, x, 1);
  return m;
}

struct ChainComplexZ {
  std::size_t D = 0;
  std::vector<std::size_t> ranks;        // degrees 0..D
  std::vector<IntMatrix> boundaries;     // boundaries[n] = d_n : C_n -> C_{n-1}, n >= 1; [0] is 0 x rank_0
};

/// Checks d_{n} d_{n+1} = 0 for all stored pairs; returns the first failing n or 0.
inline std::size_t first_nonzero_square(const ChainComplexZ& C) {
  for (std::size_t n = 1; n + 1 <= C.D; ++n)
    if (!multiply(C.boundaries[n], C.boundaries[n + 1]).is_zero()) return n;
  return 0;
}

inline ChainComplexZ chain_complex(const TruncSList& X) {
  ChainComplexZ C;
  C.D = X.D;
  for (std::size_t n = 0; n <= X.D; ++n) C.ranks.push_back(X.size(n));
  C.boundaries.emplace_back(0, X.size(0));
  for (std::size_t n = 1; n <= X.D; ++n) {
    IntMatrix b(X.size(n - 1), X.size(n));
    for (std::size_t i = 0; i <= n; ++i) b = add(b, linearize(X.face(n, i)), i % 2 ? -1 : 1);
    C.boundaries.push_back(std::move(b));
  }
  if (auto n = first_nonzero_square(C))
    throw std::logic_error("boundary squares to nonzero at degree " + std::to_string(n));
  return C;
}

struct HomologyGroup {
  std::size_t degree = 0;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string render() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const auto& t : torsion) {
      os << (first ? "" : " + ") << "Z/" << t;
      first = false;
    }
    return os.str();
  }
};

/// H_k for k <= D - 1, computing each boundary's invariant factors once.
inline std::vector<HomologyGroup> homology_all(const ChainComplexZ& C) {
  std::vector<HomologyGroup> out;
  if (C.D == 0) return out;
  std::vector<std::vector<BigInt>> f(C.D + 1);
  for (std::size_t n = 1; n <= C.D; ++n) f[n] = invariant_factors(C.boundaries[n]);
  for (std::size_t k = 0; k + 1 <= C.D; ++k) {
    HomologyGroup h;
    h.degree = k;
    std::size_t rank_in = k ? f[k].size() : 0;
    h.free_rank = C.ranks[k] - rank_in - f[k + 1].size();
    for (const auto& x : f[k + 1])
      if (x > 1) h.torsion.push_back(x);
    out.push_back(std::move(h));
  }
  return out;
}

inline HomologyGroup homology(const ChainComplexZ& C, std::size_t k) {
  if (k + 1 > C.D) throw std::out_of_range("homology: degree " + std::to_string(k) + " needs D >= " + std::to_string(k + 1));
  HomologyGroup h;
  h.degree = k;
  std::size_t rank_in = k ? invariant_factors(C.boundaries[k]).size() : 0;
  auto out = invariant_factors(C.boundaries[k + 1]);
  h.free_rank = C.ranks[k] - rank_in - out.size();
  for (const auto& x : out)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

/// Degree-wise membership masks of a sub-object.
using SubMask = std::vector<std::vector<bool>>;

/// First element of Y whose face or degeneracy leaves Y, as a message.
inline std::string closure_failure(const TruncSList& X, const SubMask& Y) {
  if (Y.size() != X.D + 1) return "mask has " + std::to_string(Y.size()) + " degrees, expected " + std::to_string(X.D + 1);
  for (std::size_t n = 0; n <= X.D; ++n)
    if (Y[n].size() != X.size(n)) return "mask size mismatch at degree " + std::to_string(n);
  for (std::size_t n = 0; n <= X.D; ++n)
    for (Index y = 0; y < X.size(n); ++y) {
      if (!Y[n][y]) continue;
      if (n >= 1)
        for (std::size_t i = 0; i <= n; ++i)
          for (Index z : X.face(n, i)(y))
            if (!Y[n - 1][z]) return "d" + std::to_string(i) + "(" + X.carriers[n].labels[y] + ") leaves Y";
      if (n < X.D)
        for (std::size_t j = 0; j <= n; ++j)
          for (Index z : X.degen(n, j)(y))
            if (!Y[n + 1][z]) return "s" + std::to_string(j) + "(" + X.carriers[n].labels[y] + ") leaves Y";
    }
  return "";
}

/// Q(X, Y): remove Y and delete its elements from every image list.
inline TruncSList relative_quotient(const TruncSList& X, const SubMask& Y) {
  if (auto e = closure_failure(X, Y); !e.empty()) throw std::invalid_argument("relative_quotient: " + e);
  std::vector<std::vector<Index>> pos(X.D + 1);
  TruncSList Q = TruncSList::empty(X.D);
  for (std::size_t n = 0; n <= X.D; ++n) {
    std::vector<std::string> labels;
    pos[n].assign(X.size(n), SIZE_MAX);
    for (Index x = 0; x < X.size(n); ++x)
      if (!Y[n][x]) {
        pos[n][x] = labels.size();
        labels.push_back(X.carriers[n].labels[x]);
      }
    Q.carriers[n] = FiniteSet(labels);
  }
  auto restrict = [&](const Listing& u, std::size_t src, std::size_t tgt) {
    std::vector<Seq> im;
    for (Index x = 0; x < X.size(src); ++x) {
      if (Y[src][x]) continue;
      Seq s;
      for (Index z : u(x))
        if (!Y[tgt][z]) s.push_back(pos[tgt][z]);
      im.push_back(std::move(s));
    }
    return Listing(Q.size(src), Q.size(tgt), std::move(im));
  };
  for (std::size_t n = 1; n <= X.D; ++n)
    for (std::size_t i = 0; i <= n; ++i) Q.faces[n][i] = restrict(X.face(n, i), n, n - 1);
  for (std::size_t n = 0; n < X.D; ++n)
    for (std::size_t j = 0; j <= n; ++j) Q.degeneracies[n][j] = restrict(X.degen(n, j), n, n + 1);
  return Q;
}

/// C(X) / C(Y): the boundaries of X with the rows and columns of Y removed.
inline ChainComplexZ quotient_complex(const ChainComplexZ& C, const SubMask& Y) {
  ChainComplexZ Q;
  Q.D = C.D;
  std::vector<std::vector<Index>> pos(C.D + 1);
  for (std::size_t n = 0; n <= C.D; ++n) {
    std::size_t r = 0;
    pos[n].assign(C.ranks[n], SIZE_MAX);
    for (Index x = 0; x < C.ranks[n]; ++x)
      if (!Y[n][x]) pos[n][x] = r++;
    Q.ranks.push_back(r);
  }
  Q.boundaries.emplace_back(0, Q.ranks[0]);
  for (std::size_t n = 1; n <= C.D; ++n) {
    IntMatrix b(Q.ranks[n - 1], Q.ranks[n]);
    for (Index x = 0; x < C.ranks[n]; ++x) {
      if (Y[n][x]) continue;
      for (const auto& [y, v] : C.boundaries[n].columns[x])
        if (!Y[n - 1][y]) b.add(pos[n - 1][y], pos[n][x], v);
    }
    Q.boundaries.push_back(std::move(b));
  }
  return Q;
}

}  // namespace slist
