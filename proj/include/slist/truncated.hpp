#pragma once

// Truncated simplicial lists: carriers X_0..X_D with face and degeneracy
// listings, identity validation, general simplicial action, type-S checks
// and morphisms.

#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "delta.hpp"
#include "listing.hpp"

namespace slist {

struct TruncSList {
  std::size_t D = 0;
  std::vector<FiniteSet> carriers;                // X_0 .. X_D
  std::vector<std::vector<Listing>> faces;        // faces[n][i] : X_n -/-> X_{n-1}, n >= 1
  std::vector<std::vector<Listing>> degeneracies; // degeneracies[n][i] : X_n -/-> X_{n+1}, n < D

  std::size_t size(std::size_t n) const { return carriers.at(n).size(); }
  const Listing& face(std::size_t n, std::size_t i) const { return faces.at(n).at(i); }
  const Listing& degen(std::size_t n, std::size_t j) const { return degeneracies.at(n).at(j); }

  /// Empty structure of the right shape.
  static TruncSList empty(std::size_t D) {
    TruncSList X;
    X.D = D;
    X.carriers.assign(D + 1, FiniteSet{});
    X.faces.assign(D + 1, {});
    X.degeneracies.assign(D + 1, {});
    for (std::size_t n = 1; n <= D; ++n) X.faces[n].assign(n + 1, Listing(0, 0, {}));
    for (std::size_t n = 0; n < D; ++n) X.degeneracies[n].assign(n + 1, Listing(0, 0, {}));
    return X;
  }

  /// Checks that the listings have the sizes the carriers demand.
  void check_shape() const {
    if (carriers.size() != D + 1 || faces.size() < D + 1 || degeneracies.size() < D)
      throw std::invalid_argument("truncated simplicial list: wrong number of levels");
    for (std::size_t n = 1; n <= D; ++n) {
      if (faces[n].size() != n + 1) throw std::invalid_argument("wrong number of face maps");
      for (const auto& d : faces[n])
        if (d.source_size() != size(n) || d.target_size() != size(n - 1))
          throw std::invalid_argument("face map has wrong source or target");
    }
    for (std::size_t n = 0; n < D; ++n) {
      if (degeneracies[n].size() != n + 1) throw std::invalid_argument("wrong number of degeneracies");
      for (const auto& s : degeneracies[n])
        if (s.source_size() != size(n) || s.target_size() != size(n + 1))
          throw std::invalid_argument("degeneracy has wrong source or target");
    }
  }
};

struct Violation {
  std::size_t degree;
  std::string identity;
  Index witness;
};

namespace detail {
inline void compare(const Listing& lhs, const Listing& rhs, std::size_t degree, const std::string& name,
                    std::vector<Violation>& out) {
  for (Index x = 0; x < lhs.source_size(); ++x)
    if (lhs(x) != rhs(x)) {
      out.push_back({degree, name, x});
      return;
    }
}
}  // namespace detail

/// All simplicial identities up to degree D; an empty result means X is valid.
inline std::vector<Violation> validate(const TruncSList& X) {
  X.check_shape();
  std::vector<Violation> out;
  auto nm = [](const char* pat, std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << pat << " i=" << a << " j=" << b;
    return os.str();
  };
  for (std::size_t n = 0; n <= X.D; ++n) {
    if (n >= 2)
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t i = 0; i < j; ++i)
          detail::compare(compose(X.face(n - 1, i), X.face(n, j)), compose(X.face(n - 1, j - 1), X.face(n, i)), n,
                          nm("d_i d_j = d_{j-1} d_i", i, j), out);
    if (n + 1 <= X.D) {
      Listing id = Listing::identity(X.size(n));
      for (std::size_t j = 0; j <= n; ++j) {
        const Listing& s = X.degen(n, j);
        for (std::size_t i = 0; i <= n + 1; ++i) {
          Listing lhs = compose(X.face(n + 1, i), s);
          if (i == j || i == j + 1)
            detail::compare(lhs, id, n, nm("d_i s_j = id", i, j), out);
          else if (i < j)
            detail::compare(lhs, compose(X.degen(n - 1, j - 1), X.face(n, i)), n, nm("d_i s_j = s_{j-1} d_i", i, j),
                            out);
          else
            detail::compare(lhs, compose(X.degen(n - 1, j), X.face(n, i - 1)), n, nm("d_i s_j = s_j d_{i-1}", i, j),
                            out);
        }
      }
    }
    if (n + 2 <= X.D)
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= j; ++i)
          detail::compare(compose(X.degen(n + 1, i), X.degen(n, j)), compose(X.degen(n + 1, j + 1), X.degen(n, i)), n,
                          nm("s_i s_j = s_{j+1} s_i", i, j), out);
  }
  return out;
}

/// theta^* : X_n -/-> X_k as a listing, composed along a face/degeneracy
/// factorization of theta. With alternate = true a different factorization
/// is used (smallest missing value first, last repeated pair first).
inline Listing act_listing(const MonotoneMap& theta, const TruncSList& X, bool alternate = false) {
  std::size_t n = theta.n(), k = theta.k();
  if (n > X.D || k > X.D) throw std::out_of_range("act: degree outside truncation");
  std::vector<bool> hit(n + 1, false);
  for (Index v : theta.values) hit[v] = true;
  std::optional<std::size_t> missing;
  for (std::size_t t = 0; t <= n; ++t)
    if (!hit[t] && (!alternate || !missing)) missing = t;
  if (missing) {
    // theta = d^j . theta'
    std::size_t j = *missing;
    std::vector<Index> v;
    for (Index x : theta.values) v.push_back(x < j ? x : x - 1);
    MonotoneMap rest = MonotoneMap::simplicial(n - 1, std::move(v));
    return compose(act_listing(rest, X, alternate), X.face(n, j));
  }
  std::optional<std::size_t> rep;
  for (std::size_t t = 0; t + 1 <= k; ++t)
    if (theta(t) == theta(t + 1)) {
      if (!rep || alternate) rep = t;
      if (!alternate) break;
    }
  if (rep) {
    // theta = theta' . s^t
    std::size_t t = *rep;
    std::vector<Index> v;
    for (std::size_t s = 0; s <= k; ++s)
      if (s != t + 1) v.push_back(theta(s));
    MonotoneMap rest = MonotoneMap::simplicial(n, std::move(v));
    return compose(X.degen(k - 1, t), act_listing(rest, X, alternate));
  }
  return Listing::identity(X.size(n));
}

inline Seq act_general(const MonotoneMap& theta, const TruncSList& X, Index x, bool alternate = false) {
  return act_listing(theta, X, alternate)(x);
}

/// True iff theta^* is a function for every theta accepted by the predicate.
inline bool is_type_S(const TruncSList& X, const std::function<bool(const MonotoneMap&)>& pred) {
  for (std::size_t n = 0; n <= X.D; ++n)
    for (std::size_t k = 0; k <= X.D; ++k)
      for (const auto& th : simplicial_operators(k, n))
        if (pred(th) && !act_listing(th, X).is_function()) return false;
  return true;
}

inline bool preserves_last_vertex(const MonotoneMap& th) { return th(th.domain_size - 1) == th.codomain_size - 1; }

inline bool is_operadic(const TruncSList& X) { return is_type_S(X, preserves_last_vertex); }

/// Degree-wise functions.
struct SListMorphism {
  std::vector<std::vector<Index>> components;
  bool operator==(const SListMorphism&) const = default;
};

inline bool is_morphism(const SListMorphism& f, const TruncSList& X, const TruncSList& Y) {
  std::size_t D = std::min(X.D, Y.D);
  if (f.components.size() < D + 1) return false;
  auto push = [&](std::size_t n, const Seq& s) {
    Seq o;
    for (Index x : s) o.push_back(f.components[n][x]);
    return o;
  };
  for (std::size_t n = 0; n <= D; ++n) {
    if (f.components[n].size() != X.size(n)) return false;
    for (Index y : f.components[n])
      if (y >= Y.size(n)) return false;
  }
  for (std::size_t n = 1; n <= D; ++n)
    for (std::size_t i = 0; i <= n; ++i)
      for (Index x = 0; x < X.size(n); ++x)
        if (push(n - 1, X.face(n, i)(x)) != Y.face(n, i)(f.components[n][x])) return false;
  for (std::size_t n = 0; n < D; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (Index x = 0; x < X.size(n); ++x)
        if (push(n + 1, X.degen(n, j)(x)) != Y.degen(n, j)(f.components[n][x])) return false;
  return true;
}

/// Number of morphisms X -> Y (both truncated at the smaller D), by
/// backtracking over elements in degree order.
inline std::size_t count_morphisms(const TruncSList& X, const TruncSList& Y) {
  std::size_t D = std::min(X.D, Y.D);
  // for each element z of X_{n+1}: the (j, x, position) with z = s_j(x)[position]
  std::vector<std::vector<std::vector<std::tuple<std::size_t, Index, std::size_t>>>> degsrc(D + 1);
  for (std::size_t n = 0; n <= D; ++n) degsrc[n].assign(X.size(n), {});
  for (std::size_t n = 0; n < D; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (Index x = 0; x < X.size(n); ++x) {
        const Seq& im = X.degen(n, j)(x);
        for (std::size_t p = 0; p < im.size(); ++p) degsrc[n + 1][im[p]].emplace_back(j, x, p);
      }
  std::vector<std::vector<Index>> f(D + 1);
  for (std::size_t n = 0; n <= D; ++n) f[n].assign(X.size(n), 0);
  std::size_t count = 0;
  std::function<void(std::size_t, Index)> rec = [&](std::size_t n, Index x) {
    if (x == X.size(n)) {
      // all of degree n assigned: degeneracy lengths out of degree n-1 must agree
      if (n > 0)
        for (std::size_t j = 0; j < n; ++j)
          for (Index w = 0; w < X.size(n - 1); ++w)
            if (X.degen(n - 1, j)(w).size() != Y.degen(n - 1, j)(f[n - 1][w]).size()) return;
      if (n == D) {
        ++count;
        return;
      }
      rec(n + 1, 0);
      return;
    }
    for (Index y = 0; y < Y.size(n); ++y) {
      bool ok = true;
      for (std::size_t i = 0; ok && n > 0 && i <= n; ++i) {
        const Seq& a = X.face(n, i)(x);
        const Seq& b = Y.face(n, i)(y);
        if (a.size() != b.size()) ok = false;
        for (std::size_t t = 0; ok && t < a.size(); ++t)
          if (f[n - 1][a[t]] != b[t]) ok = false;
      }
      for (const auto& [j, w, p] : degsrc[n][x]) {
        if (!ok) break;
        const Seq& im = Y.degen(n - 1, j)(f[n - 1][w]);
        if (p >= im.size() || im[p] != y) ok = false;
      }
      if (!ok) continue;
      f[n][x] = y;
      rec(n, x + 1);
    }
  };
  rec(0, 0);
  return count;
}

}  // namespace slist
