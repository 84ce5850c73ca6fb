#pragma once

// The representables U_alpha and the classification of simplices.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "delta.hpp"
#include "truncated.hpp"

namespace slist {

/// U_alpha truncated at D. A k-simplex is (theta, a) with theta : [k] -> [n]
/// and a in A_theta(k).
struct UAlpha {
  RootedShape alpha;
  TruncSList X;
  std::vector<std::vector<MonotoneMap>> thetas;        // per degree, in enumeration order
  std::vector<std::vector<std::size_t>> offsets;       // first element of each theta
  std::vector<std::map<MonotoneMap, std::size_t>> theta_index;

  Index element(const MonotoneMap& theta, Index a) const {
    std::size_t k = theta.k();
    return offsets.at(k).at(theta_index.at(k).at(theta)) + a;
  }
  std::pair<MonotoneMap, Index> decode(std::size_t k, Index x) const {
    const auto& off = offsets.at(k);
    std::size_t t = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), x) - off.begin()) - 1;
    return {thetas[k][t], x - off[t]};
  }
  /// eta^*(theta, a) for eta : [l] -> [k].
  Seq act(const MonotoneMap& eta, std::size_t k, Index x) const {
    auto [theta, a] = decode(k, x);
    MonotoneMap te = compose(theta, eta);
    Seq out;
    for (Index b : alpha.fiber(te(te.domain_size - 1), theta(theta.domain_size - 1), a)) out.push_back(element(te, b));
    return out;
  }
  /// u_alpha : Delta^n_k -/-> U_alpha,k, perfect.
  Listing perfect_listing(std::size_t k) const {
    std::vector<Seq> im;
    for (std::size_t t = 0; t < thetas[k].size(); ++t) {
      Seq s;
      for (Index x = offsets[k][t]; x < (t + 1 < offsets[k].size() ? offsets[k][t + 1] : X.size(k)); ++x) s.push_back(x);
      im.push_back(std::move(s));
    }
    return Listing(thetas[k].size(), X.size(k), std::move(im));
  }
  Index fundamental() const { return element(MonotoneMap::identity(alpha.degree() + 1), 0); }
};

inline std::string theta_label(const MonotoneMap& th) {
  std::string s;
  for (Index v : th.values) s += std::to_string(v);
  return s;
}

inline UAlpha build_U_alpha(const RootedShape& alpha, std::size_t D) {
  require_rooted(alpha);
  UAlpha U;
  U.alpha = alpha;
  std::size_t n = alpha.degree();
  U.X = TruncSList::empty(D);
  U.thetas.resize(D + 1);
  U.offsets.resize(D + 1);
  U.theta_index.resize(D + 1);
  for (std::size_t k = 0; k <= D; ++k) {
    std::vector<std::string> labels;
    std::size_t count = 0;
    for (const auto& th : simplicial_operators(k, n)) {
      U.theta_index[k][th] = U.thetas[k].size();
      U.thetas[k].push_back(th);
      U.offsets[k].push_back(count);
      for (Index a = 0; a < alpha.size(th(k)); ++a) labels.push_back(theta_label(th) + ":" + std::to_string(a));
      count += alpha.size(th(k));
    }
    U.X.carriers[k] = FiniteSet(labels);
  }
  auto build = [&](const MonotoneMap& eta, std::size_t k) {
    std::vector<Seq> im;
    for (Index x = 0; x < U.X.size(k); ++x) im.push_back(U.act(eta, k, x));
    return Listing(U.X.size(k), U.X.size(eta.k()), std::move(im));
  };
  for (std::size_t k = 1; k <= D; ++k)
    for (std::size_t i = 0; i <= k; ++i) U.X.faces[k][i] = build(MonotoneMap::coface(k, i), k);
  for (std::size_t k = 0; k < D; ++k)
    for (std::size_t j = 0; j <= k; ++j) U.X.degeneracies[k][j] = build(MonotoneMap::codegeneracy(k, j), k);
  return U;
}

/// Delta^n truncated at D, as a simplicial set (all listings functions).
inline TruncSList standard_simplex(std::size_t n, std::size_t D) {
  LeveledShape chain = LeveledShape(std::vector<std::size_t>(n + 1, 1),
                                    [&] {
                                      std::vector<MonotoneMap> ms;
                                      for (std::size_t i = 0; i < n; ++i) ms.emplace_back(1, 1, std::vector<Index>{0});
                                      return ms;
                                    }());
  return build_U_alpha(chain, D).X;
}

struct Classification {
  bool operadic = false;
  LeveledShape shape;
  SListMorphism morphism;                // U_shape -> X
  std::vector<Factorization> middles;    // factorization of (x) : Delta^n -/-> X in each degree
};

/// Classifies x in X_n: factors (x) : Delta^n -/-> X as a perfect listing
/// followed by a function and recognizes the middle as U_alpha.
inline Classification classify_simplex(const TruncSList& X, std::size_t n, Index x) {
  if (n > X.D || x >= X.size(n)) throw std::out_of_range("classify_simplex: simplex out of range");
  Classification c;
  std::vector<Listing> xs;  // (x)_k
  for (std::size_t k = 0; k <= X.D; ++k) {
    std::vector<Seq> im;
    for (const auto& th : simplicial_operators(k, n)) im.push_back(act_general(th, X, x));
    xs.emplace_back(im.size(), X.size(k), std::move(im));
    c.middles.push_back(perfect_factorize(xs.back()));
  }
  // sizes of the levels from the vertices
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i <= n; ++i) sizes.push_back(xs[0](i).size());
  // type check: |theta^* x| = |A_theta(k)|
  c.operadic = sizes[n] == 1;
  for (std::size_t k = 0; k <= X.D && c.operadic; ++k) {
    auto ths = simplicial_operators(k, n);
    for (std::size_t t = 0; t < ths.size(); ++t)
      if (xs[k](t).size() != sizes[ths[t](k)]) c.operadic = false;
  }
  if (!c.operadic) return c;
  if (n == 0) {
    c.shape = LeveledShape({1}, {});
  } else {
    if (X.D < 1) throw std::domain_error("classify_simplex: need D >= 1 to read the level maps");
    // d_1 square between degree 1 and degree 0
    std::vector<Index> d1vals;
    auto ths1 = simplicial_operators(1, n);
    for (const auto& th : ths1) d1vals.push_back(th(0));
    Listing p = Listing::from_function(d1vals, n + 1);
    Listing r = induced_middle(p, X.face(1, 1), xs[1], xs[0]);
    // middle of degree 1 is ordered by theta then position; middle of degree 0 likewise
    std::vector<std::size_t> off0(n + 2, 0);
    for (std::size_t i = 0; i <= n; ++i) off0[i + 1] = off0[i] + sizes[i];
    std::vector<MonotoneMap> maps;
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t t = 0;
      while (!(ths1[t](0) == i - 1 && ths1[t](1) == i)) ++t;
      std::size_t base = 0;
      for (std::size_t s = 0; s < t; ++s) base += xs[1](s).size();
      std::vector<Index> vals(sizes[i - 1], SIZE_MAX);
      for (Index a = 0; a < sizes[i]; ++a)
        for (Index m : r(base + a)) {
          if (m < off0[i - 1] || m >= off0[i] || vals[m - off0[i - 1]] != SIZE_MAX)
            throw std::domain_error("classify_simplex: middle is not of the form U_alpha");
          vals[m - off0[i - 1]] = a;
        }
      for (auto v : vals)
        if (v == SIZE_MAX) throw std::domain_error("classify_simplex: level map not total");
      maps.emplace_back(sizes[i - 1], sizes[i], vals);  // throws if not monotone
    }
    c.shape = LeveledShape(sizes, maps);
  }
  // the classifying morphism, checked against U_alpha
  UAlpha U = build_U_alpha(c.shape, X.D);
  c.morphism.components.resize(X.D + 1);
  for (std::size_t k = 0; k <= X.D; ++k) {
    c.morphism.components[k].assign(U.X.size(k), 0);
    auto ths = simplicial_operators(k, n);
    for (std::size_t t = 0; t < ths.size(); ++t)
      for (Index a = 0; a < xs[k](t).size(); ++a) c.morphism.components[k][U.element(ths[t], a)] = xs[k](t)[a];
  }
  if (!is_morphism(c.morphism, U.X, X)) throw std::domain_error("classify_simplex: recognized middle is not U_alpha");
  return c;
}

/// Morphisms U_alpha -> X, one for each simplex of X classified by alpha.
inline std::vector<SListMorphism> hom_slist(const RootedShape& alpha, const TruncSList& X) {
  std::size_t n = alpha.degree();
  if (n > X.D) throw std::out_of_range("hom_slist: shape degree exceeds truncation");
  std::vector<SListMorphism> out;
  for (Index x = 0; x < X.size(n); ++x) {
    auto c = classify_simplex(X, n, x);
    if (c.operadic && c.shape == alpha) out.push_back(std::move(c.morphism));
  }
  return out;
}

}  // namespace slist
