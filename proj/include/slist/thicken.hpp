#pragma once

// The simplicial thickening of [n] by chains of subsets, and the bigraded
// object U_alpha[k, m] built over its nerve.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "delta.hpp"
#include "representable.hpp"
#include "truncated.hpp"

namespace slist {

/// An m-simplex of Map(i, j): U_0 <= ... <= U_m, subsets of the interval
/// {i..j} containing i and j, stored as bit masks.
struct SubsetChain {
  std::size_t n = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::uint32_t> masks;

  std::size_t m() const { return masks.size() - 1; }
  bool operator==(const SubsetChain&) const = default;
  auto operator<=>(const SubsetChain&) const = default;

  static SubsetChain identity(std::size_t n, std::size_t i, std::size_t m) {
    return {n, i, i, std::vector<std::uint32_t>(m + 1, 1u << i)};
  }
  bool valid() const {
    if (i > j || j > n || n >= 32 || masks.empty()) return false;
    std::uint32_t interval = ((j + 1 < 32 ? (1u << (j + 1)) : 0u) - 1u) & ~((1u << i) - 1u);
    std::uint32_t ends = (1u << i) | (1u << j);
    for (std::size_t t = 0; t < masks.size(); ++t) {
      if ((masks[t] & ends) != ends || (masks[t] & ~interval)) return false;
      if (t && (masks[t - 1] & ~masks[t])) return false;
    }
    return true;
  }
  /// delete U_t
  SubsetChain face(std::size_t t) const {
    SubsetChain c = *this;
    c.masks.erase(c.masks.begin() + static_cast<std::ptrdiff_t>(t));
    return c;
  }
  /// repeat U_t
  SubsetChain degen(std::size_t t) const {
    SubsetChain c = *this;
    c.masks.insert(c.masks.begin() + static_cast<std::ptrdiff_t>(t), masks[t]);
    return c;
  }
  /// mu^* for mu : [m'] -> [m]
  SubsetChain act(const MonotoneMap& mu) const {
    SubsetChain c{n, i, j, {}};
    for (Index v : mu.values) c.masks.push_back(masks.at(v));
    return c;
  }
  /// the extra degeneracy: prepend {i, j}
  SubsetChain prepend_ends() const {
    SubsetChain c = *this;
    c.masks.insert(c.masks.begin(), (1u << i) | (1u << j));
    return c;
  }
  std::string render() const {
    std::string s;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      s += t ? "<" : "";
      s += "{";
      bool first = true;
      for (std::size_t b = 0; b <= n; ++b)
        if (masks[t] >> b & 1u) {
          s += (first ? "" : ",") + std::to_string(b);
          first = false;
        }
      s += "}";
    }
    return s;
  }
};

/// g . f by union, f : i -> j, g : j -> l.
inline SubsetChain compose(const SubsetChain& g, const SubsetChain& f) {
  if (f.j != g.i || f.masks.size() != g.masks.size() || f.n != g.n)
    throw std::invalid_argument("subset chains not composable");
  SubsetChain h{f.n, f.i, g.j, {}};
  for (std::size_t t = 0; t < f.masks.size(); ++t) h.masks.push_back(f.masks[t] | g.masks[t]);
  return h;
}

/// All m-simplices of Map(i, j), ordered lexicographically by masks.
inline std::vector<SubsetChain> mapping_space(std::size_t n, std::size_t i, std::size_t j, std::size_t m) {
  if (i > j || j > n) throw std::invalid_argument("mapping_space: need i <= j <= n");
  if (n >= 31) throw std::invalid_argument("mapping_space: n too large");
  std::vector<SubsetChain> out;
  std::uint32_t ends = (1u << i) | (1u << j);
  std::vector<std::size_t> interior;
  for (std::size_t b = i + 1; b < j; ++b) interior.push_back(b);
  // each interior element enters at some level 0..m or never (m + 1)
  std::vector<std::size_t> enter(interior.size(), 0);
  while (true) {
    SubsetChain c{n, i, j, std::vector<std::uint32_t>(m + 1, ends)};
    for (std::size_t e = 0; e < interior.size(); ++e)
      for (std::size_t t = enter[e]; t <= m; ++t) c.masks[t] |= 1u << interior[e];
    out.push_back(std::move(c));
    std::size_t e = 0;
    while (e < enter.size() && enter[e] == m + 1) enter[e++] = 0;
    if (e == enter.size()) break;
    ++enter[e];
  }
  std::sort(out.begin(), out.end(), [](const SubsetChain& a, const SubsetChain& b) { return a.masks < b.masks; });
  return out;
}

/// A k-simplex of the nerve of the category of m-simplices: objects
/// i_0 <= ... <= i_k and composable arrows.
struct ThickSimplex {
  std::vector<Index> objects;
  std::vector<SubsetChain> arrows;
  bool operator==(const ThickSimplex&) const = default;
  auto operator<=>(const ThickSimplex&) const = default;

  std::size_t k() const { return objects.size() - 1; }

  /// eta^* for eta : [l] -> [k], composing by union.
  ThickSimplex act_k(const MonotoneMap& eta, std::size_t n, std::size_t m) const {
    ThickSimplex s;
    for (Index v : eta.values) s.objects.push_back(objects.at(v));
    for (std::size_t t = 1; t < eta.values.size(); ++t) {
      SubsetChain c = SubsetChain::identity(n, objects[eta(t - 1)], m);
      for (Index l = eta(t - 1) + 1; l <= eta(t); ++l) c = compose(arrows[l - 1], c);
      s.arrows.push_back(std::move(c));
    }
    return s;
  }
  ThickSimplex act_m(const MonotoneMap& mu) const {
    ThickSimplex s{objects, {}};
    for (const auto& c : arrows) s.arrows.push_back(c.act(mu));
    return s;
  }
  ThickSimplex prepend_ends() const {
    ThickSimplex s{objects, {}};
    for (const auto& c : arrows) s.arrows.push_back(c.prepend_ends());
    return s;
  }
  std::string render() const {
    std::string s;
    for (std::size_t t = 0; t < objects.size(); ++t) {
      s += std::to_string(objects[t]);
      if (t < arrows.size()) s += "-" + arrows[t].render() + "-";
    }
    return s;
  }
};

/// The extra degeneracy from Delta^n: each spine arrow i -> j goes to the
/// single subset {i, j}.
inline ThickSimplex spine_section(const MonotoneMap& theta, std::size_t n) {
  ThickSimplex s;
  for (Index v : theta.values) s.objects.push_back(v);
  for (std::size_t t = 1; t < theta.values.size(); ++t)
    s.arrows.push_back(SubsetChain{n, theta(t - 1), theta(t), {(1u << theta(t - 1)) | (1u << theta(t))}});
  return s;
}

/// All k-simplices of the nerve of the thickening at level m, objects in
/// lex order, then arrows in lex order.
inline std::vector<ThickSimplex> thick_nerve(std::size_t n, std::size_t k, std::size_t m) {
  std::vector<ThickSimplex> out;
  for (const auto& obj : monotone_maps(k + 1, n + 1)) {
    std::vector<std::vector<SubsetChain>> spaces;
    for (std::size_t t = 1; t <= k; ++t) spaces.push_back(mapping_space(n, obj(t - 1), obj(t), m));
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      ThickSimplex s{obj.values, {}};
      for (std::size_t t = 0; t < k; ++t) s.arrows.push_back(spaces[t][pick[t]]);
      out.push_back(std::move(s));
      std::size_t t = k;
      while (t > 0 && ++pick[t - 1] == spaces[t - 1].size()) pick[--t] = 0;
      if (t == 0) break;
    }
  }
  return out;
}

struct ThickCell {
  ThickSimplex theta;
  Index a = 0;
};

/// U_alpha[k, m] for k <= K, m <= M with both actions.
struct Thick {
  RootedShape alpha;
  std::size_t K = 0;
  std::size_t M = 0;
  std::vector<std::vector<std::vector<ThickSimplex>>> thetas;  // [m][k]
  std::vector<std::vector<std::vector<std::size_t>>> offsets;  // [m][k]
  std::vector<std::vector<std::map<ThickSimplex, std::size_t>>> theta_index;
  std::vector<TruncSList> slices;  // slices[m] = U_alpha[-, m]

  std::size_t n() const { return alpha.degree(); }
  std::size_t size(std::size_t k, std::size_t m) const { return slices.at(m).size(k); }

  ThickCell decode(std::size_t k, std::size_t m, Index x) const {
    const auto& off = offsets.at(m).at(k);
    std::size_t t = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), x) - off.begin()) - 1;
    return {thetas[m][k][t], x - off[t]};
  }
  Index element(std::size_t m, const ThickSimplex& th, Index a) const {
    std::size_t k = th.k();
    return offsets.at(m).at(k).at(theta_index.at(m).at(k).at(th)) + a;
  }
  /// eta^* in the k-direction, a listing.
  Seq act_k(const MonotoneMap& eta, std::size_t k, std::size_t m, Index x) const {
    ThickCell c = decode(k, m, x);
    ThickSimplex s = c.theta.act_k(eta, n(), m);
    Seq out;
    for (Index b : alpha.fiber(s.objects.back(), c.theta.objects.back(), c.a)) out.push_back(element(m, s, b));
    return out;
  }
  /// mu^* in the m-direction, a function.
  Index act_m(const MonotoneMap& mu, std::size_t k, std::size_t m, Index x) const {
    ThickCell c = decode(k, m, x);
    return element(mu.k(), c.theta.act_m(mu), c.a);
  }
  /// ((theta, a))_a, perfect.
  Listing eta(std::size_t k, std::size_t m) const {
    std::vector<Seq> im;
    const auto& off = offsets.at(m).at(k);
    for (std::size_t t = 0; t < off.size(); ++t) {
      Seq s;
      std::size_t end = t + 1 < off.size() ? off[t + 1] : size(k, m);
      for (Index x = off[t]; x < end; ++x) s.push_back(x);
      im.push_back(std::move(s));
    }
    return Listing(off.size(), size(k, m), std::move(im));
  }
};

inline Thick build_thick(const RootedShape& alpha, std::size_t K, std::size_t M) {
  require_rooted(alpha);
  Thick T;
  T.alpha = alpha;
  T.K = K;
  T.M = M;
  std::size_t n = alpha.degree();
  T.thetas.resize(M + 1);
  T.offsets.resize(M + 1);
  T.theta_index.resize(M + 1);
  for (std::size_t m = 0; m <= M; ++m) {
    T.thetas[m].resize(K + 1);
    T.offsets[m].resize(K + 1);
    T.theta_index[m].resize(K + 1);
    TruncSList X = TruncSList::empty(K);
    for (std::size_t k = 0; k <= K; ++k) {
      std::vector<std::string> labels;
      std::size_t count = 0;
      for (auto& th : thick_nerve(n, k, m)) {
        T.theta_index[m][k][th] = T.thetas[m][k].size();
        T.offsets[m][k].push_back(count);
        std::string base = th.render();
        for (Index a = 0; a < alpha.size(th.objects.back()); ++a) labels.push_back(base + ":" + std::to_string(a));
        count += alpha.size(th.objects.back());
        T.thetas[m][k].push_back(std::move(th));
      }
      X.carriers[k] = FiniteSet(labels);
    }
    T.slices.push_back(std::move(X));
  }
  for (std::size_t m = 0; m <= M; ++m) {
    TruncSList& X = T.slices[m];
    auto build = [&](const MonotoneMap& eta, std::size_t k) {
      std::vector<Seq> im;
      for (Index x = 0; x < X.size(k); ++x) im.push_back(T.act_k(eta, k, m, x));
      return Listing(X.size(k), X.size(eta.k()), std::move(im));
    };
    for (std::size_t k = 1; k <= K; ++k)
      for (std::size_t i = 0; i <= k; ++i) X.faces[k][i] = build(MonotoneMap::coface(k, i), k);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t j = 0; j <= k; ++j) X.degeneracies[k][j] = build(MonotoneMap::codegeneracy(k, j), k);
  }
  return T;
}

/// Independent count of U_alpha[k, m]: sum over i_0 <= ... <= i_k of
/// |A_{i_k}| times the product of (m + 2)^(i_t - i_{t-1} - 1) over strict steps.
inline std::size_t thick_count(const RootedShape& alpha, std::size_t k, std::size_t m) {
  std::size_t n = alpha.degree();
  std::size_t total = 0;
  std::vector<std::size_t> obj(k + 1, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t weight) {
    if (t == k + 1) {
      total += weight * alpha.size(obj[k]);
      return;
    }
    for (std::size_t v = t ? obj[t - 1] : 0; v <= n; ++v) {
      obj[t] = v;
      std::size_t w = weight;
      if (t && v > obj[t - 1])
        for (std::size_t e = 0; e + 1 < v - obj[t - 1]; ++e) w *= m + 2;
      rec(t + 1, w);
    }
  };
  rec(0, 1);
  return total;
}

struct ThickViolation {
  std::size_t k = 0;
  std::size_t m = 0;
  std::string identity;
  std::string witness;
};

/// The two actions commute on every cell: mu^*(eta^* x) = eta^*(mu^* x) for
/// faces and degeneracies in both directions.
inline std::vector<ThickViolation> check_bigraded(const Thick& T) {
  std::vector<ThickViolation> out;
  std::vector<MonotoneMap> kops, mops;
  for (std::size_t m = 0; m <= T.M; ++m)
    for (std::size_t k = 0; k <= T.K; ++k) {
      kops.clear();
      mops.clear();
      if (k >= 1)
        for (std::size_t i = 0; i <= k; ++i) kops.push_back(MonotoneMap::coface(k, i));
      if (k < T.K)
        for (std::size_t j = 0; j <= k; ++j) kops.push_back(MonotoneMap::codegeneracy(k, j));
      if (m >= 1)
        for (std::size_t i = 0; i <= m; ++i) mops.push_back(MonotoneMap::coface(m, i));
      if (m < T.M)
        for (std::size_t j = 0; j <= m; ++j) mops.push_back(MonotoneMap::codegeneracy(m, j));
      for (Index x = 0; x < T.size(k, m); ++x)
        for (const auto& eta : kops)
          for (const auto& mu : mops) {
            Seq lhs;
            for (Index y : T.act_k(eta, k, m, x)) lhs.push_back(T.act_m(mu, eta.k(), m, y));
            Seq rhs = T.act_k(eta, k, mu.k(), T.act_m(mu, k, m, x));
            if (lhs != rhs && out.size() < 20)
              out.push_back({k, m, "actions commute", T.slices[m].carriers[k].labels[x]});
          }
    }
  return out;
}

/// The augmentation U_alpha[-, 0] -> U_alpha: (theta, a) |-> (objects of theta, a).
inline Index thick_augment(const Thick& T, const UAlpha& U, std::size_t k, Index x) {
  ThickCell c = T.decode(k, 0, x);
  return U.element(MonotoneMap(k + 1, T.n() + 1, c.theta.objects), c.a);
}

/// s_{-1} on U_alpha -> U_alpha[-, 0].
inline Index thick_section(const Thick& T, const UAlpha& U, std::size_t k, Index u) {
  auto [theta, a] = U.decode(k, u);
  return T.element(0, spine_section(theta, T.n()), a);
}

/// s_{-1} : U_alpha[-, m] -> U_alpha[-, m+1].
inline Index thick_extra(const Thick& T, std::size_t k, std::size_t m, Index x) {
  ThickCell c = T.decode(k, m, x);
  return T.element(m + 1, c.theta.prepend_ends(), c.a);
}

/// d_0 s_{-1} = 1, d_{i+1} s_{-1} = s_{-1} d_i and s_{j+1} s_{-1} = s_{-1} s_j
/// in the m-direction, for every cell with k <= K and m < M.
inline std::vector<ThickViolation> check_extra_degeneracies(const Thick& T, const UAlpha& U) {
  std::vector<ThickViolation> out;
  auto fail = [&](std::size_t k, std::size_t m, const std::string& id, const std::string& w) {
    if (out.size() < 20) out.push_back({k, m, id, w});
  };
  for (std::size_t k = 0; k <= T.K; ++k) {
    // level -1
    for (Index u = 0; u < U.X.size(k); ++u) {
      if (thick_augment(T, U, k, thick_section(T, U, k, u)) != u)
        fail(k, 0, "d0 s-1 = 1 on U_alpha", U.X.carriers[k].labels[u]);
    }
    for (std::size_t m = 0; m + 1 <= T.M; ++m)
      for (Index x = 0; x < T.size(k, m); ++x) {
        const std::string& lab = T.slices[m].carriers[k].labels[x];
        Index y = thick_extra(T, k, m, x);
        if (T.act_m(MonotoneMap::coface(m + 1, 0), k, m + 1, y) != x) fail(k, m, "d0 s-1 = 1", lab);
        for (std::size_t i = 0; i <= m; ++i) {
          Index lhs = T.act_m(MonotoneMap::coface(m + 1, i + 1), k, m + 1, y);
          Index rhs = m == 0 ? thick_section(T, U, k, thick_augment(T, U, k, x))
                             : thick_extra(T, k, m - 1, T.act_m(MonotoneMap::coface(m, i), k, m, x));
          if (lhs != rhs) fail(k, m, "d" + std::to_string(i + 1) + " s-1 = s-1 d" + std::to_string(i), lab);
        }
        if (m + 2 <= T.M)
          for (std::size_t j = 0; j <= m; ++j) {
            Index lhs = T.act_m(MonotoneMap::codegeneracy(m + 1, j + 1), k, m + 1, y);
            Index rhs = thick_extra(T, k, m + 1, T.act_m(MonotoneMap::codegeneracy(m, j), k, m, x));
            if (lhs != rhs) fail(k, m, "s" + std::to_string(j + 1) + " s-1 = s-1 s" + std::to_string(j), lab);
          }
      }
  }
  return out;
}

}  // namespace slist
