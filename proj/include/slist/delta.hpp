#pragma once

// The simplex categories, simplices of N(Delta+) (leveled shapes), rooted
// restriction/decomposition and the shape category Upsilon.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "listing.hpp"

namespace slist {

/// Weakly increasing map between finite ordinals. Domain or codomain may be
/// empty. For Delta, [n] has n+1 elements.
struct MonotoneMap {
  std::size_t domain_size = 0;
  std::size_t codomain_size = 0;
  std::vector<Index> values;

  MonotoneMap() = default;
  MonotoneMap(std::size_t dom, std::size_t cod, std::vector<Index> vals)
      : domain_size(dom), codomain_size(cod), values(std::move(vals)) {
    if (values.size() != domain_size) throw std::invalid_argument("monotone map: wrong number of values");
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (values[t] >= codomain_size) throw std::invalid_argument("monotone map: value out of range");
      if (t > 0 && values[t] < values[t - 1]) throw std::invalid_argument("monotone map: not monotone");
    }
  }

  static MonotoneMap identity(std::size_t n) {
    std::vector<Index> v(n);
    for (Index i = 0; i < n; ++i) v[i] = i;
    return MonotoneMap(n, n, std::move(v));
  }
  // theta : [k] -> [n] from its values.
  static MonotoneMap simplicial(std::size_t n, std::vector<Index> vals) {
    std::size_t dom = vals.size();
    return MonotoneMap(dom, n + 1, std::move(vals));
  }
  // d^i : [n-1] -> [n], skips i.
  static MonotoneMap coface(std::size_t n, std::size_t i) {
    std::vector<Index> v;
    for (Index t = 0; t <= n; ++t)
      if (t != i) v.push_back(t);
    return MonotoneMap(n, n + 1, std::move(v));
  }
  // s^j : [n+1] -> [n], hits j twice.
  static MonotoneMap codegeneracy(std::size_t n, std::size_t j) {
    std::vector<Index> v;
    for (Index t = 0; t <= n + 1; ++t) v.push_back(t <= j ? t : t - 1);
    return MonotoneMap(n + 2, n + 1, std::move(v));
  }

  Index operator()(Index t) const { return values.at(t); }
  // Degree of the source / target as simplicial ordinals.
  std::size_t k() const { return domain_size - 1; }
  std::size_t n() const { return codomain_size - 1; }
  bool is_identity() const { return domain_size == codomain_size && *this == identity(domain_size); }

  bool operator==(const MonotoneMap&) const = default;
  auto operator<=>(const MonotoneMap&) const = default;
};

/// theta . eta
inline MonotoneMap compose(const MonotoneMap& theta, const MonotoneMap& eta) {
  if (eta.codomain_size != theta.domain_size) throw std::invalid_argument("compose: monotone maps not composable");
  std::vector<Index> v;
  v.reserve(eta.domain_size);
  for (Index x : eta.values) v.push_back(theta.values[x]);
  return MonotoneMap(eta.domain_size, theta.codomain_size, std::move(v));
}

/// All monotone maps dom -> cod in lexicographic order of values.
inline std::vector<MonotoneMap> monotone_maps(std::size_t dom, std::size_t cod) {
  std::vector<MonotoneMap> out;
  if (dom == 0) {
    out.emplace_back(0, cod, std::vector<Index>{});
    return out;
  }
  if (cod == 0) return out;
  std::vector<Index> v(dom, 0);
  while (true) {
    out.emplace_back(dom, cod, v);
    std::size_t t = dom;
    while (t > 0 && v[t - 1] == cod - 1) --t;
    if (t == 0) break;
    Index nv = v[t - 1] + 1;
    for (std::size_t s = t - 1; s < dom; ++s) v[s] = nv;
  }
  return out;
}

/// All theta : [k] -> [n].
inline std::vector<MonotoneMap> simplicial_operators(std::size_t k, std::size_t n) {
  return monotone_maps(k + 1, n + 1);
}

/// A chain A_0 -> ... -> A_n in Delta+.
struct LeveledShape {
  std::vector<std::size_t> level_sizes;
  std::vector<MonotoneMap> maps;  // maps[i-1] = alpha_i : A_{i-1} -> A_i

  LeveledShape() = default;
  LeveledShape(std::vector<std::size_t> sizes, std::vector<MonotoneMap> ms)
      : level_sizes(std::move(sizes)), maps(std::move(ms)) {
    if (level_sizes.empty()) throw std::invalid_argument("leveled shape needs at least one level");
    if (maps.size() + 1 != level_sizes.size()) throw std::invalid_argument("leveled shape: map count mismatch");
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps[i].domain_size != level_sizes[i] || maps[i].codomain_size != level_sizes[i + 1])
        throw std::invalid_argument("leveled shape: maps do not chain");
  }

  static LeveledShape from_values(std::vector<std::size_t> sizes, const std::vector<std::vector<Index>>& vals) {
    std::vector<MonotoneMap> ms;
    for (std::size_t i = 0; i < vals.size(); ++i) ms.emplace_back(sizes.at(i), sizes.at(i + 1), vals[i]);
    return LeveledShape(std::move(sizes), std::move(ms));
  }

  std::size_t degree() const { return level_sizes.size() - 1; }
  std::size_t size(std::size_t i) const { return level_sizes.at(i); }
  bool is_rooted() const { return level_sizes.back() == 1; }

  /// alpha_{i,j} : A_i -> A_j for i <= j.
  std::vector<Index> composite(std::size_t i, std::size_t j) const {
    if (i > j || j > degree()) throw std::invalid_argument("composite: bad levels");
    std::vector<Index> v(level_sizes[i]);
    for (Index t = 0; t < v.size(); ++t) v[t] = t;
    for (std::size_t l = i; l < j; ++l)
      for (auto& x : v) x = maps[l].values[x];
    return v;
  }

  /// Elements of A_i mapping to a in A_j, in order.
  std::vector<Index> fiber(std::size_t i, std::size_t j, Index a) const {
    std::vector<Index> out;
    auto c = composite(i, j);
    for (Index t = 0; t < c.size(); ++t)
      if (c[t] == a) out.push_back(t);
    return out;
  }

  std::size_t total_size() const {
    std::size_t s = 0;
    for (auto x : level_sizes) s += x;
    return s;
  }

  bool operator==(const LeveledShape&) const = default;
  auto operator<=>(const LeveledShape&) const = default;
};

// Rooted shapes are leveled shapes with a singleton last level; the check is
// done where rootedness matters.
using RootedShape = LeveledShape;

inline void require_rooted(const LeveledShape& s) {
  if (!s.is_rooted()) throw std::invalid_argument("shape is not rooted");
}

/// theta^* alpha, with B_i = A_theta(i) and beta_i = alpha_{theta(i-1),theta(i)}.
inline LeveledShape act(const MonotoneMap& theta, const LeveledShape& alpha) {
  if (theta.codomain_size != alpha.degree() + 1) throw std::invalid_argument("act: arity mismatch");
  std::vector<std::size_t> sizes;
  std::vector<MonotoneMap> ms;
  for (std::size_t l = 0; l < theta.domain_size; ++l) {
    sizes.push_back(alpha.size(theta(l)));
    if (l > 0)
      ms.emplace_back(alpha.size(theta(l - 1)), alpha.size(theta(l)), alpha.composite(theta(l - 1), theta(l)));
  }
  return LeveledShape(std::move(sizes), std::move(ms));
}

struct Restriction {
  RootedShape shape;
  std::vector<std::vector<Index>> embed;  // embed[i][t] = index of the t-th element in A_i
};

inline Restriction rooted_restriction_with_embedding(const LeveledShape& alpha, Index a) {
  std::size_t n = alpha.degree();
  if (a >= alpha.size(n)) throw std::out_of_range("rooted_restriction: root out of range");
  Restriction r;
  r.embed.assign(n + 1, {});
  r.embed[n] = {a};
  for (std::size_t i = n; i-- > 0;) {
    // preimage of embed[i+1] under alpha_{i+1}; embed[i+1] is increasing so the order is inherited.
    std::vector<bool> keep(alpha.size(i + 1), false);
    for (Index y : r.embed[i + 1]) keep[y] = true;
    for (Index x = 0; x < alpha.size(i); ++x)
      if (keep[alpha.maps[i].values[x]]) r.embed[i].push_back(x);
  }
  std::vector<std::size_t> sizes;
  std::vector<MonotoneMap> ms;
  for (std::size_t i = 0; i <= n; ++i) {
    sizes.push_back(r.embed[i].size());
    if (i > 0) {
      std::vector<Index> vals;
      const auto& up = r.embed[i];
      for (Index x : r.embed[i - 1]) {
        Index y = alpha.maps[i - 1].values[x];
        vals.push_back(static_cast<Index>(std::lower_bound(up.begin(), up.end(), y) - up.begin()));
      }
      ms.emplace_back(sizes[i - 1], sizes[i], std::move(vals));
    }
  }
  r.shape = LeveledShape(std::move(sizes), std::move(ms));
  return r;
}

inline RootedShape rooted_restriction(const LeveledShape& alpha, Index a) {
  return rooted_restriction_with_embedding(alpha, a).shape;
}

inline std::vector<RootedShape> rooted_decomposition(const LeveledShape& alpha) {
  std::vector<RootedShape> out;
  for (Index a = 0; a < alpha.size(alpha.degree()); ++a) out.push_back(rooted_restriction(alpha, a));
  return out;
}

/// Level-wise ordinal sum of shapes of a common degree.
inline LeveledShape ordinal_sum(const std::vector<LeveledShape>& parts, std::size_t n) {
  std::vector<std::size_t> sizes(n + 1, 0);
  std::vector<std::vector<Index>> vals(n);
  for (const auto& p : parts) {
    if (p.degree() != n) throw std::invalid_argument("ordinal_sum: degree mismatch");
    for (std::size_t i = 0; i < n; ++i)
      for (Index x : p.maps[i].values) vals[i].push_back(x + sizes[i + 1]);
    for (std::size_t i = 0; i <= n; ++i) sizes[i] += p.size(i);
  }
  return LeveledShape::from_values(sizes, vals);
}

/// A morphism (theta, a) : beta -> alpha of Upsilon.
struct UpsilonArrow {
  MonotoneMap theta;
  Index root_choice = 0;
  RootedShape source;
  RootedShape target;

  bool operator==(const UpsilonArrow&) const = default;
};

inline UpsilonArrow make_upsilon(const MonotoneMap& theta, Index a, const RootedShape& target) {
  require_rooted(target);
  return {theta, a, rooted_restriction(act(theta, target), a), target};
}

inline UpsilonArrow identity_upsilon(const RootedShape& alpha) {
  return make_upsilon(MonotoneMap::identity(alpha.degree() + 1), 0, alpha);
}

inline bool upsilon_invariant_holds(const UpsilonArrow& f) {
  if (f.theta.codomain_size != f.target.degree() + 1) return false;
  auto b = act(f.theta, f.target);
  if (f.root_choice >= b.size(b.degree())) return false;
  return rooted_restriction(b, f.root_choice) == f.source;
}

/// g . f for f : gamma -> beta, g : beta -> alpha.
inline UpsilonArrow compose_upsilon(const UpsilonArrow& g, const UpsilonArrow& f) {
  if (f.target != g.source) throw std::invalid_argument("compose_upsilon: shape mismatch");
  auto r = rooted_restriction_with_embedding(act(g.theta, g.target), g.root_choice);
  MonotoneMap th = compose(g.theta, f.theta);
  Index a = r.embed.at(f.theta(f.theta.domain_size - 1)).at(f.root_choice);
  UpsilonArrow out{th, a, f.source, g.target};
  if (!upsilon_invariant_holds(out)) throw std::logic_error("compose_upsilon: invariant broken");
  return out;
}

/// All Upsilon-arrows into alpha from shapes of degree k.
inline std::vector<UpsilonArrow> upsilon_arrows_into(const RootedShape& alpha, std::size_t k) {
  std::vector<UpsilonArrow> out;
  for (const auto& th : simplicial_operators(k, alpha.degree())) {
    auto b = act(th, alpha);
    for (Index a = 0; a < b.size(k); ++a) out.push_back({th, a, rooted_restriction(b, a), alpha});
  }
  return out;
}

/// Rooted n-simplices with every level of size <= B. Order: lexicographic on
/// the size vector, then on the value vectors of alpha_1, ..., alpha_n.
inline std::vector<RootedShape> enumerate_rooted(std::size_t n, std::size_t B) {
  std::vector<RootedShape> out;
  std::vector<std::size_t> sizes(n + 1, 0);
  sizes[n] = 1;
  // iterate size vectors (A_0..A_{n-1}) lexicographically
  std::vector<std::vector<std::size_t>> size_vectors;
  std::vector<std::size_t> cur(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t next = (i + 1 < n) ? cur[i + 1] : 1;
      if (cur[i] > 0 && next == 0) ok = false;
    }
    if (ok) size_vectors.push_back(cur);
    std::size_t t = n;
    while (t > 0 && cur[t - 1] == B) --t;
    if (t == 0) break;
    ++cur[t - 1];
    for (std::size_t s = t; s < n; ++s) cur[s] = 0;
  }
  for (const auto& sv : size_vectors) {
    for (std::size_t i = 0; i < n; ++i) sizes[i] = sv[i];
    std::vector<std::vector<MonotoneMap>> choices(n);
    for (std::size_t i = 0; i < n; ++i) choices[i] = monotone_maps(sizes[i], sizes[i + 1]);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<MonotoneMap> ms;
      for (std::size_t i = 0; i < n; ++i) ms.push_back(choices[i][idx[i]]);
      out.emplace_back(sizes, std::move(ms));
      std::size_t t = n;
      while (t > 0 && idx[t - 1] + 1 == choices[t - 1].size()) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t s = t; s < n; ++s) idx[s] = 0;
    }
  }
  return out;
}

/// One level per line, top level first; elements grouped by fiber.
inline std::string render_shape(const LeveledShape& s) {
  std::ostringstream os;
  std::size_t n = s.degree();
  for (std::size_t i = n + 1; i-- > 0;) {
    os << "level " << i << ":";
    if (i == n) {
      os << " (";
      for (Index t = 0; t < s.size(i); ++t) os << (t ? " " : "") << t;
      os << ")";
    } else {
      for (Index b = 0; b < s.size(i + 1); ++b) {
        os << " (";
        bool first = true;
        for (Index t = 0; t < s.size(i); ++t)
          if (s.maps[i].values[t] == b) {
            os << (first ? "" : " ") << t;
            first = false;
          }
        os << ")";
      }
    }
    os << "\n";
  }
  return os.str();
}

inline std::string shape_key(const LeveledShape& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.level_sizes.size(); ++i) os << (i ? "," : "") << s.level_sizes[i];
  os << "]";
  for (const auto& m : s.maps) {
    os << "(";
    for (std::size_t t = 0; t < m.values.size(); ++t) os << (t ? "," : "") << m.values[t];
    os << ")";
  }
  return os.str();
}

}  // namespace slist
