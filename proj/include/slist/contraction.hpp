#pragma once

// Augmentations with extra degeneracies and the contracting homotopy check
// (dh + hd)(x) = x on the augmented complex, with h the linearized s_{-1}.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nerve.hpp"
#include "thicken.hpp"

namespace slist {

/// An augmented simplicial object given lazily. Degrees run from -1; faces
/// out of degree 0 are the augmentation. All operations return lists.
template <class E>
struct Augmented {
  int top = 0;  // highest degree present
  std::function<std::vector<E>(int, std::size_t, const E&)> face;   // d_i : X_n -> X_{n-1}, n >= 0
  std::function<std::vector<E>(int, std::size_t, const E&)> degen;  // s_j : X_n -> X_{n+1}, n >= 0
  std::function<std::vector<E>(int, const E&)> extra;               // s_{-1} : X_n -> X_{n+1}, n >= -1
  std::function<std::string(int, const E&)> render;
};

struct ContractionReport {
  std::string target;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::size_t> per_degree;  // elements checked at degree -1, 0, 1, ...
  std::string first_failure;
  bool sampled = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int top = 0;

  bool ok() const { return failures == 0 && checked > 0; }
};

namespace detail {
template <class E>
using Chain = std::map<E, std::int64_t>;

template <class E>
void accumulate(Chain<E>& c, const std::vector<E>& xs, std::int64_t coeff) {
  for (const auto& x : xs) {
    auto& v = c[x];
    v += coeff;
    if (v == 0) c.erase(x);
  }
}

template <class E, class F>
std::vector<E> apply_all(const std::vector<E>& xs, F f) {
  std::vector<E> out;
  for (const auto& x : xs) {
    auto ys = f(x);
    out.insert(out.end(), ys.begin(), ys.end());
  }
  return out;
}
}  // namespace detail

/// Checks, on each given element x of degree n (n >= -1, n < top):
///   d_0 s_{-1} x = (x), d_{i+1} s_{-1} x = s_{-1} d_i x,
///   s_{j+1} s_{-1} x = s_{-1} s_j x (when degree n + 2 exists),
///   (d h + h d)(x) = x with d = sum (-1)^i d_i and d = 0 on degree -1.
template <class E>
void verify_contraction_at(const Augmented<E>& A, int n, const std::vector<E>& elements, ContractionReport& rep) {
  if (n < -1 || n >= A.top) throw std::out_of_range("verify_contraction: degree out of range");
  std::size_t slot = static_cast<std::size_t>(n + 1);
  if (rep.per_degree.size() <= slot) rep.per_degree.resize(slot + 1, 0);
  for (const auto& x : elements) {
    ++rep.checked;
    ++rep.per_degree[slot];
    std::string bad;
    auto hx = A.extra(n, x);
    // d_0 s_{-1} = 1
    if (detail::apply_all(hx, [&](const E& y) { return A.face(n + 1, 0, y); }) != std::vector<E>{x}) bad = "d0 s-1 = 1";
    for (int i = 0; bad.empty() && i <= n; ++i) {
      auto lhs = detail::apply_all(hx, [&](const E& y) { return A.face(n + 1, static_cast<std::size_t>(i + 1), y); });
      auto rhs = detail::apply_all(A.face(n, static_cast<std::size_t>(i), x), [&](const E& y) { return A.extra(n - 1, y); });
      if (lhs != rhs) bad = "d" + std::to_string(i + 1) + " s-1 = s-1 d" + std::to_string(i);
    }
    for (int j = 0; bad.empty() && n >= 0 && n + 2 <= A.top && j <= n; ++j) {
      auto lhs = detail::apply_all(hx, [&](const E& y) { return A.degen(n + 1, static_cast<std::size_t>(j + 1), y); });
      auto rhs = detail::apply_all(A.degen(n, static_cast<std::size_t>(j), x), [&](const E& y) { return A.extra(n + 1, y); });
      if (lhs != rhs) bad = "s" + std::to_string(j + 1) + " s-1 = s-1 s" + std::to_string(j);
    }
    if (bad.empty()) {
      detail::Chain<E> c;
      // d h x
      for (const auto& y : hx)
        for (int i = 0; i <= n + 1; ++i) detail::accumulate(c, A.face(n + 1, static_cast<std::size_t>(i), y), i % 2 ? -1 : 1);
      // h d x
      for (int i = 0; n >= 0 && i <= n; ++i)
        for (const auto& z : A.face(n, static_cast<std::size_t>(i), x)) detail::accumulate(c, A.extra(n - 1, z), i % 2 ? -1 : 1);
      detail::accumulate(c, std::vector<E>{x}, -1);
      if (!c.empty()) bad = "dh + hd = 1";
    }
    if (!bad.empty()) {
      if (rep.failures++ == 0) rep.first_failure = bad + " fails at degree " + std::to_string(n) + " on " + A.render(n, x);
    }
  }
}

// ---------------------------------------------------------------------------
// nerve(T_alpha) augmented over A_0.

/// Elements: degree -1 is a in A_0, degree n >= 0 an index into X_n.
inline Augmented<Index> nerve_augmentation(const Nerve& N, const TAlpha& T) {
  Augmented<Index> A;
  A.top = static_cast<int>(N.D);
  const auto& alpha = T.alpha;
  A.face = [&N, &T](int n, std::size_t i, const Index& x) -> std::vector<Index> {
    if (n == 0) {
      auto [lvl, a] = T.level_of(N.simplices[0][x].f.colors[0]);
      return T.alpha.fiber(0, lvl, a);
    }
    return N.X.face(static_cast<std::size_t>(n), i)(x);
  };
  A.degen = [&N](int n, std::size_t j, const Index& x) { return N.X.degen(static_cast<std::size_t>(n), j)(x); };
  A.extra = [&N, &T, alpha](int n, const Index& x) -> std::vector<Index> {
    if (n == -1) {
      NerveSimplex s{LeveledShape({1}, {}), {{T.color(0, x)}, {}}};
      return {*N.find(s)};
    }
    // new bottom level: the A_0-fibers of the colors of the old level 0
    const NerveSimplex& s = N.simplices[static_cast<std::size_t>(n)][x];
    ShapeIndex ix(s.shape);
    std::vector<std::size_t> sizes{0};
    std::vector<std::vector<Index>> vals(1);
    std::vector<Index> bottom_colors, new_gens;
    for (Index b = 0; b < s.shape.size(0); ++b) {
      auto [lvl, a] = T.level_of(s.f.colors[ix.color(0, b)]);
      for (Index z : alpha.fiber(0, lvl, a)) {
        vals[0].push_back(b);
        bottom_colors.push_back(T.color(0, z));
      }
      new_gens.push_back(T.p(0, lvl, a));
    }
    sizes[0] = bottom_colors.size();
    for (auto v : s.shape.level_sizes) sizes.push_back(v);
    for (const auto& m : s.shape.maps) vals.push_back(m.values);
    NerveSimplex t;
    t.shape = LeveledShape::from_values(sizes, vals);
    t.f.colors = bottom_colors;
    t.f.colors.insert(t.f.colors.end(), s.f.colors.begin(), s.f.colors.end());
    t.f.gens = new_gens;
    t.f.gens.insert(t.f.gens.end(), s.f.gens.begin(), s.f.gens.end());
    auto id = N.find(t);
    if (!id) throw std::logic_error("nerve extra degeneracy leaves the truncation");
    return {*id};
  };
  A.render = [&N, &T](int n, const Index& x) {
    if (n == -1) return T.operad().colors.labels.at(T.color(0, x));
    return N.X.carriers[static_cast<std::size_t>(n)].labels.at(x);
  };
  return A;
}

/// Exhaustive check for nerve(T_alpha), degrees -1 .. D-1.
inline ContractionReport verify_nerve_contraction(const Nerve& N, const TAlpha& T) {
  ContractionReport rep;
  rep.target = "nerve";
  rep.top = static_cast<int>(N.D);
  auto A = nerve_augmentation(N, T);
  std::vector<Index> xs;
  for (Index a = 0; a < T.alpha.size(0); ++a) xs.push_back(a);
  verify_contraction_at(A, -1, xs, rep);
  for (std::size_t n = 0; n + 1 <= N.D; ++n) {
    xs.clear();
    for (Index x = 0; x < N.X.size(n); ++x) xs.push_back(x);
    verify_contraction_at(A, static_cast<int>(n), xs, rep);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rooted simplices of N(Delta_+), augmented over the empty set.

inline Augmented<LeveledShape> rooted_shape_augmentation(int top) {
  Augmented<LeveledShape> A;
  A.top = top;
  A.face = [](int n, std::size_t i, const LeveledShape& s) -> std::vector<LeveledShape> {
    if (n == 0) return {};
    return rooted_decomposition(act(MonotoneMap::coface(static_cast<std::size_t>(n), i), s));
  };
  A.degen = [](int n, std::size_t j, const LeveledShape& s) -> std::vector<LeveledShape> {
    return {act(MonotoneMap::codegeneracy(static_cast<std::size_t>(n), j), s)};
  };
  A.extra = [](int, const LeveledShape& s) -> std::vector<LeveledShape> {
    std::vector<std::size_t> sizes{0};
    std::vector<std::vector<Index>> vals{{}};
    for (auto v : s.level_sizes) sizes.push_back(v);
    for (const auto& m : s.maps) vals.push_back(m.values);
    return {LeveledShape::from_values(sizes, vals)};
  };
  A.render = [](int, const LeveledShape& s) { return shape_key(s); };
  return A;
}

/// A uniformly drawn degree, then level sizes in [0, max_size] and random
/// monotone maps, top level a singleton.
inline LeveledShape random_rooted(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> sz(0, max_size);
  std::vector<std::size_t> sizes(n + 1);
  for (std::size_t i = 0; i < n; ++i) sizes[i] = sz(rng);
  sizes[n] = 1;
  std::vector<std::vector<Index>> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[i + 1] == 0) sizes[i] = 0;  // nothing to map to
    std::uniform_int_distribution<Index> v(0, sizes[i + 1] ? sizes[i + 1] - 1 : 0);
    for (std::size_t t = 0; t < sizes[i]; ++t) vals[i].push_back(v(rng));
    std::sort(vals[i].begin(), vals[i].end());
  }
  // a level forced empty empties everything below it
  for (std::size_t i = n; i-- > 0;)
    if (sizes[i + 1] == 0 && sizes[i] != 0) {
      sizes[i] = 0;
      vals[i].clear();
    }
  return LeveledShape::from_values(sizes, vals);
}

/// Sampled check: `samples` rooted simplices of degree 0..top-1.
inline ContractionReport verify_rooted_contraction(std::size_t samples, std::uint64_t seed, int top = 4,
                                                   std::size_t max_size = 3) {
  ContractionReport rep;
  rep.target = "assoc";
  rep.sampled = true;
  rep.samples = samples;
  rep.seed = seed;
  rep.top = top;
  auto A = rooted_shape_augmentation(top);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(0, top - 1);
  std::vector<std::vector<LeveledShape>> by_degree(static_cast<std::size_t>(top));
  for (std::size_t s = 0; s < samples; ++s) {
    int n = deg(rng);
    by_degree[static_cast<std::size_t>(n)].push_back(random_rooted(rng, static_cast<std::size_t>(n), max_size));
  }
  verify_contraction_at(A, -1, std::vector<LeveledShape>{}, rep);
  for (int n = 0; n < top; ++n) verify_contraction_at(A, n, by_degree[static_cast<std::size_t>(n)], rep);
  return rep;
}

// ---------------------------------------------------------------------------
// U_alpha[k, -] augmented over U_alpha,k.

inline Augmented<Index> thick_augmentation(const Thick& T, const UAlpha& U, std::size_t k) {
  Augmented<Index> A;
  A.top = static_cast<int>(T.M);
  A.face = [&T, &U, k](int m, std::size_t i, const Index& x) -> std::vector<Index> {
    if (m == 0) return {thick_augment(T, U, k, x)};
    return {T.act_m(MonotoneMap::coface(static_cast<std::size_t>(m), i), k, static_cast<std::size_t>(m), x)};
  };
  A.degen = [&T, k](int m, std::size_t j, const Index& x) -> std::vector<Index> {
    return {T.act_m(MonotoneMap::codegeneracy(static_cast<std::size_t>(m), j), k, static_cast<std::size_t>(m), x)};
  };
  A.extra = [&T, &U, k](int m, const Index& x) -> std::vector<Index> {
    if (m == -1) return {thick_section(T, U, k, x)};
    return {thick_extra(T, k, static_cast<std::size_t>(m), x)};
  };
  A.render = [&T, &U, k](int m, const Index& x) {
    if (m == -1) return U.X.carriers[k].labels.at(x);
    return T.slices[static_cast<std::size_t>(m)].carriers[k].labels.at(x);
  };
  return A;
}

/// Exhaustive check over k <= K and cells of degree m <= M - 1 (the
/// homotopy out of degree m needs degree m + 1).
inline ContractionReport verify_thick_contraction(const Thick& T, const UAlpha& U) {
  ContractionReport rep;
  rep.target = "thick";
  rep.top = static_cast<int>(T.M);
  for (std::size_t k = 0; k <= T.K; ++k) {
    auto A = thick_augmentation(T, U, k);
    std::vector<Index> xs;
    for (Index u = 0; u < U.X.size(k); ++u) xs.push_back(u);
    verify_contraction_at(A, -1, xs, rep);
    for (std::size_t m = 0; m + 1 <= T.M; ++m) {
      xs.clear();
      for (Index x = 0; x < T.size(k, m); ++x) xs.push_back(x);
      verify_contraction_at(A, static_cast<int>(m), xs, rep);
    }
  }
  return rep;
}

inline std::string render_report(const ContractionReport& r) {
  std::ostringstream os;
  os << r.target << ": " << (r.ok() ? "contraction verified" : "contraction FAILED") << ", checked " << r.checked;
  if (r.sampled) os << " sampled elements (samples " << r.samples << ", seed " << r.seed << ")";
  if (!r.first_failure.empty()) os << "; first failure: " << r.first_failure;
  return os.str();
}

}  // namespace slist
