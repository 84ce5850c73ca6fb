#pragma once

// Random generators and brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls the routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "slist/slist.hpp"

namespace slist::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Listing random_listing(Rng& rng, std::size_t A, std::size_t X, std::size_t maxlen) {
  std::vector<Seq> im(A);
  for (auto& s : im) {
    std::size_t len = X ? uniform(rng, 0, maxlen) : 0;
    for (std::size_t t = 0; t < len; ++t) s.push_back(uniform(rng, 0, X - 1));
  }
  return Listing(A, X, std::move(im));
}

/// (v . u)(a) straight from the definition, on raw vectors.
inline std::vector<Seq> naive_compose(const std::vector<Seq>& v, const std::vector<Seq>& u) {
  std::vector<Seq> out;
  for (const auto& s : u) {
    Seq r;
    for (Index x : s)
      for (Index y : v[x]) r.push_back(y);
    out.push_back(r);
  }
  return out;
}

inline MonotoneMap random_monotone(Rng& rng, std::size_t dom, std::size_t cod) {
  std::vector<Index> v;
  for (std::size_t t = 0; t < dom; ++t) v.push_back(uniform(rng, 0, cod - 1));
  std::sort(v.begin(), v.end());
  return MonotoneMap(dom, cod, v);
}

/// A rooted shape of degree n with every level of size <= B and no empty
/// level above a nonempty one.
inline RootedShape random_shape(Rng& rng, std::size_t n, std::size_t B) {
  std::vector<std::size_t> sizes(n + 1, 1);
  for (std::size_t i = n; i-- > 0;) sizes[i] = sizes[i + 1] ? uniform(rng, 0, B) : 0;
  std::vector<std::vector<Index>> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = random_monotone(rng, sizes[i], std::max<std::size_t>(sizes[i + 1], 1)).values;
  return LeveledShape::from_values(sizes, vals);
}

/// Number of weakly increasing maps from a k-set to an m-set.
inline std::size_t multichoose(std::size_t k, std::size_t m) {
  if (k == 0) return 1;
  if (m == 0) return 0;
  // C(k + m - 1, k)
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (m - 1 + t) / t;
  return r;
}

/// Count of rooted n-simplices with levels <= B by the product formula.
inline std::size_t rooted_count(std::size_t n, std::size_t B) {
  std::size_t total = 0;
  std::vector<std::size_t> sizes(n + 1, 1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == 0) {
      std::size_t p = 1;
      for (std::size_t l = 0; l < n; ++l) p *= multichoose(sizes[l], sizes[l + 1]);
      total += p;
      return;
    }
    for (std::size_t s = 0; s <= B; ++s) {
      sizes[i - 1] = s;
      rec(i - 1);
    }
  };
  rec(n);
  return total;
}

// ---------------------------------------------------------------------------
// Multigraphs, terms and vectors.

/// Acyclic: every edge takes inputs of strictly larger color index than its
/// output. Some edges are nullary.
inline Multigraph random_multigraph(Rng& rng, std::size_t colors, std::size_t edges, std::size_t max_arity) {
  std::vector<Edge> es;
  for (std::size_t e = 0; e < edges; ++e) {
    Edge E;
    E.name = "e" + std::to_string(e);
    E.output = uniform(rng, 0, colors - 1);
    if (E.output + 1 < colors) {
      std::size_t k = uniform(rng, 0, max_arity);
      for (std::size_t t = 0; t < k; ++t) E.inputs.push_back(uniform(rng, E.output + 1, colors - 1));
    }
    es.push_back(std::move(E));
  }
  return Multigraph(FiniteSet::numbered(colors, "c"), std::move(es));
}

/// The multigraph of two edges f1, f2 feeding one edge g.
inline Multigraph two_level_multigraph() {
  // colors a1 a2 b1 b2 c
  return Multigraph(FiniteSet({"a1", "a2", "b1", "b2", "c"}),
                    {Edge{"f1", {0}, 2}, Edge{"f2", {1}, 3}, Edge{"g", {2, 3}, 4}});
}

/// Random planar term with output c, by descending with the given chance of
/// stopping at a leaf.
inline PlanarTerm random_term(Rng& rng, const Multigraph& mg, Index c, std::size_t depth) {
  std::vector<Index> cand;
  for (Index e = 0; e < mg.edges.size(); ++e)
    if (mg.edges[e].output == c) cand.push_back(e);
  if (cand.empty() || depth == 0 || uniform(rng, 0, 3) == 0) return PlanarTerm::leaf(c);
  Index e = cand[uniform(rng, 0, cand.size() - 1)];
  PlanarTerm t{{static_cast<std::int32_t>(e)}};
  for (Index x : mg.edges[e].inputs) {
    auto k = random_term(rng, mg, x, depth - 1);
    t.tokens.insert(t.tokens.end(), k.tokens.begin(), k.tokens.end());
  }
  return t;
}

/// A vector for a term, built without term_to_vector: the root edge at the
/// end, children levelled by their own depth and padded at the input end.
inline OperationVector naive_vector(const Multigraph& mg, const PlanarTerm& t) {
  std::size_t pos = 0;
  std::function<OperationVector()> go = [&]() -> OperationVector {
    std::int32_t tok = t.tokens[pos++];
    if (tok < 0) return {{mg.s0(static_cast<Index>(-tok - 1))}};
    const Edge& e = mg.edges[tok];
    std::vector<OperationVector> kids;
    std::size_t len = 0;
    for (std::size_t c = 0; c < e.inputs.size(); ++c) {
      kids.push_back(go());
      len = std::max(len, kids.back().size());
    }
    OperationVector v(len);
    for (std::size_t c = 0; c < kids.size(); ++c) {
      // pad on the input side with identities on the child's inputs
      std::vector<Index> in;
      for (Index x : kids[c].front()) {
        auto d = mg.d1(x);
        in.insert(in.end(), d.begin(), d.end());
      }
      std::size_t pad = len - kids[c].size();
      for (std::size_t s = 0; s < pad; ++s)
        for (Index x : in) v[s].push_back(mg.s0(x));
      for (std::size_t s = 0; s < kids[c].size(); ++s)
        v[pad + s].insert(v[pad + s].end(), kids[c][s].begin(), kids[c][s].end());
    }
    v.push_back({static_cast<Index>(tok)});
    // drop a leading all-identity column produced by leaf children only
    while (v.size() > 1) {
      bool ids = !v.front().empty();
      for (Index x : v.front()) ids = ids && mg.is_identity(x);
      if (!ids) break;
      v.erase(v.begin());
    }
    return v;
  };
  return go();
}

inline std::vector<Index> outputs_of(const Multigraph& mg, const Entry& e) {
  std::vector<Index> out;
  for (Index x : e) out.push_back(mg.d0(x));
  return out;
}
inline std::vector<Index> inputs_of(const Multigraph& mg, const Entry& e) {
  std::vector<Index> out;
  for (Index x : e) {
    auto d = mg.d1(x);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}
inline Entry ids_on(const Multigraph& mg, const std::vector<Index>& cs) {
  Entry e;
  for (Index c : cs) e.push_back(mg.s0(c));
  return e;
}
inline bool all_ids(const Multigraph& mg, const Entry& e) {
  for (Index x : e)
    if (!mg.is_identity(x)) return false;
  return true;
}

/// (U): insert an identity column at a random position, or delete one.
inline bool rewrite_u(Rng& rng, const Multigraph& mg, OperationVector& v) {
  if (uniform(rng, 0, 1) == 0 || v.size() == 1) {
    std::size_t at = uniform(rng, 0, v.size() - 1);  // insert before entry `at`
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(at), ids_on(mg, inputs_of(mg, v[at])));
    return true;
  }
  std::vector<std::size_t> cand;
  for (std::size_t t = 0; t < v.size(); ++t)
    if (all_ids(mg, v[t])) cand.push_back(t);
  if (cand.empty()) return false;
  std::size_t t = cand[uniform(rng, 0, cand.size() - 1)];
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(t));
  return true;
}

/// Rows of the column block [from, to] of v, one per element of column to.
inline std::vector<OperationVector> block_of(const Multigraph& mg, const OperationVector& v, std::size_t from,
                                             std::size_t to) {
  std::vector<OperationVector> rows(v[to].size());
  std::vector<std::size_t> owner(v[to].size());
  for (std::size_t s = 0; s < owner.size(); ++s) owner[s] = s;
  for (std::size_t c = to + 1; c-- > from;) {
    std::vector<std::size_t> next;
    for (auto& r : rows) r.insert(r.begin(), Entry{});
    for (std::size_t s = 0; s < v[c].size(); ++s) {
      rows[owner[s]].front().push_back(v[c][s]);
      for (std::size_t k = 0; k < mg.d1(v[c][s]).size(); ++k) next.push_back(owner[s]);
    }
    owner = std::move(next);
  }
  return rows;
}

/// (OU) through (RU): cut v as M1 . K . M2 with K a column block, apply (U)
/// to one row of K, re-pad K and glue it back.
inline bool rewrite_ou(Rng& rng, const Multigraph& mg, OperationVector& v) {
  std::size_t from = uniform(rng, 0, v.size() - 1);
  std::size_t to = uniform(rng, from, v.size() - 1);
  auto rows = block_of(mg, v, from, to);
  if (rows.empty()) return false;
  std::size_t r = uniform(rng, 0, rows.size() - 1);
  if (!rewrite_u(rng, mg, rows[r])) return false;
  std::size_t len = 0;
  for (auto& row : rows) len = std::max(len, row.size());
  // pad at the input end
  for (auto& row : rows) {
    Entry pad = ids_on(mg, inputs_of(mg, row.front()));
    while (row.size() < len) row.insert(row.begin(), pad);
  }
  OperationVector k(len);
  for (std::size_t c = 0; c < len; ++c)
    for (const auto& row : rows) k[c].insert(k[c].end(), row[c].begin(), row[c].end());
  OperationVector out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(from));
  out.insert(out.end(), k.begin(), k.end());
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(to) + 1, v.end());
  v = std::move(out);
  return true;
}

inline bool composable(const Multigraph& mg, const OperationVector& v) {
  if (v.empty() || v.back().size() != 1) return false;
  for (std::size_t t = 0; t + 1 < v.size(); ++t)
    if (outputs_of(mg, v[t]) != inputs_of(mg, v[t + 1])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Operads and shapes.

/// The level bound at which nerve(T_alpha) is complete.
inline std::size_t complete_bound(const TAlpha& T) {
  std::size_t b = std::max<std::size_t>(T.operad().max_arity(), 1);
  for (auto s : T.alpha.level_sizes) b = std::max(b, s);
  return b;
}

/// A fixed set of small rooted shapes used across suites.
inline std::vector<RootedShape> sample_shapes() {
  return {
      LeveledShape::from_values({2, 2, 1}, {{0, 1}, {0, 0}}),  // two-level tree
      LeveledShape::from_values({3, 2, 1}, {{0, 0, 1}, {0, 0}}),
      LeveledShape::from_values({1, 1, 1}, {{0}, {0}}),        // chain of points
      LeveledShape::from_values({0, 2, 1}, {{}, {0, 0}}),      // nullary leaves
      LeveledShape::from_values({3, 1}, {{0, 0, 0}}),
      LeveledShape::from_values({1, 3, 1}, {{1}, {0, 0, 0}}),  // one unused branch pair
  };
}

/// Brute-force count of typed assignments T_alpha -> P over every color of
/// every node and every operation of every generator.
inline std::size_t brute_force_morphisms(const LeveledShape& alpha, const FiniteOperad& P) {
  std::size_t n = alpha.degree();
  std::vector<std::pair<std::size_t, Index>> nodes;
  for (std::size_t i = 0; i <= n; ++i)
    for (Index a = 0; a < alpha.size(i); ++a) nodes.emplace_back(i, a);
  std::vector<std::pair<std::size_t, Index>> gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (Index a = 0; a < alpha.size(i); ++a) gens.emplace_back(i, a);
  std::map<std::pair<std::size_t, Index>, Index> col;
  std::size_t count = 0;
  std::function<void(std::size_t)> pick_gen = [&](std::size_t g) {
    if (g == gens.size()) {
      ++count;
      return;
    }
    auto [i, a] = gens[g];
    std::vector<Index> want;
    for (Index c = 0; c < alpha.size(i - 1); ++c)
      if (alpha.maps[i - 1].values[c] == a) want.push_back(col[{i - 1, c}]);
    for (Index p = 0; p < P.ops.size(); ++p)
      if (P.ops[p].output == col[{i, a}] && P.ops[p].inputs == want) pick_gen(g + 1);
  };
  std::function<void(std::size_t)> pick_col = [&](std::size_t t) {
    if (t == nodes.size()) {
      pick_gen(0);
      return;
    }
    for (Index c = 0; c < P.colors.size(); ++c) {
      col[nodes[t]] = c;
      pick_col(t + 1);
    }
  };
  pick_col(0);
  return count;
}

/// |U_alpha[k, m]| by brute force over object chains and all mask chains.
inline std::size_t thick_oracle(const RootedShape& alpha, std::size_t k, std::size_t m) {
  std::size_t n = alpha.degree();
  auto arrows = [&](std::size_t i, std::size_t j) {
    // chains of m+1 subsets of {0..n}, weakly increasing, inside [i, j], containing i and j
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 0; s < (1u << (n + 1)); ++s) {
      bool ok = (s >> i & 1u) && (s >> j & 1u);
      for (std::size_t b = 0; b <= n; ++b)
        if ((s >> b & 1u) && (b < i || b > j)) ok = false;
      if (ok) subsets.push_back(s);
    }
    std::size_t c = 0;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t t, std::uint32_t prev) {
      if (t == m + 1) {
        ++c;
        return;
      }
      for (auto s : subsets)
        if ((prev & ~s) == 0) rec(t + 1, s);
    };
    rec(0, 0);
    return c;
  };
  std::size_t total = 0;
  for (const auto& obj : monotone_maps(k + 1, n + 1)) {
    std::size_t w = alpha.size(obj(k));
    for (std::size_t t = 1; t <= k; ++t) w *= arrows(obj(t - 1), obj(t));
    total += w;
  }
  return total;
}

/// Relabels every carrier of X by a random permutation; returns the copy.
inline TruncSList permuted(Rng& rng, const TruncSList& X) {
  std::vector<std::vector<Index>> perm(X.D + 1);
  for (std::size_t n = 0; n <= X.D; ++n) {
    perm[n].resize(X.size(n));
    for (Index x = 0; x < X.size(n); ++x) perm[n][x] = x;
    std::shuffle(perm[n].begin(), perm[n].end(), rng);
  }
  TruncSList Y = TruncSList::empty(X.D);
  for (std::size_t n = 0; n <= X.D; ++n) {
    std::vector<std::string> ls(X.size(n));
    for (Index x = 0; x < X.size(n); ++x) ls[perm[n][x]] = X.carriers[n].labels[x];
    Y.carriers[n] = FiniteSet(ls);
  }
  auto move = [&](const Listing& u, std::size_t src, std::size_t tgt) {
    std::vector<Seq> im(u.source_size());
    for (Index x = 0; x < u.source_size(); ++x)
      for (Index y : u(x)) im[perm[src][x]].push_back(perm[tgt][y]);
    return Listing(u.source_size(), u.target_size(), std::move(im));
  };
  for (std::size_t n = 1; n <= X.D; ++n)
    for (std::size_t i = 0; i <= n; ++i) Y.faces[n][i] = move(X.face(n, i), n, n - 1);
  for (std::size_t n = 0; n < X.D; ++n)
    for (std::size_t j = 0; j <= n; ++j) Y.degeneracies[n][j] = move(X.degen(n, j), n, n + 1);
  return Y;
}

/// Elements of X_n outside the images of all degeneracies.
inline std::size_t nondegenerate(const TruncSList& X, std::size_t n) {
  std::vector<bool> deg(X.size(n), false);
  if (n >= 1)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& s : X.degen(n - 1, j).images())
        for (Index y : s) deg[y] = true;
  return static_cast<std::size_t>(std::count(deg.begin(), deg.end(), false));
}

}  // namespace slist::testing
