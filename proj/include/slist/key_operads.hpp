#pragma once

// The free operads T_alpha on leveled shapes, the maps lambda_theta and
// morphisms T_alpha -> P.

#include <functional>
#include <string>
#include <vector>

#include "delta.hpp"
#include "operad.hpp"

namespace slist {

/// Flat numbering of the nodes (colors) and generators of a shape.
struct ShapeIndex {
  std::vector<std::size_t> color_offset;  // node (i, a) -> color_offset[i] + a
  std::vector<std::size_t> gen_offset;    // generator p_i^(a), i >= 1 -> gen_offset[i] + a
  std::size_t colors = 0;
  std::size_t gens = 0;

  explicit ShapeIndex(const LeveledShape& s) {
    for (std::size_t i = 0; i <= s.degree(); ++i) {
      color_offset.push_back(colors);
      colors += s.size(i);
      gen_offset.push_back(gens);
      if (i > 0) gens += s.size(i);
    }
  }
  Index color(std::size_t i, Index a) const { return color_offset.at(i) + a; }
  Index gen(std::size_t i, Index a) const { return gen_offset.at(i) + a; }
};

struct TAlpha {
  LeveledShape alpha;
  ShapeIndex ix{LeveledShape({0}, {})};
  FreeOperad free;

  const FiniteOperad& operad() const { return free.operad; }
  const Multigraph& mg() const { return free.mg(); }

  Index color(std::size_t i, Index a) const { return ix.color(i, a); }
  std::pair<std::size_t, Index> level_of(Index c) const {
    for (std::size_t i = alpha.degree() + 1; i-- > 0;)
      if (c >= ix.color_offset[i]) return {i, c - ix.color_offset[i]};
    throw std::out_of_range("color out of range");
  }
  Index generator(std::size_t i, Index a) const { return ix.gen(i, a); }

  /// p_{i,j}^(a) : alpha_{i,j}^{-1}(a) -> a, as a planar term.
  PlanarTerm p_term(std::size_t i, std::size_t j, Index a) const {
    if (i > j) throw std::invalid_argument("p_term: i > j");
    if (i == j) return PlanarTerm::leaf(color(j, a));
    PlanarTerm t{{static_cast<std::int32_t>(generator(j, a))}};
    for (Index c = 0; c < alpha.size(j - 1); ++c)
      if (alpha.maps[j - 1].values[c] == a) {
        auto k = p_term(i, j - 1, c);
        t.tokens.insert(t.tokens.end(), k.tokens.begin(), k.tokens.end());
      }
    return t;
  }
  Index p(std::size_t i, std::size_t j, Index a) const { return free.id_of(p_term(i, j, a)); }
};

inline TAlpha build_T_alpha(const LeveledShape& alpha) {
  TAlpha T;
  T.alpha = alpha;
  T.ix = ShapeIndex(alpha);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= alpha.degree(); ++i)
    for (Index a = 0; a < alpha.size(i); ++a) labels.push_back("L" + std::to_string(i) + "." + std::to_string(a));
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= alpha.degree(); ++i)
    for (Index a = 0; a < alpha.size(i); ++a) {
      Edge e{"p" + std::to_string(i) + "." + std::to_string(a), {}, T.ix.color(i, a)};
      for (Index c = 0; c < alpha.size(i - 1); ++c)
        if (alpha.maps[i - 1].values[c] == a) e.inputs.push_back(T.ix.color(i - 1, c));
      edges.push_back(std::move(e));
    }
  T.free = free_operad(Multigraph(FiniteSet(labels), std::move(edges)));
  T.free.operad.name = "T_alpha";
  return T;
}

/// Morphism T_alpha -> P given by node colors and generator images.
struct ShapeMorphism {
  std::vector<Index> colors;  // indexed by ShapeIndex::color
  std::vector<Index> gens;    // indexed by ShapeIndex::gen
  bool operator==(const ShapeMorphism&) const = default;
  auto operator<=>(const ShapeMorphism&) const = default;
};

/// Multigraph morphisms M_alpha -> U(P), i.e. operad morphisms T_alpha -> P.
/// Search runs from the top level down: colors of A_n first, then the
/// generators of each level, which fix the colors of the level below.
inline std::vector<ShapeMorphism> hom_operads(const LeveledShape& alpha, const FiniteOperad& P,
                                              std::size_t max_level = SIZE_MAX) {
  std::vector<ShapeMorphism> out;
  for (auto s : alpha.level_sizes)
    if (s > max_level) return out;
  ShapeIndex ix(alpha);
  std::size_t n = alpha.degree();
  ShapeMorphism f{std::vector<Index>(ix.colors, 0), std::vector<Index>(ix.gens, 0)};
  std::vector<std::vector<Index>> fibers;  // fibers of generator (i, a) in order of ix.gen
  for (std::size_t i = 1; i <= n; ++i)
    for (Index a = 0; a < alpha.size(i); ++a) fibers.push_back(alpha.fiber(i - 1, i, a));
  // generator order for the search: level n down to 1
  std::vector<std::pair<std::size_t, Index>> order;
  for (std::size_t i = n; i >= 1; --i)
    for (Index a = 0; a < alpha.size(i); ++a) order.emplace_back(i, a);
  std::function<void(std::size_t)> gen_rec = [&](std::size_t t) {
    if (t == order.size()) {
      out.push_back(f);
      return;
    }
    auto [i, a] = order[t];
    const auto& fib = fibers[ix.gen(i, a)];
    for (Index p : P.ops_with(f.colors[ix.color(i, a)], fib.size())) {
      f.gens[ix.gen(i, a)] = p;
      for (std::size_t r = 0; r < fib.size(); ++r) f.colors[ix.color(i - 1, fib[r])] = P.ops[p].inputs[r];
      gen_rec(t + 1);
    }
  };
  std::function<void(Index)> top_rec = [&](Index a) {
    if (a == alpha.size(n)) {
      gen_rec(0);
      return;
    }
    for (Index c = 0; c < P.colors.size(); ++c) {
      f.colors[ix.color(n, a)] = c;
      top_rec(a + 1);
    }
  };
  top_rec(0);
  return out;
}

/// The full operad morphism T_alpha -> P of a shape morphism.
inline OperadMorphism extend_to_operad_morphism(const TAlpha& T, const ShapeMorphism& f, const FiniteOperad& P) {
  OperadMorphism m{f.colors, {}};
  for (const auto& t : T.free.terms()) {
    auto r = evaluate_term(T.mg(), t, f.colors, f.gens, P);
    if (!r) throw std::out_of_range("morphism image leaves the bounded view");
    m.op_map.push_back(*r);
  }
  return m;
}

/// The identity T_alpha -> T_alpha as a shape morphism.
inline ShapeMorphism identity_shape_morphism(const TAlpha& T) {
  ShapeMorphism f;
  for (Index c = 0; c < T.ix.colors; ++c) f.colors.push_back(c);
  for (std::size_t i = 1; i <= T.alpha.degree(); ++i)
    for (Index a = 0; a < T.alpha.size(i); ++a) f.gens.push_back(T.p(i - 1, i, a));
  return f;
}

/// lambda_theta : T_{theta^* alpha} -> T_alpha, p_l^(b) |-> p_{theta(l-1),theta(l)}^(b).
inline ShapeMorphism lambda_theta_generators(const MonotoneMap& theta, const TAlpha& target) {
  LeveledShape b = act(theta, target.alpha);
  ShapeIndex ix(b);
  ShapeMorphism f{std::vector<Index>(ix.colors), std::vector<Index>(ix.gens)};
  for (std::size_t l = 0; l <= b.degree(); ++l)
    for (Index x = 0; x < b.size(l); ++x) {
      f.colors[ix.color(l, x)] = target.color(theta(l), x);
      if (l > 0) f.gens[ix.gen(l, x)] = target.p(theta(l - 1), theta(l), x);
    }
  return f;
}

inline OperadMorphism lambda_theta(const MonotoneMap& theta, const TAlpha& source, const TAlpha& target) {
  if (source.alpha != act(theta, target.alpha)) throw std::invalid_argument("lambda_theta: source is not theta^* alpha");
  return extend_to_operad_morphism(source, lambda_theta_generators(theta, target), target.operad());
}

}  // namespace slist
