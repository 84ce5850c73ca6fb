#pragma once

// The list nerve of a finite operad, its inverse on strict quasi-operads,
// inner horn checks and the comparison with the envelope nerve.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "key_operads.hpp"
#include "operad.hpp"
#include "truncated.hpp"

namespace slist {

/// A rooted shape with a morphism T_shape -> P.
struct NerveSimplex {
  RootedShape shape;
  ShapeMorphism f;
  bool operator==(const NerveSimplex&) const = default;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

inline std::vector<std::uint32_t> simplex_key(const NerveSimplex& s) {
  std::vector<std::uint32_t> k;
  k.push_back(static_cast<std::uint32_t>(s.shape.level_sizes.size()));
  for (auto x : s.shape.level_sizes) k.push_back(static_cast<std::uint32_t>(x));
  for (const auto& m : s.shape.maps)
    for (auto v : m.values) k.push_back(static_cast<std::uint32_t>(v));
  for (auto c : s.f.colors) k.push_back(static_cast<std::uint32_t>(c));
  for (auto g : s.f.gens) k.push_back(static_cast<std::uint32_t>(g));
  return k;
}

struct NerveSpec {
  const FiniteOperad* P = nullptr;
  std::size_t D = 0;
  std::size_t B = 0;
};

struct Nerve {
  FiniteOperad P;
  std::size_t D = 0;
  std::size_t B = 0;
  TruncSList X;
  std::vector<std::vector<NerveSimplex>> simplices;
  std::vector<std::unordered_map<std::vector<std::uint32_t>, Index, KeyHash>> index;

  std::optional<Index> find(const NerveSimplex& s) const {
    std::size_t n = s.shape.degree();
    if (n > D) return std::nullopt;
    auto it = index[n].find(simplex_key(s));
    if (it == index[n].end()) return std::nullopt;
    return it->second;
  }
};

/// theta^* x as the list of its rooted components.
inline std::vector<NerveSimplex> act_simplex(const FiniteOperad& P, const MonotoneMap& theta, const NerveSimplex& x) {
  const LeveledShape& beta = x.shape;
  ShapeIndex bix(beta);
  std::map<std::tuple<std::size_t, std::size_t, Index>, Index> memo;
  std::function<Index(std::size_t, std::size_t, Index)> composite = [&](std::size_t i, std::size_t j, Index b) -> Index {
    if (i == j) return P.identities.at(x.f.colors[bix.color(j, b)]);
    auto key = std::make_tuple(i, j, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Index> kids;
    for (Index c = 0; c < beta.size(j - 1); ++c)
      if (beta.maps[j - 1].values[c] == b) kids.push_back(composite(i, j - 1, c));
    Index r = P.compose_or_throw(x.f.gens[bix.gen(j, b)], kids);
    memo.emplace(key, r);
    return r;
  };
  LeveledShape gamma = act(theta, beta);
  std::size_t k = gamma.degree();
  std::vector<NerveSimplex> out;
  for (Index a = 0; a < gamma.size(k); ++a) {
    auto r = rooted_restriction_with_embedding(gamma, a);
    ShapeIndex rix(r.shape);
    NerveSimplex s{r.shape, {std::vector<Index>(rix.colors), std::vector<Index>(rix.gens)}};
    for (std::size_t l = 0; l <= k; ++l)
      for (Index t = 0; t < r.shape.size(l); ++t) {
        Index b = r.embed[l][t];
        s.f.colors[rix.color(l, t)] = x.f.colors[bix.color(theta(l), b)];
        if (l > 0) s.f.gens[rix.gen(l, t)] = composite(theta(l - 1), theta(l), b);
      }
    out.push_back(std::move(s));
  }
  return out;
}

/// All rooted n-simplices with levels of size <= B: leveled trees of
/// operations of height n, built from the root down.
inline std::vector<NerveSimplex> nerve_simplices(const FiniteOperad& P, std::size_t n, std::size_t B) {
  std::vector<NerveSimplex> out;
  if (B == 0) return out;
  std::vector<std::vector<Index>> by_output(P.colors.size());
  for (Index p = 0; p < P.ops.size(); ++p) by_output[P.ops[p].output].push_back(p);
  // levels[i] = colors of level i; parents[i] = map values alpha_{i+1}; gens[i] = ops of level i
  std::vector<std::vector<Index>> levels(n + 1), parents(n), gens(n + 1);
  auto emit = [&]() {
    std::vector<std::size_t> sizes;
    for (auto& l : levels) sizes.push_back(l.size());
    NerveSimplex s;
    s.shape = LeveledShape::from_values(sizes, parents);
    for (auto& l : levels) s.f.colors.insert(s.f.colors.end(), l.begin(), l.end());
    for (std::size_t i = 1; i <= n; ++i) s.f.gens.insert(s.f.gens.end(), gens[i].begin(), gens[i].end());
    out.push_back(std::move(s));
  };
  // fill level i-1 by choosing generators for level i, element t
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t t) {
    if (t == levels[i].size()) {
      if (i == 1) emit();
      else rec(i - 1, 0);
      return;
    }
    for (Index p : by_output[levels[i][t]]) {
      const auto& in = P.ops[p].inputs;
      if (levels[i - 1].size() + in.size() > B) continue;
      gens[i].push_back(p);
      levels[i - 1].insert(levels[i - 1].end(), in.begin(), in.end());
      parents[i - 1].insert(parents[i - 1].end(), in.size(), t);
      rec(i, t + 1);
      parents[i - 1].resize(parents[i - 1].size() - in.size());
      levels[i - 1].resize(levels[i - 1].size() - in.size());
      gens[i].pop_back();
    }
  };
  for (Index c = 0; c < P.colors.size(); ++c) {
    levels[n] = {c};
    if (n == 0) emit();
    else rec(n, 0);
  }
  return out;
}

inline std::string simplex_label(const FiniteOperad& P, const NerveSimplex& s) {
  std::size_t n = s.shape.degree();
  if (n == 0) return P.colors.labels.at(s.f.colors[0]);
  if (n == 1) return P.ops.at(s.f.gens[0]).label;
  std::ostringstream os;
  os << "<";
  ShapeIndex ix(s.shape);
  for (std::size_t i = n; i >= 1; --i) {
    os << (i == n ? "" : "|");
    for (Index a = 0; a < s.shape.size(i); ++a) os << (a ? "," : "") << P.ops.at(s.f.gens[ix.gen(i, a)]).label;
  }
  os << ">";
  return os.str();
}

inline Nerve nerve(const FiniteOperad& P, std::size_t D, std::size_t B) {
  if (P.arity_bound && B > *P.arity_bound)
    throw std::invalid_argument("nerve: level bound exceeds the arity bound of the operad view");
  Nerve N;
  N.P = P;
  N.D = D;
  N.B = B;
  N.X = TruncSList::empty(D);
  N.simplices.resize(D + 1);
  N.index.resize(D + 1);
  for (std::size_t n = 0; n <= D; ++n) {
    N.simplices[n] = nerve_simplices(P, n, B);
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> seen;
    for (Index x = 0; x < N.simplices[n].size(); ++x) {
      N.index[n].emplace(simplex_key(N.simplices[n][x]), x);
      std::string l = simplex_label(P, N.simplices[n][x]);
      if (n >= 2 || seen.count(l)) l = "x" + std::to_string(n) + "_" + std::to_string(x);
      seen[l] = 1;
      labels.push_back(l);
    }
    N.X.carriers[n] = FiniteSet(labels);
  }
  auto build = [&](const MonotoneMap& theta) {
    std::size_t n = theta.n(), k = theta.k();
    std::vector<Seq> im;
    for (const auto& x : N.simplices[n]) {
      Seq s;
      for (const auto& c : act_simplex(P, theta, x)) {
        auto id = N.find(c);
        if (!id) throw std::logic_error("nerve: action leaves the truncation");
        s.push_back(*id);
      }
      im.push_back(std::move(s));
    }
    return Listing(N.simplices[n].size(), N.simplices[k].size(), std::move(im));
  };
  for (std::size_t n = 1; n <= D; ++n)
    for (std::size_t i = 0; i <= n; ++i) N.X.faces[n][i] = build(MonotoneMap::coface(n, i));
  for (std::size_t n = 0; n < D; ++n)
    for (std::size_t j = 0; j <= n; ++j) N.X.degeneracies[n][j] = build(MonotoneMap::codegeneracy(n, j));
  return N;
}

inline Nerve nerve(const NerveSpec& spec) { return nerve(*spec.P, spec.D, spec.B); }

// ---------------------------------------------------------------------------
// Inner horns in the envelope LX.

struct HornReport {
  std::size_t dim = 0;
  std::size_t inner = 0;  // i
  std::size_t horns = 0;
  std::size_t unfilled = 0;
  std::size_t multiply_filled = 0;
  std::string first_unfilled;  // description of the first horn without filler
};

namespace detail {
inline std::string render_seq(const FiniteSet& S, const Seq& s) {
  std::string out = "(";
  for (std::size_t t = 0; t < s.size(); ++t) out += (t ? "," : "") + S.labels.at(s[t]);
  return out + ")";
}
}  // namespace detail

/// Checks inner horns of dimension n in [lo, hi]. Horns over LX split into
/// horns whose 0-th face is a single simplex, and a filler of such a horn is
/// a single simplex (d_0 is a function on an operadic X), so those are the
/// horns enumerated.
inline std::vector<HornReport> is_quasi_operad(const TruncSList& X, std::size_t lo, std::size_t hi) {
  std::vector<HornReport> reps;
  hi = std::min(hi, X.D);
  for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; ++n) {
    // d_0 on X_{n-1} and X_n must be functions
    const Listing& d0n = X.face(n, 0);
    const Listing& d0m = X.face(n - 1, 0);
    if (!d0n.is_function() || !d0m.is_function()) throw std::domain_error("is_quasi_operad: X is not operadic");
    std::vector<std::vector<Index>> by_d0(X.size(n - 1));      // X_{n-1} by d_0
    std::vector<std::vector<Index>> fill_by_d0(X.size(n - 1)); // X_n by d_0
    for (Index w = 0; w < X.size(n - 1); ++w) by_d0[d0m(w)[0]].push_back(w);
    for (Index s = 0; s < X.size(n); ++s) fill_by_d0[d0n(s)[0]].push_back(s);
    for (std::size_t i = 1; i < n; ++i) {
      HornReport rep;
      rep.dim = n;
      rep.inner = i;
      std::vector<Seq> y(n + 1);  // y[i] unused
      auto compatible = [&](std::size_t j, std::size_t k) {
        // d_j y_k = d_{k-1} y_j, j < k
        return X.face(n - 1, j).apply(y[k]) == X.face(n - 1, k - 1).apply(y[j]);
      };
      std::vector<std::size_t> inner_faces;
      for (std::size_t j = 1; j < n; ++j)
        if (j != i) inner_faces.push_back(j);
      std::function<void(std::size_t)> choose_inner;
      auto check_filler = [&]() {
        ++rep.horns;
        std::size_t fillers = 0;
        for (Index s : fill_by_d0[y[0][0]]) {
          bool ok = true;
          for (std::size_t j = 1; ok && j <= n; ++j)
            if (j != i && X.face(n, j)(s) != y[j]) ok = false;
          fillers += ok;
        }
        if (fillers == 0) {
          ++rep.unfilled;
          if (rep.first_unfilled.empty()) {
            std::ostringstream os;
            os << "horn " << n << "," << i << ":";
            for (std::size_t j = 0; j <= n; ++j)
              if (j != i) os << " d" << j << "=" << detail::render_seq(X.carriers[n - 1], y[j]);
            rep.first_unfilled = os.str();
          }
        }
        if (fillers > 1) ++rep.multiply_filled;
      };
      choose_inner = [&](std::size_t t) {
        if (t == inner_faces.size()) {
          check_filler();
          return;
        }
        std::size_t j = inner_faces[t];
        // d_0 y_j = d_{j-1} y_0
        Seq target = X.face(n - 1, j - 1).apply(y[0]);
        if (target.size() != 1) return;
        for (Index w : by_d0[target[0]]) {
          y[j] = {w};
          bool ok = true;
          for (std::size_t u = 0; ok && u < t; ++u) ok = compatible(inner_faces[u], j);
          ok = ok && compatible(0, j) && compatible(j, n);
          if (ok) choose_inner(t + 1);
        }
        y[j].clear();
      };
      for (Index z = 0; z < X.size(n - 1); ++z) {
        y[0] = {z};
        Seq want = X.face(n - 1, n - 1)(z);  // d_0 y_n = d_{n-1} y_0
        y[n].assign(want.size(), 0);
        std::function<void(std::size_t)> choose_last = [&](std::size_t s) {
          if (s == want.size()) {
            choose_inner(0);
            return;
          }
          for (Index w : by_d0[want[s]]) {
            y[n][s] = w;
            choose_last(s + 1);
          }
        };
        choose_last(0);
      }
      reps.push_back(rep);
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Realization.

struct NotANerve : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Colors X_0, operations X_1, identities from s_0, composition from the
/// unique fillers of inner 2-horns. Requires strict filling in dims 2 and 3.
inline FiniteOperad realize_operad(const TruncSList& X) {
  if (X.D < 3) throw std::invalid_argument("realize_operad: need D >= 3");
  if (!validate(X).empty()) throw std::invalid_argument("realize_operad: X does not validate");
  if (!is_operadic(X)) throw NotANerve("realize_operad: X is not operadic");
  for (const auto& rep : is_quasi_operad(X, 2, 3)) {
    if (rep.unfilled) throw NotANerve("missing inner filler: " + rep.first_unfilled);
    if (rep.multiply_filled)
      throw NotANerve("inner horn " + std::to_string(rep.dim) + "," + std::to_string(rep.inner) + " has several fillers");
  }
  std::vector<Operation> ops;
  for (Index f = 0; f < X.size(1); ++f)
    ops.push_back({X.face(1, 1)(f), X.face(1, 0)(f).at(0), X.carriers[1].labels[f]});
  std::vector<Index> ids;
  for (Index c = 0; c < X.size(0); ++c) ids.push_back(X.degen(0, 0)(c).at(0));
  std::map<std::pair<Index, std::vector<Index>>, Index> table;
  for (Index s = 0; s < X.size(2); ++s) {
    Index g = X.face(2, 0)(s).at(0);
    auto key = std::make_pair(g, X.face(2, 2)(s));
    Index h = X.face(2, 1)(s).at(0);
    if (!table.emplace(key, h).second) throw NotANerve("two fillers for one 2-horn");
  }
  FiniteOperad P = table_operad(X.carriers[0], std::move(ops), std::move(ids), std::move(table));
  P.name = "realized";
  auto errs = validate_operad(P);
  if (!errs.empty()) throw NotANerve("realized operad fails: " + errs.front());
  return P;
}

/// Canonical matching of realize_operad(nerve(P)) with P: color x of X_0
/// goes to the color of the 0-simplex, operation f of X_1 to its generator.
/// Returns the morphism if it is an isomorphism of operads.
inline std::optional<OperadMorphism> canonical_matching(const Nerve& N, const FiniteOperad& realized) {
  OperadMorphism phi;
  for (const auto& s : N.simplices[0]) phi.color_map.push_back(s.f.colors[0]);
  for (const auto& s : N.simplices[1]) phi.op_map.push_back(s.f.gens[0]);
  auto bijective = [](const std::vector<Index>& m, std::size_t n) {
    std::vector<bool> hit(n, false);
    if (m.size() != n) return false;
    for (Index x : m) {
      if (x >= n || hit[x]) return false;
      hit[x] = true;
    }
    return true;
  };
  if (!bijective(phi.color_map, N.P.colors.size()) || !bijective(phi.op_map, N.P.ops.size())) return std::nullopt;
  if (!is_operad_morphism(phi, realized, N.P)) return std::nullopt;
  return phi;
}

/// Transports the simplices of nerve(Q) along an operad morphism Q -> P into
/// nerve(P), giving a degree-wise map; nullopt when an image is missing.
inline std::optional<SListMorphism> transport_nerve(const Nerve& NQ, const Nerve& NP, const OperadMorphism& phi) {
  SListMorphism m;
  for (std::size_t n = 0; n <= std::min(NQ.D, NP.D); ++n) {
    m.components.emplace_back();
    for (const auto& s : NQ.simplices[n]) {
      NerveSimplex t = s;
      for (auto& c : t.f.colors) c = phi.color_map[c];
      for (auto& g : t.f.gens) g = phi.op_map[g];
      auto id = NP.find(t);
      if (!id) return std::nullopt;
      m.components.back().push_back(*id);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Envelope comparison.

struct EnvelopeReport {
  std::size_t degree = 0;
  std::size_t maxlen = 0;
  std::size_t lists = 0;   // |L(N^l P)_n| within the bound
  std::size_t chains = 0;  // |N(L P)_n| within the bound
  bool bijective = false;
};

/// Rooted component over position r of the last object of a chain.
inline NerveSimplex chain_component(const FiniteOperad& P, const std::vector<EnvelopeArrow>& chain, Index r) {
  std::size_t n = chain.size();
  // positions[i] = positions of level i inside object x_i
  std::vector<std::vector<Index>> pos(n + 1);
  pos[n] = {r};
  std::vector<std::vector<Index>> parents(n);
  for (std::size_t i = n; i >= 1; --i) {
    const auto& f = chain[i - 1];
    // start offset of each op's inputs in x_{i-1}
    std::vector<std::size_t> start(f.ops.size() + 1, 0);
    for (std::size_t t = 0; t < f.ops.size(); ++t) start[t + 1] = start[t] + P.arity(f.ops[t]);
    for (std::size_t t = 0; t < pos[i].size(); ++t) {
      Index q = pos[i][t];
      for (std::size_t u = start[q]; u < start[q + 1]; ++u) {
        pos[i - 1].push_back(u);
        parents[i - 1].push_back(t);
      }
    }
  }
  std::vector<std::size_t> sizes;
  for (auto& p : pos) sizes.push_back(p.size());
  NerveSimplex s;
  s.shape = LeveledShape::from_values(sizes, parents);
  for (std::size_t i = 0; i <= n; ++i) {
    const ColorSeq& obj = (i == n) ? chain[n - 1].target : chain[i].source;
    for (Index p : pos[i]) s.f.colors.push_back(obj[p]);
  }
  for (std::size_t i = 1; i <= n; ++i)
    for (Index p : pos[i]) s.f.gens.push_back(chain[i - 1].ops[p]);
  return s;
}

inline EnvelopeReport check_envelope_iso(const FiniteOperad& P, std::size_t n, std::size_t maxlen) {
  EnvelopeReport rep;
  rep.degree = n;
  rep.maxlen = maxlen;
  Nerve N = nerve(P, n, std::max<std::size_t>(maxlen, 1));
  const auto& xs = N.simplices[n];
  // lists of n-simplices whose level-wise total sizes stay <= maxlen
  std::vector<std::size_t> used(n + 1, 0);
  std::function<void()> rec = [&]() {
    ++rep.lists;
    for (const auto& x : xs) {
      bool ok = true;
      for (std::size_t i = 0; i <= n; ++i) ok = ok && used[i] + x.shape.size(i) <= maxlen;
      if (!ok) continue;
      for (std::size_t i = 0; i <= n; ++i) used[i] += x.shape.size(i);
      rec();
      for (std::size_t i = 0; i <= n; ++i) used[i] -= x.shape.size(i);
    }
  };
  rec();
  EnvelopeCategory L(P, maxlen);
  std::set<std::vector<Index>> images;
  bool ok = true;
  if (n == 0) {
    for (const auto& o : L.objects()) {
      std::vector<Index> img;
      for (Index c : o) {
        NerveSimplex s{LeveledShape({1}, {}), {{c}, {}}};
        img.push_back(*N.find(s));
      }
      images.insert(img);
      ++rep.chains;
    }
  } else {
    for (const auto& ch : L.chains(n)) {
      ++rep.chains;
      std::vector<Index> img;
      for (Index r = 0; r < ch.back().target.size(); ++r) {
        auto id = N.find(chain_component(P, ch, r));
        if (!id) {
          ok = false;
          break;
        }
        img.push_back(*id);
      }
      images.insert(img);
    }
  }
  rep.bijective = ok && images.size() == rep.chains && rep.chains == rep.lists;
  return rep;
}

}  // namespace slist

namespace slist {

/// The fundamental simplex of nerve(T_alpha): the identity T_alpha -> T_alpha.
inline NerveSimplex fundamental_simplex(const TAlpha& T) {
  return NerveSimplex{T.alpha, identity_shape_morphism(T)};
}

/// Image of U_alpha -> nerve(T_alpha) classifying the fundamental simplex,
/// as degree-wise masks. N must be a nerve of T.operad().
inline std::vector<std::vector<bool>> representable_image(const Nerve& N, const TAlpha& T) {
  std::vector<std::vector<bool>> mask(N.D + 1);
  NerveSimplex top = fundamental_simplex(T);
  for (std::size_t k = 0; k <= N.D; ++k) {
    mask[k].assign(N.X.size(k), false);
    for (const auto& th : simplicial_operators(k, T.alpha.degree()))
      for (const auto& c : act_simplex(N.P, th, top)) {
        auto id = N.find(c);
        if (!id) throw std::logic_error("representable_image: simplex outside the truncation");
        mask[k][*id] = true;
      }
  }
  return mask;
}

}  // namespace slist
