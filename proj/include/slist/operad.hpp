#pragma once

// Finite colored operads (table driven, free, or arity-bounded views),
// operad morphisms and the monoidal envelope.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "delta.hpp"
#include "multigraph.hpp"

namespace slist {

struct Operation {
  std::vector<Index> inputs;
  Index output = 0;
  std::string label;
};

class FiniteOperad {
 public:
  using Composer = std::function<std::optional<Index>(Index, const std::vector<Index>&)>;

  FiniteSet colors;
  std::vector<Operation> ops;
  std::vector<Index> identities;  // per color
  std::optional<std::size_t> arity_bound;  // set on bounded views of infinite operads
  std::string name;

  FiniteOperad() = default;
  FiniteOperad(FiniteSet cs, std::vector<Operation> os, std::vector<Index> ids, Composer comp)
      : colors(std::move(cs)), ops(std::move(os)), identities(std::move(ids)), composer_(std::move(comp)) {
    for (std::size_t p = 0; p < ops.size(); ++p) by_type_[{ops[p].output, ops[p].inputs.size()}].push_back(p);
  }

  std::size_t arity(Index p) const { return ops.at(p).inputs.size(); }

  /// Operations with the given output color and arity.
  const std::vector<Index>& ops_with(Index output, std::size_t arity) const {
    static const std::vector<Index> none;
    auto it = by_type_.find({output, arity});
    return it == by_type_.end() ? none : it->second;
  }

  bool composable(Index g, const std::vector<Index>& fs) const {
    const auto& in = ops.at(g).inputs;
    if (in.size() != fs.size()) return false;
    for (std::size_t t = 0; t < fs.size(); ++t)
      if (ops.at(fs[t]).output != in[t]) return false;
    return true;
  }

  /// g(f_1, ..., f_k); nullopt when the result lies outside a bounded view.
  std::optional<Index> compose(Index g, const std::vector<Index>& fs) const {
    if (!composable(g, fs)) throw std::invalid_argument("operad compose: colors do not match");
    return composer_(g, fs);
  }

  Index compose_or_throw(Index g, const std::vector<Index>& fs) const {
    auto r = compose(g, fs);
    if (!r) throw std::out_of_range("operad compose: result outside the enumerated bound");
    return *r;
  }

  std::size_t max_arity() const {
    std::size_t m = 0;
    for (const auto& o : ops) m = std::max(m, o.inputs.size());
    return m;
  }

 private:
  Composer composer_;
  std::map<std::pair<Index, std::size_t>, std::vector<Index>> by_type_;
};

/// Calls fn(g, fs) for every composable tuple; stops after limit tuples.
inline void for_each_composable(const FiniteOperad& P, const std::function<void(Index, const std::vector<Index>&)>& fn,
                                std::size_t limit = SIZE_MAX) {
  std::size_t seen = 0;
  std::unordered_map<Index, std::vector<Index>> by_output;
  for (Index p = 0; p < P.ops.size(); ++p) by_output[P.ops[p].output].push_back(p);
  for (Index g = 0; g < P.ops.size() && seen < limit; ++g) {
    const auto& in = P.ops[g].inputs;
    std::vector<const std::vector<Index>*> cand;
    bool empty = false;
    for (Index c : in) {
      cand.push_back(&by_output[c]);
      empty = empty || cand.back()->empty();
    }
    if (empty) continue;
    std::vector<std::size_t> idx(in.size(), 0);
    std::vector<Index> fs(in.size());
    while (seen < limit) {
      for (std::size_t t = 0; t < in.size(); ++t) fs[t] = (*cand[t])[idx[t]];
      fn(g, fs);
      ++seen;
      std::size_t t = in.size();
      while (t > 0 && idx[t - 1] + 1 == cand[t - 1]->size()) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t s = t; s < in.size(); ++s) idx[s] = 0;
    }
  }
}

/// Identity typing, unit laws, totality (for non-bounded operads) and
/// associativity on at most `limit` composable tuples. Returns error texts.
inline std::vector<std::string> validate_operad(const FiniteOperad& P, std::size_t limit = 200000) {
  std::vector<std::string> errs;
  if (P.identities.size() != P.colors.size()) {
    errs.push_back("one identity per color required");
    return errs;
  }
  for (Index c = 0; c < P.colors.size(); ++c) {
    const auto& o = P.ops.at(P.identities[c]);
    if (o.output != c || o.inputs != std::vector<Index>{c}) errs.push_back("identity of " + P.colors.labels[c] + " is mistyped");
  }
  if (!errs.empty()) return errs;
  for (Index g = 0; g < P.ops.size(); ++g) {
    std::vector<Index> ids;
    for (Index c : P.ops[g].inputs) ids.push_back(P.identities[c]);
    if (P.compose(g, ids) != std::optional<Index>(g)) errs.push_back("right unit law fails at " + P.ops[g].label);
    if (P.compose(P.identities[P.ops[g].output], {g}) != std::optional<Index>(g))
      errs.push_back("left unit law fails at " + P.ops[g].label);
  }
  for_each_composable(
      P,
      [&](Index g, const std::vector<Index>& fs) {
        auto h = P.compose(g, fs);
        if (!h) {
          if (!P.arity_bound) errs.push_back("composition undefined at " + P.ops[g].label);
          return;
        }
        // (g fs) gs = g (f_t gs_t), with gs chosen as identities except one slot
        // replaced by each operation composable there.
        const auto& hin = P.ops[*h].inputs;
        for (std::size_t slot = 0; slot < hin.size(); ++slot) {
          for (std::size_t r = 0; r < P.ops.size(); ++r) {
            if (P.ops[r].output != hin[slot]) continue;
            std::vector<Index> gs;
            for (Index c : hin) gs.push_back(P.identities[c]);
            gs[slot] = r;
            auto lhs = P.compose(*h, gs);
            // distribute gs over fs
            std::vector<Index> inner;
            std::size_t pos = 0;
            bool ok = true;
            for (Index f : fs) {
              std::vector<Index> part(gs.begin() + pos, gs.begin() + pos + P.arity(f));
              pos += P.arity(f);
              auto fi = P.compose(f, part);
              if (!fi) {
                ok = false;
                break;
              }
              inner.push_back(*fi);
            }
            std::optional<Index> rhs;
            if (ok) rhs = P.compose(g, inner);
            if (lhs && rhs && *lhs != *rhs) errs.push_back("associativity fails at " + P.ops[g].label);
            if ((lhs.has_value() != rhs.has_value()) && !P.arity_bound)
              errs.push_back("associativity partially undefined at " + P.ops[g].label);
          }
        }
      },
      limit);
  return errs;
}

// ---------------------------------------------------------------------------
// Concrete operads.

/// Assoc restricted to arities <= bound: one operation per arity.
inline FiniteOperad assoc_operad(std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("assoc_operad: bound must be at least 1");
  std::vector<Operation> ops;
  for (std::size_t k = 0; k <= bound; ++k) ops.push_back({std::vector<Index>(k, 0), 0, "m" + std::to_string(k)});
  std::size_t b = bound;
  FiniteOperad P(FiniteSet({"*"}), std::move(ops), {1}, [b](Index, const std::vector<Index>& fs) -> std::optional<Index> {
    std::size_t s = 0;
    for (Index f : fs) s += f;
    if (s > b) return std::nullopt;
    return s;
  });
  P.arity_bound = bound;
  P.name = "assoc";
  return P;
}

/// Hom_S restricted to arities <= bound. Colors are pairs (a,b); the
/// operation of a sequence a_0..a_m has inputs (a_0,a_1),...,(a_{m-1},a_m)
/// and output (a_0,a_m).
inline FiniteOperad hom_operad(const std::vector<std::string>& S, std::size_t bound) {
  std::size_t s = S.size();
  std::vector<std::string> cl;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) cl.push_back("(" + S[a] + "," + S[b] + ")");
  auto seqs = std::make_shared<std::vector<std::vector<Index>>>();
  auto index = std::make_shared<std::map<std::vector<Index>, Index>>();
  std::vector<Operation> ops;
  for (std::size_t m = 0; s > 0 && m <= bound; ++m) {
    std::vector<Index> seq(m + 1, 0);
    while (true) {
      Operation o;
      std::string lab;
      for (std::size_t t = 0; t <= m; ++t) lab += (t ? "." : "") + S[seq[t]];
      for (std::size_t t = 0; t < m; ++t) o.inputs.push_back(seq[t] * s + seq[t + 1]);
      o.output = seq[0] * s + seq[m];
      o.label = "h[" + lab + "]";
      (*index)[seq] = ops.size();
      seqs->push_back(seq);
      ops.push_back(o);
      std::size_t t = m + 1;
      while (t > 0 && seq[t - 1] + 1 == s) --t;
      if (t == 0) break;
      ++seq[t - 1];
      for (std::size_t r = t; r <= m; ++r) seq[r] = 0;
    }
  }
  std::vector<Index> ids;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) ids.push_back(index->at({a, b}));
  FiniteOperad P(FiniteSet(cl), std::move(ops), std::move(ids),
                 [seqs, index](Index g, const std::vector<Index>& fs) -> std::optional<Index> {
                   std::vector<Index> out{(*seqs)[g][0]};
                   for (Index f : fs) {
                     const auto& q = (*seqs)[f];
                     out.insert(out.end(), q.begin() + 1, q.end());
                   }
                   auto it = index->find(out);
                   if (it == index->end()) return std::nullopt;
                   return it->second;
                 });
  P.arity_bound = bound;
  P.name = "hom";
  return P;
}

/// Operad given by an explicit composition table.
inline FiniteOperad table_operad(FiniteSet colors, std::vector<Operation> ops, std::vector<Index> ids,
                                 std::map<std::pair<Index, std::vector<Index>>, Index> table) {
  auto t = std::make_shared<std::map<std::pair<Index, std::vector<Index>>, Index>>(std::move(table));
  FiniteOperad P(std::move(colors), std::move(ops), std::move(ids),
                 [t](Index g, const std::vector<Index>& fs) -> std::optional<Index> {
                   auto it = t->find({g, fs});
                   if (it == t->end()) return std::nullopt;
                   return it->second;
                 });
  P.name = "table";
  return P;
}

/// The free operad on an acyclic multigraph, operations being planar terms.
struct FreeOperad {
  struct Data {
    Multigraph mg;
    std::vector<PlanarTerm> terms;
    std::unordered_map<PlanarTerm, Index, PlanarTermHash> index;
  };
  std::shared_ptr<Data> data;
  FiniteOperad operad;

  const Multigraph& mg() const { return data->mg; }
  const std::vector<PlanarTerm>& terms() const { return data->terms; }
  const PlanarTerm& term(Index p) const { return data->terms.at(p); }
  Index id_of(const PlanarTerm& t) const {
    auto it = data->index.find(t);
    if (it == data->index.end()) throw std::out_of_range("term is not an operation of this free operad");
    return it->second;
  }
};

inline FreeOperad free_operad(const Multigraph& mg) {
  FreeOperad fo;
  fo.data = std::make_shared<FreeOperad::Data>();
  auto& d = *fo.data;
  d.mg = mg;
  auto groups = enumerate_terms(mg);
  std::vector<Operation> ops;
  std::vector<Index> ids(mg.colors.size());
  for (Index c = 0; c < groups.size(); ++c)
    for (auto& t : groups[c]) {
      Index id = d.terms.size();
      if (t.is_leaf()) ids[c] = id;
      d.index.emplace(t, id);
      ops.push_back({t.inputs(), c, render_term(mg, t)});
      d.terms.push_back(std::move(t));
    }
  std::shared_ptr<const FreeOperad::Data> data = fo.data;
  fo.operad = FiniteOperad(mg.colors, std::move(ops), std::move(ids),
                           [data](Index g, const std::vector<Index>& fs) -> std::optional<Index> {
                             std::vector<PlanarTerm> ts;
                             for (Index f : fs) ts.push_back(data->terms[f]);
                             auto it = data->index.find(free_compose(data->mg, data->terms[g], ts));
                             if (it == data->index.end()) return std::nullopt;
                             return it->second;
                           });
  fo.operad.name = "free";
  return fo;
}

// ---------------------------------------------------------------------------
// Morphisms.

struct OperadMorphism {
  std::vector<Index> color_map;
  std::vector<Index> op_map;
  bool operator==(const OperadMorphism&) const = default;
};

/// Evaluates a planar term in P, given images of colors and generating edges.
inline std::optional<Index> evaluate_term(const Multigraph& mg, const PlanarTerm& t, const std::vector<Index>& color_img,
                                          const std::vector<Index>& edge_img, const FiniteOperad& P) {
  std::size_t pos = 0;
  std::function<std::optional<Index>()> go = [&]() -> std::optional<Index> {
    std::int32_t tok = t.tokens[pos++];
    if (tok < 0) return P.identities.at(color_img.at(-tok - 1));
    std::vector<Index> kids;
    bool ok = true;
    for (std::size_t c = 0; c < mg.edges.at(tok).inputs.size(); ++c) {
      auto k = go();
      if (!k) ok = false;
      else kids.push_back(*k);
    }
    if (!ok) return std::nullopt;
    return P.compose(edge_img.at(tok), kids);
  };
  return go();
}

/// Checks that f : P -> Q preserves typing, identities and composition.
inline bool is_operad_morphism(const OperadMorphism& f, const FiniteOperad& P, const FiniteOperad& Q,
                               std::size_t limit = 200000) {
  if (f.color_map.size() != P.colors.size() || f.op_map.size() != P.ops.size()) return false;
  for (Index p = 0; p < P.ops.size(); ++p) {
    const auto& o = P.ops[p];
    const auto& q = Q.ops.at(f.op_map[p]);
    if (q.output != f.color_map[o.output] || q.inputs.size() != o.inputs.size()) return false;
    for (std::size_t t = 0; t < o.inputs.size(); ++t)
      if (q.inputs[t] != f.color_map[o.inputs[t]]) return false;
  }
  for (Index c = 0; c < P.colors.size(); ++c)
    if (f.op_map[P.identities[c]] != Q.identities[f.color_map[c]]) return false;
  bool ok = true;
  for_each_composable(
      P,
      [&](Index g, const std::vector<Index>& fs) {
        if (!ok) return;
        auto h = P.compose(g, fs);
        if (!h) return;
        std::vector<Index> img;
        for (Index x : fs) img.push_back(f.op_map[x]);
        auto r = Q.compose(f.op_map[g], img);
        if (!r || *r != f.op_map[*h]) ok = false;
      },
      limit);
  return ok;
}

/// All operad morphisms P -> Q by search over color maps and typed operation
/// assignments, filtered by is_operad_morphism.
inline std::vector<OperadMorphism> operad_morphisms(const FiniteOperad& P, const FiniteOperad& Q) {
  std::vector<OperadMorphism> out;
  OperadMorphism f;
  f.color_map.assign(P.colors.size(), 0);
  f.op_map.assign(P.ops.size(), 0);
  std::function<void(Index)> ops_rec = [&](Index p) {
    if (p == P.ops.size()) {
      if (is_operad_morphism(f, P, Q)) out.push_back(f);
      return;
    }
    const auto& o = P.ops[p];
    for (Index q : Q.ops_with(f.color_map[o.output], o.inputs.size())) {
      bool ok = true;
      for (std::size_t t = 0; ok && t < o.inputs.size(); ++t) ok = Q.ops[q].inputs[t] == f.color_map[o.inputs[t]];
      if (!ok) continue;
      f.op_map[p] = q;
      ops_rec(p + 1);
    }
  };
  std::function<void(Index)> col_rec = [&](Index c) {
    if (c == P.colors.size()) {
      ops_rec(0);
      return;
    }
    for (Index d = 0; d < Q.colors.size(); ++d) {
      f.color_map[c] = d;
      col_rec(c + 1);
    }
  };
  col_rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Monoidal envelope.

using ColorSeq = std::vector<Index>;

/// A morphism of L P: a list of operations, source = concatenated inputs,
/// target = outputs.
struct EnvelopeArrow {
  ColorSeq source;
  ColorSeq target;
  std::vector<Index> ops;
  bool operator==(const EnvelopeArrow&) const = default;
  auto operator<=>(const EnvelopeArrow&) const = default;
};

class EnvelopeCategory {
 public:
  EnvelopeCategory(const FiniteOperad& P, std::size_t maxlen) : P_(&P), maxlen_(maxlen) {
    std::vector<ColorSeq> frontier{{}};
    objects_.push_back({});
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::vector<ColorSeq> next;
      for (const auto& s : frontier)
        for (Index c = 0; c < P.colors.size(); ++c) {
          auto t = s;
          t.push_back(c);
          next.push_back(t);
          objects_.push_back(t);
        }
      frontier = std::move(next);
    }
  }

  const std::vector<ColorSeq>& objects() const { return objects_; }
  std::size_t maxlen() const { return maxlen_; }

  /// All arrows into b whose source has length <= maxlen.
  std::vector<EnvelopeArrow> arrows_into(const ColorSeq& b) const {
    std::vector<EnvelopeArrow> out;
    EnvelopeArrow cur;
    cur.target = b;
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
      if (t == b.size()) {
        out.push_back(cur);
        return;
      }
      for (Index p = 0; p < P_->ops.size(); ++p) {
        const auto& o = P_->ops[p];
        if (o.output != b[t] || cur.source.size() + o.inputs.size() > maxlen_) continue;
        cur.ops.push_back(p);
        cur.source.insert(cur.source.end(), o.inputs.begin(), o.inputs.end());
        rec(t + 1);
        cur.source.resize(cur.source.size() - o.inputs.size());
        cur.ops.pop_back();
      }
    };
    rec(0);
    return out;
  }

  std::vector<EnvelopeArrow> hom(const ColorSeq& a, const ColorSeq& b) const {
    std::vector<EnvelopeArrow> out;
    for (auto& f : arrows_into(b))
      if (f.source == a) out.push_back(std::move(f));
    return out;
  }

  EnvelopeArrow identity(const ColorSeq& a) const {
    EnvelopeArrow f{a, a, {}};
    for (Index c : a) f.ops.push_back(P_->identities[c]);
    return f;
  }

  /// g . f
  std::optional<EnvelopeArrow> compose(const EnvelopeArrow& g, const EnvelopeArrow& f) const {
    if (f.target != g.source) throw std::invalid_argument("envelope compose: not composable");
    EnvelopeArrow h{f.source, g.target, {}};
    std::size_t pos = 0;
    for (Index q : g.ops) {
      std::vector<Index> part(f.ops.begin() + pos, f.ops.begin() + pos + P_->arity(q));
      pos += P_->arity(q);
      auto r = P_->compose(q, part);
      if (!r) return std::nullopt;
      h.ops.push_back(*r);
    }
    return h;
  }

  /// Strings of n composable arrows x_0 -> ... -> x_n, all objects of length <= maxlen.
  std::vector<std::vector<EnvelopeArrow>> chains(std::size_t n) const {
    std::vector<std::vector<EnvelopeArrow>> out;
    if (n == 0) {
      for (const auto& o : objects_) out.push_back({identity(o)});
      return out;
    }
    std::vector<EnvelopeArrow> cur(n);
    std::function<void(std::size_t, const ColorSeq&)> rec = [&](std::size_t t, const ColorSeq& b) {
      for (auto& f : arrows_into(b)) {
        cur[t - 1] = f;
        if (t == 1) out.push_back(cur);
        else rec(t - 1, f.source);
      }
    };
    for (const auto& o : objects_) rec(n, o);
    return out;
  }

 private:
  const FiniteOperad* P_;
  std::size_t maxlen_;
  std::vector<ColorSeq> objects_;
};

}  // namespace slist
