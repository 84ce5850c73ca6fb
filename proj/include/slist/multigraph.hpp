#pragma once

// Multigraphs, planar terms (normal forms of free-operad operations),
// operation vectors and matrices.

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "listing.hpp"

namespace slist {

struct Edge {
  std::string name;
  std::vector<Index> inputs;
  Index output = 0;
  bool operator==(const Edge&) const = default;
};

/// Colors M0 and edges M1. Identity edges s0(c) are implicit: M1 is the list
/// of generating edges followed by one identity per color.
struct Multigraph {
  FiniteSet colors;
  std::vector<Edge> edges;

  Multigraph() = default;
  Multigraph(FiniteSet cs, std::vector<Edge> es) : colors(std::move(cs)), edges(std::move(es)) {
    for (const auto& e : edges) {
      if (e.output >= colors.size()) throw std::invalid_argument("edge '" + e.name + "': output out of range");
      for (Index c : e.inputs)
        if (c >= colors.size()) throw std::invalid_argument("edge '" + e.name + "': input out of range");
    }
  }

  std::size_t m1_size() const { return edges.size() + colors.size(); }
  Index s0(Index c) const { return edges.size() + c; }
  bool is_identity(Index e) const { return e >= edges.size(); }
  Index d0(Index e) const { return is_identity(e) ? e - edges.size() : edges.at(e).output; }
  std::vector<Index> d1(Index e) const {
    if (is_identity(e)) return {e - edges.size()};
    return edges.at(e).inputs;
  }
  std::string edge_name(Index e) const {
    if (is_identity(e)) return "1_" + colors.labels.at(e - edges.size());
    return edges.at(e).name;
  }

  /// d0 as a function, d1 as a listing, s0 as a function.
  Listing d0_listing() const {
    std::vector<Index> f;
    for (Index e = 0; e < m1_size(); ++e) f.push_back(d0(e));
    return Listing::from_function(f, colors.size());
  }
  Listing d1_listing() const {
    std::vector<Seq> im;
    for (Index e = 0; e < m1_size(); ++e) im.push_back(d1(e));
    return Listing(m1_size(), colors.size(), std::move(im));
  }
  Listing s0_listing() const {
    std::vector<Index> f;
    for (Index c = 0; c < colors.size(); ++c) f.push_back(s0(c));
    return Listing::from_function(f, m1_size());
  }
};

/// leaf(color) | node(edge, children), stored as a preorder token string:
/// token >= 0 is a node labelled by a generating edge, token < 0 is the leaf
/// of color -token-1. Arity is read off the multigraph.
struct PlanarTerm {
  std::vector<std::int32_t> tokens;

  static PlanarTerm leaf(Index c) { return {{-static_cast<std::int32_t>(c) - 1}}; }
  /// node(e) with leaves on its inputs.
  static PlanarTerm corolla(const Multigraph& mg, Index e) {
    if (mg.is_identity(e)) return leaf(mg.d0(e));
    PlanarTerm t{{static_cast<std::int32_t>(e)}};
    for (Index c : mg.edges.at(e).inputs) t.tokens.push_back(-static_cast<std::int32_t>(c) - 1);
    return t;
  }

  bool is_leaf() const { return tokens.size() == 1 && tokens[0] < 0; }

  Index output(const Multigraph& mg) const {
    std::int32_t t = tokens.at(0);
    return t < 0 ? static_cast<Index>(-t - 1) : mg.edges.at(t).output;
  }
  std::vector<Index> inputs() const {
    std::vector<Index> out;
    for (auto t : tokens)
      if (t < 0) out.push_back(static_cast<Index>(-t - 1));
    return out;
  }
  std::size_t arity() const {
    std::size_t n = 0;
    for (auto t : tokens) n += (t < 0);
    return n;
  }
  std::size_t node_count() const { return tokens.size() - arity(); }

  bool operator==(const PlanarTerm&) const = default;
  auto operator<=>(const PlanarTerm&) const = default;
};

struct PlanarTermHash {
  std::size_t operator()(const PlanarTerm& t) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : t.tokens) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }
};

namespace detail {
// Structural check of a token string; returns the end position of the subterm at pos.
inline std::size_t term_end(const Multigraph& mg, const PlanarTerm& t, std::size_t pos, Index expected) {
  if (pos >= t.tokens.size()) throw std::invalid_argument("planar term truncated");
  std::int32_t tok = t.tokens[pos];
  if (tok < 0) {
    if (static_cast<Index>(-tok - 1) != expected) throw std::invalid_argument("planar term: leaf color mismatch");
    return pos + 1;
  }
  const Edge& e = mg.edges.at(tok);
  if (e.output != expected) throw std::invalid_argument("planar term: node output mismatch");
  ++pos;
  for (Index c : e.inputs) pos = term_end(mg, t, pos, c);
  return pos;
}
}  // namespace detail

inline void check_term(const Multigraph& mg, const PlanarTerm& t) {
  if (t.tokens.empty()) throw std::invalid_argument("empty planar term");
  if (detail::term_end(mg, t, 0, t.output(mg)) != t.tokens.size())
    throw std::invalid_argument("planar term has trailing tokens");
}

inline std::string render_term(const Multigraph& mg, const PlanarTerm& t) {
  std::ostringstream os;
  std::size_t pos = 0;
  std::function<void()> go = [&]() {
    std::int32_t tok = t.tokens[pos++];
    if (tok < 0) {
      os << "1_" << mg.colors.labels.at(-tok - 1);
      return;
    }
    const Edge& e = mg.edges.at(tok);
    os << e.name;
    if (!e.inputs.empty()) {
      os << "(";
      for (std::size_t c = 0; c < e.inputs.size(); ++c) {
        if (c) os << ",";
        go();
      }
      os << ")";
    }
  };
  go();
  return os.str();
}

/// Grafts fs onto the leaves of g.
inline PlanarTerm free_compose(const Multigraph& mg, const PlanarTerm& g, const std::vector<PlanarTerm>& fs) {
  auto ins = g.inputs();
  if (ins.size() != fs.size()) throw std::invalid_argument("free_compose: arity mismatch");
  for (std::size_t t = 0; t < fs.size(); ++t)
    if (fs[t].output(mg) != ins[t]) throw std::invalid_argument("free_compose: color mismatch");
  PlanarTerm out;
  std::size_t leaf = 0;
  for (auto tok : g.tokens) {
    if (tok < 0) {
      const auto& f = fs[leaf++].tokens;
      out.tokens.insert(out.tokens.end(), f.begin(), f.end());
    } else {
      out.tokens.push_back(tok);
    }
  }
  return out;
}

/// Every planar term over an acyclic multigraph, grouped by output color.
/// Order per color: the leaf, then nodes by edge index with children in
/// lexicographic product order.
inline std::vector<std::vector<PlanarTerm>> enumerate_terms(const Multigraph& mg) {
  std::size_t nc = mg.colors.size();
  std::vector<std::vector<PlanarTerm>> memo(nc);
  std::vector<int> state(nc, 0);  // 0 new, 1 in progress, 2 done
  std::function<const std::vector<PlanarTerm>&(Index)> go = [&](Index c) -> const std::vector<PlanarTerm>& {
    if (state[c] == 2) return memo[c];
    if (state[c] == 1) throw std::invalid_argument("multigraph has a cycle; free operad is infinite");
    state[c] = 1;
    std::vector<PlanarTerm> out{PlanarTerm::leaf(c)};
    for (Index e = 0; e < mg.edges.size(); ++e) {
      if (mg.edges[e].output != c) continue;
      const auto& ins = mg.edges[e].inputs;
      std::vector<const std::vector<PlanarTerm>*> kids;
      for (Index x : ins) kids.push_back(&go(x));
      std::vector<std::size_t> idx(ins.size(), 0);
      bool empty = false;
      for (auto* k : kids) empty = empty || k->empty();
      if (empty) continue;
      while (true) {
        PlanarTerm t{{static_cast<std::int32_t>(e)}};
        for (std::size_t s = 0; s < ins.size(); ++s) {
          const auto& k = (*kids[s])[idx[s]].tokens;
          t.tokens.insert(t.tokens.end(), k.begin(), k.end());
        }
        out.push_back(std::move(t));
        std::size_t s = ins.size();
        while (s > 0 && idx[s - 1] + 1 == kids[s - 1]->size()) --s;
        if (s == 0) break;
        ++idx[s - 1];
        for (std::size_t r = s; r < ins.size(); ++r) idx[r] = 0;
      }
    }
    memo[c] = std::move(out);
    state[c] = 2;
    return memo[c];
  };
  for (Index c = 0; c < nc; ++c) go(c);
  return memo;
}

// ---------------------------------------------------------------------------
// Operation vectors and matrices. An entry is a list of M1 elements (identity
// edges allowed; the empty list is 1_empty).

using Entry = std::vector<Index>;
using OperationVector = std::vector<Entry>;

inline std::vector<Index> entry_outputs(const Multigraph& mg, const Entry& e) {
  std::vector<Index> out;
  for (Index x : e) out.push_back(mg.d0(x));
  return out;
}
inline std::vector<Index> entry_inputs(const Multigraph& mg, const Entry& e) {
  std::vector<Index> out;
  for (Index x : e) {
    auto in = mg.d1(x);
    out.insert(out.end(), in.begin(), in.end());
  }
  return out;
}
inline Entry identity_entry(const Multigraph& mg, const std::vector<Index>& colors) {
  Entry e;
  for (Index c : colors) e.push_back(mg.s0(c));
  return e;
}
inline bool is_identity_entry(const Multigraph& mg, const Entry& e) {
  for (Index x : e)
    if (!mg.is_identity(x)) return false;
  return true;
}

/// Composability of consecutive entries; throws on failure.
inline void check_composable(const Multigraph& mg, const OperationVector& v, bool require_singleton_end = true) {
  if (v.empty()) throw std::invalid_argument("operation vector is empty");
  for (const auto& e : v)
    for (Index x : e)
      if (x >= mg.m1_size()) throw std::invalid_argument("operation vector: unknown edge");
  for (std::size_t t = 0; t + 1 < v.size(); ++t)
    if (entry_outputs(mg, v[t]) != entry_inputs(mg, v[t + 1]))
      throw std::invalid_argument("operation vector: entries " + std::to_string(t) + " and " + std::to_string(t + 1) +
                                  " are not composable");
  if (require_singleton_end && v.back().size() != 1)
    throw std::invalid_argument("operation vector must end in a single edge");
}

inline std::vector<Index> vector_inputs(const Multigraph& mg, const OperationVector& v) {
  return entry_inputs(mg, v.front());
}
inline Index vector_output(const Multigraph& mg, const OperationVector& v) { return mg.d0(v.back().at(0)); }

inline PlanarTerm vector_to_term(const Multigraph& mg, const OperationVector& v) {
  check_composable(mg, v);
  PlanarTerm t = PlanarTerm::corolla(mg, v.back()[0]);
  for (std::size_t s = v.size() - 1; s-- > 0;) {
    std::vector<PlanarTerm> fs;
    for (Index x : v[s]) fs.push_back(PlanarTerm::corolla(mg, x));
    t = free_compose(mg, t, fs);
  }
  return t;
}

/// Canonical leveling: nodes sit at their depth below the root; branches
/// that end early are continued by identities.
inline OperationVector term_to_vector(const Multigraph& mg, const PlanarTerm& t) {
  check_term(mg, t);
  struct Slot {
    std::size_t pos;  // token position
    bool leaf;
    Index color;
  };
  auto children = [&](std::size_t pos) {
    std::vector<std::size_t> out;
    std::size_t p = pos + 1;
    for (Index c : mg.edges.at(t.tokens[pos]).inputs) {
      out.push_back(p);
      p = detail::term_end(mg, t, p, c);
    }
    return out;
  };
  auto slot_at = [&](std::size_t pos) {
    std::int32_t tok = t.tokens[pos];
    if (tok < 0) return Slot{pos, true, static_cast<Index>(-tok - 1)};
    return Slot{pos, false, mg.edges.at(tok).output};
  };
  std::vector<std::vector<Slot>> levels{{slot_at(0)}};
  while (true) {
    bool any_node = false;
    for (const auto& s : levels.back()) any_node = any_node || !s.leaf;
    if (!any_node) break;
    std::vector<Slot> next;
    for (const auto& s : levels.back()) {
      if (s.leaf) {
        next.push_back(s);
      } else {
        for (auto c : children(s.pos)) next.push_back(slot_at(c));
      }
    }
    levels.push_back(std::move(next));
  }
  // levels.back() holds only leaves; one entry per level above it.
  std::size_t h = levels.size() - 1;
  if (h == 0) return {{mg.s0(levels[0][0].color)}};
  OperationVector v(h);
  for (std::size_t d = 0; d < h; ++d) {
    Entry e;
    for (const auto& s : levels[d]) e.push_back(s.leaf ? mg.s0(s.color) : static_cast<Index>(t.tokens[s.pos]));
    v[h - 1 - d] = std::move(e);
  }
  return v;
}

inline bool ou_equivalent(const Multigraph& mg, const OperationVector& v, const OperationVector& w) {
  return vector_to_term(mg, v) == vector_to_term(mg, w);
}

inline std::string render_vector(const Multigraph& mg, const OperationVector& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (t) os << " ";
    if (v[t].empty()) {
      os << "1_{}";
      continue;
    }
    if (v[t].size() > 1) os << "(";
    for (std::size_t s = 0; s < v[t].size(); ++s) os << (s ? "/" : "") << mg.edge_name(v[t][s]);
    if (v[t].size() > 1) os << ")";
  }
  os << "]";
  return os.str();
}

/// Rows of equal length, each row an operation vector.
struct OperationMatrix {
  std::vector<OperationVector> rows;
  std::size_t length() const { return rows.empty() ? 0 : rows.front().size(); }
};

inline void check_matrix(const Multigraph& mg, const OperationMatrix& m) {
  for (const auto& r : m.rows) {
    if (r.size() != m.length()) throw std::invalid_argument("operation matrix rows differ in length");
    check_composable(mg, r);
  }
}

inline std::vector<Index> matrix_inputs(const Multigraph& mg, const OperationMatrix& m) {
  std::vector<Index> out;
  for (const auto& r : m.rows) {
    auto in = vector_inputs(mg, r);
    out.insert(out.end(), in.begin(), in.end());
  }
  return out;
}
inline std::vector<Index> matrix_outputs(const Multigraph& mg, const OperationMatrix& m) {
  std::vector<Index> out;
  for (const auto& r : m.rows) out.push_back(vector_output(mg, r));
  return out;
}

/// Column c of the matrix as a single entry.
inline Entry matrix_column(const OperationMatrix& m, std::size_t c) {
  Entry e;
  for (const auto& r : m.rows) e.insert(e.end(), r[c].begin(), r[c].end());
  return e;
}

/// M then N: the rows of M feeding row r of N are stacked in front of it.
inline OperationMatrix concat(const Multigraph& mg, const OperationMatrix& m, const OperationMatrix& n) {
  check_matrix(mg, m);
  check_matrix(mg, n);
  if (matrix_outputs(mg, m) != matrix_inputs(mg, n)) throw std::invalid_argument("concat: matrices not composable");
  OperationMatrix out;
  std::size_t next = 0;
  for (const auto& r : n.rows) {
    std::size_t k = vector_inputs(mg, r).size();
    OperationVector row;
    for (std::size_t c = 0; c < m.length(); ++c) {
      Entry e;
      for (std::size_t s = next; s < next + k; ++s) e.insert(e.end(), m.rows[s][c].begin(), m.rows[s][c].end());
      row.push_back(std::move(e));
    }
    next += k;
    row.insert(row.end(), r.begin(), r.end());
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline std::vector<OperationVector> split(const OperationMatrix& m) { return m.rows; }

/// Pads every row at the input end with identity entries up to the longest row.
inline OperationMatrix pack(const Multigraph& mg, const std::vector<OperationVector>& vs) {
  std::size_t len = 0;
  for (const auto& v : vs) {
    check_composable(mg, v);
    len = std::max(len, v.size());
  }
  OperationMatrix m;
  for (const auto& v : vs) {
    OperationVector r;
    Entry pad = identity_entry(mg, vector_inputs(mg, v));
    for (std::size_t t = v.size(); t < len; ++t) r.push_back(pad);
    r.insert(r.end(), v.begin(), v.end());
    m.rows.push_back(std::move(r));
  }
  return m;
}

inline std::vector<PlanarTerm> matrix_terms(const Multigraph& mg, const OperationMatrix& m) {
  std::vector<PlanarTerm> out;
  for (const auto& r : m.rows) out.push_back(vector_to_term(mg, r));
  return out;
}

/// Rows of the block of columns [from, to] of v, one per element of entry to.
inline std::vector<OperationVector> block_rows(const Multigraph& mg, const OperationVector& v, std::size_t from,
                                               std::size_t to) {
  std::vector<OperationVector> rows(v[to].size(), OperationVector(to - from + 1));
  // owner[x] = row of each element in the current column
  std::vector<std::size_t> owner(v[to].size());
  for (std::size_t s = 0; s < owner.size(); ++s) owner[s] = s;
  for (std::size_t c = to + 1; c-- > from;) {
    std::vector<std::size_t> next_owner;
    for (std::size_t s = 0; s < v[c].size(); ++s) {
      rows[owner[s]][c - from].push_back(v[c][s]);
      for (std::size_t r = 0; r < mg.d1(v[c][s]).size(); ++r) next_owner.push_back(owner[s]);
    }
    owner = std::move(next_owner);
  }
  return rows;
}

}  // namespace slist
