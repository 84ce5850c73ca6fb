#pragma once

// JSON documents: {"kind": ..., "version": 1, ...}.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "homology.hpp"
#include "key_operads.hpp"
#include "operad.hpp"
#include "truncated.hpp"

namespace slist {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Malformed or invalid input; the message names the file and location.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Document {
  std::string name;
  Json json;
  std::string kind;
};

namespace io_detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

struct Ctx {
  std::string file;
  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw InputError(file + ": " + (path.empty() ? "/" : path) + ": " + msg);
  }
  const Json& field(const Json& j, const std::string& path, const std::string& key) const {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
  }
  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }
  std::size_t count(const Json& j, const std::string& path) const {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
  }
  std::string str(const Json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  std::vector<std::string> strings(const Json& j, const std::string& path) const {
    array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
    return out;
  }
  FiniteSet set(const Json& j, const std::string& path) const {
    auto ls = strings(j, path);
    try {
      return FiniteSet(ls);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
};

/// label -> position
struct Lookup {
  std::unordered_map<std::string, Index> pos;
  explicit Lookup(const FiniteSet& S) {
    for (Index i = 0; i < S.size(); ++i) pos[S.labels[i]] = i;
  }
  Index at(const Ctx& c, const std::string& path, const std::string& label) const {
    auto it = pos.find(label);
    if (it == pos.end()) c.fail(path, "unknown label \"" + label + "\"");
    return it->second;
  }
};

inline Seq labels_to_seq(const Ctx& c, const Json& j, const std::string& path, const Lookup& L) {
  Seq s;
  auto ls = c.strings(j, path);
  for (std::size_t i = 0; i < ls.size(); ++i) s.push_back(L.at(c, path + "/" + std::to_string(i), ls[i]));
  return s;
}

}  // namespace io_detail

inline Document parse_document(const std::string& text, const std::string& name) {
  Document d;
  d.name = name;
  try {
    d.json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = io_detail::line_col(text, e.byte);
    std::string what = e.what();
    auto p = what.find("column ");
    if (p != std::string::npos) p = what.find(": ", p);
    std::string detail = p == std::string::npos ? what : what.substr(p + 2);
    throw InputError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + detail);
  }
  io_detail::Ctx c{name};
  d.kind = c.str(c.field(d.json, "", "kind"), "/kind");
  const Json& v = c.field(d.json, "", "version");
  if (!v.is_number_integer() || v.get<long long>() != kFormatVersion)
    c.fail("/version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  return d;
}

inline Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

inline void expect_kind(const Document& d, std::initializer_list<const char*> kinds) {
  for (const char* k : kinds)
    if (d.kind == k) return;
  std::string want;
  for (const char* k : kinds) want += (want.empty() ? "" : " or ") + std::string(k);
  throw InputError(d.name + ": /kind: expected " + want + ", found \"" + d.kind + "\"");
}

// ---------------------------------------------------------------------------

struct LabeledListing {
  FiniteSet source;
  FiniteSet target;
  Listing u;
};

/// {"source": [...], "target": [...], "images": [[target labels], ...]}
inline LabeledListing listing_from_json(const Document& d) {
  expect_kind(d, {"listing"});
  io_detail::Ctx c{d.name};
  LabeledListing L{c.set(c.field(d.json, "", "source"), "/source"), c.set(c.field(d.json, "", "target"), "/target"),
                   Listing(0, 0, {})};
  const Json& im = c.array(c.field(d.json, "", "images"), "/images");
  if (im.size() != L.source.size()) c.fail("/images", "expected one image per source element");
  io_detail::Lookup T(L.target);
  std::vector<Seq> images;
  for (std::size_t a = 0; a < im.size(); ++a) images.push_back(io_detail::labels_to_seq(c, im[a], "/images/" + std::to_string(a), T));
  L.u = Listing(L.source.size(), L.target.size(), std::move(images));
  return L;
}

inline LeveledShape shape_from_json(const io_detail::Ctx& c, const Json& j, const std::string& path) {
  const Json& lv = c.array(c.field(j, path, "levels"), path + "/levels");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < lv.size(); ++i) sizes.push_back(c.count(lv[i], path + "/levels/" + std::to_string(i)));
  if (sizes.empty()) c.fail(path + "/levels", "a shape needs at least one level");
  const Json& ms = c.array(c.field(j, path, "maps"), path + "/maps");
  if (ms.size() + 1 != sizes.size()) c.fail(path + "/maps", "expected one map per level above the bottom");
  std::vector<std::vector<Index>> vals;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = path + "/maps/" + std::to_string(i);
    c.array(ms[i], p);
    vals.emplace_back();
    for (std::size_t t = 0; t < ms[i].size(); ++t) vals.back().push_back(c.count(ms[i][t], p + "/" + std::to_string(t)));
  }
  try {
    return LeveledShape::from_values(sizes, vals);
  } catch (const std::invalid_argument& e) {
    c.fail(path, e.what());
  }
}

/// {"levels": [|A_0|, ..., |A_n|], "maps": [[values of alpha_1], ...]}
inline LeveledShape shape_from_json(const Document& d) {
  expect_kind(d, {"shape"});
  return shape_from_json(io_detail::Ctx{d.name}, d.json, "");
}

inline Multigraph multigraph_from_json(const io_detail::Ctx& c, const Json& j, const std::string& path) {
  FiniteSet colors = c.set(c.field(j, path, "colors"), path + "/colors");
  io_detail::Lookup C(colors);
  const Json& es = c.array(c.field(j, path, "edges"), path + "/edges");
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < es.size(); ++e) {
    std::string p = path + "/edges/" + std::to_string(e);
    Edge E;
    E.name = c.str(c.field(es[e], p, "name"), p + "/name");
    E.inputs = io_detail::labels_to_seq(c, c.field(es[e], p, "inputs"), p + "/inputs", C);
    E.output = C.at(c, p + "/output", c.str(c.field(es[e], p, "output"), p + "/output"));
    edges.push_back(std::move(E));
  }
  return Multigraph(std::move(colors), std::move(edges));
}

/// {"colors": [...], "edges": [{"name", "inputs": [...], "output"}]}
inline Multigraph multigraph_from_json(const Document& d) {
  expect_kind(d, {"multigraph"});
  return multigraph_from_json(io_detail::Ctx{d.name}, d.json, "");
}

struct LoadedOperad {
  FiniteOperad P;
  std::optional<TAlpha> T;  // set for builtin t_alpha
  std::string description;
};

/// Either {"builtin": "assoc" | "hom" | "t_alpha" | "free", ...} or a table
/// {"colors", "operations": [{"name", "inputs", "output"}], "identities":
/// [operation per color], "composition": [{"outer", "inner": [...], "result"}]}.
inline LoadedOperad operad_from_json(const Document& d) {
  expect_kind(d, {"operad"});
  io_detail::Ctx c{d.name};
  const Json& j = d.json;
  LoadedOperad L;
  if (j.contains("builtin")) {
    std::string b = c.str(j["builtin"], "/builtin");
    try {
      if (b == "assoc") {
        std::size_t bound = c.count(c.field(j, "", "arity_bound"), "/arity_bound");
        L.P = assoc_operad(bound);
        L.description = "assoc, arity <= " + std::to_string(bound);
      } else if (b == "hom") {
        std::size_t bound = c.count(c.field(j, "", "arity_bound"), "/arity_bound");
        auto objs = c.strings(c.field(j, "", "objects"), "/objects");
        L.P = hom_operad(objs, bound);
        L.description = "hom on " + std::to_string(objs.size()) + " objects, arity <= " + std::to_string(bound);
      } else if (b == "t_alpha") {
        LeveledShape s = shape_from_json(c, c.field(j, "", "shape"), "/shape");
        L.T = build_T_alpha(s);
        L.P = L.T->operad();
        L.description = "T_alpha on " + shape_key(s);
      } else if (b == "free") {
        Multigraph mg = multigraph_from_json(c, c.field(j, "", "multigraph"), "/multigraph");
        L.P = free_operad(mg).operad;
        L.description = "free on a multigraph with " + std::to_string(mg.edges.size()) + " edges";
      } else {
        c.fail("/builtin", "unknown builtin \"" + b + "\"");
      }
    } catch (const std::invalid_argument& e) {
      c.fail("", e.what());
    } catch (const std::domain_error& e) {
      c.fail("", e.what());
    }
    return L;
  }
  FiniteSet colors = c.set(c.field(j, "", "colors"), "/colors");
  io_detail::Lookup C(colors);
  const Json& os = c.array(c.field(j, "", "operations"), "/operations");
  std::vector<Operation> ops;
  std::vector<std::string> names;
  for (std::size_t p = 0; p < os.size(); ++p) {
    std::string path = "/operations/" + std::to_string(p);
    Operation o;
    o.label = c.str(c.field(os[p], path, "name"), path + "/name");
    o.inputs = io_detail::labels_to_seq(c, c.field(os[p], path, "inputs"), path + "/inputs", C);
    o.output = C.at(c, path + "/output", c.str(c.field(os[p], path, "output"), path + "/output"));
    names.push_back(o.label);
    ops.push_back(std::move(o));
  }
  FiniteSet opnames = c.set(Json(names), "/operations");
  io_detail::Lookup O(opnames);
  std::vector<Index> ids = io_detail::labels_to_seq(c, c.field(j, "", "identities"), "/identities", O);
  if (ids.size() != colors.size()) c.fail("/identities", "expected one identity per color");
  std::map<std::pair<Index, std::vector<Index>>, Index> table;
  const Json& cs = c.array(c.field(j, "", "composition"), "/composition");
  for (std::size_t t = 0; t < cs.size(); ++t) {
    std::string path = "/composition/" + std::to_string(t);
    Index g = O.at(c, path + "/outer", c.str(c.field(cs[t], path, "outer"), path + "/outer"));
    Seq fs = io_detail::labels_to_seq(c, c.field(cs[t], path, "inner"), path + "/inner", O);
    Index h = O.at(c, path + "/result", c.str(c.field(cs[t], path, "result"), path + "/result"));
    if (!table.emplace(std::make_pair(g, fs), h).second) c.fail(path, "duplicate composition entry");
  }
  L.P = table_operad(std::move(colors), std::move(ops), std::move(ids), std::move(table));
  L.description = "table operad with " + std::to_string(L.P.ops.size()) + " operations";
  auto errs = validate_operad(L.P);
  if (!errs.empty()) c.fail("/composition", errs.front());
  return L;
}

/// {"D": n, "carriers": [[labels of X_0], ...], "faces": [[d_0 of X_1, d_1 of
/// X_1], [d_0, d_1, d_2 of X_2], ...], "degeneracies": [[s_0 of X_0], ...]}
/// where each map is a list of label lists, one per source element.
inline TruncSList slist_from_json(const Document& d) {
  expect_kind(d, {"slist"});
  io_detail::Ctx c{d.name};
  const Json& j = d.json;
  std::size_t D = c.count(c.field(j, "", "D"), "/D");
  TruncSList X = TruncSList::empty(D);
  const Json& cs = c.array(c.field(j, "", "carriers"), "/carriers");
  if (cs.size() != D + 1) c.fail("/carriers", "expected D + 1 carriers");
  std::vector<io_detail::Lookup> look;
  for (std::size_t n = 0; n <= D; ++n) {
    X.carriers[n] = c.set(cs[n], "/carriers/" + std::to_string(n));
    look.emplace_back(X.carriers[n]);
  }
  auto read_map = [&](const Json& m, const std::string& path, std::size_t src, std::size_t tgt) {
    c.array(m, path);
    if (m.size() != X.size(src)) c.fail(path, "expected one image per element of degree " + std::to_string(src));
    std::vector<Seq> im;
    for (std::size_t x = 0; x < m.size(); ++x) im.push_back(io_detail::labels_to_seq(c, m[x], path + "/" + std::to_string(x), look[tgt]));
    return Listing(X.size(src), X.size(tgt), std::move(im));
  };
  const Json& fs = c.array(c.field(j, "", "faces"), "/faces");
  if (fs.size() != D) c.fail("/faces", "expected D lists of face maps");
  for (std::size_t n = 1; n <= D; ++n) {
    std::string p = "/faces/" + std::to_string(n - 1);
    c.array(fs[n - 1], p);
    if (fs[n - 1].size() != n + 1) c.fail(p, "expected " + std::to_string(n + 1) + " face maps");
    for (std::size_t i = 0; i <= n; ++i) X.faces[n][i] = read_map(fs[n - 1][i], p + "/" + std::to_string(i), n, n - 1);
  }
  const Json& ds = c.array(c.field(j, "", "degeneracies"), "/degeneracies");
  if (ds.size() != D) c.fail("/degeneracies", "expected D lists of degeneracies");
  for (std::size_t n = 0; n < D; ++n) {
    std::string p = "/degeneracies/" + std::to_string(n);
    c.array(ds[n], p);
    if (ds[n].size() != n + 1) c.fail(p, "expected " + std::to_string(n + 1) + " degeneracies");
    for (std::size_t k = 0; k <= n; ++k) X.degeneracies[n][k] = read_map(ds[n][k], p + "/" + std::to_string(k), n, n + 1);
  }
  return X;
}

inline Json slist_to_json(const TruncSList& X) {
  Json j;
  j["kind"] = "slist";
  j["version"] = kFormatVersion;
  j["D"] = X.D;
  j["carriers"] = Json::array();
  for (const auto& c : X.carriers) j["carriers"].push_back(c.labels);
  auto write_map = [&](const Listing& u, std::size_t tgt) {
    Json m = Json::array();
    for (Index x = 0; x < u.source_size(); ++x) {
      Json s = Json::array();
      for (Index y : u(x)) s.push_back(X.carriers[tgt].labels[y]);
      m.push_back(s);
    }
    return m;
  };
  j["faces"] = Json::array();
  for (std::size_t n = 1; n <= X.D; ++n) {
    Json l = Json::array();
    for (std::size_t i = 0; i <= n; ++i) l.push_back(write_map(X.face(n, i), n - 1));
    j["faces"].push_back(l);
  }
  j["degeneracies"] = Json::array();
  for (std::size_t n = 0; n < X.D; ++n) {
    Json l = Json::array();
    for (std::size_t k = 0; k <= n; ++k) l.push_back(write_map(X.degen(n, k), n + 1));
    j["degeneracies"].push_back(l);
  }
  return j;
}

inline Json shape_to_json(const LeveledShape& s) {
  Json j;
  j["kind"] = "shape";
  j["version"] = kFormatVersion;
  j["levels"] = s.level_sizes;
  j["maps"] = Json::array();
  for (const auto& m : s.maps) j["maps"].push_back(m.values);
  return j;
}

/// {"elements": [[labels of degree 0], [labels of degree 1], ...]}; degrees
/// beyond the list are empty.
inline SubMask subset_from_json(const Document& d, const TruncSList& X) {
  expect_kind(d, {"subset"});
  io_detail::Ctx c{d.name};
  const Json& es = c.array(c.field(d.json, "", "elements"), "/elements");
  if (es.size() > X.D + 1) c.fail("/elements", "more degrees than the simplicial list has");
  SubMask Y(X.D + 1);
  for (std::size_t n = 0; n <= X.D; ++n) {
    Y[n].assign(X.size(n), false);
    if (n >= es.size()) continue;
    io_detail::Lookup L(X.carriers[n]);
    for (Index x : io_detail::labels_to_seq(c, es[n], "/elements/" + std::to_string(n), L)) Y[n][x] = true;
  }
  return Y;
}

}  // namespace slist
