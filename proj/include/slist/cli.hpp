#pragma once

// Command line front end. run() is the whole program minus main().

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contraction.hpp"
#include "homology.hpp"
#include "io.hpp"
#include "nerve.hpp"
#include "representable.hpp"
#include "thicken.hpp"

namespace slist::cli {

inline constexpr const char* kVersion = "slist 1.0";

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBadInput = 3, kInternal = 4 };

struct Options {
  std::string input;
  std::string out;
  std::string shape;
  std::string relative;
  std::string target = "nerve";
  std::string format = "table";
  std::string dims = "2-3";
  std::size_t D = 3;
  std::size_t B = 0;  // 0: pick the complete bound
  std::size_t K = 2;
  std::size_t M = 2;
  std::size_t maxlen = 3;
  std::size_t samples = 500;
  std::uint64_t seed = 1;
  bool check_aug = false;
};

/// A tabular report. Machine format:
///   # slist 1.0
///   # command<TAB>name
///   # param<TAB>key<TAB>value        (one per bound or input)
///   # columns<TAB>c1<TAB>c2...
///   v1<TAB>v2...                     (one record per line)
///   # note<TAB>text
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;

  void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void param(const std::string& k, std::size_t v) { params.emplace_back(k, std::to_string(v)); }
  void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
  void note(const std::string& s) { notes.push_back(s); }

  std::string render(bool machine) const {
    std::ostringstream os;
    if (machine) {
      os << "# " << kVersion << "\n# command\t" << command << "\n";
      for (const auto& [k, v] : params) os << "# param\t" << k << "\t" << v << "\n";
      os << "# columns";
      for (const auto& c : columns) os << "\t" << c;
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
        os << "\n";
      }
      for (const auto& n : notes) os << "# note\t" << n << "\n";
      return os.str();
    }
    os << kVersion << " " << command << "\n";
    for (const auto& [k, v] : params) os << "  " << k << " = " << v << "\n";
    std::vector<std::size_t> w(columns.size(), 0);
    for (std::size_t i = 0; i < columns.size(); ++i) w[i] = columns[i].size();
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
      }
      os << s << "\n";
    };
    if (!columns.empty()) {
      os << "\n";
      line(columns);
      for (const auto& r : rows) line(r);
    }
    if (!notes.empty()) os << "\n";
    for (const auto& n : notes) os << n << "\n";
    return os.str();
  }
};

namespace detail {

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline std::string seq_labels(const FiniteSet& S, const Seq& s) {
  std::vector<std::string> ls;
  for (Index x : s) ls.push_back(S.labels.at(x));
  return "(" + join(ls) + ")";
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string theta_string(const MonotoneMap& th) {
  std::vector<std::string> v;
  for (Index x : th.values) v.push_back(std::to_string(x));
  return "[" + join(v) + "]";
}

inline std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  std::size_t lo = 0, hi = 0;
  char sep = 0;
  std::istringstream is(s);
  if (!(is >> lo)) throw CLI::ValidationError("--dims", "expected N or LO-HI");
  if (is >> sep) {
    if (sep != '-' || !(is >> hi)) throw CLI::ValidationError("--dims", "expected N or LO-HI");
  } else {
    hi = lo;
  }
  if (lo > hi) throw CLI::ValidationError("--dims", "empty range");
  return {lo, hi};
}

inline std::size_t complete_bound(const LoadedOperad& L) {
  if (L.P.arity_bound) return *L.P.arity_bound;
  std::size_t b = std::max<std::size_t>(L.P.max_arity(), 1);
  if (L.T)
    for (auto s : L.T->alpha.level_sizes) b = std::max(b, s);
  return b;
}

struct Simplicial {
  TruncSList X;
  std::optional<LoadedOperad> operad;
  std::optional<Nerve> nerve;
  std::optional<LeveledShape> shape;
  std::string what;
};

/// slist as given, a shape as U_alpha, an operad through its nerve.
inline Simplicial load_simplicial(const Document& d, Options& o, Report& rep) {
  expect_kind(d, {"slist", "shape", "operad"});
  Simplicial S;
  if (d.kind == "slist") {
    S.X = slist_from_json(d);
    S.what = "simplicial list";
    rep.param("D", S.X.D);
  } else if (d.kind == "shape") {
    S.shape = shape_from_json(d);
    require_rooted(*S.shape);
    S.X = build_U_alpha(*S.shape, o.D).X;
    S.what = "U_alpha on " + shape_key(*S.shape);
    rep.param("D", o.D);
  } else {
    S.operad = operad_from_json(d);
    std::size_t B = o.B ? o.B : complete_bound(*S.operad);
    S.nerve = nerve(S.operad->P, o.D, B);
    S.X = S.nerve->X;
    S.what = "nerve of " + S.operad->description;
    rep.param("D", o.D);
    rep.param("B", B);
  }
  auto v = validate(S.X);
  if (!v.empty())
    throw InputError(d.name + ": simplicial identity " + v.front().identity + " fails at degree " +
                     std::to_string(v.front().degree) + " on " +
                     S.X.carriers[v.front().degree].labels.at(v.front().witness));
  return S;
}

inline std::string require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw CLI::ValidationError(flag, "required for this command");
  return value;
}

// ---------------------------------------------------------------------------

inline int cmd_factor(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  LabeledListing L = listing_from_json(d);
  rep.param("input", o.input);
  Factorization f = perfect_factorize(L.u);
  rep.columns = {"middle", "source", "position", "target"};
  for (Index m = 0; m < f.middle.size(); ++m)
    rep.row({std::to_string(m), L.source.labels[f.middle[m].a], std::to_string(f.middle[m].i),
             L.target.labels[f.func(m).at(0)]});
  bool recomposes = compose(f.func, f.perfect).images() == L.u.images();
  rep.note("middle size " + std::to_string(f.middle.size()));
  rep.note("perfect part is perfect: " + yes(is_perfect(f.perfect)));
  rep.note("function part is a function: " + yes(f.func.is_function()));
  rep.note("composite equals input: " + yes(recomposes));
  return recomposes ? kOk : kCheckFailed;
}

inline int cmd_shapes(Options& o, Report& rep) {
  std::size_t B = o.B ? o.B : 2;
  rep.param("D", o.D);
  rep.param("B", B);
  auto shapes = enumerate_rooted(o.D, B);
  rep.columns = {"index", "levels", "maps"};
  for (std::size_t t = 0; t < shapes.size(); ++t) {
    std::vector<std::string> lv, ms;
    for (auto s : shapes[t].level_sizes) lv.push_back(std::to_string(s));
    for (const auto& m : shapes[t].maps) ms.push_back(theta_string(MonotoneMap(m.domain_size, m.codomain_size, m.values)));
    rep.row({std::to_string(t), "[" + join(lv) + "]", ms.empty() ? "-" : join(ms, " ")});
  }
  rep.note(std::to_string(shapes.size()) + " rooted shapes of degree " + std::to_string(o.D) + " with levels <= " +
           std::to_string(B));
  return kOk;
}

inline int cmd_upsilon(Options& o, Report& rep) {
  Document d = load_document(require(o.shape.empty() ? o.input : o.shape, "--shape"));
  LeveledShape alpha = shape_from_json(d);
  require_rooted(alpha);
  rep.param("shape", d.name);
  rep.param("K", o.K);
  rep.columns = {"k", "theta", "root", "source", "invariant"};
  std::size_t arrows = 0, composites = 0;
  bool ok = true;
  for (std::size_t k = 0; k <= o.K; ++k)
    for (const auto& g : upsilon_arrows_into(alpha, k)) {
      ++arrows;
      bool inv = upsilon_invariant_holds(g);
      ok = ok && inv;
      rep.row({std::to_string(k), theta_string(g.theta), std::to_string(g.root_choice), shape_key(g.source), yes(inv)});
      ok = ok && compose_upsilon(g, identity_upsilon(g.source)) == g && compose_upsilon(identity_upsilon(alpha), g) == g;
      for (std::size_t l = 0; l <= o.K; ++l)
        for (const auto& f : upsilon_arrows_into(g.source, l)) {
          compose_upsilon(g, f);
          ++composites;
        }
    }
  rep.note(std::to_string(arrows) + " arrows into " + shape_key(alpha) + " from degrees <= " + std::to_string(o.K));
  rep.note(std::to_string(composites) + " composites formed, unit laws hold: " + yes(ok));
  return ok ? kOk : kCheckFailed;
}

inline int cmd_free_operad(Options& o, Report& rep) {
  Document d = load_document(require(o.input.empty() ? o.shape : o.input, "--input"));
  expect_kind(d, {"multigraph", "shape"});
  rep.param("input", d.name);
  FiniteOperad P;
  if (d.kind == "shape") {
    P = build_T_alpha(shape_from_json(d)).operad();
  } else {
    try {
      P = free_operad(multigraph_from_json(d)).operad;
    } catch (const std::invalid_argument& e) {
      throw InputError(d.name + ": " + e.what());
    }
  }
  rep.columns = {"operation", "inputs", "output", "term"};
  for (Index p = 0; p < P.ops.size(); ++p)
    rep.row({std::to_string(p), seq_labels(P.colors, P.ops[p].inputs), P.colors.labels[P.ops[p].output], P.ops[p].label});
  rep.note(std::to_string(P.colors.size()) + " colors, " + std::to_string(P.ops.size()) + " operations");
  return kOk;
}

inline int cmd_nerve(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  rep.param("input", o.input);
  Simplicial S = load_simplicial(d, o, rep);
  rep.columns = {"degree", "simplices"};
  for (std::size_t n = 0; n <= S.X.D; ++n) rep.row({std::to_string(n), std::to_string(S.X.size(n))});
  rep.note(S.what);
  rep.note("operadic: " + yes(is_operadic(S.X)));
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError(o.out + ": cannot write");
    f << slist_to_json(S.X).dump(1) << "\n";
    rep.note("written to " + o.out);
  }
  return kOk;
}

inline int cmd_realize(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  rep.param("input", o.input);
  if (d.kind == "operad") o.D = std::max<std::size_t>(o.D, 3);
  Simplicial S = load_simplicial(d, o, rep);
  FiniteOperad R;
  try {
    R = realize_operad(S.X);
  } catch (const NotANerve& e) {
    rep.note(std::string("not the nerve of an operad: ") + e.what());
    return kCheckFailed;
  }
  rep.columns = {"operation", "inputs", "output"};
  for (Index p = 0; p < R.ops.size(); ++p) rep.row({R.ops[p].label, seq_labels(R.colors, R.ops[p].inputs), R.colors.labels[R.ops[p].output]});
  rep.note(std::to_string(R.colors.size()) + " colors, " + std::to_string(R.ops.size()) + " operations");
  if (S.nerve) {
    auto phi = canonical_matching(*S.nerve, R);
    rep.note("isomorphic to the input operad: " + yes(phi.has_value()));
    if (!phi) return kCheckFailed;
    Nerve NR = nerve(R, S.nerve->D, S.nerve->B);
    auto m = transport_nerve(NR, *S.nerve, *phi);
    bool same = m && is_morphism(*m, NR.X, S.nerve->X);
    for (std::size_t n = 0; same && n <= NR.D; ++n) same = NR.X.size(n) == S.nerve->X.size(n);
    rep.note("nerve of the realization matches degree-wise: " + yes(same));
    if (!same) return kCheckFailed;
  }
  return kOk;
}

inline int cmd_check_quasi(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  rep.param("input", o.input);
  auto [lo, hi] = parse_dims(o.dims);
  rep.param("dims", std::to_string(lo) + "-" + std::to_string(hi));
  o.D = std::max(o.D, hi);
  Simplicial S = load_simplicial(d, o, rep);
  if (!is_operadic(S.X)) {
    rep.note("not operadic, inner horns not checked");
    return kCheckFailed;
  }
  rep.columns = {"dim", "inner", "horns", "unfilled", "multiple", "first_unfilled"};
  bool ok = true;
  for (const auto& r : is_quasi_operad(S.X, lo, hi)) {
    rep.row({std::to_string(r.dim), std::to_string(r.inner), std::to_string(r.horns), std::to_string(r.unfilled),
             std::to_string(r.multiply_filled), r.first_unfilled.empty() ? "-" : r.first_unfilled});
    ok = ok && r.unfilled == 0 && r.multiply_filled == 0;
  }
  rep.note(ok ? "all inner horns uniquely filled" : "some inner horn lacks a unique filler");
  return ok ? kOk : kCheckFailed;
}

inline int cmd_check_envelope(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  LoadedOperad L = operad_from_json(d);
  rep.param("input", o.input);
  rep.param("D", o.D);
  rep.param("maxlen", o.maxlen);
  if (L.P.arity_bound && o.maxlen > *L.P.arity_bound)
    throw CLI::ValidationError("--maxlen", "exceeds the arity bound of the operad");
  rep.columns = {"degree", "lists", "chains", "bijective"};
  bool ok = true;
  for (std::size_t n = 0; n <= o.D; ++n) {
    auto r = check_envelope_iso(L.P, n, o.maxlen);
    rep.row({std::to_string(n), std::to_string(r.lists), std::to_string(r.chains), yes(r.bijective)});
    ok = ok && r.bijective;
  }
  rep.note(ok ? "envelope of the nerve matches the nerve of the envelope" : "mismatch");
  return ok ? kOk : kCheckFailed;
}

inline int cmd_thicken(Options& o, Report& rep) {
  Document d = load_document(require(o.shape.empty() ? o.input : o.shape, "--shape"));
  LeveledShape alpha = shape_from_json(d);
  require_rooted(alpha);
  rep.param("shape", d.name);
  rep.param("K", o.K);
  rep.param("M", o.M);
  Thick T = build_thick(alpha, o.K, o.check_aug ? o.M + 1 : o.M);
  rep.columns = {"k", "m", "cells", "expected"};
  bool ok = true;
  for (std::size_t k = 0; k <= o.K; ++k)
    for (std::size_t m = 0; m <= o.M; ++m) {
      std::size_t e = thick_count(alpha, k, m);
      ok = ok && e == T.size(k, m);
      rep.row({std::to_string(k), std::to_string(m), std::to_string(T.size(k, m)), std::to_string(e)});
    }
  bool slices_ok = true;
  for (std::size_t m = 0; m <= o.M; ++m) slices_ok = slices_ok && validate(T.slices[m]).empty() && is_operadic(T.slices[m]);
  for (std::size_t m = 0; m <= o.M; ++m)
    for (std::size_t k = 0; k <= o.K; ++k) slices_ok = slices_ok && is_perfect(T.eta(k, m));
  bool commute = check_bigraded(T).empty();
  rep.note("m-slices validate as operadic simplicial lists, eta perfect: " + yes(slices_ok));
  rep.note("the two actions commute: " + yes(commute));
  ok = ok && slices_ok && commute;
  if (o.check_aug) {
    UAlpha U = build_U_alpha(alpha, o.K);
    auto v = check_extra_degeneracies(T, U);
    rep.note("extra degeneracy identities: " + (v.empty() ? std::string("hold") : v.front().identity + " fails on " + v.front().witness));
    auto c = verify_thick_contraction(T, U);
    rep.note(render_report(c));
    ok = ok && v.empty() && c.ok();
  }
  return ok ? kOk : kCheckFailed;
}

inline int cmd_homology(Options& o, Report& rep) {
  Document d = load_document(require(o.input, "--input"));
  rep.param("input", o.input);
  Simplicial S = load_simplicial(d, o, rep);
  ChainComplexZ C = chain_complex(S.X);
  std::optional<SubMask> Y;
  if (!o.relative.empty()) {
    Document r = load_document(o.relative);
    rep.param("relative", o.relative);
    if (r.kind == "shape") {
      if (!S.operad || !S.operad->T || !(S.operad->T->alpha == shape_from_json(r)))
        throw InputError(r.name + ": a shape is accepted as --relative only with the T_alpha operad on it");
      Y = representable_image(*S.nerve, *S.operad->T);
    } else {
      Y = subset_from_json(r, S.X);
    }
    auto err = closure_failure(S.X, *Y);
    if (!err.empty()) throw InputError(r.name + ": not a sub-simplicial list: " + err);
  }
  rep.columns = {"degree", "rank", "torsion"};
  auto emit = [&](const std::vector<HomologyGroup>& hs) {
    for (const auto& h : hs) {
      std::vector<std::string> t;
      for (const auto& x : h.torsion) t.push_back(x.str());
      rep.row({std::to_string(h.degree), std::to_string(h.free_rank), t.empty() ? "-" : join(t)});
    }
  };
  if (Y) {
    TruncSList Q = relative_quotient(S.X, *Y);
    ChainComplexZ CQ = chain_complex(Q);
    ChainComplexZ QC = quotient_complex(C, *Y);
    bool same = true;
    for (std::size_t n = 1; n <= C.D; ++n) same = same && CQ.boundaries[n] == QC.boundaries[n];
    emit(homology_all(CQ));
    rep.note("relative homology via the quotient simplicial list");
    rep.note("quotient complex equals the complex of the quotient: " + yes(same));
    if (!same) return kCheckFailed;
  } else {
    emit(homology_all(C));
  }
  rep.note(S.what);
  rep.note("degrees above D-1 = " + std::to_string(S.X.D ? S.X.D - 1 : 0) + " are not determined by the truncation");
  return kOk;
}

inline int cmd_verify_contraction(Options& o, Report& rep) {
  rep.param("target", o.target);
  ContractionReport c;
  if (o.target == "assoc") {
    rep.param("samples", o.samples);
    rep.param("seed", std::to_string(o.seed));
    c = verify_rooted_contraction(o.samples, o.seed);
  } else if (o.target == "nerve" || o.target == "thick") {
    Document d = load_document(require(o.shape.empty() ? o.input : o.shape, "--shape"));
    LeveledShape alpha = shape_from_json(d);
    require_rooted(alpha);
    rep.param("shape", d.name);
    if (o.target == "nerve") {
      rep.param("D", o.D);
      TAlpha T = build_T_alpha(alpha);
      LoadedOperad L{T.operad(), T, ""};
      std::size_t B = complete_bound(L);
      rep.param("B", B);
      Nerve N = nerve(T.operad(), o.D, B);
      c = verify_nerve_contraction(N, T);
    } else {
      rep.param("K", o.K);
      rep.param("M", o.M);
      Thick Th = build_thick(alpha, o.K, o.M + 1);
      c = verify_thick_contraction(Th, build_U_alpha(alpha, o.K));
    }
  } else {
    throw CLI::ValidationError("--target", "expected nerve, thick or assoc");
  }
  rep.columns = {"degree", "checked"};
  for (std::size_t s = 0; s < c.per_degree.size(); ++s)
    rep.row({std::to_string(static_cast<int>(s) - 1), std::to_string(c.per_degree[s])});
  rep.note(render_report(c));
  return c.ok() ? kOk : kCheckFailed;
}

}  // namespace detail

/// Runs one command line; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simplicial lists, operads and their nerves", "slist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  using Cmd = int (*)(Options&, Report&);
  std::vector<std::pair<CLI::App*, Cmd>> cmds;
  auto add = [&](const std::string& name, const std::string& desc, Cmd fn) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--input", o.input, "input document");
    s->add_option("--out", o.out, "output file (the simplicial list for nerve, the report otherwise)");
    s->add_option("--shape", o.shape, "shape document");
    s->add_option("--relative", o.relative, "subset document, or a shape for the image of U_alpha");
    s->add_option("--target", o.target, "contraction target: nerve, thick or assoc");
    s->add_option("--format", o.format, "table or machine")->check(CLI::IsMember({"table", "machine"}));
    s->add_option("--dims", o.dims, "horn dimensions, N or LO-HI");
    s->add_option("--D", o.D, "truncation degree");
    s->add_option("--B", o.B, "level size bound (0: complete bound)");
    s->add_option("--K", o.K, "bound on k");
    s->add_option("--M", o.M, "bound on m");
    s->add_option("--maxlen", o.maxlen, "bound on color sequence length");
    s->add_option("--samples", o.samples, "sample count");
    s->add_option("--seed", o.seed, "random seed");
    s->add_flag("--check-aug", o.check_aug, "also check the augmentation");
    cmds.emplace_back(s, fn);
  };
  add("factor", "perfect-function factorization of a listing", detail::cmd_factor);
  add("shapes", "rooted shapes of degree D with levels <= B", detail::cmd_shapes);
  add("upsilon", "arrows into a shape", detail::cmd_upsilon);
  add("free-operad", "operations of a free operad", detail::cmd_free_operad);
  add("nerve", "list nerve of an operad", detail::cmd_nerve);
  add("realize", "operad of a simplicial list", detail::cmd_realize);
  add("check-quasi", "inner horn filling", detail::cmd_check_quasi);
  add("check-envelope", "envelope of the nerve against the nerve of the envelope", detail::cmd_check_envelope);
  add("thicken", "thick representables", detail::cmd_thicken);
  add("homology", "integer homology", detail::cmd_homology);
  add("verify-contraction", "contracting homotopy from extra degeneracies", detail::cmd_verify_contraction);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (auto& [s, fn] : cmds) {
    if (!s->parsed()) continue;
    Report rep;
    rep.command = s->get_name();
    int code = kOk;
    try {
      code = fn(o, rep);
    } catch (const CLI::ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return kBadInput;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kBadInput;
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << "\n";
      return kBadInput;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kInternal;
    }
    std::string text = rep.render(o.format == "machine");
    if (!o.out.empty() && rep.command != "nerve") {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << o.out << "\n";
        return kBadInput;
      }
      f << text;
    } else {
      out << text;
    }
    return code;
  }
  return kUsage;
}

}  // namespace slist::cli
