// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "slist/cli.hpp"
#include "slist/contraction.hpp"
#include "slist/io.hpp"
#include "support.hpp"

using namespace slist;
using slist::testing::Rng;
using slist::testing::uniform;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string sample(const std::string& name) { return std::string(SLIST_SAMPLES) + "/" + name; }

// Rooted shapes with n <= 2 and every level of size <= 3.
std::vector<RootedShape> small_rooted() {
  std::vector<RootedShape> out;
  for (std::size_t n = 0; n <= 2; ++n)
    for (auto& a : enumerate_rooted(n, 3)) out.push_back(std::move(a));
  return out;
}

std::vector<RootedShape> five_shapes() {
  auto s = slist::testing::sample_shapes();
  s.resize(5);
  return s;
}

Outcome factorization() {
  Outcome o;
  Rng rng(1001);
  for (int t = 0; t < 1000 && o.ok; ++t) {
    std::size_t A = uniform(rng, 0, 6), X = uniform(rng, 0, 6);
    Listing u = slist::testing::random_listing(rng, A, X, 4);
    auto f = perfect_factorize(u);
    if (!(compose(f.func, f.perfect) == u)) o.fail("composite differs from input");
    if (!is_perfect(f.perfect) || !f.func.is_function()) o.fail("factors have the wrong kind");
    std::size_t m = f.middle.size();
    std::vector<Index> sigma(m);
    for (Index i = 0; i < m; ++i) sigma[i] = i;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Seq> p2(A);
    std::vector<Index> f2(m);
    for (Index a = 0; a < A; ++a)
      for (Index x : f.perfect(a)) p2[a].push_back(sigma[x]);
    for (Index x = 0; x < m; ++x) f2[sigma[x]] = f.func(x)[0];
    auto found = middle_bijection(u, Listing(A, m, p2), Listing::from_function(f2, X));
    if (!found || *found != sigma) o.fail("middle bijection not recovered");
  }
  return o;
}

Outcome split_pack() {
  Outcome o;
  Rng rng(1002);
  for (int t = 0; t < 500 && o.ok; ++t) {
    auto mg = slist::testing::random_multigraph(rng, 5, 6, 3);
    std::vector<OperationVector> vs;
    std::size_t rows = uniform(rng, 1, 4);
    for (std::size_t r = 0; r < rows; ++r)
      vs.push_back(term_to_vector(mg, slist::testing::random_term(rng, mg, uniform(rng, 0, 4), 3)));
    auto m = pack(mg, vs);
    check_matrix(mg, m);
    auto back = split(m);
    if (back.size() != vs.size()) {
      o.fail("row count changed");
      break;
    }
    for (std::size_t r = 0; r < rows; ++r)
      if (!(vector_to_term(mg, back[r]) == vector_to_term(mg, vs[r]))) o.fail("split after pack moved a row");
    if (matrix_terms(mg, pack(mg, back)) != matrix_terms(mg, m)) o.fail("pack after split changed the matrix");
  }
  return o;
}

Outcome ou_soundness() {
  Outcome o;
  Rng rng(1003);
  std::size_t legal = 0;
  while (legal < 1000 && o.ok) {
    auto mg = slist::testing::random_multigraph(rng, 5, 6, 3);
    auto term = slist::testing::random_term(rng, mg, uniform(rng, 0, 4), 4);
    auto v = term_to_vector(mg, term);
    for (int s = 0; s < 5 && legal < 1000; ++s) {
      bool done = uniform(rng, 0, 1) ? slist::testing::rewrite_ou(rng, mg, v) : slist::testing::rewrite_u(rng, mg, v);
      if (!done) continue;
      ++legal;
      if (!slist::testing::composable(mg, v)) o.fail("rewrite left a non-composable vector");
      else if (!(vector_to_term(mg, v) == term)) o.fail("rewrite changed the term");
    }
  }
  return o;
}

Outcome t_alpha_enumeration() {
  Outcome o;
  auto mg = slist::testing::two_level_multigraph();
  auto F = free_operad(mg).operad;
  if (F.ops.size() != 11) o.fail(std::to_string(F.ops.size()) + " operations");
  for (const std::string want : {"g(f1(1_a1),f2(1_a2))", "g(f1(1_a1),1_b2)", "g(1_b1,f2(1_a2))"}) {
    bool seen = false;
    for (const auto& p : F.ops) seen = seen || p.label == want;
    if (!seen) o.fail("missing " + want);
  }
  auto T = build_T_alpha(LeveledShape::from_values({2, 2, 1}, {{0, 1}, {0, 0}}));
  if (T.operad().ops.size() != 11) o.fail("T_alpha has " + std::to_string(T.operad().ops.size()) + " operations");
  OperationVector v{{3, 1}, {0, 6}, {2}}, w{{0, 1}, {2}};
  if (!ou_equivalent(mg, v, w)) o.fail("OU pair not identified");
  return o;
}

Outcome nerve_round_trip() {
  Outcome o;
  auto shapes = small_rooted();
  if (shapes.size() < 20) o.fail("only " + std::to_string(shapes.size()) + " shapes");
  for (const auto& a : shapes) {
    auto T = build_T_alpha(a);
    std::size_t B = slist::testing::complete_bound(T);
    auto N = nerve(T.operad(), 3, B);
    auto R = realize_operad(N.X);
    auto phi = canonical_matching(N, R);
    if (!phi) {
      o.fail("no isomorphism for " + shape_key(a));
      continue;
    }
    auto NR = nerve(R, 3, B);
    for (std::size_t n = 0; n <= 3; ++n)
      if (NR.X.size(n) != N.X.size(n)) o.fail("degree " + std::to_string(n) + " differs for " + shape_key(a));
    auto m = transport_nerve(NR, N, *phi);
    if (!m || !is_morphism(*m, NR.X, N.X)) o.fail("carriers not matched for " + shape_key(a));
  }
  if (o.ok) o.detail = std::to_string(shapes.size()) + " shapes";
  return o;
}

Outcome envelope() {
  Outcome o;
  std::vector<std::pair<std::string, FiniteOperad>> ops{{"assoc", assoc_operad(2)},
                                                        {"hom{a,b}", hom_operad({"a", "b"}, 2)}};
  for (const auto& a : five_shapes()) ops.emplace_back(shape_key(a), build_T_alpha(a).operad());
  for (const auto& [name, P] : ops)
    for (std::size_t n = 0; n <= 2; ++n) {
      auto r = check_envelope_iso(P, n, 2);
      if (!r.bijective || r.lists != r.chains) o.fail(name + " at degree " + std::to_string(n));
    }
  return o;
}

Outcome quasi() {
  Outcome o;
  auto bad = [](const std::vector<HornReport>& rs) {
    for (const auto& r : rs)
      if (r.unfilled || r.multiply_filled) return true;
    return false;
  };
  for (const auto& a : slist::testing::sample_shapes()) {
    auto T = build_T_alpha(a);
    auto N = nerve(T.operad(), 3, slist::testing::complete_bound(T));
    if (bad(is_quasi_operad(N.X, 2, 3))) o.fail("nerve of T_alpha on " + shape_key(a));
  }
  auto W = operad_from_json(load_document(sample("walking_arrow.json")));
  if (bad(is_quasi_operad(nerve(W.P, 3, 1).X, 2, 3))) o.fail("nerve of the walking arrow");
  auto U = build_U_alpha(LeveledShape::from_values({2, 2, 1}, {{0, 1}, {0, 0}}), 3);
  auto rs = is_quasi_operad(U.X, 2, 3);
  std::string where;
  for (const auto& r : rs)
    if (r.unfilled && where.empty()) where = r.first_unfilled;
  if (where.rfind("horn ", 0) != 0) o.fail("U_alpha passed or the missing horn was not located");
  if (o.ok) o.detail = "U_alpha: " + where;
  return o;
}

Outcome homology_suite() {
  Outcome o;
  for (const auto& a : five_shapes()) {
    auto T = build_T_alpha(a);
    auto N = nerve(T.operad(), 4, slist::testing::complete_bound(T));
    auto expect = [&](const std::vector<HomologyGroup>& hs, std::size_t top, const std::string& what, bool h0) {
      if (hs.size() <= top) o.fail(what + ": only " + std::to_string(hs.size()) + " degrees");
      for (const auto& h : hs) {
        if (h.degree > top) continue;
        std::size_t r = h.degree == 0 && h0 ? a.size(0) : 0;
        if (h.free_rank != r || !h.torsion.empty()) o.fail(what + " H" + std::to_string(h.degree) + " = " + h.render());
      }
    };
    expect(homology_all(chain_complex(N.X)), 3, "nerve of " + shape_key(a), true);
    expect(homology_all(chain_complex(build_U_alpha(a, 4).X)), 3, "U_alpha on " + shape_key(a), true);
    auto Q = relative_quotient(N.X, representable_image(N, T));
    expect(homology_all(chain_complex(Q)), 2, "quotient for " + shape_key(a), false);
  }
  return o;
}

Outcome contractions() {
  Outcome o;
  for (const auto& a : five_shapes()) {
    auto r = verify_thick_contraction(build_thick(a, 2, 3), build_U_alpha(a, 2));
    if (!r.ok()) o.fail(render_report(r));
    auto T = build_T_alpha(a);
    auto n = verify_nerve_contraction(nerve(T.operad(), 3, slist::testing::complete_bound(T)), T);
    if (!n.ok()) o.fail(render_report(n));
  }
  auto r = verify_rooted_contraction(500, 20261018);
  if (!r.ok()) o.fail(render_report(r));
  return o;
}

Outcome thick_counts() {
  Outcome o;
  for (const auto& a : five_shapes()) {
    auto T = build_thick(a, 2, 2);
    for (std::size_t k = 0; k <= 2; ++k)
      for (std::size_t m = 0; m <= 2; ++m)
        if (T.size(k, m) != slist::testing::thick_oracle(a, k, m))
          o.fail(shape_key(a) + " at " + std::to_string(k) + "," + std::to_string(m));
  }
  if (mapping_space(3, 0, 3, 0).size() != 4) o.fail("CDelta^3(0,3) does not have 4 vertices");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::vector<std::string>> cmds{
      {"verify-contraction", "--target", "assoc", "--samples", "200", "--seed", "42", "--format", "machine"},
      {"nerve", "--input", sample("assoc3.json"), "--format", "machine"},
      {"homology", "--input", sample("two_level_t_alpha.json"), "--relative", sample("two_level_shape.json")},
      {"check-quasi", "--input", sample("two_level_shape.json")},
      {"factor", "--input", sample("intro_listing.json")}};
  for (const auto& c : cmds) {
    std::string first;
    int code0 = 0;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out, err;
      int code = slist::cli::run(c, out, err);
      if (rep == 0) {
        first = out.str();
        code0 = code;
      } else if (out.str() != first || code != code0) {
        o.fail(c[0] + " differs between runs");
      }
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> body;
  };
  std::vector<Criterion> cs{
      {1, "factorization", 5, factorization},
      {2, "split-pack", 5, split_pack},
      {3, "OU soundness", 10, ou_soundness},
      {4, "T_alpha enumeration", 1, t_alpha_enumeration},
      {5, "nerve round trip", 60, nerve_round_trip},
      {6, "envelope", 60, envelope},
      {7, "quasi-operads", 30, quasi},
      {8, "homology", 120, homology_suite},
      {9, "contractions", 60, contractions},
      {10, "thickening counts", 30, thick_counts},
      {11, "CLI determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && s >= c.limit) o.fail("over the " + std::to_string(static_cast<int>(c.limit)) + " s limit");
    failed += !o.ok;
    std::printf("%s %2d %-20s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, o.detail.empty() ? "" : "  ",
                o.detail.c_str());
  }
  return failed ? 1 : 0;
}
