#include <cmath>

#include "doctest.h"
#include "qcon/optimizer.hpp"
#include "qcon/scheme.hpp"

using namespace qcon;

namespace {

WeightedGraph family(const std::string& text) {
  return build_family(parse_family(text));
}

OptimizationResult closed(const std::string& text, Regime r) {
  return closed_form(parse_family(text), r);
}

void check_weights(const OptimizationResult& r, const std::vector<double>& expect,
                   double tol) {
  REQUIRE(r.weights.size() == expect.size());
  for (size_t i = 0; i < expect.size(); i++)
    CHECK(std::fabs(r.weights[i] - (expect[i])) <= tol);
}

}  // namespace

TEST_CASE("regime selection") {
  CHECK(regime_of(3, 2) == Regime::AtMostDSquared);
  CHECK(regime_of(4, 2) == Regime::AtMostDSquared);
  CHECK(regime_of(5, 2) == Regime::DSquaredPlusOne);
  CHECK(regime_of(6, 2) == Regime::General);
  CHECK(regime_of(9, 3) == Regime::AtMostDSquared);
  CHECK(regime_of(10, 3) == Regime::DSquaredPlusOne);
  CHECK_THROWS_AS(regime_of(1, 2), invalid_argument);
  CHECK_THROWS_AS(regime_of(4, 1), invalid_argument);
}

TEST_CASE("least dominant feasible partition is balanced") {
  CHECK(least_dominant_feasible(6, 2) == Partition({2, 2, 1, 1}));
  CHECK(least_dominant_feasible(7, 2) == Partition({2, 2, 2, 1}));
  CHECK(least_dominant_feasible(8, 2) == Partition({2, 2, 2, 2}));
  CHECK(least_dominant_feasible(5, 2) == Partition({2, 1, 1, 1}));
  CHECK(least_dominant_feasible(3, 2) == Partition({1, 1, 1}));
}

TEST_CASE("closed forms: base families, both regimes") {
  OptimizationResult r = closed("complete(5)", Regime::AtMostDSquared);
  CHECK(r.slem == doctest::Approx(0.6).epsilon(1e-14));
  check_weights(r, {2.0 / 25}, 1e-14);
  r = closed("complete(5)", Regime::DSquaredPlusOne);
  CHECK(r.slem == doctest::Approx(0.5).epsilon(1e-14));
  check_weights(r, {0.1}, 1e-14);

  double c = std::cos(2 * M_PI / 5);
  r = closed("cycle(5)", Regime::AtMostDSquared);
  CHECK(r.slem == doctest::Approx((5 - 1 + c) / (5 + 1 - c)).epsilon(1e-14));
  check_weights(r, {1.0 / (5 + 1 - c)}, 1e-14);
  r = closed("cycle(5)", Regime::DSquaredPlusOne);
  CHECK(r.slem == doctest::Approx(1 - 2 * (1 - c) / 5).epsilon(1e-14));
  check_weights(r, {0.2}, 1e-14);

  r = closed("star(5)", Regime::AtMostDSquared);
  CHECK(r.slem == doctest::Approx(7.0 / 9).epsilon(1e-14));
  check_weights(r, {2.0 / 9}, 1e-14);
  r = closed("star(5)", Regime::DSquaredPlusOne);
  CHECK(r.slem == doctest::Approx(0.75).epsilon(1e-14));
  check_weights(r, {0.25}, 1e-14);
}

TEST_CASE("closed forms: frozen family samples") {
  double s3 = std::sqrt(3.0);
  OptimizationResult paw = closed("paw", Regime::AtMostDSquared);
  CHECK(paw.slem == doctest::Approx((6 + s3) / 11).epsilon(1e-14));
  check_weights(paw, {(9 - 4 * s3) / 66, (6 + s3) / 33, (6 + s3) / 22}, 1e-13);

  OptimizationResult cc = closed("coupled_complete(1,2,1)", Regime::AtMostDSquared);
  CHECK(cc.slem == doctest::Approx(0.6).epsilon(1e-14));
  check_weights(cc, {0.2, 0.0, 0.2}, 1e-14);

  OptimizationResult cc131 = closed("coupled_complete(1,3,1)", Regime::AtMostDSquared);
  CHECK(cc131.slem == doctest::Approx(11.0 / 17).epsilon(1e-14));
  check_weights(cc131, {2.0 / 17, 2.0 / 51, 2.0 / 17}, 1e-14);

  OptimizationResult cc232 = closed("coupled_complete(2,3,2)", Regime::AtMostDSquared);
  CHECK(cc232.slem == doctest::Approx(7.0 / 9).epsilon(1e-14));
  REQUIRE(cc232.weights.size() == 5);
  CHECK(cc232.weights[1] == doctest::Approx(2.0 / 27).epsilon(1e-14));
  CHECK(cc232.weights[2] == doctest::Approx(0.0));
  CHECK(cc232.weights[3] == doctest::Approx(2.0 / 27).epsilon(1e-14));

  OptimizationResult palm42 = closed("palm(4,2)", Regime::AtMostDSquared);
  CHECK(palm42.slem == doctest::Approx(17.0 / 19).epsilon(1e-14));
  check_weights(palm42, {2.0 / 19, 6.0 / 19, 4.0 / 19}, 1e-14);

  OptimizationResult palm22 = closed("palm(2,2)", Regime::AtMostDSquared);
  CHECK(palm22.slem == doctest::Approx(63.0 / 73).epsilon(1e-14));
  check_weights(palm22, {12.0 / 73, 26.0 / 73, 18.0 / 73}, 1e-14);

  OptimizationResult ss = closed("symmetric_star(5,2)", Regime::AtMostDSquared);
  CHECK(ss.slem == doctest::Approx(49.0 / 51).epsilon(1e-14));
  check_weights(ss, {18.0 / 153, 12.0 / 153}, 1e-14);

  double s12 = std::sqrt(12.0);
  double alpha = 3 * 2 * 3 + 3 * s12 * 6 + 3 * 2 * 3 * 5;
  OptimizationResult cs = closed("ccs_star(3,2)", Regime::AtMostDSquared);
  CHECK(cs.slem == doctest::Approx((alpha - 3) / (alpha + 3)).epsilon(1e-13));
  check_weights(cs,
                {3 * 3 * (4 + 2 * s12) / (6 * (alpha + 3)),
                 3 * 2 * (s12 + 9) / (3 * (alpha + 3)),
                 3 * 1 * (s12 + 12) / (3 * (alpha + 3))},
                1e-13);

  double s10 = std::sqrt(10.0);
  OptimizationResult lp = closed("lollipop(4,2)", Regime::AtMostDSquared);
  double At = 528 + 72 * s10;
  CHECK(lp.slem == doctest::Approx((At - 42) / (At + 42)).epsilon(1e-13));

  OptimizationResult c2 = closed("ccs_star2(5,1,2)", Regime::AtMostDSquared);
  double A = 228 + 48 * s10;
  CHECK(c2.slem == doctest::Approx((A - 3) / (A + 3)).epsilon(1e-13));

  OptimizationResult pr = closed("prism(3,2)", Regime::AtMostDSquared);
  CHECK(pr.slem == doctest::Approx(0.75).epsilon(1e-14));
  check_weights(pr, {1.0 / 12, 1.0 / 8}, 1e-13);
}

TEST_CASE("closed-form path reductions and edge cases") {
  OptimizationResult p2 = closed("path(2)", Regime::AtMostDSquared);
  CHECK(p2.slem == doctest::Approx(0.0));
  check_weights(p2, {0.5}, 1e-14);
  CHECK_THROWS_AS(closed("path(2)", Regime::DSquaredPlusOne), not_implemented);

  OptimizationResult p5 = closed("path(5)", Regime::AtMostDSquared);
  OptimizationResult ss22 = closed("symmetric_star(2,2)", Regime::AtMostDSquared);
  CHECK(p5.slem == doctest::Approx(ss22.slem).epsilon(1e-14));
  OptimizationResult p6 = closed("path(6)", Regime::AtMostDSquared);
  OptimizationResult cs22 = closed("ccs_star(2,2)", Regime::AtMostDSquared);
  CHECK(p6.slem == doctest::Approx(cs22.slem).epsilon(1e-14));

  CHECK_THROWS_AS(closed("coupled_complete(1,3,2)", Regime::AtMostDSquared),
                  not_implemented);
  CHECK_THROWS_AS(closed("paw", Regime::General), not_implemented);
  CHECK_THROWS_AS(closed("paw", Regime::Classical), not_implemented);
}

TEST_CASE("exact closed-form identities") {
  OptimizationResult c3 = closed("cycle(3)", Regime::AtMostDSquared);
  OptimizationResult k3 = closed("complete(3)", Regime::AtMostDSquared);
  CHECK(std::fabs(c3.slem - k3.slem) <= 1e-10);
  CHECK(std::fabs(c3.weights[0] - k3.weights[0]) <= 1e-10);

  OptimizationResult ccs21 = closed("ccs_star(2,1)", Regime::AtMostDSquared);
  CHECK(std::fabs(ccs21.slem - 9.0 / 11) <= 1e-10);
  CHECK(std::fabs(ccs21.weights[0] - 4.0 / 11) <= 1e-10);
  CHECK(std::fabs(ccs21.weights[1] - 3.0 / 11) <= 1e-10);

  OptimizationResult ss21 = closed("symmetric_star(2,1)", Regime::AtMostDSquared);
  CHECK(std::fabs(ss21.slem - 0.6) <= 1e-10);
  CHECK(std::fabs(ss21.weights[0] - 0.4) <= 1e-10);

  OptimizationResult cc = closed("coupled_complete(1,2,1)", Regime::AtMostDSquared);
  OptimizationResult c4 = closed("cycle(4)", Regime::AtMostDSquared);
  CHECK(std::fabs(cc.slem - c4.slem) <= 1e-10);
  CHECK(std::fabs(cc.weights[0] - c4.weights[0]) <= 1e-10);
  CHECK(std::fabs(cc.weights[1] - 0.0) <= 1e-10);
}

TEST_CASE("objective evaluation at known points") {
  Objective obj = objective(family("path(4)"), {4.0 / 11, 3.0 / 11}, 4, 2);
  CHECK(std::fabs(obj.slem - (9.0 / 11)) <= 1e-12);
  obj = objective(family("complete(6)"), {1.0 / 13}, 6, 2);
  CHECK(std::fabs(obj.slem - (7.0 / 13)) <= 1e-10);
  CHECK_THROWS_AS(objective(family("path(4)"), {0.1, 0.1}, 5, 2), invalid_argument);
}

TEST_CASE("generic solver reaches the small closed forms") {
  OptimizationResult p3 = solve_generic(family("path(3)"), 3, 2);
  CHECK(p3.converged);
  CHECK(std::fabs(p3.slem - (0.6)) <= 1e-7);
  CHECK(std::fabs(p3.weights[0] - (0.4)) <= 1e-5);
  CHECK(p3.regime == Regime::AtMostDSquared);

  OptimizationResult k3 = solve_generic(family("complete(3)"), 3, 2);
  CHECK(std::fabs(k3.slem - (1.0 / 3)) <= 1e-7);
  CHECK(std::fabs(k3.weights[0] - (2.0 / 9)) <= 1e-5);

  OptimizationResult p2 = solve_generic(family("path(2)"), 2, 2);
  CHECK(p2.slem <= 1e-7);
  CHECK(std::fabs(p2.weights[0] - (0.5)) <= 1e-5);
}

TEST_CASE("solver handles the equality regime on the unit-weight slice") {
  OptimizationResult r = solve_generic(family("complete(5)"), 5, 2);
  CHECK(r.regime == Regime::DSquaredPlusOne);
  CHECK(r.converged);
  CHECK(std::fabs(r.slem - (0.5)) <= 1e-7);
  CHECK(std::fabs(r.weights[0] - (0.1)) <= 1e-6);
}

TEST_CASE("solver handles the induced-graph regime") {
  OptimizationResult r = solve_generic(family("complete(6)"), 6, 2);
  CHECK(r.regime == Regime::General);
  CHECK(r.converged);
  CHECK(std::fabs(r.slem - (7.0 / 13)) <= 1e-6);
  CHECK(std::fabs(r.weights[0] - (1.0 / 13)) <= 1e-4);
}

TEST_CASE("slem only degrades when fewer blocks are feasible") {
  double general = solve_generic(family("complete(6)"), 6, 2).slem;   // 7/13
  double boundary = solve_generic(family("complete(5)"), 5, 2).slem;  // 1/2
  double inside = solve_generic(family("complete(4)"), 4, 2).slem;    // 1/2
  double classical = solve_classical(family("complete(6)")).slem;     // 0
  CHECK(classical <= inside + 1e-9);
  CHECK(inside <= boundary + 1e-9);
  CHECK(boundary <= general + 1e-9);
}

TEST_CASE("classical consensus weights") {
  OptimizationResult k4 = solve_classical(family("complete(4)"));
  CHECK(k4.slem <= 1e-6);
  CHECK(std::fabs(k4.weights[0] - (0.25)) <= 1e-4);

  OptimizationResult p3 = solve_classical(family("path(3)"));
  CHECK(std::fabs(p3.slem - (0.5)) <= 1e-6);
  CHECK(std::fabs(p3.weights[0] - (0.5)) <= 1e-4);
}

TEST_CASE("solver is deterministic") {
  SolveOptions a, b;
  a.seed = 1;
  b.seed = 99;  // seed is plumbing only; trajectory must match bitwise
  OptimizationResult ra = solve_generic(family("paw"), 4, 2, a);
  OptimizationResult rb = solve_generic(family("paw"), 4, 2, b);
  CHECK(ra.slem == rb.slem);
  CHECK(ra.weights == rb.weights);
  CHECK(ra.iterations == rb.iterations);
}

TEST_CASE("solver flags non-convergence honestly") {
  SolveOptions tight;
  tight.max_iters = 3;
  tight.tol = 1e-14;
  OptimizationResult r = solve_generic(family("paw"), 4, 2, tight);
  CHECK_FALSE(r.converged);
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_generic(WeightedGraph(4, {{0, 1, 0}, {2, 3, 1}}), 4, 2),
                  degenerate_input);
  CHECK_THROWS_AS(solve_regime(family("complete(6)"), Regime::General, 6, 1),
                  invalid_argument);
}

TEST_CASE("cross validation agrees on sampled families") {
  for (const char* text : {"palm(2,2)", "symmetric_star(3,1)", "prism(3,2)"}) {
    for (Regime r : {Regime::AtMostDSquared, Regime::DSquaredPlusOne}) {
      CrossValidation cv = cross_validate(parse_family(text), r);
      CHECK_MESSAGE(cv.pass, text, " dslem=", cv.dslem);
    }
  }
}

TEST_CASE("solver respects the nonnegative-weight boundary") {
  // The interior stationary point of coupled_complete(2,3,2) has a negative
  // bridge weight; the quantum optimum therefore sits on the w0 = 0 face.
  FamilySpec spec = parse_family("coupled_complete(2,3,2)");
  WeightedGraph g = build_family(spec);

  OptimizationResult r1 = solve_regime(g, Regime::AtMostDSquared, 7, 3);
  CHECK(std::fabs(r1.slem - 7.0 / 9) <= 1e-6);
  CHECK(std::fabs(r1.weights[2]) <= 1e-6);       // w0 pinned at zero
  CHECK(std::fabs(r1.weights[1] - 2.0 / 27) <= 1e-5);

  OptimizationResult r2 = solve_regime(g, Regime::DSquaredPlusOne, 7, 3);
  CHECK(std::fabs(r2.slem - 3.0 / 4) <= 1e-6);
  CHECK(std::fabs(r2.weights[2]) <= 1e-6);
  CHECK(std::fabs(r2.weights[1] - 1.0 / 12) <= 1e-5);
}

TEST_CASE("solver survives the near-degenerate lollipop(4,2)") {
  // The clique weight of this family is barely positive at the optimum; the
  // solver must neither stall at the start point nor wander off the cone.
  for (Regime r : {Regime::AtMostDSquared, Regime::DSquaredPlusOne}) {
    CrossValidation cv = cross_validate(parse_family("lollipop(4,2)"), r);
    CHECK_MESSAGE(cv.pass, "lollipop(4,2) dslem=", cv.dslem);
  }
}

TEST_CASE("classical optimum of the triangle barbell") {
  // Two triangles joined by a bridge; by symmetry and direct eigenvalues the
  // optimum is a = 1/3 on clique edges, b = 1/2 on the bridge, and the
  // nontrivial spectrum becomes {1 - sqrt(6)/3, 1, 1, 1, 1 + sqrt(6)/3}.
  WeightedGraph barbell(6, {{0, 1, 0},
                            {0, 2, 0},
                            {1, 2, 0},
                            {3, 4, 1},
                            {3, 5, 1},
                            {4, 5, 1},
                            {2, 3, 2}});
  OptimizationResult r = solve_classical(barbell);
  CHECK(r.converged);
  CHECK(std::fabs(r.slem - std::sqrt(2.0 / 3)) <= 1e-6);
  check_weights(r, {1.0 / 3, 1.0 / 3, 1.0 / 2}, 1e-4);
  // Balanced optimum: both spectral ends meet the objective.
  CHECK(std::fabs((1.0 - r.lambda2) - (r.lambda_max - 1.0)) <= 1e-6);
}
