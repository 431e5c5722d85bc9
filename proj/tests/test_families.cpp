#include <doctest.h>

#include <cmath>
#include <numbers>

#include "permutangle/error.hpp"
#include "permutangle/families.hpp"
#include "permutangle/measures.hpp"
#include "permutangle/state.hpp"

using namespace permutangle;

namespace {

DensityMatrix dm(const FamilySpec& s) { return std::get<DensityMatrix>(make_state(s)); }

double closed(const FamilySpec& s, const std::string& key) { return closed_form_measures(s).at(key); }

// tau on the canonical family with C12 and C13 held fixed by construction.
// The |100> amplitude z enters as (|z|, arg z), so both of its real coordinates can be varied.
double tau_on_manifold(double l0, Complex z, double c12, double c13, double* got_c12 = nullptr,
                       double* got_c13 = nullptr) {
  CanonicalParams p;
  const double l1 = std::abs(z);
  p.lambda[0] = l0;
  p.lambda[1] = l1;
  p.lambda[2] = c13 / (2 * l0);
  p.lambda[3] = c12 / (2 * l0);
  const double rest = 1 - l0 * l0 - l1 * l1 - p.lambda[2] * p.lambda[2] - p.lambda[3] * p.lambda[3];
  p.lambda[4] = std::sqrt(rest);
  p.theta = std::arg(z);
  const PureState psi = canonical_state(p);
  if (got_c12) *got_c12 = concurrence(reduce(psi, {0, 1}));
  if (got_c13) *got_c13 = concurrence(reduce(psi, {0, 2}));
  return three_tangle(psi);
}

}  // namespace

TEST_CASE("family catalogue") {
  const auto& tags = family_tags();
  CHECK(tags.size() == 13);
  CHECK_THROWS_AS(make_state({"nope", {}}), DomainError);
  CHECK_THROWS_AS(make_state({"werner", {}}), DomainError);
  CHECK_THROWS_AS(make_state({"werner", {{"p", 0.5}, {"q", 1.0}}}), DomainError);
  CHECK_THROWS_AS(make_state({"werner", {{"p", 1.5}}}), DomainError);
  CHECK_THROWS_AS(make_state({"mems2", {{"c", 0.9}}}), DomainError);
  CHECK_THROWS_AS(make_state({"bell_diagonal", {{"p1", 0.5}, {"p2", 0.5}, {"p3", 0.5}, {"p4", 0.0}}}), DomainError);
  CHECK_THROWS_AS(make_state({"x_state", {{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"d", 0.25}, {"w_re", 0.3}}}),
                  DomainError);
  CHECK_THROWS_AS(make_state({"m3ts_general", {{"c12", 0.8}, {"c13", 0.8}}}), DomainError);
  CHECK_THROWS_AS(make_state({"ansatz2", {{"alpha", 0.5}}}), DomainError);
}

TEST_CASE("constructor examples") {
  CHECK(max_abs_diff(dm({"werner", {{"p", 1.0}}}).matrix(), DensityMatrix::from_pure(bell::phi_plus()).matrix()) <=
        1e-15);
  CHECK(max_abs_diff(dm({"werner", {{"p", 1.0}, {"fiducial", 1.0}}}).matrix(),
                     DensityMatrix::from_pure(bell::psi_minus()).matrix()) <= 1e-15);

  const PureState m = std::get<PureState>(make_state({"m3ts", {{"c12", 1.0}}}));
  const double h = 1 / std::numbers::sqrt2;
  const Complex want[8] = {h, 0, 0, 0, 0, 0, h, 0};
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(m[k] - want[k]) <= 1e-15);

  const double c = 2.0 / 3.0;
  const ComplexMatrix mems{{c / 2, 0, 0, c / 2}, {0, 1 - c, 0, 0}, {0, 0, 0, 0}, {c / 2, 0, 0, c / 2}};
  CHECK(max_abs_diff(dm({"mems1", {{"c", c}}}).matrix(), mems) <= 1e-15);

  const DensityMatrix a2 = dm({"ansatz2", {{"alpha", 1.0 / 3.0}}});
  CHECK(std::abs(a2(0, 0) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(a2(1, 1) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(a2(3, 3) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(a2(0, 3)) <= 1e-7);  // beta - gamma vanishes at the branch point
}

TEST_CASE("closed-form examples") {
  const FamilySpec w{"werner", {{"p", 0.5}}};
  CHECK(std::abs(closed(w, "c12") - 0.25) <= 1e-12);
  CHECK(std::abs(closed(w, "n12") - 0.25) <= 1e-12);
  CHECK(std::abs(closed(w, "r12") - 0.5946035575) <= 1e-10);

  const FamilySpec m{"m3ts", {{"c12", 0.6}}};
  const MeasureMap cm = closed_form_measures(m);
  CHECK(std::abs(cm.at("c12") - 0.6) <= 1e-12);
  CHECK(std::abs(cm.at("r12") - 0.7745966692) <= 1e-10);
  CHECK(std::abs(cm.at("tau") - 0.64) <= 1e-12);
  CHECK(std::abs(cm.at("n12") - 0.6) <= 1e-12);
  for (const char* k : {"c13", "c23", "r13", "r23"}) CHECK(cm.at(k) == 0.0);

  const FamilySpec a{"ansatz1", {{"p", 1.0 / 3.0}}};
  CHECK(closed(a, "c12") == 0.0);
  CHECK(std::abs(closed(a, "r12") - 0.4386913376) <= 1e-10);

  const FamilySpec b{"ansatz2", {{"alpha", 0.0}}};
  CHECK(std::abs(closed(b, "r12") - 1.0) <= 1e-12);
  CHECK(std::abs(closed(b, "n12") - 1.0) <= 1e-12);
}

TEST_CASE("closed forms agree with numeric measures on random parameters") {
  for (const std::string& family : family_tags()) {
    CAPTURE(family);
    double worst = 0;
    std::size_t compared = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng(7, i);
      const FamilySpec s = random_spec(family, rng);
      const MeasureMap cf = closed_form_measures(s);
      const MeasureMap nm = numeric_measures(make_state(s));
      for (const auto& [k, v] : cf) {
        if (!nm.count(k)) continue;
        worst = std::max(worst, std::abs(nm.at(k) - v));
        ++compared;
      }
    }
    CHECK(compared > 0);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("closed-form m3ts maximality on Haar samples") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(8, i);
    const PureState psi = haar_random_pure({2, 2, 2}, rng);
    const double c = concurrence(reduce(psi, {0, 1}));
    CHECK(three_tangle(psi) <= 1 - c * c + 1e-8);
  }
}

TEST_CASE("generalized m3ts is a stationary maximum of tau at fixed C12, C13") {
  Rng rng(9, 0);
  const double step = 1e-4;
  const double l0 = 1 / std::numbers::sqrt2;
  for (int i = 0; i < 50; ++i) {
    const FamilySpec s = random_spec("m3ts_general", rng);
    const double c12 = s.params.at("c12"), c13 = s.params.at("c13");
    // Keep the expansion point strictly inside the domain.
    if (c12 * c12 + c13 * c13 > 0.95) continue;
    const double t0 = tau_on_manifold(l0, 0.0, c12, c13);
    CHECK(std::abs(t0 - closed(s, "tau")) <= 1e-10);
    CHECK(std::abs(t0 - three_tangle(std::get<PureState>(make_state(s)))) <= 1e-10);

    auto tau_at = [&](double dl, Complex dz) { return tau_on_manifold(l0 + dl, dz, c12, c13); };
    const double g0 = (tau_at(step, 0.0) - tau_at(-step, 0.0)) / (2 * step);
    const double gx = (tau_at(0.0, step) - tau_at(0.0, -step)) / (2 * step);
    const double gy = (tau_at(0.0, Complex(0, step)) - tau_at(0.0, Complex(0, -step))) / (2 * step);
    CHECK(std::sqrt(g0 * g0 + gx * gx + gy * gy) <= 1e-6);

    double a = 0, b = 0;
    CHECK(tau_on_manifold(l0 + 0.01, Complex(0.02, 0.01), c12, c13, &a, &b) <= t0);
    CHECK(std::abs(a - c12) <= 1e-10);
    CHECK(std::abs(b - c13) <= 1e-10);
  }
}

TEST_CASE("m3ts family sits on C = R^2") {
  for (double c : {0.0, 0.1, 0.37, 0.8, 1.0}) {
    const PureState psi = std::get<PureState>(make_state({"m3ts", {{"c12", c}}}));
    const DensityMatrix rho = reduce(psi, {0, 1});
    CHECK(std::abs(concurrence(rho) - r12(rho) * r12(rho)) <= 1e-10);
  }
}

TEST_CASE("MEMS-I purification reduces to MEMS-I") {
  for (double c : {0.0, 0.2, 2.0 / 3.0, 0.9, 1.0}) {
    const PureState psi = std::get<PureState>(make_state({"mems1_purification", {{"c", c}}}));
    const DensityMatrix mems = dm({"mems1", {{"c", c}}});
    CHECK(max_abs_diff(reduce(psi, {1, 0}).matrix(), mems.matrix()) <= 1e-10);
    CHECK(std::abs(three_tangle(psi)) <= 1e-12);
  }
}

TEST_CASE("optimised ansatz-II lies on the rank-3 negativity curve") {
  for (int k = 0; k <= 100; ++k) {
    const double alpha = k / 300.0;
    const DensityMatrix rho = dm({"ansatz2", {{"alpha", alpha}}});
    const double n = negativity(rho);
    CHECK(std::abs(r12(rho) - std::pow(n, 0.25) * std::pow((2 + n) / 3, 0.75)) <= 1e-10);
  }
}

TEST_CASE("boundary curve examples") {
  const auto lower = boundary_curve("cr_rank2_lower", {0.5});
  CHECK(std::abs(lower[0].y - 0.25) <= 1e-15);
  const auto r3 = boundary_curve("cr_rank3", {1.0});
  CHECK(std::abs(r3[0].x - 1.0) <= 1e-15);
  CHECK(std::abs(r3[0].y - 1.0) <= 1e-15);
  const auto n3 = boundary_curve("nr_rank3", {1.0});
  CHECK(std::abs(n3[0].x - 1.0) <= 1e-15);
  const auto r4 = boundary_curve("cr_rank4", {separable_r12_bound()});
  CHECK(std::abs(r4[0].y) <= 1e-15);
  CHECK_THROWS_AS(boundary_curve("cr_rank4", {1.5}), DomainError);
  CHECK_THROWS_AS(boundary_curve("nope", {0.5}), DomainError);
}

TEST_CASE("boundary curves are traced by their families") {
  // Werner states on the rank-4 curves, ansatz-I on the rank-3 C-R curve, MEMS-I on the rank-2 N-R curve.
  for (double p = 1.0 / 3.0; p <= 1.0; p += 0.05) {
    const DensityMatrix w = dm({"werner", {{"p", p}}});
    const double R = r12(w);
    CHECK(std::abs(boundary_curve("cr_rank4", {R})[0].y - concurrence(w)) <= 1e-10);
    CHECK(std::abs(boundary_curve("nr_rank4", {R})[0].y - negativity(w)) <= 1e-10);
  }
  for (double c : {0.1, 0.5, 0.9}) {
    const DensityMatrix m = dm({"mems1", {{"c", c}}});
    CHECK(std::abs(boundary_curve("nr_rank2_lower", {r12(m)})[0].y - negativity(m)) <= 1e-10);
  }
  // Ansatz-I: the horizontal segment C = 0 up to p = 1/2, then the rank-3 curve.
  for (double p = 0.0; p <= 0.5; p += 0.05) CHECK(r12(dm({"ansatz1", {{"p", p}}})) <= separable_r12_bound() + 1e-12);
  for (double p = 0.55; p <= 1.0; p += 0.05) {
    const DensityMatrix a = dm({"ansatz1", {{"p", p}}});
    const auto pt = boundary_curve("cr_rank3", {concurrence(a)})[0];
    CHECK(std::abs(pt.x - r12(a)) <= 1e-10);
  }
}

TEST_CASE("default grids cover each curve") {
  for (const CurveInfo& info : curve_catalog()) {
    CAPTURE(info.tag);
    const auto grid = default_grid(info.tag, 512);
    CHECK(grid.size() == 512);
    CHECK(grid.front() == doctest::Approx(info.default_lo));
    CHECK(grid.back() == doctest::Approx(info.default_hi));
    const auto pts = boundary_curve(info.tag, grid);
    CHECK(pts.size() == 512);
    for (const auto& p : pts) {
      CHECK(p.x >= -1e-15);
      CHECK(p.x <= 1 + 1e-15);
      CHECK(p.y >= -1e-15);
      CHECK(p.y <= 1 + 1e-15);
    }
  }
}
