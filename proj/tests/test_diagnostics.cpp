#include <cmath>
#include <random>

#include "blowup/diagnostics.hpp"
#include "blowup/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blowup;
using testing_helpers::sample_state;

namespace {

ConeTrajectory constant_trajectory(const GridPtr& g, double value, double tau_max, int stamps) {
  ConeTrajectory t;
  for (int k = 0; k <= stamps; ++k) {
    t.taus.push_back(tau_max * k / stamps);
    t.states.push_back(sample_state(g, [=](double) { return value; }, [=](double) { return value; }));
  }
  return t;
}

}  // namespace

TEST_CASE("Strichartz admissibility") {
  CHECK(strichartz_admissible(2.0, 12.0, 0));
  CHECK(strichartz_admissible(INFINITY, 6.0, 0));
  CHECK(strichartz_admissible(3.0, 9.0, 0));
  CHECK_FALSE(strichartz_admissible(2.0, 10.0, 0));
  CHECK(strichartz_admissible(2.0, 4.0, 1));
  CHECK_FALSE(strichartz_admissible(3.0, 4.0, 1));
  CHECK(strichartz_admissible(2.0, 4.0, 0, 2));
  auto g = build_grid(16);
  CHECK_THROWS_AS(strichartz_norm(constant_trajectory(g, 1.0, 1.0, 4), 2.0, 10.0, 0), Error);
}

TEST_CASE("Strichartz norms of simple trajectories") {
  auto g = build_grid(32);
  // sup_tau ||1||_{L^6(rho^5 drho)} = (1/6)^{1/6}
  CHECK(strichartz_norm(constant_trajectory(g, 1.0, 2.0, 8), INFINITY, 6.0, 0) ==
        doctest::Approx(std::pow(6.0, -1.0 / 6.0)).epsilon(1e-10));
  // (int_0^2 ||1||_{L^12}^2 dtau)^{1/2}
  CHECK(strichartz_norm(constant_trajectory(g, 1.0, 2.0, 8), 2.0, 12.0, 0) ==
        doctest::Approx(std::sqrt(2.0) * std::pow(6.0, -1.0 / 12.0)).epsilon(1e-10));
  CHECK(strichartz_norm(constant_trajectory(g, 0.0, 2.0, 8), 2.0, 12.0, 0) == 0.0);
  CHECK(strichartz_norm(constant_trajectory(g, 3.0, 2.0, 8), 2.0, 12.0, 0) ==
        doctest::Approx(3.0 * strichartz_norm(constant_trajectory(g, 1.0, 2.0, 8), 2.0, 12.0, 0)));
  // a constant has no gradient
  CHECK(strichartz_norm(constant_trajectory(g, 1.0, 2.0, 8), 2.0, 4.0, 1) < 1e-10);
}

TEST_CASE("dissipativity of the free generator") {
  auto g = build_grid(32);
  const StatePair c = sample_state(g, [](double) { return 1.0; }, [](double) { return 1.0; });
  CHECK(dissipativity_check(c) == doctest::Approx(-2.0).epsilon(1e-10));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) CHECK(dissipativity_check(random_polynomial_state(rng).sample(g)) <= 1e-10);
}

TEST_CASE("random polynomial states") {
  std::mt19937_64 a(3), b(3);
  const PolynomialState p = random_polynomial_state(a), q = random_polynomial_state(b);
  CHECK(p.c1 == q.c1);
  CHECK(p.c2 == q.c2);
  auto g = build_grid(16);
  const StatePair s = p.sample(g);
  for (int i = 0; i < g->n; ++i) CHECK(std::abs(s.phi1(i) - p.phi1(g->nodes(i))) < 1e-15);
  std::vector<PolynomialState> samples;
  for (int k = 0; k < 20; ++k) samples.push_back(random_polynomial_state(a));
  const NormRatioReport r = norm_ratio_range(samples, build_grid(32));
  CHECK(r.min_ratio > 0.0);
  CHECK(r.min_ratio <= r.max_ratio);
}

TEST_CASE("weighted cone norms") {
  const CorotationalSampler prof = [](double t, double r) { return profile_physical(t, r, 1.0); };
  for (int order : {0, 1}) {
    ConeNormSpec spec;
    spec.order = order;
    if (order == 1) {
      spec.weight_exponent = -1.0 / 2.0;
      spec.q = 4.0;
    }
    CHECK(cone_snapshot_norm(prof, prof, 0.5, 1.0, spec) == 0.0);
    // self-similarity: snapshot norm ~ (T-t)^{-1/2}
    const double a = cone_snapshot_norm(prof, center_sampler(), 0.9, 1.0, spec);
    const double b = cone_snapshot_norm(prof, center_sampler(), 0.99, 1.0, spec);
    CHECK(b / a == doctest::Approx(std::sqrt(10.0)).epsilon(0.02));
  }
  const ConeDivergenceReport d = cone_divergence(1.0, {}, {1e-2, 1e-3, 1e-4});
  CHECK(d.normalized_slope == doctest::Approx(1.0).epsilon(0.02));
  CHECK(d.snapshot_exponent == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("nonlinearity") {
  auto g = build_grid(32);
  const StatePair z(g);
  CHECK(nonlinear_term(z).phi2.cwiseAbs().maxCoeff() == 0.0);
  const StatePair u = sample_state(g, [](double r) { return r * r; }, [](double) { return 0.0; });
  const double q1 = quadratic_scaling_ratio(u, 1e-2), q2 = quadratic_scaling_ratio(u, 1e-3);
  CHECK(std::abs(q1 - q2) < 0.1 * q2);
  const NonlinearityBoundReport r = nonlinearity_bound_report({{z, z}, {cplx(1e-2) * u, cplx(2e-2) * u}});
  CHECK(r.skipped >= 1);
  CHECK(r.used >= 1);
  CHECK(r.bound_constant > 0.0);
}

TEST_CASE("gauge-free bumps") {
  auto g = build_grid(32);
  const Bump raw{[](double r) { return std::exp(-4 * r * r); }, [](double) { return 0.0; }};
  CHECK(std::abs(bump_gauge_amplitude(raw, g)) > 1e-3);
  CHECK(std::abs(bump_gauge_amplitude(gauge_free_bump(raw, g), g)) < 1e-10);
  ScalingOptions opt;
  opt.modulation.n = 24;
  CHECK_THROWS_AS(delta_scaling_experiment(raw, {1e-2}, opt), Error);
  CHECK_THROWS_AS(delta_scaling_experiment(gauge_free_bump(raw, g), {1e-2, 2e-2}, opt), Error);
}

TEST_CASE("4d versus 6d norms") {
  const auto f = [](double r) { return std::exp(-r * r); };
  const auto zero = [](double) { return 0.0; };
  const NormComparison a = norm_comparison_4d_6d(sample_corotational(f, zero, 32));
  const NormComparison b = norm_comparison_4d_6d(sample_corotational(f, zero, 48));
  CHECK(a.ratio > 0.0);
  CHECK(std::abs(a.ratio - b.ratio) < 1e-6 * b.ratio);
  const NormComparison z = norm_comparison_4d_6d(sample_corotational(zero, zero, 32));
  CHECK(z.norm4 == 0.0);
  CHECK(z.norm6 == 0.0);
}
