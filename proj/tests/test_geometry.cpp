#include <cmath>
#include <random>

#include "blowup/errors.hpp"
#include "blowup/geometry.hpp"
#include "blowup/nonlinearity.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blowup;

TEST_CASE("physical profile values") {
  CHECK(profile_physical(0.0, 1e-9, 1.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(profile_physical(0.0, 1.0, 1.0).value - 1.2309594173407747) < 1e-14);
  // self-similarity
  const double lhs = profile_physical(0.5, 0.25, 1.0).value;
  const double rhs = profile_physical(0.0, 0.5, 1.0).value / 0.5;
  CHECK(std::abs(lhs - rhs) < 1e-14);
  CHECK_THROWS_AS(profile_physical(1.0, 0.1, 1.0), Error);
  // scaling under T -> 2T, (t,r) -> (2t,2r)
  CHECK(std::abs(profile_physical(0.6, 0.8, 2.0).value - 0.5 * profile_physical(0.3, 0.4, 1.0).value) < 1e-14);
}

TEST_CASE("physical profile derivatives against finite differences") {
  for (double r : {1e-5, 0.01, 0.3, 1.0, 1.7}) {
    const double h = 1e-5;
    const double fd = (profile_physical(0.2, r + h, 1.1).value - profile_physical(0.2, r - h, 1.1).value) / (2 * h);
    CHECK(std::abs(profile_physical(0.2, r, 1.1).deriv - fd) < 1e-8);
    const double fdt = (profile_physical(0.2 + h, r, 1.1).value - profile_physical(0.2 - h, r, 1.1).value) / (2 * h);
    CHECK(std::abs(profile_physical_dt(0.2, r, 1.1) - fdt) < 1e-8);
  }
}

TEST_CASE("similarity profile") {
  auto p0 = profile_similarity(0.0);
  CHECK(std::abs(p0.psi1 - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(p0.psi2 - std::sqrt(2.0)) < 1e-15);
  auto p1 = profile_similarity(1.0);
  CHECK(std::abs(p1.psi1 - 1.2309594173407747) < 1e-14);
  CHECK(std::abs(p1.psi2 - 2.0 * std::sqrt(2.0) / 3.0) < 1e-15);
  for (double r : {0.0, 1e-4, 2e-3, 0.1, 0.5, 0.9, 1.0}) {
    auto p = profile_similarity(r);
    CHECK(std::abs(p.psi2 - (p.psi1 + r * profile_similarity_d1(r))) < 1e-12);
  }
}

TEST_CASE("gauge mode values and spectral ODE at lambda = 1") {
  CHECK(gauge_mode(0.0).psi1 == doctest::Approx(0.5));
  CHECK(gauge_mode(0.0).psi2 == doctest::Approx(1.0));
  CHECK(gauge_mode(1.0).psi1 == doctest::Approx(1.0 / 3.0));
  CHECK(gauge_mode(1.0).psi2 == doctest::Approx(4.0 / 9.0));
  CHECK(potential_value(0.0) == 12.0);
  CHECK(std::abs(potential_value(1.0) - 16.0 / 3.0) < 1e-15);
  // -(1-r^2)u'' + (6r - 5/r)u' + (6 - 48/(r^2+2)^2) u = 0 for u = 1/(2+r^2)
  for (double r = 0.05; r < 1.0; r += 0.05) {
    const double q = 2.0 + r * r;
    const double u = 1.0 / q, up = -2.0 * r / (q * q), upp = -2.0 / (q * q) + 8.0 * r * r / (q * q * q);
    const double res = -(1 - r * r) * upp + (6 * r - 5 / r) * up + (6.0 - potential_value(r)) * u;
    CHECK(std::abs(res) < 1e-10);
  }
}

TEST_CASE("similarity coordinates") {
  auto s = to_similarity(0.0, 0.0, 1.0);
  CHECK(s.tau == 0.0);
  CHECK(s.rho == 0.0);
  const double t = 1.0 - std::exp(-1.0);
  s = to_similarity(t, 0.5 * std::exp(-1.0), 1.0);
  CHECK(std::abs(s.tau - 1.0) < 1e-14);
  CHECK(std::abs(s.rho - 0.5) < 1e-14);
  CHECK_THROWS_AS(to_similarity(0.5, 0.6, 1.0), Error);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double T = 0.5 + U(rng);
    const double tt = 0.99 * T * U(rng);
    const double r = (T - tt) * U(rng);
    auto q = to_similarity(tt, r, T);
    auto back = from_similarity(q.tau, q.rho, T);
    worst = std::max({worst, std::abs(back.t - tt), std::abs(back.r - r)});
  }
  CHECK(worst < 1e-14);
  try {
    to_similarity(0.0, 2.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideCone);
  }
}

TEST_CASE("blowup parameter range") {
  CHECK_NOTHROW(BlowupParam{1.0}.validate());
  CHECK_THROWS_AS(BlowupParam{1.6}.validate(), Error);
}

TEST_CASE("corotational lift and reduction") {
  auto zero = sample_corotational([](double) { return 0.0; }, [](double) { return 0.0; }, 16);
  auto lz = lift_corotational(zero);
  for (int i = 0; i < 16; ++i) {
    CHECK(lz.F(i, 4) == 1.0);
    CHECK(lz.F.row(i).head(4).norm() == 0.0);
    CHECK(lz.G.row(i).norm() == 0.0);
  }
  // F_* at |xi| = 1
  CHECK(std::abs(sphere_profile(1.0)(4) - 1.0 / 3.0) < 1e-15);
  auto prof = profile_data(1.0, 32);
  auto lp = lift_corotational(prof);
  const double r_target = 1.0;
  // the node at radius 1 is not a sample point of the 1.1-ball; compare through the profile
  const double th = r_target * profile_physical(0.0, r_target, 1.0).value;
  CHECK(std::abs(std::cos(th) - 1.0 / 3.0) < 1e-14);
  for (int i = 0; i < 32; ++i) {
    const double xi = prof.R() * prof.grid->nodes(i);
    CHECK(std::abs(lp.F(i, 4) - sphere_profile(xi)(4)) < 1e-13);
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0, sphere = 0.0, tangent = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double a = 0.6 * U(rng), b = 0.3 * U(rng), c = U(rng), d = U(rng);
    auto data = sample_corotational([=](double r) { return a + b * r * r; }, [=](double r) { return c + d * r * r; }, 24);
    data.validate();
    auto lifted = lift_corotational(data);
    for (int i = 0; i < 24; ++i) {
      sphere = std::max(sphere, std::abs(lifted.F.row(i).squaredNorm() - 1.0));
      tangent = std::max(tangent, std::abs(lifted.F.row(i).dot(lifted.G.row(i))));
    }
    auto back = reduce_corotational(lifted);
    worst = std::max({worst, (back.f - data.f).cwiseAbs().maxCoeff(), (back.g - data.g).cwiseAbs().maxCoeff()});
  }
  CHECK(sphere < 1e-12);
  CHECK(tangent < 1e-12);
  CHECK(worst < 1e-12);

  auto bad = sample_corotational([](double) { return 1.6; }, [](double) { return 0.0; }, 16);
  CHECK_THROWS_AS(bad.validate(), Error);
  // a map reaching the equator cannot be reduced
  SphereData eq = lz;
  eq.F(5, 4) = 0.0;
  eq.F(5, 0) = 1.0;
  try {
    reduce_corotational(eq);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReductionDomain);
  }
}

TEST_CASE("nonlinearity values") {
  CHECK(std::abs(nonlinearity(0.0, 1.0) - 2.0) < 1e-15);
  CHECK(std::abs(nonlinearity(1e-9, 1.0) - 2.0) < 1e-15);
  const double direct = -(3.0 * std::sin(0.6) - 1.8) / (2.0 * 0.027);
  CHECK(std::abs(nonlinearity(0.3, 1.0) - direct) < 1e-14);
  // the quoted 7-digit value agrees with the closed form to its last digit
  CHECK(std::abs(nonlinearity(0.3, 1.0) - 1.9643075) < 1e-6);
  for (double r : {0.0, 0.2, 1.0}) CHECK(nonlinearity(r, 0.0) == 0.0);
  // series branch against the closed form where both are accurate
  for (double r : {0.05, 0.1, 0.2}) {
    const double u = 1.1;
    const double h = 2 * r * u;
    const double closed = -(3.0 * std::sin(h) - 3.0 * h) / (2.0 * r * r * r);
    CHECK(std::abs(nonlinearity(r, u) - closed) < 1e-9);
    const double series = 2 * std::pow(u, 3) - 0.4 * r * r * std::pow(u, 5) + 4.0 / 105.0 * std::pow(r, 4) * std::pow(u, 7);
    CHECK(std::abs(nonlinearity(r, u) - series) < 1e-6);
  }
}

TEST_CASE("perturbation nonlinearity is the Taylor remainder") {
  // n = N(psi+x) - N(psi) - V x, computed here in long double
  for (double r : {0.0, 0.01, 0.3, 0.7, 1.0}) {
    const double psi = profile_similarity(r).psi1;
    for (double x : {1e-3, -0.05, 0.4}) {
      long double ref;
      if (r == 0.0) {
        ref = 6.0L * std::sqrt(2.0L) * x * x + 2.0L * x * x * x;
      } else {
        auto N = [r](long double u) {
          const long double h = 2.0L * r * u;
          return -(3.0L * std::sin(h) - 3.0L * h) / (2.0L * r * r * r);
        };
        ref = N(psi + (long double)x) - N(psi) - (long double)potential_value(r) * x;
      }
      CHECK(std::abs(perturbation_nonlinearity(r, x) - (double)ref) < 1e-10 * std::max(1.0, std::abs((double)ref)));
    }
    CHECK(perturbation_nonlinearity(r, 0.0) == 0.0);
  }
}
