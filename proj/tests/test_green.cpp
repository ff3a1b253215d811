#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/green.hpp"
#include "blowup/spectrum.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blowup;
using testing_helpers::sample_state;

namespace {

double max_abs(const StatePair& a) { return std::max(a.phi1.cwiseAbs().maxCoeff(), a.phi2.cwiseAbs().maxCoeff()); }

}  // namespace

TEST_CASE("free lambda = 1 Green formula recovers a constructed preimage") {
  auto g = build_grid(48);
  const StatePair u = sample_state(g, [](double r) { return std::cos(r * r); }, [](double r) { return 1.0 + r * r; });
  const OperatorMatrix M0 = assemble_generator(g, false);
  const StatePair f = u - M0.apply(u);
  const StatePair v = lambda1_green(f);
  CHECK(max_abs(v - u) < 1e-8);
  // regularity at the origin: u1'(0) and u1'''(0) vanish
  CHECK(std::abs((g->d1.cast<cplx>() * v.phi1)(0)) < 1e-10);
}

TEST_CASE("Green resolvent against collocation") {
  auto g = build_grid(48);
  const OperatorMatrix M = assemble_generator(g, true);
  const StatePair f = sample_state(g, [](double r) { return std::exp(-r * r); }, [](double r) { return 1.0 / (1.0 + r * r); });
  for (cplx l : {cplx(0.1, 5.0), cplx(0.2, 2.0), cplx(0.05, -7.0), cplx(0.3, 0.0)}) {
    GreenDiagnostics d;
    const StatePair a = green_resolvent(l, f, true, {}, &d);
    CHECK(max_abs(a - resolvent_solve(M, l, f)) < 1e-7);
    CHECK(std::abs(d.c - d.kappa * (f.phi2(g->n - 1) + (l + 2.0) * f.phi1(g->n - 1) +
                                    (g->d1.cast<cplx>() * f.phi1)(g->n - 1))) < 1e-10 * (1.0 + std::abs(d.c)));
  }
}

TEST_CASE("Green resolvent solves the spectral equation") {
  auto g = build_grid(48);
  const cplx l(0.1, 5.0);
  const StatePair f = sample_state(g, [](double r) { return r * r; }, [](double r) { return std::sin(r); });
  const StatePair u = green_resolvent(l, f, true);
  // collocation differentiation amplifies the ~1e-8 pointwise error
  const StatePair r = cplx(l) * u - assemble_generator(g, true).apply(u) - f;
  CHECK(max_abs(r) < 1e-4 * max_abs(f));
}

TEST_CASE("Green resolvent free case and trivial input") {
  auto g = build_grid(32);
  const StatePair f = sample_state(g, [](double r) { return 1.0 - r * r; }, [](double) { return 0.5; });
  const OperatorMatrix M0 = assemble_generator(g, false);
  CHECK(max_abs(green_resolvent(cplx(0.2, 2.0), f, false) - resolvent_solve(M0, cplx(0.2, 2.0), f)) < 1e-8);
  CHECK(max_abs(green_resolvent(cplx(0.2, 2.0), StatePair(g))) == 0.0);
}

TEST_CASE("Green resolvent errors") {
  auto g = build_grid(32);
  const StatePair f = sample_state(g, [](double) { return 1.0; }, [](double) { return 0.0; });
  try {
    green_resolvent(1.0, f, true);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EigenvalueCollision);
  }
  CHECK_THROWS_AS(green_resolvent(cplx(-0.6, 1.0), f), Error);
}
