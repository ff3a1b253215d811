#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/evolution.hpp"
#include "blowup/geometry.hpp"
#include "blowup/modulation.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blowup;
using testing_helpers::sample_state;

namespace {

double max_abs(const StatePair& a) { return std::max(a.phi1.cwiseAbs().maxCoeff(), a.phi2.cwiseAbs().maxCoeff()); }

}  // namespace

TEST_CASE("profile is a static solution") {
  CHECK(profile_residual(32, Precision::double_) < 1e-10);
  CHECK(profile_residual(32, Precision::long_double) < 1e-12);
  // zero perturbation stays zero
  auto g = build_grid(24);
  const ConeTrajectory t = evolve(StatePair(g), 1.0, default_dt(24), EvolutionMode::nonlinear);
  CHECK(max_abs(t.states.back()) == 0.0);
}

TEST_CASE("gauge mode grows like exp(tau)") {
  auto g = build_grid(32);
  const StatePair g0 = gauge_state(g);
  const ConeTrajectory t = evolve(g0, 1.0, default_dt(32), EvolutionMode::linearized);
  CHECK(std::abs(t.taus.back() - 1.0) < 1e-12);
  CHECK(max_abs(t.states.back() - cplx(std::exp(1.0)) * g0) < 1e-8);
}

TEST_CASE("linearized decay of a gauge-free state") {
  auto g = build_grid(32);
  const GaugeRepresenter rep = gauge_representer(g);
  StatePair u = sample_state(g, [](double r) { return std::exp(-r * r); }, [](double) { return 0.0; });
  u -= gauge_projection(u, rep) * gauge_state(g);
  CHECK(std::abs(gauge_projection(u, rep)) < 1e-12);
  const ConeTrajectory t = evolve(u, 4.0, default_dt(32), EvolutionMode::linearized);
  CHECK(max_abs(t.states.back()) < 0.1 * max_abs(u));
}

TEST_CASE("gauge projection is normalized and linear") {
  auto g = build_grid(32);
  const GaugeRepresenter rep = gauge_representer(g);
  CHECK(std::abs(gauge_projection(gauge_state(g), rep) - 1.0) < 1e-10);
  const StatePair a = sample_state(g, [](double r) { return r * r; }, [](double) { return 1.0; });
  const StatePair b = sample_state(g, [](double) { return 1.0; }, [](double r) { return r * r; });
  const cplx s(0.3, -2.0);
  CHECK(std::abs(gauge_projection(a + s * b, rep) - gauge_projection(a, rep) - s * gauge_projection(b, rep)) < 1e-12);
  CHECK_THROWS_AS(gauge_projection(StatePair(build_grid(24)), rep), Error);
}

TEST_CASE("CFL bound and instability reporting") {
  auto g = build_grid(32);
  try {
    evolve(StatePair(g), 1.0, 10.0 / (32.0 * 32.0), EvolutionMode::free);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
  CHECK(default_dt(32) * 32 * 32 <= 4.0);
}

TEST_CASE("spectral filter") {
  auto g = build_grid(32);
  const Eigen::MatrixXd F = spectral_filter(*g);
  Eigen::VectorXd smooth(g->n);
  for (int i = 0; i < g->n; ++i) smooth(i) = std::exp(-g->nodes(i) * g->nodes(i));
  CHECK((F * smooth - smooth).cwiseAbs().maxCoeff() < 1e-12);
  // a node spike loses mass
  Eigen::VectorXd spike = Eigen::VectorXd::Zero(g->n);
  spike(g->n / 2) = 1.0;
  CHECK((F * spike).norm() < spike.norm());
}

TEST_CASE("modulation recovers the blowup time of the profile") {
  const CorotationalData d = profile_data(1.0, 24);
  ModulationOptions opt;
  opt.n = 24;
  opt.tau_stages = {2.0};
  const ModulationResult r = modulate_T(d, 1.02, 4.0, opt);
  REQUIRE(r.converged);
  CHECK(std::abs(r.T_star - 1.0) < 1e-6);
  // the initial state at the true T is the zero perturbation
  CHECK(max_abs(modulation_initial_state(d, 1.0, build_grid(24))) < 1e-10);
}
