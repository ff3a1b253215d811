#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/exterior.hpp"
#include "blowup/geometry.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

double exact_profile(double t, double r) { return profile_physical(t, r, 1.0).value; }

}  // namespace

TEST_CASE("truncated cone validation") {
  CHECK_NOTHROW((TruncatedCone{0.0, 0.5, 2.0}).validate());
  CHECK_THROWS_AS((TruncatedCone{0.0, 0.5, 0.3}).validate(), Error);
}

TEST_CASE("exterior solver reproduces the profile") {
  const TruncatedCone cone{0.0, 0.5, 2.0};
  const ExteriorSolution s = duhamel_exterior(profile_exterior_data(1.0), cone, {64});
  CHECK(s.max_error(exact_profile) < 1e-4);
  CHECK(s.picard_residual < 1e-12);
  // lattice geometry
  CHECK(s.r_at(0, 0) == doctest::Approx(1.5));
  CHECK(s.r_at(64, 0) == doctest::Approx(2.0));
  CHECK(s.t_at(64) == doctest::Approx(0.5));
}

TEST_CASE("exterior solver converges at second order") {
  const RichardsonReport r = exterior_richardson(profile_exterior_data(1.0), {0.0, 0.5, 2.0}, 32, exact_profile);
  CHECK(r.observed_order == doctest::Approx(2.0).epsilon(0.15));
  CHECK(r.extrapolated_error < r.errors.front());
}

TEST_CASE("zero data without source stays zero") {
  ExteriorData zero{[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  ExteriorOptions opt;
  opt.levels = 16;
  opt.free = true;
  const ExteriorSolution s = duhamel_exterior(zero, {0.0, 0.5, 2.0}, opt);
  CHECK(s.max_error([](double, double) { return 0.0; }) == 0.0);
}

TEST_CASE("overlap with the similarity region") {
  const TruncatedCone cone{0.0, 0.5, 1.0};
  const ExteriorSolution s = duhamel_exterior(profile_exterior_data(1.0), cone, {64});
  ConeTrajectory traj;
  auto g = build_grid(32);
  for (double tau : {0.0, std::log(2.0)}) {
    traj.taus.push_back(tau);
    traj.states.push_back(StatePair(g));
  }
  const OverlapReport o = overlap_compare(s, traj);
  CHECK(o.points > 0);
  CHECK(o.max_discrepancy < 1e-4);
  const ExteriorSolution far = duhamel_exterior(profile_exterior_data(1.0), {0.0, 0.25, 3.0}, {16});
  CHECK_THROWS_AS(overlap_compare(far, traj), Error);
}
