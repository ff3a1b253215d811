#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "blowup/evolution.hpp"
#include "blowup/geometry.hpp"
#include "blowup/modulation.hpp"

namespace blowup {

// Mixed L^p_tau L^q_rho norm over the trajectory stamps (trapezoid in tau,
// weight rho^5 in space). order 0 measures phi1 with 1/p + 6/q = 1,
// p in [2, inf]; order 1 measures phi1' and component 2 measures phi2, both
// only with (p, q) = (2, 4). Anything else throws Configuration.
double strichartz_norm(const ConeTrajectory& traj, double p, double q, int order, int component = 1);
bool strichartz_admissible(double p, double q, int order, int component = 1);

// Corotational sampler: (u, u_r) at (t, r), the angle being r u.
using CorotationalSampler = std::function<ValueDeriv(double t, double r)>;
// The constant north pole, i.e. the value of any corotational map at r = 0.
CorotationalSampler center_sampler();

struct ConeNormSpec {
  double weight_exponent = -5.0 / 6.0;
  double q = 12.0;
  int order = 0;
};

// ||r^w (U - V)(t)||_{L^q(B^4_{T-t})}, or the gradient version for order 1.
double cone_snapshot_norm(const CorotationalSampler& u, const CorotationalSampler& v, double t, double T,
                          const ConeNormSpec& spec);
// int_0^{T-eps} cone_snapshot_norm^2 dt, integrated in s = -log(T-t).
double weighted_cone_norm(const CorotationalSampler& u, const CorotationalSampler& v, double T, const ConeNormSpec& spec,
                          double eps);

struct ConeDivergenceReport {
  std::vector<double> eps;
  std::vector<double> values;
  // snapshot norm times (T-t)^{1/2} at t = 0
  double snapshot_constant = 0.0;
  // slope of the values against log(1/eps), raw and divided by the squared
  // snapshot constant
  double raw_slope = 0.0;
  double normalized_slope = 0.0;
  // log-log slope of the snapshot norm against T - t
  double snapshot_exponent = 0.0;
};

ConeDivergenceReport cone_divergence(double T, const ConeNormSpec& spec, const std::vector<double>& eps);

// Random even polynomial pair sum_j c_j rho^{2j}, coefficients uniform in [-1,1].
struct PolynomialState {
  std::vector<double> c1, c2;
  StatePair sample(const GridPtr& g) const;
  double phi1(double rho) const;
  double phi2(double rho) const;
};
PolynomialState random_polynomial_state(std::mt19937_64& rng, int degree = 5, double scale = 1.0);

// Re htilde_inner(L0 u, u) with the potential-free generator.
double dissipativity_check(const StatePair& u);

struct NormRatioReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};
// htilde_norm / h_norm over the samples.
NormRatioReport norm_ratio_range(const std::vector<PolynomialState>& samples, const GridPtr& g);

struct NonlinearityBoundReport {
  double bound_constant = 0.0;
  double lipschitz_constant = 0.0;
  int used = 0;
  int skipped = 0;
  std::vector<double> bound_ratios;
  std::vector<double> lipschitz_ratios;
};

// N(u) = (0, n(rho, u1)) with the remainder around the static solution.
StatePair nonlinear_term(const StatePair& u);
double nonlinearity_bound_rhs(const StatePair& u);
double nonlinearity_lipschitz_rhs(const StatePair& u, const StatePair& v);
// Samples are pairs (u, v); the first estimate uses u, the second the pair.
NonlinearityBoundReport nonlinearity_bound_report(const std::vector<std::pair<StatePair, StatePair>>& samples);
// ||N(s u)||_H / s^2
double quadratic_scaling_ratio(const StatePair& u, double s);

// Perturbation of the initial data in physical variables at T = 1.
struct Bump {
  std::function<double(double)> f;
  std::function<double(double)> g;
};
// p - alpha g with alpha the gauge amplitude of p on the given grid.
Bump gauge_free_bump(const Bump& p, const GridPtr& grid);
cplx bump_gauge_amplitude(const Bump& b, const GridPtr& grid);

struct ScalingOptions {
  ModulationOptions modulation;
  double tau_max = 8.0;
  double data_margin = 0.1;
  double gauge_tol = 1e-10;
};

struct ScalingReport {
  std::vector<double> deltas;
  std::vector<double> T_star;
  std::vector<bool> converged;
  std::vector<std::string> messages;
  // (2,12) order 0 and (2,4) order 1
  std::vector<double> s_l12, s_w14;
  std::vector<double> ratio_l12, ratio_w14;
  double spread_l12 = 0.0, spread_w14 = 0.0;
  bool all_converged = false;
};

// Modulates u_*^1[0] + delta bump for each delta and measures the Strichartz
// norms of the converged perturbation. Throws Usage when the bump is not
// gauge free, Configuration for deltas that are not positive and decreasing.
ScalingReport delta_scaling_experiment(const Bump& bump, const std::vector<double>& deltas, const ScalingOptions& opt = {});

struct NormComparison {
  double norm4 = 0.0;  // || r f ||_{H^2(B^4_R)}
  double norm6 = 0.0;  // || f ||_{H^2(B^6_R)}
  double ratio = 0.0;
};
NormComparison norm_comparison_4d_6d(const CorotationalData& data);

}  // namespace blowup
