#include "blowup/geometry.hpp"

#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// arctan(x)/x with a Taylor branch near 0
double atan_over_x(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + x2 * x2 / 5.0 - x2 * x2 * x2 / 7.0 + x2 * x2 * x2 * x2 / 9.0;
  }
  return std::atan(x) / x;
}

// d/dx [arctan(x)/x] / x, regular at 0
double atan_over_x_d(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return -2.0 / 3.0 + 4.0 * x2 / 5.0 - 6.0 * x2 * x2 / 7.0 + 8.0 * x2 * x2 * x2 / 9.0;
  }
  return (1.0 / (1.0 + x * x) - std::atan(x) / x) / (x * x);
}

}  // namespace

void BlowupParam::validate() const {
  if (!(T >= 0.5 && T <= 1.5)) throw Error(ErrorKind::Domain, "blowup time must lie in [1/2, 3/2]");
}

ValueDeriv profile_physical(double t, double r, double T) {
  if (!(t < T)) throw Error(ErrorKind::Domain, "profile evaluated at or after the blowup time");
  if (r < 0.0) throw Error(ErrorKind::Domain, "negative radius");
  const double s = kSqrt2 * (T - t);
  const double x = r / s;
  // u = (2/s) atan(x)/x, du/dr = (2/s^2) x * [atan(x)/x]'/x
  return {2.0 / s * atan_over_x(x), 2.0 / (s * s) * x * atan_over_x_d(x)};
}

double profile_physical_dt(double t, double r, double T) {
  if (!(t < T)) throw Error(ErrorKind::Domain, "profile evaluated at or after the blowup time");
  const double d = T - t;
  return 2.0 * kSqrt2 / (2.0 * d * d + r * r);
}

ProfilePair profile_similarity(double rho) {
  const double x = rho / kSqrt2;
  return {kSqrt2 * atan_over_x(x), 2.0 * kSqrt2 / (rho * rho + 2.0)};
}

double profile_similarity_d1(double rho) {
  const double x = rho / kSqrt2;
  return x * atan_over_x_d(x);
}

StatePair profile_state(const GridPtr& grid) {
  StatePair s(grid);
  for (int i = 0; i < grid->n; ++i) {
    auto p = profile_similarity(grid->nodes(i));
    s.phi1(i) = p.psi1;
    s.phi2(i) = p.psi2;
  }
  return s;
}

ProfilePair gauge_mode(double rho) {
  const double q = 2.0 + rho * rho;
  return {1.0 / q, 4.0 / (q * q)};
}

StatePair gauge_state(const GridPtr& grid) {
  StatePair s(grid);
  for (int i = 0; i < grid->n; ++i) {
    auto p = gauge_mode(grid->nodes(i));
    s.phi1(i) = p.psi1;
    s.phi2(i) = p.psi2;
  }
  return s;
}

SimilarityPoint to_similarity(double t, double r, double T) {
  if (!(t < T) || t < 0.0) throw Error(ErrorKind::Domain, "time outside [0, T)");
  if (r < 0.0 || r > T - t) throw Error(ErrorKind::OutsideCone, "point lies outside the backward light cone");
  return {-std::log1p(-t / T), r / (T - t)};
}

PhysicalPoint from_similarity(double tau, double rho, double T) {
  if (tau < 0.0 || rho < 0.0 || rho > 1.0) throw Error(ErrorKind::OutsideCone, "similarity point outside the cone");
  const double d = T * std::exp(-tau);
  return {-T * std::expm1(-tau), rho * d};
}

double CorotationalData::f_at(double r) const {
  if (r < 0.0 || r > R() * (1.0 + 1e-14)) throw Error(ErrorKind::Domain, "radius outside the data ball");
  return grid->interpolate(f, std::min(r / R(), 1.0));
}

double CorotationalData::g_at(double r) const {
  if (r < 0.0 || r > R() * (1.0 + 1e-14)) throw Error(ErrorKind::Domain, "radius outside the data ball");
  return grid->interpolate(g, std::min(r / R(), 1.0));
}

void CorotationalData::validate() const {
  for (int i = 0; i < grid->n; ++i) {
    if (std::abs(R() * grid->nodes(i) * f(i)) > 1.5) throw Error(ErrorKind::Domain, "data leave the range |r f| <= 3/2");
  }
}

CorotationalData sample_corotational(const std::function<double(double)>& f, const std::function<double(double)>& g,
                                     int n, double delta) {
  CorotationalData d;
  d.grid = build_grid(n);
  d.delta = delta;
  d.f.resize(n);
  d.g.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = d.R() * d.grid->nodes(i);
    d.f(i) = f(r);
    d.g(i) = g(r);
  }
  return d;
}

CorotationalData profile_data(double T, int n, double delta) {
  return sample_corotational([T](double r) { return profile_physical(0.0, r, T).value; },
                             [T](double r) { return profile_physical_dt(0.0, r, T); }, n, delta);
}

SphereData lift_corotational(const CorotationalData& data) {
  data.validate();
  const int n = data.grid->n;
  SphereData s;
  s.grid = data.grid;
  s.delta = data.delta;
  s.theta.resize(n);
  s.theta_t.resize(n);
  s.F = Eigen::MatrixXd::Zero(n, 5);
  s.G = Eigen::MatrixXd::Zero(n, 5);
  for (int i = 0; i < n; ++i) {
    const double r = data.R() * data.grid->nodes(i);
    const double th = r * data.f(i);
    const double tht = r * data.g(i);
    s.theta(i) = th;
    s.theta_t(i) = tht;
    s.F(i, 0) = std::sin(th);
    s.F(i, 4) = std::cos(th);
    s.G(i, 0) = std::cos(th) * tht;
    s.G(i, 4) = -std::sin(th) * tht;
  }
  return s;
}

CorotationalData reduce_corotational(const SphereData& data) {
  const int n = data.grid->n;
  const double R = 1.0 + data.delta;
  Eigen::VectorXd theta(n), theta_t(n);
  for (int i = 0; i < n; ++i) {
    const double c = data.F(i, 4), s = data.F(i, 0);
    if (!(c > 0.0)) throw Error(ErrorKind::ReductionDomain, "fifth component is not positive on the ball");
    theta(i) = std::atan(s / c);
    // velocity along the tangent direction (cos th, -sin th)
    theta_t(i) = data.G(i, 0) * c - data.G(i, 4) * s;
  }
  CorotationalData out;
  out.grid = data.grid;
  out.delta = data.delta;
  out.f.resize(n);
  out.g.resize(n);
  // theta and theta_t are odd in r; the centre value of theta/r is theta'(0)
  const Eigen::VectorXd dth = data.grid->d1_odd * theta / R;
  const Eigen::VectorXd dtht = data.grid->d1_odd * theta_t / R;
  out.f(0) = dth(0);
  out.g(0) = dtht(0);
  for (int i = 1; i < n; ++i) {
    const double r = R * data.grid->nodes(i);
    out.f(i) = theta(i) / r;
    out.g(i) = theta_t(i) / r;
  }
  return out;
}

Eigen::Matrix<double, 5, 1> sphere_profile(double xi) {
  const double th = 2.0 * std::atan(xi / kSqrt2);
  Eigen::Matrix<double, 5, 1> v = Eigen::Matrix<double, 5, 1>::Zero();
  v(0) = std::sin(th);
  v(4) = std::cos(th);
  return v;
}

}  // namespace blowup
