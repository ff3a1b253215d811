#include "blowup/frobenius.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

namespace odeint = boost::numeric::odeint;

double OdeCoefficients::V(double rho) const {
  if (!potential) return 0.0;
  const double d = rho * rho + 2.0;
  return -48.0 / (d * d);
}

cplx OdeCoefficients::p(double rho) const { return 2.0 * (lambda + 2.0) * rho - 5.0 / rho; }

cplx OdeCoefficients::q(double rho) const { return (lambda + 2.0) * (lambda + 1.0) + V(rho); }

cplx OdeCoefficients::residual(double rho, cplx u, cplx du, cplx d2u, cplx F) const {
  return -(1.0 - rho * rho) * d2u + p(rho) * du + q(rho) * u - F;
}

cplx OdeCoefficients::second_derivative(double rho, cplx u, cplx du, cplx F) const {
  return (p(rho) * du + q(rho) * u - F) / (1.0 - rho * rho);
}

OdeCoefficients ode_coefficients(cplx lambda, bool potential) { return OdeCoefficients{lambda, potential}; }

namespace {

void require_open(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::EndpointLimit, "transform needs rho in (0,1); use the series forms");
}

// log-derivative of k = rho^{5/2} (1-rho^2)^{lambda/2 - 1/4}
cplx log_deriv_k(double rho, cplx lambda) {
  const cplx gamma = lambda / 2.0 - 0.25;
  return 2.5 / rho - 2.0 * gamma * rho / (1.0 - rho * rho);
}

cplx k_factor(double rho, cplx lambda) {
  return std::pow(rho, 2.5) * std::exp((lambda / 2.0 - 0.25) * std::log(1.0 - rho * rho));
}

}  // namespace

ValueDerivC transform_v(cplx u, cplx du, double rho, cplx lambda) {
  require_open(rho);
  const cplx k = k_factor(rho, lambda);
  return {k * u, k * (du + log_deriv_k(rho, lambda) * u)};
}

ValueDerivC inverse_transform_v(cplx v, cplx dv, double rho, cplx lambda) {
  require_open(rho);
  const cplx k = k_factor(rho, lambda);
  const cplx u = v / k;
  return {u, dv / k - log_deriv_k(rho, lambda) * u};
}

double phi_map(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorKind::Domain, "phi is defined on [0,1)");
  return std::atanh(rho);
}

namespace {

struct BesselBasis2 {
  cplx b, db, d2b;
};

BesselBasis2 bessel_basis2(cplx lambda, double rho, BesselKind kind) {
  const double phi = phi_map(rho);
  const double s = 1.0 - rho * rho;
  const double dphi = 1.0 / s, d2phi = 2.0 * rho / (s * s);
  const double g = s * phi, dg = -2.0 * rho * phi + 1.0, d2g = -2.0 * phi - 2.0 * rho / s;
  const double m = std::sqrt(g);
  const double dm = dg / (2.0 * m), d2m = d2g / (2.0 * m) - dg * dg / (4.0 * m * g);
  const cplx a = SpectralPoint{lambda}.a();
  const cplx z = a * phi;
  const BesselValue c = cyl_bessel_vd(kind, z);
  const cplx c2 = -c.deriv / z - (1.0 - 4.0 / (z * z)) * c.value;
  BesselBasis2 r;
  r.b = m * c.value;
  r.db = dm * c.value + m * c.deriv * a * dphi;
  r.d2b = d2m * c.value + 2.0 * dm * c.deriv * a * dphi + m * (c2 * a * a * dphi * dphi + c.deriv * a * d2phi);
  return r;
}

}  // namespace

ValueDerivC bessel_basis(cplx lambda, double rho, BesselKind kind) {
  if (!(rho > 0.0)) throw Error(ErrorKind::EndpointLimit, "Bessel basis evaluated at rho > 0 only");
  const BesselBasis2 b = bessel_basis2(lambda, rho, kind);
  return {b.b, b.db};
}

double liouville_green_residual(cplx lambda, double rho, BesselKind kind) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::Domain, "Liouville-Green check needs rho in (0,1)");
  const BesselBasis2 b = bessel_basis2(lambda, rho, kind);
  const double s = 1.0 - rho * rho;
  const double phi = phi_map(rho);
  const cplx coef = (-9.0 + 12.0 * lambda - 4.0 * lambda * lambda) / (4.0 * s * s) - 15.0 / (4.0 * phi * phi * s * s) +
                    1.0 / (s * s);
  return std::abs(b.d2b + coef * b.b) / (std::abs(b.d2b) + std::abs(coef * b.b));
}

namespace {

struct Eval2 {
  cplx u, du, d2u;
};

Eval2 eval_series(const LocalSolution& s, double rho) {
  Eval2 r{0.0, 0.0, 0.0};
  if (s.endpoint == Endpoint::zero) {
    // even series: sum over k of c_k rho^k
    cplx v = 0.0, d = 0.0, d2 = 0.0;
    for (int k = static_cast<int>(s.coeffs.size()) - 1; k >= 0; --k) {
      const double kk = k;
      // Horner in rho for the three series
      v = v * rho + s.coeffs[k];
      if (k >= 1) d = d * rho + kk * s.coeffs[k];
      if (k >= 2) d2 = d2 * rho + kk * (kk - 1.0) * s.coeffs[k];
    }
    return {s.scale * v, s.scale * d, s.scale * d2};
  }
  const double x = 1.0 - rho;
  const cplx sigma = s.index;
  cplx v = 0.0, d = 0.0, d2 = 0.0;  // series in x of sum c_k x^k, and x-derivatives of x^sigma sum
  if (sigma == cplx(0.0, 0.0)) {
    for (int k = static_cast<int>(s.coeffs.size()) - 1; k >= 0; --k) {
      const double kk = k;
      v = v * x + s.coeffs[k];
      if (k >= 1) d = d * x + kk * s.coeffs[k];
      if (k >= 2) d2 = d2 * x + kk * (kk - 1.0) * s.coeffs[k];
    }
    return {s.scale * v, -s.scale * d, s.scale * d2};
  }
  if (x <= 0.0) {
    if (sigma.real() > 2.0) return r;
    throw Error(ErrorKind::EndpointLimit, "singular branch derivative diverges at rho = 1");
  }
  cplx s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = static_cast<int>(s.coeffs.size()) - 1; k >= 0; --k) {
    const cplx e = sigma + double(k);
    s0 = s0 * x + s.coeffs[k];
    s1 = s1 * x + e * s.coeffs[k];
    s2 = s2 * x + e * (e - 1.0) * s.coeffs[k];
  }
  const cplx xs = std::exp(sigma * std::log(x));
  v = xs * s0;
  d = xs * s1 / x;
  d2 = xs * s2 / (x * x);
  return {s.scale * v, -s.scale * d, s.scale * d2};
}

}  // namespace

ValueDerivC LocalSolution::eval(double rho) const {
  const Eval2 e = eval_series(*this, rho);
  return {e.u, e.du};
}

double LocalSolution::residual(int n_points) const {
  const OdeCoefficients ode{lambda, potential};
  double worst = 0.0;
  for (int i = 1; i <= n_points; ++i) {
    double rho;
    if (endpoint == Endpoint::zero) {
      rho = domain_lo + 0.5 * (domain_hi - domain_lo) * i / n_points;
    } else {
      rho = domain_hi - 0.5 * (domain_hi - domain_lo) * i / n_points;
      if (rho >= 1.0) continue;
    }
    const Eval2 e = eval_series(*this, rho);
    const cplx res = ode.residual(rho, e.u, e.du, e.d2u);
    const double scale =
        std::abs((1.0 - rho * rho) * e.d2u) + std::abs(ode.p(rho) * e.du) + std::abs(ode.q(rho) * e.u);
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

LocalSolution basis_at_zero(cplx lambda, bool potential, int n_terms) {
  if (n_terms < 10) throw Error(ErrorKind::Configuration, "series needs at least 10 terms");
  LocalSolution s;
  s.endpoint = Endpoint::zero;
  s.lambda = lambda;
  s.potential = potential;
  s.index = 0.0;
  s.domain_lo = 0.0;
  s.domain_hi = 0.5;
  const int N = n_terms;
  // V = -12 sum_k (k+1) (-1/2)^k rho^{2k}
  std::vector<double> v(N + 1, 0.0);
  if (potential)
    for (int k = 0; 2 * k <= N; ++k) v[2 * k] = -12.0 * (k + 1) * std::pow(-0.5, k);
  const cplx mu = (lambda + 2.0) * (lambda + 1.0);
  std::vector<cplx> c(N + 1, 0.0);
  c[0] = 1.0;
  for (int m = 2; m <= N; m += 2) {
    cplx acc = ((m - 2.0) * (m - 3.0) + 2.0 * (lambda + 2.0) * (m - 2.0) + mu) * c[m - 2];
    for (int j = 0; j <= m - 2; j += 2) acc += v[j] * c[m - 2 - j];
    c[m] = acc / (double(m) * (m + 4.0));
  }
  s.coeffs = std::move(c);
  return s;
}

LocalSolution basis_at_one(cplx lambda, bool potential, Branch branch, int n_terms, bool amplitude_normalized) {
  if (n_terms < 10) throw Error(ErrorKind::Configuration, "series needs at least 10 terms");
  LocalSolution s;
  s.endpoint = Endpoint::one;
  s.lambda = lambda;
  s.potential = potential;
  s.index = branch == Branch::regular ? cplx(0.0) : 1.5 - lambda;
  s.domain_lo = 0.7;
  s.domain_hi = 1.0;
  const int N = n_terms;
  const cplx mu = (lambda + 2.0) * (lambda + 1.0);
  // V(1-x) = -48 q^2 with q = 1/(3 - 2x + x^2)
  std::vector<double> q(N + 1, 0.0), vx(N + 1, 0.0);
  q[0] = 1.0 / 3.0;
  if (N >= 1) q[1] = 2.0 / 9.0;
  for (int k = 2; k <= N; ++k) q[k] = (2.0 * q[k - 1] - q[k - 2]) / 3.0;
  if (potential)
    for (int k = 0; k <= N; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) acc += q[j] * q[k - j];
      vx[k] = -48.0 * acc;
    }
  std::vector<cplx> cc(N + 1, 0.0);
  for (int j = 0; j <= N; ++j) {
    cplx qj = vx[j] + (j == 0 ? mu : cplx(0.0));
    cplx qm = j >= 1 ? vx[j - 1] + (j == 1 ? mu : cplx(0.0)) : cplx(0.0);
    cc[j] = qj - qm;
  }
  const double a1 = -2.0, a2 = 3.0, a3 = -1.0;
  const cplx b0 = 1.0 - 2.0 * lambda, b1 = 4.0 * (lambda + 2.0), b2 = -2.0 * (lambda + 2.0);
  const cplx sg = s.index;
  std::vector<cplx> d(N + 1, 0.0);
  d[0] = 1.0;
  for (int m = 1; m <= N; ++m) {
    const cplx e = sg + double(m);
    const cplx div = e * (a1 * (e - 1.0) + b0);
    if (std::abs(div) < 1e-12)
      throw Error(ErrorKind::Resonance, "Frobenius recurrence at rho = 1 is resonant for this lambda");
    cplx acc = (a2 * (e - 1.0) * (e - 2.0) + b1 * (e - 1.0)) * d[m - 1];
    if (m >= 2) acc += (a3 * (e - 2.0) * (e - 3.0) + b2 * (e - 2.0)) * d[m - 2];
    for (int j = 0; j <= m - 1; ++j) acc += cc[j] * d[m - 1 - j];
    d[m] = -acc / div;
  }
  s.coeffs = std::move(d);
  if (amplitude_normalized && branch == Branch::singular) s.scale = 1.0 / std::sqrt(SpectralPoint{lambda}.a());
  return s;
}

std::vector<OdePoint> integrate_ode(const OdeCoefficients& ode, double rho0, cplx u0, cplx du0,
                                    const std::vector<double>& targets, double rtol,
                                    const std::function<cplx(double)>& forcing) {
  using State = std::vector<double>;
  std::vector<OdePoint> out;
  if (targets.empty()) return out;
  const double dir = targets.back() >= rho0 ? 1.0 : -1.0;
  std::vector<double> times{rho0};
  for (double t : targets) {
    if ((t - times.back()) * dir < 0.0) throw Error(ErrorKind::Usage, "integration targets must be monotone");
    if (t <= 0.0 || t >= 1.0) throw Error(ErrorKind::Continuation, "integration targets must lie in (0,1)");
    times.push_back(t);
  }
  auto sys = [&](const State& y, State& dy, double rho) {
    const cplx u(y[0], y[1]), du(y[2], y[3]);
    const cplx F = forcing ? forcing(rho) : cplx(0.0);
    const cplx d2u = ode.second_derivative(rho, u, du, F);
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = d2u.real();
    dy[3] = d2u.imag();
  };
  State y{u0.real(), u0.imag(), du0.real(), du0.imag()};
  const double scale = std::max({std::abs(u0), std::abs(du0), 1e-300});
  auto stepper = odeint::make_dense_output(1e-3 * rtol * scale, rtol, odeint::runge_kutta_dopri5<State>());
  std::vector<OdePoint> all;
  auto obs = [&](const State& s, double rho) { all.push_back({rho, cplx(s[0], s[1]), cplx(s[2], s[3])}); };
  try {
    odeint::integrate_times(stepper, sys, y, times.begin(), times.end(), dir * 1e-4, obs,
                            odeint::max_step_checker(200000));
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Continuation, std::string("ODE continuation failed: ") + e.what());
  }
  // drop the initial point
  for (size_t i = 1; i < all.size(); ++i) out.push_back(all[i]);
  for (const auto& p : out)
    if (!std::isfinite(std::abs(p.u)) || !std::isfinite(std::abs(p.du)))
      throw Error(ErrorKind::Continuation, "non-finite value during continuation");
  return out;
}

ValueDerivC continue_solution(const LocalSolution& local, double rho_m, double rtol) {
  if (rho_m >= local.domain_lo && rho_m <= local.domain_hi && rho_m > 0.0 && rho_m < 1.0) return local.eval(rho_m);
  const double start = local.endpoint == Endpoint::zero ? std::min(local.domain_hi, 0.45) : std::max(local.domain_lo, 0.75);
  const ValueDerivC s = local.eval(start);
  const auto pts = integrate_ode(OdeCoefficients{local.lambda, local.potential}, start, s.u, s.du, {rho_m}, rtol);
  return {pts.back().u, pts.back().du};
}

cplx weighted_wronskian(cplx lambda, double rho, const ValueDerivC& f, const ValueDerivC& g) {
  const cplx w = std::pow(rho, 5.0) * std::exp((lambda - 0.5) * std::log(1.0 - rho * rho));
  return w * (f.u * g.du - f.du * g.u);
}

}  // namespace blowup
