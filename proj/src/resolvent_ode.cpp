#include "blowup/resolvent_ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "blowup/errors.hpp"

namespace blowup {

ConnectionData mode_stability_function(cplx lambda, bool potential, double rho_m) {
  const std::vector<double> up{0.5, rho_m, 0.7}, down{0.7, rho_m, 0.5};
  if (!(rho_m > 0.5 && rho_m < 0.7)) throw Error(ErrorKind::Configuration, "matching point must lie in (0.5, 0.7)");
  const OdeCoefficients ode{lambda, potential};
  const LocalSolution an = basis_at_zero(lambda, potential);
  const LocalSolution reg = basis_at_one(lambda, potential, Branch::regular);
  const LocalSolution sing = basis_at_one(lambda, potential, Branch::singular);
  const ValueDerivC a0 = an.eval(0.45), r0 = reg.eval(0.75), s0 = sing.eval(0.75);
  const auto pa = integrate_ode(ode, 0.45, a0.u, a0.du, up);
  const auto pr = integrate_ode(ode, 0.75, r0.u, r0.du, down);
  const auto ps = integrate_ode(ode, 0.75, s0.u, s0.du, down);
  // pa ascending, pr/ps descending: index k of pa matches 2-k of pr
  cplx wra[3], wrs[3], was[3];
  for (int k = 0; k < 3; ++k) {
    const double rho = up[k];
    const ValueDerivC a{pa[k].u, pa[k].du}, r{pr[2 - k].u, pr[2 - k].du}, s{ps[2 - k].u, ps[2 - k].du};
    wra[k] = weighted_wronskian(lambda, rho, r, a);
    wrs[k] = weighted_wronskian(lambda, rho, r, s);
    was[k] = weighted_wronskian(lambda, rho, a, s);
  }
  ConnectionData c;
  c.lambda = lambda;
  c.potential = potential;
  c.matching_point = rho_m;
  c.sing_normalization = wrs[1];
  c.B = wra[1];
  // A is undefined where the two branches at 1 coincide (lambda = 3/2)
  c.A = std::abs(wrs[1]) > 1e-12 ? was[1] / wrs[1] : cplx(NAN, NAN);
  double drift = 0.0;
  const double sa = std::max(std::abs(wra[1]), 1e-300), ss = std::max(std::abs(wrs[1]), 1e-300);
  const double sc = std::max({std::abs(wra[1]), std::abs(was[1]), std::abs(wrs[1])});
  for (int k : {0, 2}) {
    drift = std::max(drift, std::abs(wrs[k] - wrs[1]) / std::max(ss, sc));
    drift = std::max(drift, std::abs(wra[k] - wra[1]) / std::max(sa, sc));
    drift = std::max(drift, std::abs(was[k] - was[1]) / sc);
  }
  c.wronskian_drift = drift;
  return c;
}

WindingSample regularized_B_sample(cplx lambda, bool potential) {
  // resonant points 3/2 - lambda = m: average two nearby evaluations
  const cplx s = 1.5 - lambda;
  const double m = std::round(s.real());
  if (m >= 1.0 && std::abs(s - m) < 1e-9) {
    const cplx h(0.0, 1e-6);
    const WindingSample a = regularized_B_sample(lambda + h, potential), b = regularized_B_sample(lambda - h, potential);
    return {lambda, 0.5 * (a.value + b.value), std::max(a.wronskian_drift, b.wronskian_drift)};
  }
  const ConnectionData c = mode_stability_function(lambda, potential);
  return {lambda, (lambda - 0.5) * c.B, c.wronskian_drift};
}

cplx regularized_B(cplx lambda, bool potential) { return regularized_B_sample(lambda, potential).value; }

namespace {

double phase_step(cplx a, cplx b) { return std::abs(std::arg(b / a)); }

}  // namespace

WindingResult winding_scan(const Rect& rect, bool potential, int samples_per_edge, int max_depth) {
  if (!(rect.re_hi > rect.re_lo && rect.im_hi > rect.im_lo) || samples_per_edge < 2)
    throw Error(ErrorKind::Configuration, "degenerate winding rectangle");
  const cplx corners[5] = {{rect.re_lo, rect.im_lo},
                           {rect.re_hi, rect.im_lo},
                           {rect.re_hi, rect.im_hi},
                           {rect.re_lo, rect.im_hi},
                           {rect.re_lo, rect.im_lo}};
  WindingResult res;
  auto f = [&](cplx l) { return regularized_B_sample(l, potential); };
  double total = 0.0;
  double min_mod = INFINITY;
  const double limit = M_PI / 2.0;
  // recursive bisection of a boundary segment
  std::function<void(const WindingSample&, const WindingSample&, int)> walk = [&](const WindingSample& a,
                                                                                  const WindingSample& b, int depth) {
    const double step = phase_step(a.value, b.value);
    if (step < limit || depth >= max_depth) {
      if (step >= limit) res.conclusive = false;
      res.max_phase_step = std::max(res.max_phase_step, step);
      total += std::arg(b.value / a.value);
      res.samples.push_back(b);
      min_mod = std::min(min_mod, std::abs(b.value));
      return;
    }
    const WindingSample mid = f(0.5 * (a.lambda + b.lambda));
    walk(a, mid, depth + 1);
    walk(mid, b, depth + 1);
  };
  WindingSample prev = f(corners[0]);
  res.samples.push_back(prev);
  min_mod = std::abs(prev.value);
  for (int e = 0; e < 4; ++e) {
    for (int k = 1; k <= samples_per_edge; ++k) {
      const WindingSample cur = f(corners[e] + (corners[e + 1] - corners[e]) * (double(k) / samples_per_edge));
      walk(prev, cur, 0);
      prev = cur;
    }
  }
  res.min_modulus = min_mod;
  res.winding = static_cast<int>(std::lround(total / (2.0 * M_PI)));
  return res;
}

cplx large_frequency_limit() { return std::exp(cplx(0.0, 1.25 * M_PI)) * std::sqrt(M_PI / 2.0); }

LargeFrequencyConnection large_frequency_connection(cplx lambda, double r, double rho0) {
  if (!(r > 0.0) || !(rho0 >= 0.0 && rho0 < 1.0)) throw Error(ErrorKind::Configuration, "need r > 0 and rho0 in [0,1)");
  if (std::abs(lambda.imag()) < 5.0) throw Error(ErrorKind::Usage, "large_frequency_connection needs |Im lambda| >= 5");
  const cplx a = SpectralPoint{lambda}.a();
  const double rho_hat = std::min(0.5 * (rho0 + 1.0), 2.0 * r / std::abs(a));
  if (!(rho_hat > 1e-4 && rho_hat < 0.95))
    throw Error(ErrorKind::Configuration, "matching point outside the usable range of the local expansions");
  // psi_3: amplitude-normalized recessive solution at 1
  const LocalSolution s3 = basis_at_one(lambda, true, Branch::singular, 60, true);
  const ValueDerivC u3 = continue_solution(s3, rho_hat);
  // psi_1 = (a^2/8) v_an, since b_1 ~ a^2 rho^{5/2}/8 at the origin
  const ValueDerivC ua = continue_solution(basis_at_zero(lambda, true), rho_hat);
  const ValueDerivC v3 = transform_v(u3.u, u3.du, rho_hat, lambda);
  ValueDerivC v1 = transform_v(ua.u, ua.du, rho_hat, lambda);
  v1.u *= a * a / 8.0;
  v1.du *= a * a / 8.0;
  const ValueDerivC b2 = bessel_basis(lambda, rho_hat, BesselKind::Y2);
  auto W = [](const ValueDerivC& f, const ValueDerivC& g) { return f.u * g.du - f.du * g.u; };
  const cplx w12 = W(v1, b2);
  LargeFrequencyConnection pc;
  pc.matching_point = rho_hat;
  pc.c13 = W(v3, b2) / w12;
  pc.c23 = -W(v3, v1) / w12;
  return pc;
}

cplx hypergeom_c3(double omega) {
  const cplx I(0.0, 1.0);
  return 2.0 * std::exp(log_gamma(-0.5 + I * omega) - log_gamma((1.0 + I * omega) / 2.0) - log_gamma(1.0 + I * omega / 2.0));
}

ValueDerivC free_psi1(double rho) {
  // (2 - rho^2 - 2 sqrt(1-rho^2))/rho^4 = 1/(1 + sqrt(1-rho^2))^2
  const double s = std::sqrt(1.0 - rho * rho);
  const double d = 1.0 + s;
  const double ds = s > 0.0 ? -rho / s : -INFINITY;
  return {1.0 / (d * d), -2.0 * ds / (d * d * d)};
}

ValueDerivC free_psi2(double rho) {
  const double r2 = rho * rho;
  return {(2.0 - r2) / (r2 * r2), (-2.0 * rho * r2 * r2 - (2.0 - r2) * 4.0 * r2 * rho) / (r2 * r2 * r2 * r2)};
}

double reduction_of_order_residual(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::Domain, "reduction of order check needs rho in (0,1)");
  // I(rho) = int_rho^1 (s^2+2)^2/(s^5 sqrt(1-s^2)) ds with s = sin(theta)
  auto integrand = [](double th) {
    const double s = std::sin(th);
    return (s * s + 2.0) * (s * s + 2.0) / std::pow(s, 5);
  };
  const double a = std::asin(rho), b = M_PI / 2.0;
  // composite Simpson on a geometric-ish split; integrand is smooth on [a, pi/2]
  const int n = 4000;
  double sum = integrand(a) + integrand(b);
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) sum += integrand(a + i * h) * (i % 2 ? 4.0 : 2.0);
  const double I = sum * h / 3.0;
  const double dI = -(rho * rho + 2.0) * (rho * rho + 2.0) / (std::pow(rho, 5) * std::sqrt(1.0 - rho * rho));
  // d/drho of the integrand of dI
  const double r2 = rho * rho, sq = std::sqrt(1.0 - r2);
  const double num = (r2 + 2.0) * (r2 + 2.0), den = std::pow(rho, 5) * sq;
  const double dnum = 4.0 * rho * (r2 + 2.0);
  const double dden = 5.0 * std::pow(rho, 4) * sq - std::pow(rho, 6) / sq;
  const double d2I = -(dnum * den - num * dden) / (den * den);
  const double g = 1.0 / (2.0 + r2), dg = -2.0 * rho * g * g, d2g = -2.0 * g * g + 8.0 * r2 * g * g * g;
  const double u = g * I, du = dg * I + g * dI, d2u = d2g * I + 2.0 * dg * dI + g * d2I;
  const OdeCoefficients ode{1.0, true};
  const cplx res = ode.residual(rho, u, du, d2u);
  const double scale = std::abs((1.0 - r2) * d2u) + std::abs(ode.p(rho) * du) + std::abs(ode.q(rho) * u);
  return std::abs(res) / scale;
}

}  // namespace blowup
