#include "blowup/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/nonlinearity.hpp"
#include "blowup/norms.hpp"
#include "blowup/spectrum.hpp"

namespace blowup {

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo - 1.0;
}

Eigen::VectorXcd derivative(const StatePair& u) { return u.grid->d1.cast<cplx>() * u.phi1; }

}  // namespace

bool strichartz_admissible(double p, double q, int order, int component) {
  if (order == 1 || component == 2) return p == 2.0 && q == 4.0 && (order == 0 || component == 1);
  if (order != 0 || component != 1) return false;
  if (!(p >= 2.0) || q < 6.0 || q > 12.0) return false;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::abs(inv_p + 6.0 / q - 1.0) < 1e-12;
}

double strichartz_norm(const ConeTrajectory& traj, double p, double q, int order, int component) {
  if (!strichartz_admissible(p, q, order, component))
    throw Error(ErrorKind::Configuration, "inadmissible Strichartz pair (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  if (traj.states.empty() || traj.states.size() != traj.taus.size())
    throw Error(ErrorKind::Usage, "trajectory has no stamps or mismatched sizes");
  std::vector<double> spatial(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const StatePair& s = traj.states[k];
    const Eigen::VectorXcd f = component == 2 ? s.phi2 : (order == 1 ? derivative(s) : s.phi1);
    spatial[k] = lq_norm(f, q, *s.grid, 5);
  }
  if (std::isinf(p)) return *std::max_element(spatial.begin(), spatial.end());
  double integral = 0.0;
  for (size_t k = 1; k < spatial.size(); ++k)
    integral += 0.5 * (traj.taus[k] - traj.taus[k - 1]) * (std::pow(spatial[k], p) + std::pow(spatial[k - 1], p));
  return std::pow(integral, 1.0 / p);
}

CorotationalSampler center_sampler() {
  return [](double, double) { return ValueDeriv{0.0, 0.0}; };
}

double cone_snapshot_norm(const CorotationalSampler& u, const CorotationalSampler& v, double t, double T,
                          const ConeNormSpec& spec) {
  if (!(t >= 0.0 && t < T)) throw Error(ErrorKind::Domain, "snapshot time outside [0, T)");
  if (spec.order != 0 && spec.order != 1) throw Error(ErrorKind::Configuration, "cone norm order must be 0 or 1");
  const double R = T - t;
  static const auto rule = [] {
    Eigen::VectorXd x, w;
    gauss_legendre(16, 0.0, 1.0, x, w);
    return std::make_pair(x, w);
  }();
  const int panels = 8;
  double integral = 0.0;
  for (int k = 0; k < panels; ++k) {
    for (Eigen::Index j = 0; j < rule.first.size(); ++j) {
      const double r = R * (k + rule.first(j)) / panels;
      const double wgt = R * rule.second(j) / panels;
      const ValueDeriv a = u(t, r), b = v(t, r);
      const double th = r * a.value, ph = r * b.value;
      double d;
      if (spec.order == 0) {
        d = 2.0 * std::abs(std::sin(0.5 * (th - ph)));
      } else {
        const double thr = a.value + r * a.deriv, phr = b.value + r * b.deriv;
        const double c1 = thr * std::cos(th) - phr * std::cos(ph);
        const double c2 = thr * std::sin(th) - phr * std::sin(ph);
        const double c3 = (std::sin(th) - std::sin(ph)) / r;
        d = std::sqrt(c1 * c1 + c2 * c2 + 3.0 * c3 * c3);
      }
      integral += wgt * std::pow(r, spec.weight_exponent * spec.q + 3.0) * std::pow(d, spec.q);
    }
  }
  // |S^3| = 2 pi^2
  return std::pow(2.0 * M_PI * M_PI * integral, 1.0 / spec.q);
}

double weighted_cone_norm(const CorotationalSampler& u, const CorotationalSampler& v, double T, const ConeNormSpec& spec,
                          double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::Configuration, "eps cutoff must be positive");
  if (eps >= T) return 0.0;
  const double s0 = -std::log(T), s1 = -std::log(eps);
  const int panels = std::max(1, static_cast<int>(std::ceil((s1 - s0) / 0.5)));
  const double h = (s1 - s0) / panels;
  Eigen::VectorXd x, w;
  gauss_legendre(8, 0.0, 1.0, x, w);
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double s = s0 + h * (k + x(j));
      const double R = std::exp(-s);
      const double nrm = cone_snapshot_norm(u, v, T - R, T, spec);
      sum += h * w(j) * nrm * nrm * R;
    }
  }
  return sum;
}

ConeDivergenceReport cone_divergence(double T, const ConeNormSpec& spec, const std::vector<double>& eps) {
  BlowupParam{T}.validate();
  if (eps.size() < 2) throw Error(ErrorKind::Configuration, "need at least two cutoffs");
  const CorotationalSampler prof = [T](double t, double r) { return profile_physical(t, r, T); };
  const CorotationalSampler center = center_sampler();
  ConeDivergenceReport rep;
  rep.eps = eps;
  std::vector<double> logs;
  for (double e : eps) {
    rep.values.push_back(weighted_cone_norm(prof, center, T, spec, e));
    logs.push_back(std::log(1.0 / e));
  }
  rep.snapshot_constant = cone_snapshot_norm(prof, center, 0.0, T, spec) * std::sqrt(T);
  rep.raw_slope = ls_slope(logs, rep.values);
  rep.normalized_slope = rep.raw_slope / (rep.snapshot_constant * rep.snapshot_constant);
  std::vector<double> lr, ln;
  for (double R = T; R >= 0.99e-4 * T; R /= 10.0) {
    lr.push_back(std::log(R));
    ln.push_back(std::log(cone_snapshot_norm(prof, center, T - R, T, spec)));
  }
  rep.snapshot_exponent = ls_slope(lr, ln);
  return rep;
}

double PolynomialState::phi1(double rho) const {
  double s = 0.0;
  for (auto it = c1.rbegin(); it != c1.rend(); ++it) s = s * rho * rho + *it;
  return s;
}

double PolynomialState::phi2(double rho) const {
  double s = 0.0;
  for (auto it = c2.rbegin(); it != c2.rend(); ++it) s = s * rho * rho + *it;
  return s;
}

StatePair PolynomialState::sample(const GridPtr& g) const {
  StatePair s(g);
  for (int i = 0; i < g->n; ++i) {
    s.phi1(i) = phi1(g->nodes(i));
    s.phi2(i) = phi2(g->nodes(i));
  }
  return s;
}

PolynomialState random_polynomial_state(std::mt19937_64& rng, int degree, double scale) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  PolynomialState p;
  for (int j = 0; j <= degree; ++j) p.c1.push_back(scale * U(rng));
  for (int j = 0; j <= degree; ++j) p.c2.push_back(scale * U(rng));
  return p;
}

double dissipativity_check(const StatePair& u) {
  const OperatorMatrix M = assemble_generator(u.grid, false);
  return htilde_inner(M.apply(u), u).real();
}

NormRatioReport norm_ratio_range(const std::vector<PolynomialState>& samples, const GridPtr& g) {
  if (samples.empty()) throw Error(ErrorKind::Usage, "no samples");
  NormRatioReport r{INFINITY, 0.0};
  for (const auto& p : samples) {
    const StatePair s = p.sample(g);
    const double h = h_norm(s);
    if (!(h > 0.0)) continue;
    const double ratio = htilde_norm(s) / h;
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

StatePair nonlinear_term(const StatePair& u) {
  StatePair out(u.grid);
  out.phi2 = perturbation_nonlinearity(*u.grid, u.phi1.real()).cast<cplx>();
  return out;
}

double nonlinearity_bound_rhs(const StatePair& u) {
  const RadialGrid& g = *u.grid;
  const Eigen::VectorXcd d = derivative(u);
  return std::pow(lq_norm(u.phi1, 12, g), 2) + std::pow(lq_norm(u.phi1, 9, g), 3) + std::pow(lq_norm(u.phi1, 8, g), 4) +
         std::pow(lq_norm(d, 4, g), 2);
}

double nonlinearity_lipschitz_rhs(const StatePair& u, const StatePair& v) {
  require_same_grid(u, v);
  const RadialGrid& g = *u.grid;
  const Eigen::VectorXcd du = derivative(u), dv = derivative(v);
  const Eigen::VectorXcd diff = u.phi1 - v.phi1, ddiff = du - dv;
  auto L = [&g](const Eigen::VectorXcd& f, double q) { return lq_norm(f, q, g); };
  const double first = L(u.phi1, 12) + L(v.phi1, 12) + std::pow(L(u.phi1, 8), 2) + std::pow(L(v.phi1, 8), 2) +
                       L(du, 4) * (1.0 + L(u.phi1, 6) + L(v.phi1, 6)) + std::pow(L(u.phi1, 36.0 / 5.0), 3) +
                       std::pow(L(v.phi1, 36.0 / 5.0), 3);
  const double second = L(v.phi1, 12) + std::pow(L(v.phi1, 8), 2);
  return L(diff, 12) * first + L(ddiff, 4) * second;
}

NonlinearityBoundReport nonlinearity_bound_report(const std::vector<std::pair<StatePair, StatePair>>& samples) {
  if (samples.empty()) throw Error(ErrorKind::Usage, "no samples");
  NonlinearityBoundReport r;
  for (const auto& [u, v] : samples) {
    const double rb = nonlinearity_bound_rhs(u), rl = nonlinearity_lipschitz_rhs(u, v);
    if (!(rb > 1e-300) || !(rl > 1e-300)) {
      ++r.skipped;
      continue;
    }
    const double b = h_norm(nonlinear_term(u)) / rb;
    const double l = h_norm(nonlinear_term(u) - nonlinear_term(v)) / rl;
    r.bound_ratios.push_back(b);
    r.lipschitz_ratios.push_back(l);
    r.bound_constant = std::max(r.bound_constant, b);
    r.lipschitz_constant = std::max(r.lipschitz_constant, l);
    ++r.used;
  }
  return r;
}

double quadratic_scaling_ratio(const StatePair& u, double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::Configuration, "scale must be positive");
  return h_norm(nonlinear_term(cplx(s) * u)) / (s * s);
}

cplx bump_gauge_amplitude(const Bump& b, const GridPtr& grid) {
  StatePair s(grid);
  for (int i = 0; i < grid->n; ++i) {
    s.phi1(i) = b.f(grid->nodes(i));
    s.phi2(i) = b.g(grid->nodes(i));
  }
  return gauge_projection(s, gauge_representer(grid));
}

Bump gauge_free_bump(const Bump& p, const GridPtr& grid) {
  const double alpha = bump_gauge_amplitude(p, grid).real();
  return {[f = p.f, alpha](double r) { return f(r) - alpha * gauge_mode(r).psi1; },
          [g = p.g, alpha](double r) { return g(r) - alpha * gauge_mode(r).psi2; }};
}

ScalingReport delta_scaling_experiment(const Bump& bump, const std::vector<double>& deltas, const ScalingOptions& opt) {
  if (deltas.empty()) throw Error(ErrorKind::Configuration, "no deltas");
  for (size_t k = 0; k < deltas.size(); ++k)
    if (!(deltas[k] > 0.0) || (k > 0 && !(deltas[k] < deltas[k - 1])))
      throw Error(ErrorKind::Configuration, "deltas must be positive and decreasing");
  const GridPtr grid = build_grid(opt.modulation.n);
  const double alpha = std::abs(bump_gauge_amplitude(bump, grid));
  if (alpha > opt.gauge_tol)
    throw Error(ErrorKind::Usage, "bump has a gauge component of size " + std::to_string(alpha));
  ScalingReport rep;
  rep.deltas = deltas;
  rep.all_converged = true;
  const int n_data = opt.modulation.n + 16;
  for (double d : deltas) {
    const CorotationalData data = sample_corotational(
        [&](double r) { return profile_physical(0.0, r, 1.0).value + d * bump.f(r); },
        [&](double r) { return profile_physical_dt(0.0, r, 1.0) + d * bump.g(r); }, n_data, opt.data_margin);
    const ModulationResult m = modulate_T(data, 1.0, opt.tau_max, opt.modulation);
    rep.T_star.push_back(m.T_star);
    rep.converged.push_back(m.converged);
    rep.messages.push_back(m.message);
    if (!m.converged) {
      rep.all_converged = false;
      rep.s_l12.push_back(NAN);
      rep.s_w14.push_back(NAN);
      rep.ratio_l12.push_back(NAN);
      rep.ratio_w14.push_back(NAN);
      continue;
    }
    const double a = strichartz_norm(m.trajectory, 2, 12, 0), b = strichartz_norm(m.trajectory, 2, 4, 1);
    rep.s_l12.push_back(a);
    rep.s_w14.push_back(b);
    rep.ratio_l12.push_back(a / d);
    rep.ratio_w14.push_back(b / d);
  }
  if (rep.all_converged) {
    rep.spread_l12 = spread(rep.ratio_l12);
    rep.spread_w14 = spread(rep.ratio_w14);
  } else {
    rep.spread_l12 = rep.spread_w14 = NAN;
  }
  return rep;
}

NormComparison norm_comparison_4d_6d(const CorotationalData& data) {
  const RadialGrid& g = *data.grid;
  const double R = data.R();
  const Eigen::VectorXcd f = data.f.cast<cplx>();
  NormComparison c;
  c.norm6 = sobolev_norm(f, {2, 6, R}, g);
  // h = r f: h_r = F + rho F', R Lap_4 h = rho F'' + 5 F' + 3 F / rho in rho = r / R
  const Eigen::VectorXd F = g.gl_eval0 * data.f, F1 = g.gl_eval1 * data.f, F2 = g.gl_eval2 * data.f;
  double s = 0.0;
  for (Eigen::Index k = 0; k < g.gl_nodes.size(); ++k) {
    const double r = g.gl_nodes(k);
    const double h = R * r * F(k), hr = F(k) + r * F1(k), lap = (r * F2(k) + 5.0 * F1(k) + 3.0 * F(k) / r) / R;
    s += g.gl_weights(k) * r * r * r * (h * h + hr * hr + lap * lap);
  }
  c.norm4 = std::sqrt(std::pow(R, 4) * s);
  c.ratio = c.norm6 > 0.0 ? c.norm4 / c.norm6 : NAN;
  return c;
}

}  // namespace blowup
