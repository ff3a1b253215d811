#include "blowup/lab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "blowup/diagnostics.hpp"
#include "blowup/errors.hpp"
#include "blowup/evolution.hpp"
#include "blowup/exterior.hpp"
#include "blowup/green.hpp"
#include "blowup/modulation.hpp"
#include "blowup/norms.hpp"
#include "blowup/resolvent_ode.hpp"
#include "blowup/spectrum.hpp"

namespace blowup {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Configuration, where + ": expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Configuration, where + ": expected an integer, got '" + v + "'");
  }
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult make(int criterion, const std::string& name, bool passed, const std::string& detail, json metrics) {
  CheckResult r;
  r.criterion = criterion;
  r.name = name;
  r.passed = passed;
  r.detail = detail;
  r.metrics = std::move(metrics);
  return r;
}

double max_abs(const StatePair& a) {
  return std::max(a.phi1.cwiseAbs().maxCoeff(), a.phi2.cwiseAbs().maxCoeff());
}

// Smooth right-hand sides for the resolvent comparisons.
std::vector<StatePair> resolvent_forcings(const GridPtr& g) {
  std::vector<StatePair> fs(3, StatePair(g));
  for (int i = 0; i < g->n; ++i) {
    const double r2 = g->nodes(i) * g->nodes(i);
    fs[0].phi1(i) = std::exp(-r2);
    fs[1].phi2(i) = 1.0 / (1.0 + r2);
    fs[2].phi1(i) = std::cos(2.0 * r2);
    fs[2].phi2(i) = cplx(r2, 1.0 - r2 * r2);
  }
  return fs;
}

Bump scaling_bump(const GridPtr& grid) {
  return gauge_free_bump({[](double r) { return std::exp(-4.0 * r * r); }, [](double) { return 0.0; }}, grid);
}

struct Ctx {
  const LabConfig& cfg;
  std::string out;
  std::string prefix;
  bool write() const { return !out.empty(); }
  std::string path(const std::string& name) const { return join_path(out, prefix + "." + name); }
};

CheckResult c1(const Ctx& c) {
  const int n = c.cfg.n, m = std::max(16, n / 2);
  const double coarse = profile_residual(m, Precision::digits50);
  const double fine = profile_residual(n, Precision::digits50);
  const double fine_double = profile_residual(n, Precision::double_);
  if (c.write()) {
    CsvWriter w(c.path("residual.csv"), {"n", "residual", "double_residual"});
    w.row({double(m), coarse, profile_residual(m, Precision::double_)});
    w.row({double(n), fine, fine_double});
  }
  const bool ok = fine <= 1e-9 && coarse >= 10.0 * fine;
  return make(1, "profile stationarity", ok,
              "residual n=" + std::to_string(n) + ": " + fmt(fine) + ", n=" + std::to_string(m) + ": " + fmt(coarse) +
                  " (50-digit operators; double " + fmt(fine_double) + ")",
              {{"n", n}, {"residual", fine}, {"coarse_n", m}, {"coarse_residual", coarse}, {"double_residual", fine_double}});
}

CheckResult c2(const Ctx& c) {
  const GridPtr g = build_grid(c.cfg.n);
  const StatePair gs = gauge_state(g);
  const StatePair r = assemble_generator(g, true).apply(gs) - gs;
  const double rel = max_abs(r) / max_abs(gs);
  return make(2, "gauge eigenrelation", rel <= 1e-8, "|(M-1)g|/|g| = " + fmt(rel), {{"relative_residual", rel}});
}

CheckResult c3(const Ctx& c) {
  const GridPtr gc = build_grid(c.cfg.spectrum_coarse_n), gf = build_grid(c.cfg.n);
  const OperatorMatrix Mc = assemble_generator(gc, true), Mf = assemble_generator(gf, true);
  FilterOptions fo;
  fo.match_tol = c.cfg.match_tol;
  fo.residual_tol = c.cfg.residual_tol;
  const SpectrumReport rep = filter_physical(Mc, eigenpairs(Mc), eigenpairs(Mf), fo);
  int unstable = 0;
  cplx lead = NAN;
  double gap = -INFINITY;
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    if (!rep.persistent[i]) continue;
    if (rep.eigenvalues[i].real() > 0.05) {
      ++unstable;
      lead = rep.eigenvalues[i];
    } else {
      gap = std::max(gap, rep.eigenvalues[i].real());
    }
  }
  const double jordan = jordan_residual(Mf, gauge_state(gf));
  if (c.write()) {
    CsvWriter w(c.path("eigenvalues.csv"), {"re_lambda", "im_lambda", "residual", "match_distance", "endpoint_component", "persistent"});
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
      w.row({rep.eigenvalues[i].real(), rep.eigenvalues[i].imag(), rep.residuals[i], rep.match_distance[i],
             rep.endpoint_component[i], rep.persistent[i] ? 1.0 : 0.0});
  }
  const double dist = std::abs(lead - 1.0);
  const bool ok = unstable == 1 && dist <= 1e-6 && jordan > 1e-3;
  return make(3, "unique unstable eigenvalue", ok,
              std::to_string(unstable) + " persistent eigenvalue(s) with Re > 0.05, |lambda-1| = " + fmt(dist) +
                  ", Jordan residual " + fmt(jordan) + ", stable gap " + fmt(gap),
              {{"unstable_count", unstable}, {"distance_to_one", dist}, {"jordan_residual", jordan}, {"stable_gap", gap}});
}

json certificate(const Rect& r, bool potential, const WindingResult& w) {
  return {{"rectangle", {r.re_lo, r.re_hi, r.im_lo, r.im_hi}},
          {"potential", potential},
          {"function", "(lambda - 1/2) B(lambda)"},
          {"winding", w.winding},
          {"conclusive", w.conclusive},
          {"max_phase_step", w.max_phase_step},
          {"min_modulus", w.min_modulus},
          {"samples", w.samples.size()}};
}

CheckResult c4(const Ctx& c) {
  struct Case {
    Rect rect;
    bool potential;
    int expected;
    std::string tag;
  };
  const double w = c.cfg.omega_max;
  const std::vector<Case> cases = {{{c.cfg.strip_re_lo, c.cfg.strip_re_hi, -w, w}, true, 0, "strip_potential"},
                                   {{c.cfg.strip_re_lo, c.cfg.strip_re_hi, -w, w}, false, 0, "strip_free"},
                                   {{0.5, 1.5, -1.0, 1.0}, true, 1, "eigenvalue_box"}};
  bool ok = true;
  json certs = json::array();
  std::string detail;
  for (const auto& k : cases) {
    const WindingResult r = winding_scan(k.rect, k.potential);
    ok = ok && r.conclusive && r.winding == k.expected;
    certs.push_back(certificate(k.rect, k.potential, r));
    detail += (detail.empty() ? "" : ", ") + k.tag + " " + std::to_string(r.winding) + (r.conclusive ? "" : " (inconclusive)");
    if (c.write()) {
      CsvWriter csv(c.path(k.tag + ".csv"), {"re_lambda", "im_lambda", "re_B", "im_B", "wronskian_drift"});
      for (const auto& s : r.samples) csv.row({s.lambda.real(), s.lambda.imag(), s.value.real(), s.value.imag(), s.wronskian_drift});
    }
  }
  if (c.write()) write_json(c.path("certificate.json"), certs);
  return make(4, "mode-stability winding", ok, "winding numbers: " + detail, {{"certificates", certs}});
}

CheckResult c5(const Ctx& c) {
  const cplx c0 = hypergeom_c3(0.0);
  const double e0 = std::abs(c0 + 4.0);
  const cplx K = hypergeom_c3(1.0) / mode_stability_function(cplx(0.0, 1.0), false).B;
  double worst = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("c3.csv"), std::vector<std::string>{"omega", "re_c3", "im_c3", "re_KB", "im_KB", "relative_deviation"});
  for (double om : {1.0, 5.0, 10.0}) {
    const cplx c3 = hypergeom_c3(om), kb = K * mode_stability_function(cplx(0.0, om), false).B;
    const double dev = std::abs(kb - c3) / std::abs(c3);
    worst = std::max(worst, dev);
    if (csv) csv->row({om, c3.real(), c3.imag(), kb.real(), kb.imag(), dev});
  }
  const bool ok = e0 <= 1e-10 && worst <= 1e-6;
  return make(5, "hypergeometric cross-check", ok,
              "|c3(0)+4| = " + fmt(e0) + ", K = " + fmt(K.real()) + (K.imag() >= 0 ? "+" : "") + fmt(K.imag()) +
                  "i, worst deviation " + fmt(worst),
              {{"c3_zero_error", e0}, {"K", {K.real(), K.imag()}}, {"max_relative_deviation", worst}});
}

CheckResult c6(const Ctx& c) {
  const cplx lim = large_frequency_limit();
  std::vector<double> lx, ly;
  double mod100 = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("c13.csv"), std::vector<std::string>{"omega", "re_c13", "im_c13", "re_c23", "im_c23", "error"});
  for (int k = 0; k <= 10; ++k) {
    const double om = 10.0 * std::pow(10.0, k / 10.0);
    const LargeFrequencyConnection pc = large_frequency_connection(cplx(0.0, om), c.cfg.connection_r, c.cfg.connection_rho0);
    const double err = std::abs(pc.c13 - lim);
    lx.push_back(std::log(om));
    ly.push_back(std::log(err));
    if (k == 10) mod100 = std::abs(pc.c13);
    if (csv) csv->row({om, pc.c13.real(), pc.c13.imag(), pc.c23.real(), pc.c23.imag(), err});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(lx.size());
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double rel = std::abs(mod100 - std::abs(lim)) / std::abs(lim);
  const bool ok = slope <= -0.8 && rel <= 0.03;
  return make(6, "connection asymptotics", ok, "log-log slope " + fmt(slope) + ", |c13(100)| off by " + fmt(rel),
              {{"slope", slope}, {"modulus_at_100", mod100}, {"relative_modulus_error", rel}});
}

CheckResult c7(const Ctx& c) {
  const GridPtr g = build_grid(c.cfg.n);
  const auto fs = resolvent_forcings(g);
  const OperatorMatrix M = assemble_generator(g, true), M0 = assemble_generator(g, false);
  double worst = 0.0, worst1 = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("resolvent.csv"), std::vector<std::string>{"re_lambda", "im_lambda", "forcing", "max_difference"});
  for (cplx l : {cplx(0.1, 5.0), cplx(0.2, 2.0), cplx(0.05, -7.0)}) {
    const ResolventSolver rs(M);
    for (size_t j = 0; j < fs.size(); ++j) {
      const double d = max_abs(green_resolvent(l, fs[j]) - rs.solve(l, fs[j]));
      worst = std::max(worst, d);
      if (csv) csv->row({l.real(), l.imag(), double(j), d});
    }
  }
  for (size_t j = 0; j < fs.size(); ++j) {
    const double d = max_abs(lambda1_green(fs[j]) - resolvent_solve(M0, 1.0, fs[j]));
    worst1 = std::max(worst1, d);
    if (csv) csv->row({1.0, 0.0, double(j), d});
  }
  const bool ok = worst <= 1e-6 && worst1 <= 1e-7;
  return make(7, "resolvent equivalence", ok, "Green vs collocation " + fmt(worst) + ", free lambda=1 " + fmt(worst1),
              {{"max_difference", worst}, {"lambda1_max_difference", worst1}});
}

std::vector<PolynomialState> random_states(const LabConfig& cfg, unsigned long long salt) {
  std::mt19937_64 rng(cfg.seed + salt);
  std::vector<PolynomialState> out;
  for (int k = 0; k < cfg.samples; ++k) out.push_back(random_polynomial_state(rng));
  return out;
}

CheckResult c8(const Ctx& c) {
  const GridPtr g = build_grid(c.cfg.n);
  double worst = -INFINITY;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("dissipativity.csv"), std::vector<std::string>{"sample", "re_inner", "htilde_sq"});
  int k = 0;
  for (const auto& p : random_states(c.cfg, 8)) {
    const StatePair s = p.sample(g);
    const double v = dissipativity_check(s), n2 = htilde_inner(s, s).real();
    worst = std::max(worst, v / n2);
    if (csv) csv->row({double(k++), v, n2});
  }
  return make(8, "dissipativity", worst <= 1e-8, "max Re(Lu,u)/(u,u) = " + fmt(worst), {{"max_ratio", worst}});
}

CheckResult c9(const Ctx& c) {
  const auto states = random_states(c.cfg, 9);
  const NormRatioReport a = norm_ratio_range(states, build_grid(c.cfg.n));
  const NormRatioReport b = norm_ratio_range(states, build_grid(2 * c.cfg.n));
  const double dlo = std::abs(a.min_ratio - b.min_ratio) / b.min_ratio, dhi = std::abs(a.max_ratio - b.max_ratio) / b.max_ratio;
  const bool ok = std::isfinite(a.min_ratio) && a.min_ratio > 0.0 && std::max(dlo, dhi) <= 0.05;
  if (c.write()) {
    CsvWriter w(c.path("norm_ratio.csv"), {"n", "min_ratio", "max_ratio"});
    w.row({double(c.cfg.n), a.min_ratio, a.max_ratio});
    w.row({double(2 * c.cfg.n), b.min_ratio, b.max_ratio});
  }
  return make(9, "norm equivalence", ok,
              "Htilde/H in [" + fmt(a.min_ratio) + ", " + fmt(a.max_ratio) + "], refinement change " + fmt(std::max(dlo, dhi)),
              {{"min_ratio", a.min_ratio}, {"max_ratio", a.max_ratio}, {"refinement_change", std::max(dlo, dhi)}});
}

ModulationOptions modulation_options(const LabConfig& cfg) {
  ModulationOptions o;
  o.n = cfg.modulation_n;
  o.dt_factor = cfg.dt_factor;
  return o;
}

CheckResult c10(const Ctx& c) {
  bool ok = true;
  json rows = json::array();
  std::string detail;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("gauge.csv"), std::vector<std::string>{"T_prime", "tau", "alpha"});
  for (double Tp : {0.95, 1.05}) {
    const ModulationResult m = modulate_T(profile_data(Tp, c.cfg.modulation_n + 16), 1.0, c.cfg.tau_max, modulation_options(c.cfg));
    const double err = std::abs(m.T_star - Tp);
    ok = ok && m.converged && err <= 1e-3;
    rows.push_back({{"T_prime", Tp}, {"T_star", m.T_star}, {"error", err}, {"converged", m.converged}, {"message", m.message}});
    detail += (detail.empty() ? "" : ", ") + std::string("T'=") + fmt(Tp) + " -> error " + fmt(err);
    if (csv)
      for (size_t k = 0; k < m.taus.size(); ++k) csv->row({Tp, m.taus[k], m.gauge_history[k]});
  }
  return make(10, "blowup-time recovery", ok, detail, {{"runs", rows}});
}

CheckResult c11(const Ctx& c) {
  ScalingOptions so;
  so.modulation = modulation_options(c.cfg);
  so.tau_max = c.cfg.tau_max;
  const ScalingReport r = delta_scaling_experiment(scaling_bump(build_grid(so.modulation.n)), c.cfg.deltas, so);
  if (c.write()) {
    CsvWriter w(c.path("scaling.csv"), {"delta", "T_star", "converged", "S_2_12", "S_2_4_d1", "ratio_2_12", "ratio_2_4_d1"});
    for (size_t k = 0; k < r.deltas.size(); ++k)
      w.row({r.deltas[k], r.T_star[k], r.converged[k] ? 1.0 : 0.0, r.s_l12[k], r.s_w14[k], r.ratio_l12[k], r.ratio_w14[k]});
  }
  const bool ok = r.all_converged && r.spread_l12 <= c.cfg.spread_tol && r.spread_w14 <= c.cfg.spread_tol;
  return make(11, "nonlinear stability scaling", ok,
              std::string(r.all_converged ? "all converged" : "modulation failed") + ", spread (2,12) " + fmt(r.spread_l12) +
                  ", (2,4;1) " + fmt(r.spread_w14),
              {{"deltas", r.deltas}, {"T_star", r.T_star}, {"spread_2_12", r.spread_l12}, {"spread_2_4_d1", r.spread_w14}});
}

CheckResult c12(const Ctx& c) {
  const TruncatedCone cone{0.0, 0.5, 1.0};
  const auto exact = [](double t, double r) { return profile_physical(t, r, 1.0).value; };
  const RichardsonReport rr = exterior_richardson(profile_exterior_data(1.0), cone, c.cfg.exterior_levels, exact);
  const double err = rr.finest.max_error(exact);
  const GridPtr g = build_grid(c.cfg.modulation_n);
  const StatePair phi0 = modulation_initial_state(profile_data(1.0, c.cfg.modulation_n + 16), 1.0, g);
  EvolveOptions eo;
  eo.store_every = 4;
  const double tau_end = -std::log(1.0 - cone.t1);
  const ConeTrajectory traj = evolve(phi0, tau_end, c.cfg.dt_factor / (double(g->n) * g->n), EvolutionMode::nonlinear, eo);
  const OverlapReport ov = overlap_compare(rr.finest, traj);
  if (c.write()) {
    CsvWriter w(c.path("richardson.csv"), {"levels", "difference_to_finer"});
    for (size_t k = 0; k < rr.errors.size(); ++k) w.row({double(rr.levels[k]), rr.errors[k]});
  }
  const bool ok = err <= 1e-6 && ov.max_discrepancy <= 1e-4;
  return make(12, "exterior/interior consistency", ok,
              "lattice error " + fmt(err) + " (order " + fmt(rr.observed_order) + "), overlap " + fmt(ov.max_discrepancy) +
                  " at " + std::to_string(ov.points) + " points",
              {{"lattice_error", err}, {"observed_order", rr.observed_order}, {"overlap", ov.max_discrepancy}, {"overlap_points", ov.points}});
}

CheckResult c13(const Ctx& c) {
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
  bool ok = true;
  json rows = json::array();
  std::string detail;
  std::unique_ptr<CsvWriter> csv;
  if (c.write()) csv = std::make_unique<CsvWriter>(c.path("cone_norm.csv"), std::vector<std::string>{"order", "eps", "value"});
  for (const ConeNormSpec& s : {ConeNormSpec{-5.0 / 6.0, 12.0, 0}, ConeNormSpec{-0.5, 4.0, 1}}) {
    const ConeDivergenceReport r = cone_divergence(1.0, s, eps);
    ok = ok && std::abs(r.normalized_slope - 1.0) <= 0.05 && std::abs(r.snapshot_exponent + 0.5) <= 0.02;
    rows.push_back({{"order", s.order}, {"normalized_slope", r.normalized_slope}, {"raw_slope", r.raw_slope},
                    {"snapshot_constant", r.snapshot_constant}, {"snapshot_exponent", r.snapshot_exponent}});
    detail += (detail.empty() ? "" : "; ") + std::string("order ") + std::to_string(s.order) + ": slope " +
              fmt(r.normalized_slope) + ", exponent " + fmt(r.snapshot_exponent);
    if (csv)
      for (size_t k = 0; k < eps.size(); ++k) csv->row({double(s.order), eps[k], r.values[k]});
  }
  return make(13, "weighted-cone divergence", ok, detail, {{"norms", rows}});
}

CheckResult c14(const Ctx& c) {
  std::mt19937_64 rng(c.cfg.seed + 14);
  std::uniform_real_distribution<double> amp(-3.0, 0.0);
  std::vector<std::pair<PolynomialState, PolynomialState>> polys;
  for (int k = 0; k < c.cfg.samples; ++k) {
    const double a = std::pow(10.0, amp(rng)), b = std::pow(10.0, amp(rng));
    const PolynomialState u = random_polynomial_state(rng, 5, a);
    polys.push_back({u, random_polynomial_state(rng, 5, b)});
  }
  auto report = [&](int n) {
    const GridPtr g = build_grid(n);
    std::vector<std::pair<StatePair, StatePair>> s;
    for (const auto& [u, v] : polys) s.push_back({u.sample(g), v.sample(g)});
    return nonlinearity_bound_report(s);
  };
  const NonlinearityBoundReport a = report(c.cfg.n), b = report(2 * c.cfg.n);
  const double db = std::abs(a.bound_constant - b.bound_constant) / b.bound_constant;
  const double dl = std::abs(a.lipschitz_constant - b.lipschitz_constant) / b.lipschitz_constant;
  const GridPtr g = build_grid(c.cfg.n);
  StatePair u(g);
  for (int i = 0; i < g->n; ++i) u.phi1(i) = g->nodes(i) * g->nodes(i);
  const double q2 = quadratic_scaling_ratio(u, 1e-2), q3 = quadratic_scaling_ratio(u, 1e-3);
  const double qvar = std::abs(q2 - q3) / q3;
  if (c.write()) {
    CsvWriter w(c.path("nonlinearity.csv"), {"sample", "bound_ratio", "lipschitz_ratio"});
    for (size_t k = 0; k < a.bound_ratios.size(); ++k) w.row({double(k), a.bound_ratios[k], a.lipschitz_ratios[k]});
  }
  const bool ok = a.used > 0 && std::isfinite(a.bound_constant) && std::isfinite(a.lipschitz_constant) && db <= 0.05 &&
                  dl <= 0.05 && qvar <= 0.10;
  return make(14, "nonlinearity bounds", ok,
              "constants " + fmt(a.bound_constant) + " / " + fmt(a.lipschitz_constant) + " (refinement change " +
                  fmt(std::max(db, dl)) + "), quadratic ratio variation " + fmt(qvar),
              {{"bound_constant", a.bound_constant}, {"lipschitz_constant", a.lipschitz_constant}, {"used", a.used},
               {"skipped", a.skipped}, {"refinement_change", std::max(db, dl)}, {"quadratic_variation", qvar}});
}

// Linearized flow of a gauge-free bump decays on the stable subspace.
CheckResult evolve_check(const Ctx& c) {
  const GridPtr g = build_grid(c.cfg.modulation_n);
  const Bump b = scaling_bump(g);
  StatePair phi(g);
  for (int i = 0; i < g->n; ++i) {
    phi.phi1(i) = 1e-3 * b.f(g->nodes(i));
    phi.phi2(i) = 1e-3 * b.g(g->nodes(i));
  }
  EvolveOptions eo;
  eo.store_every = 16;
  const ConeTrajectory traj = evolve(phi, c.cfg.tau_max, c.cfg.dt_factor / (double(g->n) * g->n), EvolutionMode::linearized, eo);
  const GaugeRepresenter rep = gauge_representer(g);
  const double h0 = h_norm(traj.states.front()), h1 = h_norm(traj.states.back());
  if (c.write()) {
    write_trajectory_csv(traj, c.path("trajectory.csv"));
    CsvWriter w(c.path("trace.csv"), {"tau", "h_norm", "alpha"});
    for (size_t k = 0; k < traj.states.size(); ++k)
      w.row({traj.taus[k], h_norm(traj.states[k]), gauge_projection(traj.states[k], rep).real()});
  }
  const double rate = std::log(h1 / h0) / c.cfg.tau_max;
  return make(3, "linearized decay off the gauge mode", rate < 0.0, "H-norm decay rate " + fmt(rate),
              {{"initial_h_norm", h0}, {"final_h_norm", h1}, {"rate", rate}});
}

}  // namespace

void LabConfig::validate() const {
  if (n < 16) throw Error(ErrorKind::Configuration, "n must be at least 16");
  if (spectrum_coarse_n < 16 || spectrum_coarse_n >= n) throw Error(ErrorKind::Configuration, "spectrum_coarse_n must lie in [16, n)");
  if (modulation_n < 16) throw Error(ErrorKind::Configuration, "modulation_n must be at least 16");
  if (!(dt_factor > 0.0) || dt_factor > 4.0) throw Error(ErrorKind::Configuration, "dt_factor must lie in (0, 4]");
  if (!(tau_max > 0.0)) throw Error(ErrorKind::Configuration, "tau_max must be positive");
  if (!(omega_max > 0.0)) throw Error(ErrorKind::Configuration, "omega_max must be positive");
  if (!(strip_re_hi > strip_re_lo)) throw Error(ErrorKind::Configuration, "empty strip");
  if (!(parity_tol > 0.0) || !(match_tol > 0.0) || !(residual_tol > 0.0) || !(spread_tol > 0.0))
    throw Error(ErrorKind::Configuration, "tolerances must be positive");
  if (!(connection_r > 0.0) || !(connection_rho0 >= 0.0 && connection_rho0 < 1.0))
    throw Error(ErrorKind::Configuration, "connection_r must be positive and connection_rho0 in [0,1)");
  if (exterior_levels < 8) throw Error(ErrorKind::Configuration, "exterior_levels must be at least 8");
  if (samples < 1) throw Error(ErrorKind::Configuration, "samples must be positive");
  if (deltas.empty()) throw Error(ErrorKind::Configuration, "deltas must not be empty");
  for (size_t k = 0; k < deltas.size(); ++k)
    if (!(deltas[k] > 0.0) || (k > 0 && !(deltas[k] < deltas[k - 1])))
      throw Error(ErrorKind::Configuration, "deltas must be positive and decreasing");
}

json LabConfig::to_json() const {
  return {{"n", n},
          {"spectrum_coarse_n", spectrum_coarse_n},
          {"dt_factor", dt_factor},
          {"tau_max", tau_max},
          {"deltas", deltas},
          {"omega_max", omega_max},
          {"strip_re_lo", strip_re_lo},
          {"strip_re_hi", strip_re_hi},
          {"parity_tol", parity_tol},
          {"match_tol", match_tol},
          {"residual_tol", residual_tol},
          {"spread_tol", spread_tol},
          {"connection_r", connection_r},
          {"connection_rho0", connection_rho0},
          {"modulation_n", modulation_n},
          {"exterior_levels", exterior_levels},
          {"samples", samples},
          {"seed", seed},
          {"out_dir", out_dir}};
}

LabConfig parse_config(const std::string& text) {
  LabConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno);
    if (eq == std::string::npos) throw Error(ErrorKind::Configuration, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "n") c.n = static_cast<int>(parse_int(val, where));
    else if (key == "spectrum_coarse_n") c.spectrum_coarse_n = static_cast<int>(parse_int(val, where));
    else if (key == "dt_factor") c.dt_factor = parse_double(val, where);
    else if (key == "tau_max") c.tau_max = parse_double(val, where);
    else if (key == "deltas") {
      c.deltas.clear();
      std::istringstream ds(val);
      std::string item;
      while (std::getline(ds, item, ',')) c.deltas.push_back(parse_double(trim(item), where));
    } else if (key == "omega_max") c.omega_max = parse_double(val, where);
    else if (key == "strip_re_lo") c.strip_re_lo = parse_double(val, where);
    else if (key == "strip_re_hi") c.strip_re_hi = parse_double(val, where);
    else if (key == "parity_tol") c.parity_tol = parse_double(val, where);
    else if (key == "match_tol") c.match_tol = parse_double(val, where);
    else if (key == "residual_tol") c.residual_tol = parse_double(val, where);
    else if (key == "spread_tol") c.spread_tol = parse_double(val, where);
    else if (key == "connection_r") c.connection_r = parse_double(val, where);
    else if (key == "connection_rho0") c.connection_rho0 = parse_double(val, where);
    else if (key == "modulation_n") c.modulation_n = static_cast<int>(parse_int(val, where));
    else if (key == "exterior_levels") c.exterior_levels = static_cast<int>(parse_int(val, where));
    else if (key == "samples") c.samples = static_cast<int>(parse_int(val, where));
    else if (key == "seed") {
      const long long s = parse_int(val, where);
      if (s < 0) throw Error(ErrorKind::Configuration, where + ": seed must be nonnegative");
      c.seed = static_cast<unsigned long long>(s);
    } else if (key == "out_dir") c.out_dir = val;
    else throw Error(ErrorKind::Configuration, where + ": unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

LabConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Configuration, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CheckResult run_check(const std::string& key, const LabConfig& cfg, const std::string& out_dir, const std::string& scenario) {
  using Fn = CheckResult (*)(const Ctx&);
  static const std::map<std::string, Fn> table = {
      {"c1", c1},   {"c2", c2},   {"c3", c3},   {"c4", c4},   {"c5", c5},   {"c6", c6},   {"c7", c7},    {"c8", c8},
      {"c9", c9},   {"c10", c10}, {"c11", c11}, {"c12", c12}, {"c13", c13}, {"c14", c14}, {"evolve", evolve_check}};
  const auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorKind::Usage, "unknown check '" + key + "'");
  cfg.validate();
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  return it->second(Ctx{cfg, out_dir, scenario.empty() ? key : scenario});
}

CheckResult run_criterion(int k, const LabConfig& cfg, const std::string& out_dir, const std::string& scenario) {
  if (k < 1 || k > 14) throw Error(ErrorKind::Usage, "criteria are numbered 1 to 14");
  return run_check("c" + std::to_string(k), cfg, out_dir, scenario);
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"verify-profile", "spectrum",  "scan-modes",    "connection", "evolve",
                                                 "modulate",       "strichartz", "exterior", "delta-scaling", "all"};
  return names;
}

std::vector<std::string> scenario_checks(const std::string& name) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"verify-profile", {"c1", "c2"}},
      {"spectrum", {"c3"}},
      {"scan-modes", {"c4"}},
      {"connection", {"c5", "c6", "c7"}},
      {"evolve", {"evolve"}},
      {"modulate", {"c10"}},
      {"strichartz", {"c8", "c9", "c13", "c14"}},
      {"exterior", {"c12"}},
      {"delta-scaling", {"c11"}},
  };
  if (name == "all") {
    std::vector<std::string> out;
    for (const auto& s : scenario_names())
      if (s != "all")
        for (const auto& k : table.at(s)) out.push_back(k);
    return out;
  }
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::Usage, "unknown scenario '" + name + "'");
  return it->second;
}

bool ScenarioResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ScenarioResult run_scenario(const std::string& name, const LabConfig& cfg) {
  const std::vector<std::string> keys = scenario_checks(name);
  cfg.validate();
  ScenarioResult res;
  res.scenario = name;
  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& k : keys) {
    std::string prefix = name;
    if (name == "all")
      for (const auto& s : scenario_names())
        if (s != "all") {
          const auto ks = scenario_checks(s);
          if (std::find(ks.begin(), ks.end(), k) != ks.end()) prefix = s;
        }
    try {
      res.checks.push_back(run_check(k, cfg, cfg.out_dir, prefix));
    } catch (const Error& e) {
      CheckResult r;
      r.criterion = k == "evolve" ? 3 : std::stoi(k.substr(1));
      r.name = k;
      r.passed = false;
      r.detail = e.what();
      res.checks.push_back(r);
    }
  }
  json checks = json::array();
  for (const auto& c : res.checks)
    checks.push_back({{"criterion", c.criterion}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"metrics", c.metrics}});
  write_json(join_path(cfg.out_dir, name + ".summary.json"),
             {{"scenario", name}, {"passed", res.passed()}, {"config", cfg.to_json()}, {"checks", checks}});
  return res;
}

}  // namespace blowup
