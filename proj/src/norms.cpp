#include "blowup/norms.hpp"

#include <cmath>
#include <limits>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

enum class Field { Value, D1, D2, Lap };

// Field of the even interpolant evaluated at the Gauss-Legendre points.
Eigen::VectorXcd at_gl(const Eigen::VectorXcd& f, const RadialGrid& g, Field field, int d = 6) {
  auto apply = [&f](const Eigen::MatrixXd& E) {
    Eigen::VectorXcd out(E.rows());
    out.real() = E * f.real();
    out.imag() = E * f.imag();
    return out;
  };
  switch (field) {
    case Field::Value: return apply(g.gl_eval0);
    case Field::D1: return apply(g.gl_eval1);
    case Field::D2: return apply(g.gl_eval2);
    case Field::Lap: {
      Eigen::VectorXcd out = apply(g.gl_eval2);
      out.array() += (d - 1.0) * apply(g.gl_eval1).array() / g.gl_nodes.array().cast<cplx>();
      return out;
    }
  }
  return {};
}

Eigen::VectorXd gl_weight(const RadialGrid& g, int k) {
  return (g.gl_weights.array() * g.gl_nodes.array().pow(k)).matrix();
}

cplx form(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, const RadialGrid& g, int k) {
  return (gl_weight(g, k).cast<cplx>().array() * a.array() * b.conjugate().array()).sum();
}

double form_sq(const Eigen::VectorXcd& a, const RadialGrid& g, int k) {
  return gl_weight(g, k).dot(a.cwiseAbs2());
}

}  // namespace

void SobolevSpec::validate() const {
  if (k < 0 || k > 2) throw Error(ErrorKind::Configuration, "Sobolev order must be 0, 1 or 2");
  if (d != 4 && d != 6) throw Error(ErrorKind::Configuration, "radial dimension must be 4 or 6");
  if (!(R > 0.0)) throw Error(ErrorKind::Configuration, "ball radius must be positive");
}

Eigen::MatrixXd radial_laplacian(const RadialGrid& g, int d) {
  Eigen::MatrixXd L = g.d2;
  for (int i = 1; i < g.n; ++i) L.row(i) += ((d - 1.0) / g.nodes(i)) * g.d1.row(i);
  L.row(0) = d * g.d2.row(0);
  return L;
}

double sobolev_norm(const Eigen::VectorXcd& f, const SobolevSpec& spec, const RadialGrid& g) {
  spec.validate();
  const int w = spec.d - 1;
  const double R = spec.R;
  double s = std::pow(R, spec.d) * form_sq(at_gl(f, g, Field::Value), g, w);
  if (spec.k >= 1) s += std::pow(R, spec.d - 2) * form_sq(at_gl(f, g, Field::D1), g, w);
  if (spec.k >= 2) s += std::pow(R, spec.d - 4) * form_sq(at_gl(f, g, Field::Lap, spec.d), g, w);
  return std::sqrt(s);
}

cplx h_inner(const StatePair& u, const StatePair& v) {
  require_same_grid(u, v);
  const RadialGrid& g = *u.grid;
  cplx s = 0.0;
  for (Field f : {Field::Value, Field::D1, Field::Lap}) s += form(at_gl(u.phi1, g, f), at_gl(v.phi1, g, f), g, 5);
  for (Field f : {Field::Value, Field::D1}) s += form(at_gl(u.phi2, g, f), at_gl(v.phi2, g, f), g, 5);
  return s;
}

double h_norm(const StatePair& u) { return std::sqrt(std::max(0.0, h_inner(u, u).real())); }

cplx htilde_inner(const StatePair& u, const StatePair& v) {
  require_same_grid(u, v);
  const RadialGrid& g = *u.grid;
  const int last = g.n - 1;
  cplx s = 2.0 * form(at_gl(u.phi1, g, Field::D2), at_gl(v.phi1, g, Field::D2), g, 5);
  s += 10.0 * form(at_gl(u.phi1, g, Field::D1), at_gl(v.phi1, g, Field::D1), g, 3);
  s += 2.0 * form(at_gl(u.phi2, g, Field::D1), at_gl(v.phi2, g, Field::D1), g, 5);
  s += u.phi1(last) * std::conj(v.phi1(last)) + u.phi2(last) * std::conj(v.phi2(last));
  return s;
}

double htilde_norm(const StatePair& u) { return std::sqrt(std::max(0.0, htilde_inner(u, u).real())); }

double lq_norm(const Eigen::VectorXcd& f, double q, const RadialGrid& g, int weight_power, double R) {
  if (std::isinf(q)) return f.cwiseAbs().maxCoeff();
  Eigen::VectorXd p = f.cwiseAbs().array().pow(q).matrix();
  const double integral = std::pow(R, weight_power + 1) * g.weight(weight_power).dot(p);
  return std::pow(std::max(integral, 0.0), 1.0 / q);
}

double hardy_ratio(const Eigen::VectorXcd& f, HardyVariant variant, const RadialGrid& g, double R) {
  double num = 0.0, den = 0.0;
  switch (variant) {
    case HardyVariant::L2_weight_rho:
      num = R * R * form_sq(at_gl(f, g, Field::Value), g, 1);
      den = std::pow(sobolev_norm(f, {2, 6, R}, g), 2);
      break;
    case HardyVariant::H1_weight_rho3:
      num = R * R * form_sq(at_gl(f, g, Field::D1), g, 3);
      den = std::pow(sobolev_norm(f, {2, 6, R}, g), 2);
      break;
    case HardyVariant::d4:
      num = R * R * form_sq(at_gl(f, g, Field::Value), g, 1);
      den = std::pow(sobolev_norm(f, {1, 4, R}, g), 2);
      break;
    case HardyVariant::d6:
      num = std::pow(R, 4) * form_sq(at_gl(f, g, Field::Value), g, 3);
      den = std::pow(sobolev_norm(f, {1, 6, R}, g), 2);
      break;
  }
  if (!(den > std::numeric_limits<double>::min())) throw Error(ErrorKind::UndefinedRatio, "zero denominator in Hardy ratio");
  return num / den;
}

}  // namespace blowup

namespace blowup {

HGram h_gram(const RadialGrid& g) {
  const Eigen::MatrixXd W = gl_weight(g, 5).asDiagonal();
  Eigen::MatrixXd EL = g.gl_eval2;
  for (Eigen::Index j = 0; j < EL.rows(); ++j) EL.row(j) += (5.0 / g.gl_nodes(j)) * g.gl_eval1.row(j);
  HGram out;
  out.G2 = g.gl_eval0.transpose() * W * g.gl_eval0 + g.gl_eval1.transpose() * W * g.gl_eval1;
  out.G1 = out.G2 + EL.transpose() * W * EL;
  return out;
}

Eigen::MatrixXd HGram::stacked() const {
  const auto n = G1.rows();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  G.topLeftCorner(n, n) = G1;
  G.bottomRightCorner(n, n) = G2;
  return G;
}

}  // namespace blowup
