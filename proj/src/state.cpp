#include "blowup/state.hpp"

#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

Eigen::VectorXcd StatePair::stacked() const {
  Eigen::VectorXcd v(2 * n());
  v << phi1, phi2;
  return v;
}

StatePair StatePair::from_stacked(GridPtr g, const Eigen::VectorXcd& v) {
  const int n = g->n;
  return StatePair(g, v.head(n), v.tail(n));
}

bool StatePair::finite() const { return phi1.allFinite() && phi2.allFinite(); }

double StatePair::parity_residual() const {
  // slope of the quadratic through the first three nodes
  const auto& r = grid->nodes;
  const double x1 = r(1), x2 = r(2);
  const cplx f0 = phi1(0), f1 = phi1(1), f2 = phi1(2);
  const cplx b = ((f1 - f0) * x2 * x2 - (f2 - f0) * x1 * x1) / (x1 * x2 * (x2 - x1));
  return std::abs(b);
}

void StatePair::validate(double parity_tol) const {
  if (!grid) throw Error(ErrorKind::Usage, "state has no grid");
  if (phi1.size() != grid->n || phi2.size() != grid->n) throw Error(ErrorKind::Usage, "state size does not match grid");
  if (!finite()) throw Error(ErrorKind::Usage, "state has non-finite entries");
  if (parity_tol > 0.0 && parity_residual() > parity_tol) {
    throw Error(ErrorKind::Usage, "state is not even at the centre");
  }
}

void require_same_grid(const StatePair& a, const StatePair& b) {
  if (a.grid != b.grid && (a.grid->n != b.grid->n || a.grid->nodes != b.grid->nodes)) {
    throw Error(ErrorKind::Usage, "states live on different grids");
  }
}

StatePair& StatePair::operator+=(const StatePair& o) {
  require_same_grid(*this, o);
  phi1 += o.phi1;
  phi2 += o.phi2;
  return *this;
}

StatePair& StatePair::operator-=(const StatePair& o) {
  require_same_grid(*this, o);
  phi1 -= o.phi1;
  phi2 -= o.phi2;
  return *this;
}

StatePair& StatePair::operator*=(cplx s) {
  phi1 *= s;
  phi2 *= s;
  return *this;
}

StatePair operator+(StatePair a, const StatePair& b) { return a += b; }
StatePair operator-(StatePair a, const StatePair& b) { return a -= b; }
StatePair operator*(cplx s, StatePair a) { return a *= s; }

}  // namespace blowup
