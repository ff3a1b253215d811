#pragma once

#include <Eigen/Dense>

#include "blowup/grid.hpp"

namespace blowup {

// Two-component radial field (phi1, phi2) sampled on a grid.
struct StatePair {
  GridPtr grid;
  Eigen::VectorXcd phi1;
  Eigen::VectorXcd phi2;

  StatePair() = default;
  StatePair(GridPtr g) : grid(std::move(g)), phi1(Eigen::VectorXcd::Zero(grid->n)), phi2(Eigen::VectorXcd::Zero(grid->n)) {}
  StatePair(GridPtr g, Eigen::VectorXcd a, Eigen::VectorXcd b) : grid(std::move(g)), phi1(std::move(a)), phi2(std::move(b)) {}

  int n() const { return grid->n; }
  Eigen::VectorXcd stacked() const;
  static StatePair from_stacked(GridPtr g, const Eigen::VectorXcd& v);

  bool finite() const;
  // |d1 phi1| at rho = 0 computed with the odd-extension derivative of the
  // raw samples: large values flag a non-even (irregular) field.
  double parity_residual() const;
  // Throws Usage if sizes mismatch or entries are not finite.
  void validate(double parity_tol = -1.0) const;

  StatePair& operator+=(const StatePair& o);
  StatePair& operator-=(const StatePair& o);
  StatePair& operator*=(cplx s);
};

StatePair operator+(StatePair a, const StatePair& b);
StatePair operator-(StatePair a, const StatePair& b);
StatePair operator*(cplx s, StatePair a);

void require_same_grid(const StatePair& a, const StatePair& b);

}  // namespace blowup
