#pragma once

#include <Eigen/Dense>

#include "blowup/grid.hpp"

namespace blowup {

// N(rho,u) = -(3 sin(2 rho u) - 6 rho u)/(2 rho^3).
double nonlinearity(double rho, double u);

// Remainder around the static solution:
// n(rho,x) = N(rho, psi*_1 + x) - N(rho, psi*_1) - V(rho) x, V = 48/(rho^2+2)^2.
// Evaluated in a form where the linear part cancels analytically.
double perturbation_nonlinearity(double rho, double x);

Eigen::VectorXd nonlinearity(const RadialGrid& g, const Eigen::VectorXd& u);
Eigen::VectorXd perturbation_nonlinearity(const RadialGrid& g, const Eigen::VectorXd& x);

// (sin h - h)/h^3, with a series branch for small h.
double sin_minus_id_over_cube(double h);

}  // namespace blowup
