#pragma once

#include <Eigen/Dense>

#include "blowup/grid.hpp"
#include "blowup/state.hpp"

namespace blowup {

struct SobolevSpec {
  int k = 2;
  int d = 6;
  double R = 1.0;
  void validate() const;
};

// Radial Laplacian f'' + (d-1)/rho f' on the unit grid, origin row d f''(0).
Eigen::MatrixXd radial_laplacian(const RadialGrid& g, int d);

// Samples are taken at R*nodes; derivatives are rescaled accordingly.
double sobolev_norm(const Eigen::VectorXcd& f, const SobolevSpec& spec, const RadialGrid& g);

// Standard inner product of H = H^2 x H^1 (B^6_1), radial form.
cplx h_inner(const StatePair& u, const StatePair& v);
double h_norm(const StatePair& u);

cplx htilde_inner(const StatePair& u, const StatePair& v);
double htilde_norm(const StatePair& u);

// (int_0^R |f|^q r^w dr)^(1/q), samples at R*nodes. q = inf gives the max.
double lq_norm(const Eigen::VectorXcd& f, double q, const RadialGrid& g, int weight_power = 5, double R = 1.0);

enum class HardyVariant {
  L2_weight_rho,   // int |f|^2 rho   / ||f||^2_{H^2(B^6_R)}
  H1_weight_rho3,  // int |f'|^2 rho^3 / ||f||^2_{H^2(B^6_R)}
  d4,              // int |f|^2 r     / ||f||^2_{H^1(B^4_R)}
  d6,              // int |f|^2 r^3   / ||f||^2_{H^1(B^6_R)}
};

// Throws UndefinedRatio when the denominator vanishes.
double hardy_ratio(const Eigen::VectorXcd& f, HardyVariant variant, const RadialGrid& g, double R = 1.0);

}  // namespace blowup

namespace blowup {

// Gram matrices of the H inner product: h_inner(u,v) = u1^T G1 conj(v1) + u2^T G2 conj(v2).
struct HGram {
  Eigen::MatrixXd G1, G2;
  // Block-diagonal 2n x 2n form.
  Eigen::MatrixXd stacked() const;
};
HGram h_gram(const RadialGrid& g);

}  // namespace blowup
