#pragma once

#include <Eigen/Dense>
#include <functional>

#include "blowup/grid.hpp"
#include "blowup/state.hpp"

namespace blowup {

struct BlowupParam {
  double T = 1.0;
  // Throws Domain outside [1/2, 3/2].
  void validate() const;
};

struct ValueDeriv {
  double value = 0.0;
  double deriv = 0.0;
};

// u_*^T(t,r) = (2/r) arctan(r/(sqrt2 (T-t))) and its radial derivative.
ValueDeriv profile_physical(double t, double r, double T);
// Time derivative of u_*^T.
double profile_physical_dt(double t, double r, double T);

struct ProfilePair {
  double psi1 = 0.0;
  double psi2 = 0.0;
};

ProfilePair profile_similarity(double rho);
// d/drho of psi*_1.
double profile_similarity_d1(double rho);
StatePair profile_state(const GridPtr& grid);

ProfilePair gauge_mode(double rho);
StatePair gauge_state(const GridPtr& grid);

inline double potential_value(double rho) { return 48.0 / ((rho * rho + 2.0) * (rho * rho + 2.0)); }

struct SimilarityPoint {
  double tau = 0.0;
  double rho = 0.0;
};
struct PhysicalPoint {
  double t = 0.0;
  double r = 0.0;
};

SimilarityPoint to_similarity(double t, double r, double T);
PhysicalPoint from_similarity(double tau, double rho, double T);

// Corotational data (f, g) sampled on the ball of radius 1 + delta.
struct CorotationalData {
  GridPtr grid;  // unit grid; the sample at node i sits at radius R*nodes(i)
  double delta = 0.1;
  Eigen::VectorXd f;
  Eigen::VectorXd g;

  double R() const { return 1.0 + delta; }
  double f_at(double r) const;
  double g_at(double r) const;
  // Throws Domain when |r f(r)| > 3/2 at a sample.
  void validate() const;
};

CorotationalData sample_corotational(const std::function<double(double)>& f, const std::function<double(double)>& g,
                                     int n, double delta = 0.1);
// (u_*^T(0,.), d_t u_*^T(0,.))
CorotationalData profile_data(double T, int n, double delta = 0.1);

// Sphere-valued data stored as radial angular profiles, with the five
// components evaluated along the direction e_1.
struct SphereData {
  GridPtr grid;
  double delta = 0.1;
  Eigen::VectorXd theta;    // |x| f
  Eigen::VectorXd theta_t;  // |x| g
  Eigen::MatrixXd F;        // n x 5
  Eigen::MatrixXd G;        // n x 5
};

SphereData lift_corotational(const CorotationalData& data);
CorotationalData reduce_corotational(const SphereData& data);

// Components of F_* at |xi| for d = 4, along e_1.
Eigen::Matrix<double, 5, 1> sphere_profile(double xi);

}  // namespace blowup
