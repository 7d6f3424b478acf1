#pragma once
#include <Eigen/Dense>

#include "qumode/errors.hpp"

namespace qm {

// Coefficients (a, b) of the exact six-factor squeeze decomposition
//   S(r) = e^{-i(a/2)X^2} e^{i(a/2)P^2} e^{i(b/2)X^2} e^{-i(b/2)P^2}
//          e^{-i(a/2)X^2} e^{i(a/2)P^2},   r >= 0.
// In the 2x2 SL(2,R) representation (h = diag(1,-1), e upper, f lower
// shear generator) the factors map to F(-a)E(-a)F(b)E(b)F(-a)E(-a) with
// E(t) = [[1,t],[0,1]], F(t) = [[1,0],[t,1]], and the product must equal
// diag(e^{-r}, e^{r}). With A = F(-a)E(-a), B = F(b)E(b), W = A B A is
// symmetric, leaving the two residuals below.
struct SqueezeCoefficients {
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // max abs of the two equation residuals
};

// Residuals of the coefficient system: r1 = W00 - e^{-r} (diagonal match),
// r2 = W01 (off-diagonal vanishes).
void squeeze_residuals(double a, double b, double r, double& r1, double& r2);

// Damped Newton with continuation in r from 0 (step 0.01, damping 0.5,
// max 200 iterations per step). Requires 0 <= r <= 3.
SqueezeCoefficients solve_squeeze_coeffs(double r);

// The 2x2 product F(-a)E(-a)F(b)E(b)F(-a)E(-a), for oracle checks.
Eigen::Matrix2d sl2r_product(double a, double b);

// X and P in the Fock basis truncated at `cutoff` (mass mu).
Eigen::MatrixXcd fock_position(int cutoff, double mu);
Eigen::MatrixXcd fock_momentum(int cutoff, double mu);

// exp(i*theta*A) for hermitian A via eigendecomposition.
Eigen::MatrixXcd herm_exp(const Eigen::MatrixXcd& A, double theta);

// Max-abs error of the four-factor split-step squeeze approximation
//   e^{-i(s)X^2} e^{i(s)P^2} e^{i(s)X^2} e^{-i(s)P^2}, s = sqrt(r)/2,
// against exp(i(r/2)(XP+PX)) in the Fock basis truncated at `cutoff`.
double trotter_error_fock(double r, int cutoff, double mu = 1.0);

// Same oracle for the exact six-factor decomposition.
double exact_error_fock(double r, int cutoff, double mu = 1.0);

}  // namespace qm
