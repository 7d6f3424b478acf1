#include "qumode/squeeze.hpp"

#include <cmath>

namespace qm {

void squeeze_residuals(double a, double b, double r, double& r1, double& r2) {
  // W = A B A with A = F(-a)E(-a) = [[1,-a],[-a,a^2+1]],
  // B = F(b)E(b) = [[1,b],[b,b^2+1]]; W is symmetric.
  // W00 = a^2 b^2 + a^2 - 2ab + 1
  // W01 = -a(a^2+1) b^2 + (2a^2+1) b - a(a^2+2)
  r1 = a * a * b * b + a * a - 2.0 * a * b + 1.0 - std::exp(-r);
  r2 = -a * (a * a + 1.0) * b * b + (2.0 * a * a + 1.0) * b -
       a * (a * a + 2.0);
}

Eigen::Matrix2d sl2r_product(double a, double b) {
  Eigen::Matrix2d E, F, A, B;
  E << 1, -a, 0, 1;
  F << 1, 0, -a, 1;
  A = F * E;
  E << 1, b, 0, 1;
  F << 1, 0, b, 1;
  B = F * E;
  return A * B * A;
}

namespace {

bool newton_solve(double r, double& a, double& b, double& resid) {
  double r1, r2;
  squeeze_residuals(a, b, r, r1, r2);
  double res = std::max(std::abs(r1), std::abs(r2));
  for (int it = 0; it < 200; ++it) {
    if (res < 1e-13) break;
    // Jacobian of (r1, r2) wrt (a, b).
    double j11 = 2.0 * a * b * b + 2.0 * a - 2.0 * b;
    double j12 = 2.0 * a * a * b - 2.0 * a;
    double j21 = -(3.0 * a * a + 1.0) * b * b + 4.0 * a * b -
                 (3.0 * a * a + 2.0);
    double j22 = -2.0 * a * (a * a + 1.0) * b + (2.0 * a * a + 1.0);
    double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) return false;
    double da = (-r1 * j22 + r2 * j12) / det;
    double db = (-r2 * j11 + r1 * j21) / det;
    double step = 1.0;
    for (int k = 0; k < 60; ++k) {
      double na = a + step * da, nb = b + step * db;
      double n1, n2;
      squeeze_residuals(na, nb, r, n1, n2);
      double nres = std::max(std::abs(n1), std::abs(n2));
      if (nres < res || nres < 1e-13) {
        a = na;
        b = nb;
        r1 = n1;
        r2 = n2;
        res = nres;
        break;
      }
      step *= 0.5;  // damp on residual increase
      if (k == 59) return false;
    }
  }
  resid = res;
  return res < 1e-10;
}

}  // namespace

SqueezeCoefficients solve_squeeze_coeffs(double r) {
  if (r < 0.0 || r > 3.0)
    throw validation_error("solve_squeeze_coeffs: r must be in [0, 3]");
  SqueezeCoefficients out;
  out.r = r;
  if (r == 0.0) return out;
  double a = 0.0, b = 0.0, resid = 0.0;
  const double step = 0.01;
  double cur = 0.0;
  bool first = true;
  while (cur < r - 1e-15) {
    cur = std::min(cur + step, r);
    if (first) {
      // Leading-order branch through the origin: a = sqrt(r/3), b = 2a.
      a = std::sqrt(cur / 3.0);
      b = 2.0 * a;
      first = false;
    }
    if (!newton_solve(cur, a, b, resid))
      throw solver_error("solve_squeeze_coeffs: Newton failed at r = " +
                         std::to_string(cur) + " (residual " +
                         std::to_string(resid) + ")");
  }
  out.a = a;
  out.b = b;
  out.residual = resid;
  return out;
}

Eigen::MatrixXcd fock_position(int cutoff, double mu) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  const double s = 1.0 / std::sqrt(2.0 * mu);
  for (int n = 0; n + 1 < cutoff; ++n) {
    X(n, n + 1) = s * std::sqrt(double(n + 1));
    X(n + 1, n) = s * std::sqrt(double(n + 1));
  }
  return X;
}

Eigen::MatrixXcd fock_momentum(int cutoff, double mu) {
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  const double s = std::sqrt(mu / 2.0);
  const std::complex<double> i(0.0, 1.0);
  for (int n = 0; n + 1 < cutoff; ++n) {
    P(n + 1, n) = i * s * std::sqrt(double(n + 1));   // creation part
    P(n, n + 1) = -i * s * std::sqrt(double(n + 1));  // annihilation part
  }
  return P;
}

Eigen::MatrixXcd herm_exp(const Eigen::MatrixXcd& A, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  const std::complex<double> i(0.0, 1.0);
  Eigen::VectorXcd ph(A.rows());
  for (int k = 0; k < A.rows(); ++k)
    ph[k] = std::exp(i * theta * es.eigenvalues()[k]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Both error oracles work in a larger Fock space (8x the requested cutoff) so
// that the boundary artifacts of the outer truncation never reach the
// reported block; the error is then the max-abs matrix element over the
// cutoff x cutoff block.
Eigen::MatrixXcd squeeze_oracle_fock(double r, int dim, double mu) {
  Eigen::MatrixXcd X = fock_position(dim, mu);
  Eigen::MatrixXcd P = fock_momentum(dim, mu);
  Eigen::MatrixXcd K = X * P + P * X;
  K = 0.5 * (K + K.adjoint().eval());
  return herm_exp(K, 0.5 * r);
}

}  // namespace

double trotter_error_fock(double r, int cutoff, double mu) {
  if (r < 0.0) throw validation_error("trotter_error_fock: r must be >= 0");
  const int dim = 8 * cutoff;
  Eigen::MatrixXcd X2 = fock_position(dim, mu);
  X2 = (X2 * X2).eval();
  Eigen::MatrixXcd P2 = fock_momentum(dim, mu);
  P2 = (P2 * P2).eval();
  const double s = 0.5 * std::sqrt(r);
  Eigen::MatrixXcd U = herm_exp(X2, -s) * herm_exp(P2, s) * herm_exp(X2, s) *
                       herm_exp(P2, -s);
  return (U - squeeze_oracle_fock(r, dim, mu))
      .topLeftCorner(cutoff, cutoff)
      .cwiseAbs()
      .maxCoeff();
}

double exact_error_fock(double r, int cutoff, double mu) {
  SqueezeCoefficients sc = solve_squeeze_coeffs(std::abs(r));
  const int dim = 8 * cutoff;
  Eigen::MatrixXcd X2 = fock_position(dim, mu);
  X2 = (X2 * X2).eval();
  Eigen::MatrixXcd P2 = fock_momentum(dim, mu);
  P2 = (P2 * P2).eval();
  if (r < 0.0) std::swap(X2, P2);
  const double a = sc.a, b = sc.b;
  Eigen::MatrixXcd U = herm_exp(X2, -0.5 * a) * herm_exp(P2, 0.5 * a) *
                       herm_exp(X2, 0.5 * b) * herm_exp(P2, -0.5 * b) *
                       herm_exp(X2, -0.5 * a) * herm_exp(P2, 0.5 * a);
  return (U - squeeze_oracle_fock(r, dim, mu))
      .topLeftCorner(cutoff, cutoff)
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace qm
