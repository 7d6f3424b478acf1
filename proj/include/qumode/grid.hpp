#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "qumode/errors.hpp"

namespace qm {

using cd = std::complex<double>;

// Discretization constants for an n_q-qubit register holding one qumode of
// boson mass mu. N_x = 2^n_q grid points at spacing delta_x, conjugate spacing
// delta_p = mu*delta_x, support parameter L = sqrt(pi*N_x/2). The identity
// delta_x*delta_p*N_x = 2*pi holds exactly.
struct GridSpec {
  int n_q = 0;
  double mu = 1.0;
  int N_x = 0;
  double delta_x = 0.0;
  double delta_p = 0.0;
  double L = 0.0;

  // Centered grid points: x_j = (j - (N_x-1)/2) * delta_x, j = 0..N_x-1.
  double x(int j) const { return (j - 0.5 * (N_x - 1)) * delta_x; }
  double p(int m) const { return (m - 0.5 * (N_x - 1)) * delta_p; }
};

GridSpec make_grid(int n_q, double mu);

// Order-n Hermite-Gaussian for mass mu, phi_0(x) = (mu/pi)^{1/4} e^{-mu x^2/2},
// evaluated by the normalized three-term recurrence (stable up to n = 512).
double fock_wavefunction(int n, double mu, double x);

// Momentum-space counterpart: hat(phi)_n(p) = (-i)^n phi_n(p/mu)/sqrt(mu),
// with hat(f)(p) = (2pi)^{-1/2} \int f(x) e^{-ipx} dx.
cd fock_momentum_wavefunction(int n, double mu, double p);

struct SupportRadius {
  int n = 0;
  double eps = 0.0;
  double L_eps = 0.0;
  double mu = 1.0;
};

// Minimal L (to bisection resolution 1e-3) such that both the position tail
// outside [-L/sqrt(mu), L/sqrt(mu)] and the momentum tail outside
// [-L*sqrt(mu), L*sqrt(mu)] have norm <= eps. For Hermite-Gaussians the two
// tails coincide under the Fourier transform, so one quadrature suffices.
SupportRadius support_radius(int n, double eps, double mu);

struct FockSpectrumWeight {
  int N_b = 0;
  double omega = 0.0;  // sqrt(sum_{n >= N_b} |c_n|^2)
};

FockSpectrumWeight truncation_weight(const Eigen::VectorXcd& coeffs, int N_b);

// u(x) = sinc(x/delta_x) = sin(pi x/delta_x)/(pi x/delta_x).
double sinc_kernel(const GridSpec& g, double x);

// sum_j samples_j * u(x - x_j - delta*delta_x); |delta| <= 0.5.
cd sinc_interpolate(const Eigen::VectorXcd& samples, const GridSpec& g,
                    double x, double delta = 0.0);

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol);

}  // namespace qm
