#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>

#include "qumode/grid.hpp"

namespace qm {

// Normalized amplitude vector over the N_x position basis states |j>.
struct DiscreteQumode {
  GridSpec grid;
  Eigen::VectorXcd amps;
  bool normalized = true;
  int fock_n = -1;  // set when the state was encoded from a single Fock state
};

struct DenseOperator {
  GridSpec grid;
  Eigen::MatrixXcd m;
};

// Diagonal position operator, entries x_j.
DenseOperator position_operator(const GridSpec& g);

// Centered DFT: (1/sqrt(N_x)) exp(i (2pi/N_x)(j-c)(k-c)), c = (N_x-1)/2.
DenseOperator centered_dft(const GridSpec& g);

// Shifted DFT with fractional grid shifts dx, dp in (-0.5, 0.5].
DenseOperator shifted_dft(const GridSpec& g, double dx, double dp);

// P = mu * F X F^{-1}; hermitian with spectrum (m-(N_x-1)/2)*delta_p.
DenseOperator momentum_operator(const GridSpec& g);

// T_{d1,d2} = F_{d1,0} F^{-1}_{d2,0}: shifts the sample grid by (d1-d2)*dx
// on in-cutoff states.
DenseOperator grid_shift_operator(const GridSpec& g, double d1, double d2);

// Discrete harmonic oscillator H_h = P^2/2 + mu^2 X^2/2.
DenseOperator harmonic_hamiltonian(const GridSpec& g);

enum class FockSetMode { sampled, eigen };

struct DiscreteFockSet {
  GridSpec grid;
  int N_b = 0;
  FockSetMode mode = FockSetMode::sampled;
  Eigen::MatrixXcd vectors;      // N_x x N_b, column n = |n>
  Eigen::VectorXd eigenvalues;   // eigen mode: lowest N_b eigenvalues of H_h
};

DiscreteFockSet discrete_fock_set(const GridSpec& g, int N_b, FockSetMode mode);

// Q_b = sum_n |n><n| over the eigen-mode vectors.
DenseOperator cutoff_projector(const DiscreteFockSet& fs);

struct EncodeReport {
  DiscreteQumode dv;
  double renorm = 1.0;  // norm of the raw sample vector before normalization
  double omega = 0.0;   // Fock tail weight beyond the grid's supported cutoff
};

// amps_j = sqrt(delta_x) * psi(x_j), renormalized.
EncodeReport encode_samples(const std::function<cd(double)>& psi,
                            const GridSpec& g);
EncodeReport encode_fock_coeffs(const Eigen::VectorXcd& coeffs,
                                const GridSpec& g);
DiscreteQumode encode_fock(int n, const GridSpec& g);

// Largest Fock order whose eps-support fits the grid (L_eps <= L).
int max_supported_fock(const GridSpec& g, double eps = 1e-4);

// Sinc-interpolates amps/sqrt(delta_x) at the given points.
std::vector<cd> decode_qumode(const DiscreteQumode& dv,
                              const std::vector<double>& xs);

// FFT fast paths; agree with the dense matrices to 1e-12.
void apply_shifted_dft(Eigen::VectorXcd& v, const GridSpec& g, double dx,
                       double dp, bool inverse = false);
void apply_centered_dft(Eigen::VectorXcd& v, const GridSpec& g,
                        bool inverse = false);

// JSON round trip: {"n_q":..., "mu":..., "amps":[[re,im],...]}.
std::string dv_to_json(const DiscreteQumode& dv);
DiscreteQumode dv_from_json(const std::string& text);

}  // namespace qm
