#pragma once
#include <cstdint>

#include "qumode/discrete.hpp"

namespace qm {

// Continuous-variable register modeled as a wavefunction sampled on a fine
// grid: fine_dx = delta_x/oversample, fine_n = span_factor*N_x*oversample
// points, x_min = -(fine_n/2)*fine_dx. amps holds psi(x_t) (not multiplied by
// sqrt(fine_dx)); the Riemann sum of |psi|^2 is 1.
struct SampledCVState {
  double mu = 1.0;
  int fine_n = 0;
  double fine_dx = 0.0;
  double x_min = 0.0;
  Eigen::VectorXcd amps;
  int oversample = 16;
  int fock_n = -1;  // set when built from a single Fock state

  double x(int t) const { return x_min + t * fine_dx; }
};

enum class InitialCvKind { rectangular, gaussian };

// Fock state phi_n sampled on the fine grid attached to `grid`.
SampledCVState make_fock_cv(const GridSpec& grid, int n, int oversample = 16,
                            int span_factor = 2);

// Ancilla state g for the DV->CV protocol. Rectangular:
// mu^{1/4}/sqrt(2L) on [-L/sqrt(mu), L/sqrt(mu)] (boundary points take the
// inside value). Gaussian: pi^{-1/4} sigma^{-1/2} e^{-x^2/(2 sigma^2)}.
SampledCVState make_initial_cv(InitialCvKind kind, const GridSpec& grid,
                               double sigma = 0.0, int oversample = 16,
                               int span_factor = 2);

// Grid-point samples of the CV wavefunction as a DV state.
DiscreteQumode encode_cv(const SampledCVState& cv, const GridSpec& grid);

// Epsilon-support parameter of the CV state: support_radius(fock_n) when
// tagged, otherwise measured from the position/momentum amplitude tails.
double cv_support_radius(const SampledCVState& cv, double eps);
double dv_support_radius(const DiscreteQumode& dv, double eps);

// Explicit joint CV (x) DV state, amps(t, j) over fine point t and basis j.
struct JointState {
  GridSpec grid;
  SampledCVState cv;  // axis metadata; cv.amps unused
  Eigen::MatrixXcd amps;
};

JointState prepare_joint_cvdv(const SampledCVState& cv, const GridSpec& grid);
// Multiplies amps(t, j) by e^{-i mu x_t x_j}.
void apply_entangler_cvdv(JointState& joint, double scale = 1.0);

struct TransferOutcome {
  double measured_value = 0.0;
  double probability = 0.0;  // density (CV->DV) or mass (DV->CV)
  DiscreteQumode dv_out;     // CV->DV result
  SampledCVState cv_out;     // DV->CV result
  double fidelity = 0.0;     // |overlap| vs the grid/sinc target
  double fidelity_raw = -1.0;  // vs the pre-truncation original, if known
  bool in_window = false;
};

struct SuccessReport {
  double eps = 0.0;
  double p_success = 0.0;      // outcome mass inside the eps-valid window
  double p_success_fid = 0.0;  // outcome mass with fidelity > 1 - eps
  double predicted = 0.0;
  int n_points = 0;
};

// hat(phi)(delta_p*(j-c) + p0) for j = 0..N_x-1, computed from the fine
// samples by a folded FFT with continuum normalization.
Eigen::VectorXcd cvdv_momentum_samples(const SampledCVState& cv,
                                       const GridSpec& grid, double p0);

// Pr(p) = (1/N_x) sum_j |hat(phi)(mu x_j + p)|^2.
double cvdv_measurement_pdf(const SampledCVState& cv, const GridSpec& grid,
                            double p);

// Full CV->DV protocol conditioned on measuring p_meas: momentum samples ->
// conditional DV state -> integer momentum-shift correction -> shifted
// Fourier transform. eps sets the success-window support radius.
TransferOutcome cvdv_transfer(const SampledCVState& cv, const GridSpec& grid,
                              double p_meas, double eps = 1e-4);

// Integrates the pdf over the eps-valid window (p_success) and over
// outcomes whose simulated fidelity exceeds 1-eps (p_success_fid);
// predicted = (L - L_eps)/L + 1/N_x.
SuccessReport cvdv_success_probability(const SampledCVState& cv,
                                       const GridSpec& grid, double eps);

// Inverse-CDF sample of p_meas (deterministic in the seed), then transfer.
TransferOutcome sample_cvdv(const SampledCVState& cv, const GridSpec& grid,
                            std::uint64_t seed, double eps = 1e-4);

// Anti-periodic momentum-space extension of the DV state:
// hat(phi)_aper(p) = sqrt(delta_x/(2 pi)) sum_j amps_j e^{-i x_j p},
// satisfying hat(phi)_aper(p + N_x delta_p) = -hat(phi)_aper(p).
cd aperiodic_momentum_extension(const DiscreteQumode& dv, double p);

// Cached tables for repeated DV->CV transfers of the same (dv, g) pair.
struct DvcvContext {
  DiscreteQumode dv;
  SampledCVState g;
  GridSpec grid;
  Eigen::VectorXcd aper_table;   // hat(phi)_aper on the fine momentum grid
  Eigen::VectorXcd target;       // sinc reconstruction of dv on the fine grid
  Eigen::VectorXcd target_raw;   // pre-truncation original (Fock input only)
  double L_eps = 0.0;
};

DvcvContext make_dvcv_context(const DiscreteQumode& dv,
                              const SampledCVState& g, double eps = 1e-4);

// DV->CV protocol conditioned on the momentum-basis outcome m
// (p_m = (m-(N_x-1)/2) delta_p): conditional CV state -> displacement
// e^{-i(p_m/mu)P} -> scaled Fourier transform F_mu.
TransferOutcome dvcv_transfer(const DvcvContext& ctx, int m);
TransferOutcome dvcv_transfer(const DiscreteQumode& dv,
                              const SampledCVState& g, int m,
                              double eps = 1e-4);

// Closed-form evaluation of the same outcome via the convolution/Poisson
// image sum; agrees with dvcv_transfer pointwise to 1e-5.
TransferOutcome dvcv_transfer_analytic(const DvcvContext& ctx, int m,
                                       InitialCvKind kind, double sigma = 0.0);

// Sums Pr(p_m) over in-window outcomes (p_success) and over outcomes with
// fidelity > 1-eps (p_success_fid); predicted (L-L_eps)/L for the
// rectangular ancilla.
SuccessReport dvcv_success_probability(const DiscreteQumode& dv,
                                       const SampledCVState& g, double eps);

}  // namespace qm
