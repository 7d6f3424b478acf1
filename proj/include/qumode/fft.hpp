#pragma once
#include <Eigen/Dense>

namespace qm {

// In-place unnormalized DFT via FFTW. sign = -1: forward, sum_k v_k e^{-2pi i jk/N};
// sign = +1: backward, e^{+2pi i jk/N}. Any length >= 1.
void fft(Eigen::VectorXcd& v, int sign);

}  // namespace qm
