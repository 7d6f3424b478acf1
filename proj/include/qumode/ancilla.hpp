#pragma once
#include <string>

#include "qumode/discrete.hpp"

namespace qm {

// Outcome of a register resize (qubit discard or pad).
struct ResizeReport {
  DiscreteQumode before;
  DiscreteQumode after;
  double leak = 0.0;  // amplitude weight lost to projection / grid edges
  double fidelity_vs_target = 0.0;  // overlap with the directly encoded
                                    // target-grid state
  double edge_weight_pre = 0.0;   // outside-middle-half weight before squeeze
  double edge_weight_post = 0.0;  // and after (pad only)
};

// Drops the most significant qubit: CX(1 -> 0), X(1), projection of qubit 0
// onto |1>, then the exact squeeze circuit S(ln2 / 2) on the reduced
// register. The result represents the same wavefunction on the
// (n_q - 1)-qubit grid (delta_x' = sqrt(2) delta_x). Refuses when the
// outside-middle-half tail weight exceeds 10 * eps.
ResizeReport discard_qubit(const DiscreteQumode& dv, double eps = 1e-4);

// Inverse construction: S(-ln2 / 2), prepend a qubit in |1>, X(1),
// CX(1 -> 0); represents the same wavefunction on the (n_q + 1)-qubit grid
// (delta_x' = delta_x / sqrt(2)). Refuses when the post-squeeze
// outside-middle-half weight exceeds 1e-2.
ResizeReport pad_qubit(const DiscreteQumode& dv);

// Iterates discard/pad to reach target_n_q. Discards are refused when
// L / sqrt(2^r) < L_eps(dv, eps) for r = n_q - target_n_q.
ResizeReport resize_to(const DiscreteQumode& dv, int target_n_q,
                       double eps = 1e-4);

// {"n_q_before":..., "n_q_after":..., "leak":..., "fidelity":...}
std::string resize_report_to_json(const ResizeReport& rep);

}  // namespace qm
