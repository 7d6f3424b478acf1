#pragma once
#include "qumode/circuit.hpp"
#include "qumode/grid.hpp"

namespace qm {

// Compilers from grid-diagonal qumode gates to elementary qubit circuits.
// All circuits act on one n_q-qubit register (big-endian) except
// compile_cphase, which acts on two. Each returned circuit is exact: its
// unitary equals the dense grid operator to rounding error.

// e^{-i eta X}: one Rz per qubit.
Circuit compile_displacement(const GridSpec& g, double eta);

// e^{-i eta X^2}: a global phase plus one ZZ per qubit pair.
Circuit compile_phase(const GridSpec& g, double eta);

// e^{-i eta X^3}: one Rz per qubit plus one ZZZ per qubit triple.
Circuit compile_cubic(const GridSpec& g, double eta);

// Centered DFT with fractional shifts dx, dp in (-0.5, 0.5]:
// F_{jk} = (1/sqrt(N)) e^{i(2pi/N)(j-c+dx)(k-c+dp)}, c = (N-1)/2.
// Built as diagonal ramp + QFT + diagonal ramp + global phase.
Circuit compile_shifted_qft(const GridSpec& g, double dx, double dp);
Circuit compile_qft(const GridSpec& g);

// e^{-i eta P^2} = F e^{-i eta mu^2 X^2} F^{-1}.
Circuit compile_kinetic(const GridSpec& g, double eta);

// Two-register e^{-i eta X (x) X}: one ZZ per cross-register qubit pair.
Circuit compile_cphase(const GridSpec& g, double eta);

// Squeeze S(r) = e^{i(r/2)(XP+PX)}, S^dag X S = X e^{-r}.
// Exact: six alternating X^2/P^2 factors with solved coefficients (|r| <= 3).
// Trotter: four factors with step sqrt(|r|)/2, error O(|r|^{3/2}).
Circuit compile_squeeze_exact(const GridSpec& g, double r);
Circuit compile_squeeze_trotter(const GridSpec& g, double r);

// CNOT-equivalent cost formulas (ZZ = 2 CNOT, ZZZ = 4 CNOT) as functions of
// qubits per register; these match the compiled circuits exactly.
long phase_cnot_formula(int n_q);   // n(n-1)
long cubic_cnot_formula(int n_q);   // (2/3) n(n-1)(n-2)
long cphase_cnot_formula(int n_q);  // 2 n^2
long kinetic_cnot_formula(int n_q);
long qft_cnot_formula(int n_q);
long squeeze_exact_cnot_formula(int n_q);

}  // namespace qm
