#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qumode/errors.hpp"

namespace qm {

// Elementary gate set. Conventions:
//   Rz(theta)       = diag(e^{-i theta/2}, e^{+i theta/2})
//   ZZ(theta)       = e^{-i theta sz x sz}
//   ZZZ(theta)      = e^{-i theta sz x sz x sz}
//   GlobalPhase(a)  = e^{+i a} * I
// Qubit indexing is big-endian: qubit 0 is the most significant bit of the
// basis index. Two-register circuits place register 1 after register 0.
enum class GateKind { Rz, X, H, CNOT, ZZ, ZZZ, GlobalPhase };

struct Gate {
  GateKind kind{};
  int q0 = -1, q1 = -1, q2 = -1;
  double angle = 0.0;
};

struct Circuit {
  int n_q = 0;          // qubits per register
  int n_registers = 1;  // 1 or 2
  std::vector<Gate> gates;
  long declared_cnot_equiv = 0;

  int total_qubits() const { return n_q * n_registers; }
  std::int64_t dim() const { return std::int64_t(1) << total_qubits(); }

  void rz(int q, double theta) { gates.push_back({GateKind::Rz, q, -1, -1, theta}); }
  void x(int q) { gates.push_back({GateKind::X, q}); }
  void h(int q) { gates.push_back({GateKind::H, q}); }
  void cnot(int control, int target) {
    gates.push_back({GateKind::CNOT, control, target});
  }
  void zz(int a, int b, double theta) {
    gates.push_back({GateKind::ZZ, a, b, -1, theta});
  }
  void zzz(int a, int b, int c, double theta) {
    gates.push_back({GateKind::ZZZ, a, b, c, theta});
  }
  void global_phase(double alpha) {
    gates.push_back({GateKind::GlobalPhase, -1, -1, -1, alpha});
  }
  void append(const Circuit& other);
};

struct GateCounts {
  long rz = 0, cnot = 0, h = 0, x = 0, zz = 0, zzz = 0, phase = 0;
  long cnot_equiv = 0;  // CNOT + 2*ZZ + 4*ZZZ
};

GateCounts gate_count(const Circuit& c);

// Applies gates in list order (gates[0] first) to a statevector of dimension
// 2^{total_qubits}.
void simulate_inplace(const Circuit& c, Eigen::VectorXcd& state);
Eigen::VectorXcd simulate(const Circuit& c, const Eigen::VectorXcd& state);
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

Circuit inverse(const Circuit& c);

// Line-oriented text format, e.g. "RZ q3 -0.123456789012", "CNOT q0 q1",
// "ZZ q0 q2 0.5", "ZZZ q0 q1 q2 -0.25", "H q4", "X q0", "PHASE 1.5707963268";
// header "# qubits=N"; angles printed with 12 significant digits.
std::string emit_circuit_text(const Circuit& c);
Circuit parse_circuit_text(const std::string& text);

}  // namespace qm
