#include "qumode/circuit.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

namespace qm {

using cd = std::complex<double>;

void Circuit::append(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  declared_cnot_equiv += other.declared_cnot_equiv;
}

GateCounts gate_count(const Circuit& c) {
  GateCounts gc;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::Rz: ++gc.rz; break;
      case GateKind::X: ++gc.x; break;
      case GateKind::H: ++gc.h; break;
      case GateKind::CNOT: ++gc.cnot; break;
      case GateKind::ZZ: ++gc.zz; break;
      case GateKind::ZZZ: ++gc.zzz; break;
      case GateKind::GlobalPhase: ++gc.phase; break;
    }
  }
  gc.cnot_equiv = gc.cnot + 2 * gc.zz + 4 * gc.zzz;
  return gc;
}

namespace {

inline int bit_shift(const Circuit& c, int q) {
  // Big-endian: qubit 0 carries 2^{T-1}.
  return c.total_qubits() - 1 - q;
}

inline void check_qubit(const Circuit& c, int q) {
  if (q < 0 || q >= c.total_qubits())
    throw validation_error("simulate: qubit index out of range");
}

}  // namespace

void simulate_inplace(const Circuit& c, Eigen::VectorXcd& state) {
  const std::int64_t dim = c.dim();
  if (state.size() != dim)
    throw validation_error("simulate: state dimension mismatch");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::Rz: {
        check_qubit(c, g.q0);
        const std::int64_t mask = std::int64_t(1) << bit_shift(c, g.q0);
        const cd ph0 = std::polar(1.0, -0.5 * g.angle);
        const cd ph1 = std::polar(1.0, +0.5 * g.angle);
        for (std::int64_t j = 0; j < dim; ++j)
          state[j] *= (j & mask) ? ph1 : ph0;
        break;
      }
      case GateKind::X: {
        check_qubit(c, g.q0);
        const std::int64_t mask = std::int64_t(1) << bit_shift(c, g.q0);
        for (std::int64_t j = 0; j < dim; ++j)
          if (!(j & mask)) std::swap(state[j], state[j | mask]);
        break;
      }
      case GateKind::H: {
        check_qubit(c, g.q0);
        const std::int64_t mask = std::int64_t(1) << bit_shift(c, g.q0);
        for (std::int64_t j = 0; j < dim; ++j)
          if (!(j & mask)) {
            cd a = state[j], b = state[j | mask];
            state[j] = inv_sqrt2 * (a + b);
            state[j | mask] = inv_sqrt2 * (a - b);
          }
        break;
      }
      case GateKind::CNOT: {
        check_qubit(c, g.q0);
        check_qubit(c, g.q1);
        const std::int64_t cm = std::int64_t(1) << bit_shift(c, g.q0);
        const std::int64_t tm = std::int64_t(1) << bit_shift(c, g.q1);
        for (std::int64_t j = 0; j < dim; ++j)
          if ((j & cm) && !(j & tm)) std::swap(state[j], state[j | tm]);
        break;
      }
      case GateKind::ZZ: {
        check_qubit(c, g.q0);
        check_qubit(c, g.q1);
        const std::int64_t m0 = std::int64_t(1) << bit_shift(c, g.q0);
        const std::int64_t m1 = std::int64_t(1) << bit_shift(c, g.q1);
        const cd phm = std::polar(1.0, -g.angle);
        const cd php = std::polar(1.0, +g.angle);
        for (std::int64_t j = 0; j < dim; ++j) {
          bool even = ((j & m0) != 0) == ((j & m1) != 0);
          state[j] *= even ? phm : php;
        }
        break;
      }
      case GateKind::ZZZ: {
        check_qubit(c, g.q0);
        check_qubit(c, g.q1);
        check_qubit(c, g.q2);
        const std::int64_t m0 = std::int64_t(1) << bit_shift(c, g.q0);
        const std::int64_t m1 = std::int64_t(1) << bit_shift(c, g.q1);
        const std::int64_t m2 = std::int64_t(1) << bit_shift(c, g.q2);
        const cd phm = std::polar(1.0, -g.angle);
        const cd php = std::polar(1.0, +g.angle);
        for (std::int64_t j = 0; j < dim; ++j) {
          int ones = ((j & m0) != 0) + ((j & m1) != 0) + ((j & m2) != 0);
          // sz eigenvalue product is (-1)^ones
          state[j] *= (ones & 1) ? php : phm;
        }
        break;
      }
      case GateKind::GlobalPhase: {
        state *= std::polar(1.0, g.angle);
        break;
      }
    }
  }
}

Eigen::VectorXcd simulate(const Circuit& c, const Eigen::VectorXcd& state) {
  Eigen::VectorXcd out = state;
  simulate_inplace(c, out);
  return out;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::int64_t dim = c.dim();
  Eigen::MatrixXcd U(dim, dim);
  for (std::int64_t k = 0; k < dim; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e[k] = 1.0;
    simulate_inplace(c, e);
    U.col(k) = e;
  }
  return U;
}

Circuit inverse(const Circuit& c) {
  Circuit inv;
  inv.n_q = c.n_q;
  inv.n_registers = c.n_registers;
  inv.declared_cnot_equiv = c.declared_cnot_equiv;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::Rz:
      case GateKind::ZZ:
      case GateKind::ZZZ:
      case GateKind::GlobalPhase:
        g.angle = -g.angle;
        break;
      case GateKind::X:
      case GateKind::H:
      case GateKind::CNOT:
        break;  // self-inverse
    }
    inv.gates.push_back(g);
  }
  return inv;
}

namespace {
std::string fmt_angle(double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", a);
  return buf;
}
}  // namespace

std::string emit_circuit_text(const Circuit& c) {
  std::string out = "# qubits=" + std::to_string(c.total_qubits()) + "\n";
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::Rz:
        out += "RZ q" + std::to_string(g.q0) + " " + fmt_angle(g.angle) + "\n";
        break;
      case GateKind::X:
        out += "X q" + std::to_string(g.q0) + "\n";
        break;
      case GateKind::H:
        out += "H q" + std::to_string(g.q0) + "\n";
        break;
      case GateKind::CNOT:
        out += "CNOT q" + std::to_string(g.q0) + " q" + std::to_string(g.q1) +
               "\n";
        break;
      case GateKind::ZZ:
        out += "ZZ q" + std::to_string(g.q0) + " q" + std::to_string(g.q1) +
               " " + fmt_angle(g.angle) + "\n";
        break;
      case GateKind::ZZZ:
        out += "ZZZ q" + std::to_string(g.q0) + " q" + std::to_string(g.q1) +
               " q" + std::to_string(g.q2) + " " + fmt_angle(g.angle) + "\n";
        break;
      case GateKind::GlobalPhase:
        out += "PHASE " + fmt_angle(g.angle) + "\n";
        break;
    }
  }
  return out;
}

namespace {
int parse_qubit(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'q')
    throw validation_error("parse_circuit_text: expected qubit token, got '" +
                           tok + "'");
  return std::stoi(tok.substr(1));
}
}  // namespace

Circuit parse_circuit_text(const std::string& text) {
  Circuit c;
  c.n_q = 0;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("qubits=");
      if (pos != std::string::npos && !have_header) {
        c.n_q = std::stoi(line.substr(pos + 7));
        have_header = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    std::string t1, t2, t3, t4;
    if (op == "RZ") {
      ls >> t1 >> t2;
      c.rz(parse_qubit(t1), std::stod(t2));
    } else if (op == "X") {
      ls >> t1;
      c.x(parse_qubit(t1));
    } else if (op == "H") {
      ls >> t1;
      c.h(parse_qubit(t1));
    } else if (op == "CNOT") {
      ls >> t1 >> t2;
      c.cnot(parse_qubit(t1), parse_qubit(t2));
    } else if (op == "ZZ") {
      ls >> t1 >> t2 >> t3;
      c.zz(parse_qubit(t1), parse_qubit(t2), std::stod(t3));
    } else if (op == "ZZZ") {
      ls >> t1 >> t2 >> t3 >> t4;
      c.zzz(parse_qubit(t1), parse_qubit(t2), parse_qubit(t3), std::stod(t4));
    } else if (op == "PHASE") {
      ls >> t1;
      c.global_phase(std::stod(t1));
    } else {
      throw validation_error("parse_circuit_text: unknown gate '" + op + "'");
    }
  }
  if (!have_header)
    throw validation_error("parse_circuit_text: missing '# qubits=N' header");
  GateCounts gc = gate_count(c);
  c.declared_cnot_equiv = gc.cnot_equiv;
  return c;
}

}  // namespace qm
