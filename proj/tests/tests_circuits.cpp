// Unit tests for the gate IR, statevector simulator, gate compilers for the
// diagonal/Fourier/squeeze family, and the squeeze coefficient solver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qumode/circuit.hpp"
#include "qumode/compile.hpp"
#include "qumode/discrete.hpp"
#include "qumode/grid.hpp"
#include "qumode/squeeze.hpp"

using namespace qm;
using std::abs;

namespace {

Eigen::VectorXcd random_state(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(dim);
  for (int j = 0; j < dim; ++j) v[j] = cd(nd(rng), nd(rng));
  v.normalize();
  return v;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd diag_exp(const GridSpec& g,
                          const std::function<double(double)>& f) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.N_x, g.N_x);
  for (int j = 0; j < g.N_x; ++j) m(j, j) = std::polar(1.0, -f(g.x(j)));
  return m;
}

}  // namespace

TEST_CASE("simulator: gate conventions and norm preservation") {
  // Rz(theta) = diag(e^{-i theta/2}, e^{+i theta/2}) on one qubit
  Circuit c;
  c.n_q = 1;
  c.rz(0, 0.8);
  const Eigen::MatrixXcd U = circuit_unitary(c);
  CHECK(abs(U(0, 0) - std::polar(1.0, -0.4)) < 1e-14);
  CHECK(abs(U(1, 1) - std::polar(1.0, 0.4)) < 1e-14);

  // X on qubit 0 (MSB) of a 2-qubit register flips bit value 2
  Circuit cx;
  cx.n_q = 2;
  cx.x(0);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
  e1[1] = 1.0;
  Eigen::VectorXcd out = simulate(cx, e1);
  CHECK(abs(out[3] - 1.0) < 1e-14);

  // ZZ(theta) = e^{-i theta sz x sz}
  Circuit czz;
  czz.n_q = 2;
  czz.zz(0, 1, 0.3);
  const Eigen::MatrixXcd Uzz = circuit_unitary(czz);
  CHECK(abs(Uzz(0, 0) - std::polar(1.0, -0.3)) < 1e-14);
  CHECK(abs(Uzz(1, 1) - std::polar(1.0, 0.3)) < 1e-14);
  CHECK(abs(Uzz(3, 3) - std::polar(1.0, -0.3)) < 1e-14);

  // norm preservation on a random circuit
  Circuit r;
  r.n_q = 4;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    r.h(k % 4);
    r.rz((k + 1) % 4, ang(rng));
    r.cnot(k % 4, (k + 2) % 4);
  }
  CHECK(abs(simulate(r, random_state(16, 5)).norm() - 1.0) < 1e-12);

  // empty circuit is the identity
  Circuit empty;
  empty.n_q = 3;
  Eigen::VectorXcd v = random_state(8, 9);
  CHECK((simulate(empty, v) - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse circuit undoes the original") {
  Circuit c;
  c.n_q = 3;
  c.h(0);
  c.rz(1, 0.7);
  c.cnot(0, 2);
  c.zz(1, 2, -0.4);
  c.zzz(0, 1, 2, 0.2);
  c.global_phase(1.1);
  const Eigen::MatrixXcd U = circuit_unitary(c);
  const Eigen::MatrixXcd V = circuit_unitary(inverse(c));
  CHECK(max_diff(V * U, Eigen::MatrixXcd::Identity(8, 8)) < 1e-13);
}

TEST_CASE("circuit text round trip") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::uniform_int_distribution<int> q(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    Circuit c;
    c.n_q = 5;
    for (int k = 0; k < 12; ++k) {
      switch (k % 6) {
        case 0: c.rz(q(rng), ang(rng)); break;
        case 1: c.h(q(rng)); break;
        case 2: c.x(q(rng)); break;
        case 3: c.cnot(0, 1 + q(rng) % 4); break;
        case 4: c.zz(0, 1 + q(rng) % 4, ang(rng)); break;
        case 5: c.global_phase(ang(rng)); break;
      }
    }
    c.zzz(0, 1, 2, ang(rng));
    const Circuit back = parse_circuit_text(emit_circuit_text(c));
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(back.n_q * back.n_registers == c.n_q * c.n_registers);
    const Eigen::VectorXcd v = random_state(32, 100 + trial);
    // angles are serialized with 12 significant digits
    CHECK((simulate(c, v) - simulate(back, v)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("displacement compiler matches diag(e^{-i eta x_j})") {
  const GridSpec g = make_grid(3, 1.0);
  CHECK(max_diff(circuit_unitary(compile_displacement(g, 0.0)),
                 Eigen::MatrixXcd::Identity(8, 8)) < 1e-14);
  const Circuit c = compile_displacement(g, 1.0);
  CHECK(gate_count(c).rz == 3);
  CHECK(gate_count(c).cnot_equiv == 0);
  CHECK(max_diff(circuit_unitary(c), diag_exp(g, [](double x) { return x; })) <
        1e-13);
}

TEST_CASE("phase compiler matches diag(e^{-i eta x_j^2})") {
  for (int n_q : {1, 3, 4}) {
    const GridSpec g = make_grid(n_q, 1.0);
    const double eta = 0.7;
    CHECK(max_diff(circuit_unitary(compile_phase(g, eta)),
                   diag_exp(g, [&](double x) { return eta * x * x; })) < 1e-12);
  }
}

TEST_CASE("cubic compiler matches diag(e^{-i eta x_j^3})") {
  for (int n_q : {2, 3, 4}) {
    const GridSpec g = make_grid(n_q, 1.0);
    const double eta = 0.3;
    CHECK(max_diff(circuit_unitary(compile_cubic(g, eta)),
                   diag_exp(g, [&](double x) { return eta * x * x * x; })) <
          1e-12);
  }
}

TEST_CASE("shifted QFT compiler matches the dense shifted DFT") {
  const GridSpec g = make_grid(4, 1.0);
  for (auto [dx, dp] :
       {std::pair{0.0, 0.0}, {0.5, 0.25}, {-0.3, 0.2}, {0.5, 0.5}}) {
    CHECK(max_diff(circuit_unitary(compile_shifted_qft(g, dx, dp)),
                   shifted_dft(g, dx, dp).m) < 1e-12);
  }
}

TEST_CASE("kinetic compiler matches exp(-i eta P^2)") {
  const GridSpec g = make_grid(4, 1.0);
  const double eta = 0.5;
  const Eigen::MatrixXcd P = momentum_operator(g).m;
  const Eigen::MatrixXcd oracle = herm_exp(P * P, -eta);
  CHECK(max_diff(circuit_unitary(compile_kinetic(g, eta)), oracle) < 1e-9);
  CHECK(max_diff(circuit_unitary(compile_kinetic(g, 0.0)),
                 Eigen::MatrixXcd::Identity(g.N_x, g.N_x)) < 1e-12);
}

TEST_CASE("two-register coupling compiler matches diag(e^{-i eta x_i x_j})") {
  const GridSpec g = make_grid(2, 1.0);
  const double eta = 1.0;
  const Circuit c = compile_cphase(g, eta);
  CHECK(c.n_registers == 2);
  const Eigen::MatrixXcd U = circuit_unitary(c);
  Eigen::MatrixXcd oracle = Eigen::MatrixXcd::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      oracle(4 * i + j, 4 * i + j) = std::polar(1.0, -eta * g.x(i) * g.x(j));
  CHECK(max_diff(U, oracle) < 1e-12);
}

TEST_CASE("compiler unitaries on larger registers via random-vector probes") {
  const GridSpec g = make_grid(8, 1.0);
  const double eta = 0.21;
  const Circuit c = compile_phase(g, eta);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXcd v = random_state(g.N_x, 40 + t);
    Eigen::VectorXcd expect(g.N_x);
    for (int j = 0; j < g.N_x; ++j)
      expect[j] = std::polar(1.0, -eta * g.x(j) * g.x(j)) * v[j];
    CHECK((simulate(c, v) - expect).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("gate-count formulas match compiled circuits for n_q 1..12") {
  for (int n_q = 1; n_q <= 12; ++n_q) {
    const GridSpec g = make_grid(n_q, 1.0);
    CHECK(gate_count(compile_phase(g, 0.3)).cnot_equiv ==
          phase_cnot_formula(n_q));
    CHECK(gate_count(compile_cubic(g, 0.3)).cnot_equiv ==
          cubic_cnot_formula(n_q));
    CHECK(gate_count(compile_cphase(g, 0.3)).cnot_equiv ==
          cphase_cnot_formula(n_q));
    CHECK(gate_count(compile_qft(g)).cnot_equiv == qft_cnot_formula(n_q));
    CHECK(gate_count(compile_kinetic(g, 0.3)).cnot_equiv ==
          kinetic_cnot_formula(n_q));
    CHECK(gate_count(compile_squeeze_exact(g, 0.4)).cnot_equiv ==
          squeeze_exact_cnot_formula(n_q));
  }
  CHECK(phase_cnot_formula(5) == 20);
  Circuit empty;
  empty.n_q = 3;
  const GateCounts z = gate_count(empty);
  CHECK(z.cnot_equiv == 0);
  CHECK(z.rz == 0);
}

TEST_CASE("squeeze coefficient solver") {
  const SqueezeCoefficients z = solve_squeeze_coeffs(0.0);
  CHECK(abs(z.a) < 1e-12);
  CHECK(abs(z.b) < 1e-12);
  for (double r : {0.01, 0.1, 0.5, 1.0, 2.0}) {
    const SqueezeCoefficients s = solve_squeeze_coeffs(r);
    CHECK(s.residual < 1e-10);
    const Eigen::Matrix2d W = sl2r_product(s.a, s.b);
    CHECK(abs(W(0, 0) - std::exp(-r)) < 1e-10);
    CHECK(abs(W(1, 1) - std::exp(r)) < 1e-10);
    CHECK(abs(W(0, 1)) < 1e-10);
    CHECK(abs(W(1, 0)) < 1e-10);
  }
  // the continuation branch through the origin is continuous in r
  const SqueezeCoefficients s1 = solve_squeeze_coeffs(0.50);
  const SqueezeCoefficients s2 = solve_squeeze_coeffs(0.51);
  CHECK(abs(s2.a - s1.a) < 0.05);
  CHECK(abs(s2.b - s1.b) < 0.05);
  CHECK_THROWS_AS(solve_squeeze_coeffs(-0.1), validation_error);
  CHECK_THROWS_AS(solve_squeeze_coeffs(3.5), validation_error);
}

TEST_CASE("exact squeeze circuit squeezes the vacuum") {
  const GridSpec g = make_grid(8, 1.0);
  const double r = 0.5 * std::log(2.0);
  const Eigen::VectorXcd out =
      simulate(compile_squeeze_exact(g, r), encode_fock(0, g).amps);
  // (S(r)psi)(x) = e^{r/2} psi(e^r x): squeezed vacuum = vacuum at mass
  // mu e^{2r}
  double err = 0.0;
  for (int j = 0; j < g.N_x; ++j) {
    const double target = std::sqrt(g.delta_x * std::exp(r)) *
                          fock_wavefunction(0, 1.0, std::exp(r) * g.x(j));
    err = std::max(err, abs(out[j] - cd(target)));
  }
  CHECK(err < 1e-3);
}

TEST_CASE("exact squeeze circuit matches the dense generator on the cutoff "
          "subspace, and inverts") {
  const GridSpec g = make_grid(8, 1.0);
  const double r = 0.5 * std::log(2.0);
  const DiscreteFockSet fs = discrete_fock_set(g, 20, FockSetMode::eigen);
  const Eigen::MatrixXcd X = position_operator(g).m;
  const Eigen::MatrixXcd P = momentum_operator(g).m;
  const Eigen::MatrixXcd gen = X * P + P * X;
  const Eigen::MatrixXcd dense = herm_exp(gen, r / 2);
  const Eigen::MatrixXcd U = circuit_unitary(compile_squeeze_exact(g, r));
  double err = 0.0;
  for (int n = 0; n < 20; ++n)
    err = std::max(err,
                   ((U - dense) * fs.vectors.col(n)).cwiseAbs().maxCoeff());
  CHECK(err < 1e-3);
  // S(r) then S(-r) is the identity on the cutoff subspace
  Circuit both = compile_squeeze_exact(g, r);
  both.append(compile_squeeze_exact(g, -r));
  const Eigen::MatrixXcd UI = circuit_unitary(both);
  double err2 = 0.0;
  for (int n = 0; n < 20; ++n) {
    Eigen::VectorXcd v = fs.vectors.col(n);
    err2 = std::max(err2, ((UI * v) - v).cwiseAbs().maxCoeff());
  }
  CHECK(err2 < 2e-3);
}

TEST_CASE("squeeze error oracles: trotter scaling and exact superiority") {
  CHECK(exact_error_fock(0.3, 40) < 1e-10);
  // four-factor split-step error scales like r^{3/2} before saturation
  const double e1 = trotter_error_fock(1e-3, 40);
  const double e2 = trotter_error_fock(4e-3, 40);
  const double slope = std::log(e2 / e1) / std::log(4.0);
  CHECK(slope > 1.35);
  CHECK(slope < 1.65);
  // at equal r the exact decomposition beats the split-step one
  for (double r : {0.01, 0.1, 0.3}) {
    CHECK(exact_error_fock(r, 40) <= trotter_error_fock(r, 40));
  }
  // r = 0 gives the identity for both
  const GridSpec g = make_grid(4, 1.0);
  CHECK(max_diff(circuit_unitary(compile_squeeze_trotter(g, 0.0)),
                 Eigen::MatrixXcd::Identity(g.N_x, g.N_x)) < 1e-12);
  CHECK(max_diff(circuit_unitary(compile_squeeze_exact(g, 0.0)),
                 Eigen::MatrixXcd::Identity(g.N_x, g.N_x)) < 1e-12);
}
