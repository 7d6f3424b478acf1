#include "qumode/compile.hpp"

#include <cmath>

#include "qumode/squeeze.hpp"

namespace qm {

namespace {

inline double pow2(int e) { return std::ldexp(1.0, e); }

Circuit fresh(const GridSpec& g, int n_registers = 1) {
  Circuit c;
  c.n_q = g.n_q;
  c.n_registers = n_registers;
  return c;
}

void finalize(Circuit& c) { c.declared_cnot_equiv = gate_count(c).cnot_equiv; }

// Diagonal layer sum_k e^{-i k B} |k><k| on one register.
void append_index_ramp(Circuit& c, int n, double B) {
  c.global_phase(-0.5 * B * (pow2(n) - 1.0));
  for (int q = 0; q < n; ++q) c.rz(q, -pow2(n - 1 - q) * B);
}

// Controlled phase diag(1,1,1,e^{i theta}) on qubits (a, b).
void append_cp(Circuit& c, int a, int b, double theta) {
  c.global_phase(0.25 * theta);
  c.rz(a, 0.5 * theta);
  c.rz(b, 0.5 * theta);
  c.zz(a, b, -0.25 * theta);
}

void append_swap(Circuit& c, int a, int b) {
  c.cnot(a, b);
  c.cnot(b, a);
  c.cnot(a, b);
}

// Plain QFT kernel (1/sqrt(N)) e^{+i(2pi/N) jk}, big-endian.
void append_qft(Circuit& c, int n) {
  for (int q = 0; q < n; ++q) {
    c.h(q);
    for (int t = q + 1; t < n; ++t)
      append_cp(c, t, q, 2.0 * M_PI / pow2(t - q + 1));
  }
  for (int q = 0; q < n / 2; ++q) append_swap(c, q, n - 1 - q);
}

}  // namespace

Circuit compile_displacement(const GridSpec& g, double eta) {
  Circuit c = fresh(g);
  for (int q = 0; q < g.n_q; ++q)
    c.rz(q, -eta * g.delta_x * pow2(g.n_q - 1 - q));
  finalize(c);
  return c;
}

Circuit compile_phase(const GridSpec& g, double eta) {
  Circuit c = fresh(g);
  const int n = g.n_q;
  const double dx2 = g.delta_x * g.delta_x;
  const double N2 = pow2(2 * n);
  c.global_phase(-eta * dx2 * (N2 - 1.0) / 12.0);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      c.zz(p, q, eta * dx2 * pow2(2 * n - 3 - p - q));
  finalize(c);
  return c;
}

Circuit compile_cubic(const GridSpec& g, double eta) {
  Circuit c = fresh(g);
  const int n = g.n_q;
  const double dx3 = g.delta_x * g.delta_x * g.delta_x;
  const double N2 = pow2(2 * n);
  for (int s = 0; s < n; ++s)
    c.rz(s, -eta * dx3 * pow2(n - 1 - s) *
                (0.25 * (N2 - 1.0) - pow2(2 * n - 3 - 2 * s)));
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = q + 1; r < n; ++r)
        c.zzz(p, q, r, -3.0 * eta * dx3 * pow2(3 * n - 5 - p - q - r));
  finalize(c);
  return c;
}

Circuit compile_shifted_qft(const GridSpec& g, double dx, double dp) {
  if (dx <= -0.5 - 1e-12 || dx > 0.5 + 1e-12 || dp <= -0.5 - 1e-12 ||
      dp > 0.5 + 1e-12)
    throw validation_error("compile_shifted_qft: shifts must be in (-0.5, 0.5]");
  Circuit c = fresh(g);
  const int n = g.n_q;
  const double w = 2.0 * M_PI / pow2(n);
  const double cc = 0.5 * (pow2(n) - 1.0);
  // F = e^{iA} D(B(dp)) QFT D(B(dx)), applied right to left;
  // D(B) multiplies |k> by e^{-i k B}, B(d) = w (c - d).
  append_index_ramp(c, n, w * (cc - dx));
  append_qft(c, n);
  append_index_ramp(c, n, w * (cc - dp));
  c.global_phase(w * (cc - dx) * (cc - dp));
  finalize(c);
  return c;
}

Circuit compile_qft(const GridSpec& g) { return compile_shifted_qft(g, 0, 0); }

Circuit compile_kinetic(const GridSpec& g, double eta) {
  Circuit c = fresh(g);
  Circuit F = compile_qft(g);
  c.append(inverse(F));
  c.append(compile_phase(g, eta * g.mu * g.mu));
  c.append(F);
  finalize(c);
  return c;
}

Circuit compile_cphase(const GridSpec& g, double eta) {
  Circuit c = fresh(g, 2);
  const int n = g.n_q;
  const double dx2 = g.delta_x * g.delta_x;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      c.zz(p, n + q, eta * dx2 * pow2(2 * n - 4 - p - q));
  finalize(c);
  return c;
}

namespace {

// Appends e^{+i gamma X^2} then, via the caller's alternation, builds squeeze
// words from phase/kinetic factors. phase_factor(gamma) = e^{-i gamma X^2},
// kinetic_factor(gamma) = e^{-i gamma P^2}.
void append_xp_word(Circuit& c, const GridSpec& g,
                    const std::vector<std::pair<bool, double>>& word) {
  for (const auto& [is_x, gamma] : word) {
    if (is_x)
      c.append(compile_phase(g, gamma));
    else
      c.append(compile_kinetic(g, gamma));
  }
}

}  // namespace

Circuit compile_squeeze_exact(const GridSpec& g, double r) {
  Circuit c = fresh(g);
  SqueezeCoefficients sc = solve_squeeze_coeffs(std::abs(r));
  const double a = sc.a, b = sc.b;
  // S(r) = e^{-i(a/2)X^2} e^{i(a/2)P^2} e^{i(b/2)X^2} e^{-i(b/2)P^2}
  //        e^{-i(a/2)X^2} e^{i(a/2)P^2} for r >= 0; X and P swap for r < 0.
  // Rightmost operator factor is applied first.
  std::vector<std::pair<bool, double>> word = {
      {false, -0.5 * a}, {true, 0.5 * a},  {false, 0.5 * b},
      {true, -0.5 * b},  {false, -0.5 * a}, {true, 0.5 * a}};
  if (r < 0.0)
    for (auto& f : word) f.first = !f.first;
  append_xp_word(c, g, word);
  finalize(c);
  return c;
}

Circuit compile_squeeze_trotter(const GridSpec& g, double r) {
  Circuit c = fresh(g);
  const double s = 0.5 * std::sqrt(std::abs(r));
  // e^{-i s X^2} e^{i s P^2} e^{i s X^2} e^{-i s P^2}, rightmost first.
  std::vector<std::pair<bool, double>> word = {
      {false, s}, {true, -s}, {false, -s}, {true, s}};
  if (r < 0.0)
    for (auto& f : word) f.first = !f.first;
  append_xp_word(c, g, word);
  finalize(c);
  return c;
}

long phase_cnot_formula(int n_q) { return long(n_q) * (n_q - 1); }

long cubic_cnot_formula(int n_q) {
  if (n_q < 3) return 0;
  return 2L * n_q * (n_q - 1) * (n_q - 2) / 3;
}

long cphase_cnot_formula(int n_q) { return 2L * n_q * n_q; }

long qft_cnot_formula(int n_q) {
  // CP pairs: n(n-1)/2, each 1 ZZ = 2 CNOT; swaps: floor(n/2) * 3 CNOT.
  return long(n_q) * (n_q - 1) + 3L * (n_q / 2);
}

long kinetic_cnot_formula(int n_q) {
  return 2 * qft_cnot_formula(n_q) + phase_cnot_formula(n_q);
}

long squeeze_exact_cnot_formula(int n_q) {
  return 3 * phase_cnot_formula(n_q) + 3 * kinetic_cnot_formula(n_q);
}

}  // namespace qm
