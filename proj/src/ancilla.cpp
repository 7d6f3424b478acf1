#include "qumode/ancilla.hpp"

#include <cmath>
#include <json.hpp>
#include <vector>

#include "qumode/circuit.hpp"
#include "qumode/compile.hpp"
#include "qumode/transfer.hpp"

namespace qm {

namespace {

// Weight outside the middle half of the index range [N/4, 3N/4).
double edge_weight(const Eigen::VectorXcd& amps) {
  const int N = int(amps.size());
  double w = 0.0;
  for (int j = 0; j < N / 4; ++j) w += std::norm(amps[j]);
  for (int j = 3 * N / 4; j < N; ++j) w += std::norm(amps[j]);
  return w;
}

// Weight at |x_j| > radius.
double weight_outside(const DiscreteQumode& dv, double radius) {
  double w = 0.0;
  for (int j = 0; j < dv.grid.N_x; ++j)
    if (std::abs(dv.grid.x(j)) > radius) w += std::norm(dv.amps[j]);
  return w;
}

// Directly encoded reference state on `g`: the tagged Fock state when one is
// known (and still representable), otherwise the sinc reconstruction of the
// source state resampled on the new grid.
DiscreteQumode encode_target(const DiscreteQumode& src, const GridSpec& g) {
  if (src.fock_n >= 0) return encode_fock(src.fock_n, g);
  std::vector<double> xs(g.N_x);
  for (int j = 0; j < g.N_x; ++j) xs[j] = g.x(j);
  std::vector<cd> psi = decode_qumode(src, xs);
  DiscreteQumode out;
  out.grid = g;
  out.amps.resize(g.N_x);
  for (int j = 0; j < g.N_x; ++j) out.amps[j] = psi[j];
  const double nrm = out.amps.norm();
  if (nrm <= 0.0)
    throw numerical_error("encode_target: vanishing resampled state");
  out.amps /= nrm;
  return out;
}

double overlap(const DiscreteQumode& a, const DiscreteQumode& b) {
  return std::abs(a.amps.dot(b.amps));
}

}  // namespace

ResizeReport discard_qubit(const DiscreteQumode& dv, double eps) {
  const GridSpec& g = dv.grid;
  if (g.n_q < 2)
    throw validation_error("discard_qubit: need at least 2 qubits");
  if (eps <= 0.0 || eps >= 1.0)
    throw validation_error("discard_qubit: eps must be in (0, 1)");
  ResizeReport rep;
  rep.before = dv;
  rep.edge_weight_pre = edge_weight(dv.amps);
  if (rep.edge_weight_pre > 10.0 * eps)
    throw validation_error(
        "discard_qubit: tail weight outside the middle half is " +
        std::to_string(rep.edge_weight_pre) + " (limit " +
        std::to_string(10.0 * eps) + ")");

  // CX(1 -> 0) then X(1) moves the middle half of the grid onto the
  // qubit-0 = |1> branch.
  Circuit gates;
  gates.n_q = g.n_q;
  gates.cnot(1, 0);
  gates.x(1);
  Eigen::VectorXcd v = simulate(gates, dv.amps);

  const int N = g.N_x;
  double leak = 0.0;
  for (int j = 0; j < N / 2; ++j) leak += std::norm(v[j]);
  rep.leak = leak;
  Eigen::VectorXcd reduced = v.segment(N / 2, N / 2);
  const double nrm = reduced.norm();
  if (nrm <= 0.0)
    throw numerical_error("discard_qubit: projection removed all amplitude");
  reduced /= nrm;

  GridSpec g2 = make_grid(g.n_q - 1, g.mu);
  simulate_inplace(compile_squeeze_exact(g2, 0.5 * std::log(2.0)), reduced);

  rep.after.grid = g2;
  rep.after.amps = std::move(reduced);
  rep.after.fock_n = dv.fock_n;
  rep.fidelity_vs_target = overlap(encode_target(dv, g2), rep.after);
  return rep;
}

ResizeReport pad_qubit(const DiscreteQumode& dv) {
  const GridSpec& g = dv.grid;
  ResizeReport rep;
  rep.before = dv;
  // The squeeze widens the state by sqrt(2); amplitude beyond
  // N delta_x / (2 sqrt(2)) would land outside the source grid and wrap.
  const double half = 0.5 * g.N_x * g.delta_x;
  rep.edge_weight_pre = weight_outside(dv, half / std::sqrt(2.0));
  if (rep.edge_weight_pre > 1e-2)
    throw validation_error(
        "pad_qubit: weight that would leave the grid under the squeeze is " +
        std::to_string(rep.edge_weight_pre) + " (limit 1e-2)");

  Eigen::VectorXcd v = dv.amps;
  simulate_inplace(compile_squeeze_exact(g, -0.5 * std::log(2.0)), v);
  {
    DiscreteQumode tmp;
    tmp.grid = g;
    tmp.amps = v;
    rep.edge_weight_post = weight_outside(tmp, 0.75 * half);
  }
  rep.leak = rep.edge_weight_pre;

  const int N = g.N_x;
  Eigen::VectorXcd big = Eigen::VectorXcd::Zero(2 * N);
  big.segment(N, N) = v;  // new qubit 0 (MSB) in |1>

  Circuit gates;
  gates.n_q = g.n_q + 1;
  gates.x(1);
  gates.cnot(1, 0);
  simulate_inplace(gates, big);

  GridSpec g2 = make_grid(g.n_q + 1, g.mu);
  rep.after.grid = g2;
  rep.after.amps = std::move(big);
  rep.after.fock_n = dv.fock_n;
  rep.fidelity_vs_target = overlap(encode_target(dv, g2), rep.after);
  return rep;
}

ResizeReport resize_to(const DiscreteQumode& dv, int target_n_q, double eps) {
  if (target_n_q < 1 || target_n_q > 24)
    throw validation_error("resize_to: target_n_q out of range");
  ResizeReport rep;
  rep.before = dv;
  if (target_n_q == dv.grid.n_q) {
    rep.after = dv;
    rep.fidelity_vs_target = 1.0;
    return rep;
  }
  if (target_n_q < dv.grid.n_q) {
    const double L_target = make_grid(target_n_q, dv.grid.mu).L;
    const double L_eps = dv_support_radius(dv, eps);
    if (L_target < L_eps)
      throw validation_error(
          "resize_to: target grid half-width " + std::to_string(L_target) +
          " is below the state's eps-support radius " +
          std::to_string(L_eps));
  }
  DiscreteQumode cur = dv;
  double leak = 0.0;
  double edge_pre = 0.0, edge_post = 0.0;
  while (cur.grid.n_q != target_n_q) {
    ResizeReport step = (cur.grid.n_q > target_n_q) ? discard_qubit(cur, eps)
                                                    : pad_qubit(cur);
    leak += step.leak;
    edge_pre = std::max(edge_pre, step.edge_weight_pre);
    edge_post = std::max(edge_post, step.edge_weight_post);
    cur = std::move(step.after);
  }
  rep.leak = leak;
  rep.edge_weight_pre = edge_pre;
  rep.edge_weight_post = edge_post;
  rep.after = std::move(cur);
  rep.fidelity_vs_target =
      overlap(encode_target(dv, rep.after.grid), rep.after);
  return rep;
}

std::string resize_report_to_json(const ResizeReport& rep) {
  nlohmann::json j;
  j["n_q_before"] = rep.before.grid.n_q;
  j["n_q_after"] = rep.after.grid.n_q;
  j["leak"] = rep.leak;
  j["fidelity"] = rep.fidelity_vs_target;
  return j.dump(2);
}

}  // namespace qm
