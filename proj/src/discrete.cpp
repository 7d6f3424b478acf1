#include "qumode/discrete.hpp"

#include <cmath>
#include <json.hpp>

#include "qumode/fft.hpp"

namespace qm {

DenseOperator position_operator(const GridSpec& g) {
  DenseOperator op{g, Eigen::MatrixXcd::Zero(g.N_x, g.N_x)};
  for (int j = 0; j < g.N_x; ++j) op.m(j, j) = g.x(j);
  return op;
}

DenseOperator centered_dft(const GridSpec& g) { return shifted_dft(g, 0, 0); }

DenseOperator shifted_dft(const GridSpec& g, double dx, double dp) {
  if (dx <= -0.5 - 1e-12 || dx > 0.5 + 1e-12 || dp <= -0.5 - 1e-12 ||
      dp > 0.5 + 1e-12)
    throw validation_error("shifted_dft: shifts must lie in (-0.5, 0.5]");
  const int N = g.N_x;
  const double c = 0.5 * (N - 1);
  DenseOperator op{g, Eigen::MatrixXcd(N, N)};
  const double w = 2.0 * M_PI / N;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      op.m(j, k) = std::polar(1.0 / std::sqrt(double(N)),
                              w * (j - c + dx) * (k - c + dp));
  return op;
}

DenseOperator momentum_operator(const GridSpec& g) {
  DenseOperator F = centered_dft(g);
  DenseOperator X = position_operator(g);
  DenseOperator op{g, g.mu * (F.m * X.m * F.m.adjoint())};
  // Hermitize away rounding noise.
  op.m = 0.5 * (op.m + op.m.adjoint().eval());
  return op;
}

DenseOperator grid_shift_operator(const GridSpec& g, double d1, double d2) {
  DenseOperator a = shifted_dft(g, d1, 0.0);
  DenseOperator b = shifted_dft(g, d2, 0.0);
  return DenseOperator{g, a.m * b.m.adjoint()};
}

DenseOperator harmonic_hamiltonian(const GridSpec& g) {
  DenseOperator P = momentum_operator(g);
  DenseOperator X = position_operator(g);
  DenseOperator H{g, 0.5 * (P.m * P.m) + 0.5 * g.mu * g.mu * (X.m * X.m)};
  H.m = 0.5 * (H.m + H.m.adjoint().eval());
  return H;
}

DiscreteFockSet discrete_fock_set(const GridSpec& g, int N_b,
                                  FockSetMode mode) {
  if (N_b < 1 || N_b >= g.N_x)
    throw validation_error("discrete_fock_set: need 1 <= N_b < N_x");
  DiscreteFockSet fs;
  fs.grid = g;
  fs.N_b = N_b;
  fs.mode = mode;
  Eigen::MatrixXcd sampled(g.N_x, N_b);
  for (int n = 0; n < N_b; ++n) {
    Eigen::VectorXcd v(g.N_x);
    for (int j = 0; j < g.N_x; ++j)
      v[j] = std::sqrt(g.delta_x) * fock_wavefunction(n, g.mu, g.x(j));
    sampled.col(n) = v / v.norm();
  }
  if (mode == FockSetMode::sampled) {
    fs.vectors = sampled;
    fs.eigenvalues = Eigen::VectorXd::Zero(N_b);
    return fs;
  }
  DenseOperator H = harmonic_hamiltonian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.m);
  fs.vectors.resize(g.N_x, N_b);
  fs.eigenvalues = es.eigenvalues().head(N_b);
  for (int n = 0; n < N_b; ++n) {
    Eigen::VectorXcd v = es.eigenvectors().col(n);
    cd ov = sampled.col(n).dot(v);  // <sampled|v>
    if (std::abs(ov) > 1e-14) v *= std::conj(ov) / std::abs(ov);
    fs.vectors.col(n) = v;
  }
  return fs;
}

DenseOperator cutoff_projector(const DiscreteFockSet& fs) {
  if (fs.mode != FockSetMode::eigen)
    throw validation_error("cutoff_projector: requires eigen-mode Fock set");
  DenseOperator Q{fs.grid, fs.vectors * fs.vectors.adjoint()};
  return Q;
}

int max_supported_fock(const GridSpec& g, double eps) {
  // L_eps(n) is monotone increasing in n; binary search the largest n with
  // L_eps <= L.
  if (support_radius(0, eps, g.mu).L_eps > g.L) return -1;
  int lo = 0, hi = 512;
  if (support_radius(hi, eps, g.mu).L_eps <= g.L) return hi;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (support_radius(mid, eps, g.mu).L_eps <= g.L)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

EncodeReport encode_samples(const std::function<cd(double)>& psi,
                            const GridSpec& g) {
  Eigen::VectorXcd v(g.N_x);
  for (int j = 0; j < g.N_x; ++j)
    v[j] = std::sqrt(g.delta_x) * psi(g.x(j));
  EncodeReport rep;
  rep.renorm = v.norm();
  if (rep.renorm < 1e-12)
    throw validation_error("encode_samples: wavefunction vanishes on grid");
  rep.dv = DiscreteQumode{g, v / rep.renorm, true, -1};
  return rep;
}

EncodeReport encode_fock_coeffs(const Eigen::VectorXcd& coeffs,
                                const GridSpec& g) {
  if (std::abs(coeffs.norm() - 1.0) > 1e-10)
    throw validation_error("encode_fock_coeffs: coefficients not normalized");
  int n_max = 0;
  for (int n = 0; n < coeffs.size(); ++n)
    if (std::abs(coeffs[n]) > 0) n_max = n;
  EncodeReport rep;
  // Refuse states whose Fock content extends well past what the grid resolves.
  if (support_radius(n_max, 1e-4, g.mu).L_eps > g.L) {
    int nb = max_supported_fock(g, 1e-4);
    rep.omega = truncation_weight(coeffs, nb + 1).omega;
    if (rep.omega > 0.1)
      throw validation_error(
          "encode_fock_coeffs: state weight beyond the grid-supported cutoff "
          "(omega = " +
          std::to_string(rep.omega) + ")");
  }
  auto psi = [&](double x) {
    cd acc = 0.0;
    for (int n = 0; n < coeffs.size(); ++n)
      if (std::abs(coeffs[n]) > 0)
        acc += coeffs[n] * fock_wavefunction(n, g.mu, x);
    return acc;
  };
  double omega = rep.omega;
  rep = encode_samples(psi, g);
  rep.omega = omega;
  return rep;
}

DiscreteQumode encode_fock(int n, const GridSpec& g) {
  if (support_radius(n, 1e-4, g.mu).L_eps > g.L)
    throw validation_error(
        "encode_fock: order " + std::to_string(n) +
        " does not fit the grid (support radius exceeds L)");
  Eigen::VectorXcd v(g.N_x);
  for (int j = 0; j < g.N_x; ++j)
    v[j] = std::sqrt(g.delta_x) * fock_wavefunction(n, g.mu, g.x(j));
  DiscreteQumode dv{g, v / v.norm(), true, n};
  return dv;
}

std::vector<cd> decode_qumode(const DiscreteQumode& dv,
                              const std::vector<double>& xs) {
  std::vector<cd> out;
  out.reserve(xs.size());
  const double s = 1.0 / std::sqrt(dv.grid.delta_x);
  for (double x : xs)
    out.push_back(s * sinc_interpolate(dv.amps, dv.grid, x));
  return out;
}

void apply_shifted_dft(Eigen::VectorXcd& v, const GridSpec& g, double dx,
                       double dp, bool inverse) {
  const int N = g.N_x;
  if (v.size() != N) throw validation_error("apply_shifted_dft: size mismatch");
  const double c = 0.5 * (N - 1);
  const double w = 2.0 * M_PI / N;
  const double A = w * (c - dx) * (c - dp);
  if (!inverse) {
    // out_j = (1/sqrt(N)) e^{iA} e^{i w j (dp - c)} sum_k e^{i w jk}
    //         [e^{i w k (dx - c)} v_k]
    for (int k = 0; k < N; ++k) v[k] *= std::polar(1.0, w * k * (dx - c));
    fft(v, +1);
    const double s = 1.0 / std::sqrt(double(N));
    for (int j = 0; j < N; ++j)
      v[j] *= std::polar(s, A + w * j * (dp - c));
  } else {
    for (int j = 0; j < N; ++j) v[j] *= std::polar(1.0, -w * j * (dp - c));
    fft(v, -1);
    const double s = 1.0 / std::sqrt(double(N));
    for (int k = 0; k < N; ++k)
      v[k] *= std::polar(s, -A - w * k * (dx - c));
  }
}

void apply_centered_dft(Eigen::VectorXcd& v, const GridSpec& g, bool inverse) {
  apply_shifted_dft(v, g, 0.0, 0.0, inverse);
}

std::string dv_to_json(const DiscreteQumode& dv) {
  nlohmann::json j;
  j["n_q"] = dv.grid.n_q;
  j["mu"] = dv.grid.mu;
  auto amps = nlohmann::json::array();
  for (int i = 0; i < dv.amps.size(); ++i)
    amps.push_back({dv.amps[i].real(), dv.amps[i].imag()});
  j["amps"] = std::move(amps);
  return j.dump();
}

DiscreteQumode dv_from_json(const std::string& text) {
  nlohmann::json j;
  GridSpec g;
  try {
    j = nlohmann::json::parse(text);
    g = make_grid(j.at("n_q").get<int>(), j.at("mu").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("dv_from_json: ") + e.what());
  }
  const auto& amps = j.at("amps");
  if ((int)amps.size() != g.N_x)
    throw validation_error("dv_from_json: amplitude count != N_x");
  DiscreteQumode dv{g, Eigen::VectorXcd(g.N_x), true, -1};
  for (int i = 0; i < g.N_x; ++i)
    dv.amps[i] = cd(amps[i][0].get<double>(), amps[i][1].get<double>());
  return dv;
}

}  // namespace qm
