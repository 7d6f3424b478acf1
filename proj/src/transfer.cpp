#include "qumode/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qumode/fft.hpp"

namespace qm {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double riemann_norm(const Eigen::VectorXcd& v, double dx) {
  return std::sqrt(v.squaredNorm() * dx);
}

SampledCVState fresh_cv(const GridSpec& grid, int oversample, int span_factor) {
  if (oversample < 8 || !power_of_two(oversample))
    throw validation_error("SampledCVState: oversample must be a power of two >= 8");
  if (span_factor < 2 || !power_of_two(span_factor))
    throw validation_error("SampledCVState: span_factor must be a power of two >= 2");
  SampledCVState cv;
  cv.mu = grid.mu;
  cv.oversample = oversample;
  cv.fine_dx = grid.delta_x / oversample;
  cv.fine_n = span_factor * grid.N_x * oversample;
  cv.x_min = -0.5 * cv.fine_n * cv.fine_dx;
  cv.amps = Eigen::VectorXcd::Zero(cv.fine_n);
  return cv;
}

void check_cv_grid(const SampledCVState& cv, const GridSpec& grid) {
  if (std::abs(cv.mu - grid.mu) > 1e-12)
    throw validation_error("transfer: CV/grid mass mismatch");
  if (std::abs(cv.fine_dx * cv.oversample - grid.delta_x) > 1e-12)
    throw validation_error("transfer: CV fine grid does not refine this grid");
}

// Symmetric tail half-width: smallest a (grid-resolved) such that the weight
// at points with |coordinate| > a is <= eps^2.
double tail_half_width(const Eigen::VectorXd& weights,
                       const std::function<double(int)>& coord, double eps) {
  const int n = weights.size();
  std::vector<std::pair<double, double>> by_r(n);
  for (int i = 0; i < n; ++i) by_r[i] = {std::abs(coord(i)), weights[i]};
  std::sort(by_r.begin(), by_r.end());
  double tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    tail += by_r[i].second;
    if (tail > eps * eps) return by_r[i].first;
  }
  return 0.0;
}

}  // namespace

SampledCVState make_fock_cv(const GridSpec& grid, int n, int oversample,
                            int span_factor) {
  SampledCVState cv = fresh_cv(grid, oversample, span_factor);
  for (int t = 0; t < cv.fine_n; ++t)
    cv.amps[t] = fock_wavefunction(n, grid.mu, cv.x(t));
  cv.amps /= riemann_norm(cv.amps, cv.fine_dx);
  cv.fock_n = n;
  return cv;
}

SampledCVState make_initial_cv(InitialCvKind kind, const GridSpec& grid,
                               double sigma, int oversample, int span_factor) {
  SampledCVState cv = fresh_cv(grid, oversample, span_factor);
  if (kind == InitialCvKind::rectangular) {
    // Support [-L/sqrt(mu), L/sqrt(mu)), exactly N_x*oversample fine samples
    // (counting both endpoints would double-count one period-duplicate of the
    // anti-periodic momentum extension and shift Pr(p_m) off 1/N_x by O(1/M)).
    const double half = grid.L / std::sqrt(grid.mu);
    const double val = std::pow(grid.mu, 0.25) / std::sqrt(2.0 * grid.L);
    const int t_left = int(std::lround((-half - cv.x_min) / cv.fine_dx));
    const int M = grid.N_x * oversample;
    for (int t = t_left; t < t_left + M; ++t) cv.amps[t] = val;
  } else {
    if (sigma <= 0.0)
      throw validation_error("make_initial_cv: gaussian needs sigma > 0");
    const double pref = std::pow(M_PI, -0.25) / std::sqrt(sigma);
    for (int t = 0; t < cv.fine_n; ++t) {
      const double x = cv.x(t);
      cv.amps[t] = pref * std::exp(-0.5 * x * x / (sigma * sigma));
    }
  }
  cv.amps /= riemann_norm(cv.amps, cv.fine_dx);
  return cv;
}

DiscreteQumode encode_cv(const SampledCVState& cv, const GridSpec& grid) {
  check_cv_grid(cv, grid);
  const int ov = cv.oversample;
  Eigen::VectorXcd v(grid.N_x);
  for (int j = 0; j < grid.N_x; ++j) {
    const int t = j * ov - (grid.N_x - 1) * ov / 2 + cv.fine_n / 2;
    if (t < 0 || t >= cv.fine_n)
      throw validation_error("encode_cv: grid point outside the fine span");
    v[j] = std::sqrt(grid.delta_x) * cv.amps[t];
  }
  DiscreteQumode dv{grid, v / v.norm(), true, cv.fock_n};
  return dv;
}

double cv_support_radius(const SampledCVState& cv, double eps) {
  if (cv.fock_n >= 0) return support_radius(cv.fock_n, eps, cv.mu).L_eps;
  const int F = cv.fine_n;
  Eigen::VectorXd wx(F);
  for (int t = 0; t < F; ++t)
    wx[t] = std::norm(cv.amps[t]) * cv.fine_dx;
  const double ax =
      tail_half_width(wx, [&](int t) { return cv.x(t); }, eps);
  // Momentum tail via FFT (Parseval on the fine grid).
  Eigen::VectorXcd ft = cv.amps;
  fft(ft, -1);
  const double total = ft.squaredNorm();
  Eigen::VectorXd wp(F);
  const double dk = 2.0 * M_PI / (F * cv.fine_dx);
  for (int l = 0; l < F; ++l) wp[l] = std::norm(ft[l]) / total;
  auto kappa = [&](int l) { return dk * (l < F / 2 ? l : l - F); };
  const double ap = tail_half_width(wp, kappa, eps);
  return std::max(ax * std::sqrt(cv.mu), ap / std::sqrt(cv.mu));
}

double dv_support_radius(const DiscreteQumode& dv, double eps) {
  if (dv.fock_n >= 0) return support_radius(dv.fock_n, eps, dv.grid.mu).L_eps;
  const GridSpec& g = dv.grid;
  Eigen::VectorXd wx(g.N_x);
  for (int j = 0; j < g.N_x; ++j) wx[j] = std::norm(dv.amps[j]);
  const double ax = tail_half_width(wx, [&](int j) { return g.x(j); }, eps);
  Eigen::VectorXcd mom = dv.amps;
  apply_centered_dft(mom, g, true);
  Eigen::VectorXd wp(g.N_x);
  for (int m = 0; m < g.N_x; ++m) wp[m] = std::norm(mom[m]);
  const double ap = tail_half_width(wp, [&](int m) { return g.p(m); }, eps);
  return std::max(ax * std::sqrt(g.mu), ap / std::sqrt(g.mu));
}

JointState prepare_joint_cvdv(const SampledCVState& cv, const GridSpec& grid) {
  check_cv_grid(cv, grid);
  JointState joint;
  joint.grid = grid;
  joint.cv = cv;
  joint.amps.resize(cv.fine_n, grid.N_x);
  const double inv_sqrt_n = 1.0 / std::sqrt(double(grid.N_x));
  for (int j = 0; j < grid.N_x; ++j)
    joint.amps.col(j) = inv_sqrt_n * cv.amps;
  return joint;
}

void apply_entangler_cvdv(JointState& joint, double scale) {
  const GridSpec& g = joint.grid;
  for (int j = 0; j < g.N_x; ++j) {
    const double freq = scale * g.mu * g.x(j);
    for (int t = 0; t < joint.cv.fine_n; ++t)
      joint.amps(t, j) *= std::polar(1.0, -freq * joint.cv.x(t));
  }
}

Eigen::VectorXcd cvdv_momentum_samples(const SampledCVState& cv,
                                       const GridSpec& grid, double p0) {
  check_cv_grid(cv, grid);
  const int N = grid.N_x;
  const int M = N * cv.oversample;
  const int F = cv.fine_n;
  // hat(phi)(q_j), q_j = delta_p (j-c) + p0, as one M-point FFT: the fine-grid
  // Riemann sum folds exactly because delta_p * fine_dx = 2 pi / M.
  Eigen::VectorXcd folded = Eigen::VectorXcd::Zero(M);
  const double pref = cv.fine_dx / std::sqrt(2.0 * M_PI);
  for (int k = 0; k < F; ++k) {
    const cd w = pref * cv.amps[k] * std::polar(1.0, -p0 * cv.x(k));
    const int s = k / M;
    folded[k - s * M] += (s & 1) ? -w : w;
  }
  for (int t = 0; t < M; ++t)
    folded[t] *= std::polar(1.0, M_PI * (N - 1.0) * t / M);
  fft(folded, -1);
  const double c = 0.5 * (N - 1);
  Eigen::VectorXcd out(N);
  for (int j = 0; j < N; ++j)
    out[j] = folded[j] * std::polar(1.0, -(j - c) * grid.delta_p * cv.x_min);
  return out;
}

double cvdv_measurement_pdf(const SampledCVState& cv, const GridSpec& grid,
                            double p) {
  Eigen::VectorXcd v = cvdv_momentum_samples(cv, grid, p);
  return v.squaredNorm() / grid.N_x;
}

TransferOutcome cvdv_transfer(const SampledCVState& cv, const GridSpec& grid,
                              double p_meas, double eps) {
  check_cv_grid(cv, grid);
  if (std::abs(p_meas) > M_PI / cv.fine_dx)
    throw validation_error("cvdv_transfer: p_meas beyond the fine momentum span");
  TransferOutcome out;
  out.measured_value = p_meas;
  Eigen::VectorXcd v = cvdv_momentum_samples(cv, grid, p_meas);
  out.probability = v.squaredNorm() / grid.N_x;
  if (v.norm() < 1e-14)
    throw numerical_error("cvdv_transfer: outcome has vanishing probability");
  v /= v.norm();
  // p_meas = (n + dp) delta_p with dp in (-0.5, 0.5].
  const double t = p_meas / grid.delta_p;
  const long n = std::lround(std::ceil(t - 0.5));
  const double dp = t - n;
  // Correction 1: e^{-i(n delta_p/mu) P} = F diag(e^{-i n delta_p x_j}) F^{-1}.
  apply_centered_dft(v, grid, true);
  for (int j = 0; j < grid.N_x; ++j)
    v[j] *= std::polar(1.0, -double(n) * grid.delta_p * grid.x(j));
  apply_centered_dft(v, grid, false);
  // Correction 2: shifted Fourier transform F_{0,dp}.
  apply_shifted_dft(v, grid, 0.0, dp, false);
  out.dv_out = DiscreteQumode{grid, v, true, -1};
  DiscreteQumode target = encode_cv(cv, grid);
  out.fidelity = std::abs(target.amps.dot(v));
  const double L_eps = cv_support_radius(cv, eps);
  out.in_window = std::abs(p_meas) <
                  (grid.L - L_eps) * std::sqrt(grid.mu) + 0.5 * grid.delta_p;
  return out;
}

SuccessReport cvdv_success_probability(const SampledCVState& cv,
                                       const GridSpec& grid, double eps) {
  const double pmax = grid.L * std::sqrt(grid.mu);
  int half = 2 * grid.N_x;  // step delta_p/4 over [-L sqrt(mu), L sqrt(mu)]
  if (2 * half + 1 < 201) half = 100;
  const double h = pmax / half;
  SuccessReport rep;
  rep.eps = eps;
  rep.n_points = 2 * half + 1;
  double acc_win = 0.0, acc_fid = 0.0;
  for (int i = -half; i <= half; ++i) {
    TransferOutcome oc = cvdv_transfer(cv, grid, i * h, eps);
    const double w = (i == -half || i == half) ? 0.5 : 1.0;
    if (oc.in_window) acc_win += w * oc.probability;
    if (oc.fidelity > 1.0 - eps) acc_fid += w * oc.probability;
  }
  rep.p_success = acc_win * h;
  rep.p_success_fid = acc_fid * h;
  const double L_eps = cv_support_radius(cv, eps);
  rep.predicted = (grid.L - L_eps) / grid.L + 1.0 / grid.N_x;
  return rep;
}

TransferOutcome sample_cvdv(const SampledCVState& cv, const GridSpec& grid,
                            std::uint64_t seed, double eps) {
  std::mt19937_64 rng(seed);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  // Inverse CDF on a delta_p/4 grid over [-N_x delta_p, N_x delta_p], which
  // carries the full outcome mass.
  const double pmax = grid.N_x * grid.delta_p;
  const int half = 4 * grid.N_x;
  const double h = pmax / half;
  std::vector<double> pdf(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i)
    pdf[i] = cvdv_measurement_pdf(cv, grid, -pmax + i * h);
  std::vector<double> cdf(2 * half + 1, 0.0);
  for (int i = 1; i <= 2 * half; ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * h;
  const double total = cdf.back();
  const double goal = u * total;
  int i = 1;
  while (i < 2 * half && cdf[i] < goal) ++i;
  const double seg = cdf[i] - cdf[i - 1];
  const double frac = seg > 0 ? (goal - cdf[i - 1]) / seg : 0.5;
  const double p_meas = -pmax + (i - 1 + frac) * h;
  return cvdv_transfer(cv, grid, p_meas, eps);
}

cd aperiodic_momentum_extension(const DiscreteQumode& dv, double p) {
  const GridSpec& g = dv.grid;
  cd acc = 0.0;
  for (int j = 0; j < g.N_x; ++j)
    acc += dv.amps[j] * std::polar(1.0, -g.x(j) * p);
  return std::sqrt(g.delta_x / (2.0 * M_PI)) * acc;
}

namespace {

// Anti-periodic lookup of the hat(phi)_aper table at integer fine-momentum
// index l (spacing delta_p/oversample, period M with sign flip).
cd aper_lookup(const Eigen::VectorXcd& table, long l) {
  const long M = table.size();
  long s = l >= 0 ? l / M : -((-l + M - 1) / M);
  long l0 = l - s * M;
  cd v = table[l0];
  return (s & 1) ? -v : v;
}

}  // namespace

DvcvContext make_dvcv_context(const DiscreteQumode& dv,
                              const SampledCVState& g, double eps) {
  check_cv_grid(g, dv.grid);
  DvcvContext ctx;
  ctx.dv = dv;
  ctx.g = g;
  ctx.grid = dv.grid;
  const GridSpec& grid = dv.grid;
  const int M = grid.N_x * g.oversample;
  // hat(phi)_aper at momenta l * delta_p/oversample, l = 0..M-1.
  Eigen::VectorXcd tab = Eigen::VectorXcd::Zero(M);
  tab.head(grid.N_x) = dv.amps;
  fft(tab, -1);
  const double c = 0.5 * (grid.N_x - 1);
  const double pref = 1.0 / std::sqrt(grid.delta_p * grid.N_x);
  for (int l = 0; l < M; ++l)
    tab[l] *= pref * std::polar(1.0, 2.0 * M_PI * c * l / M);
  ctx.aper_table = tab;
  // Sinc reconstruction of the DV state on the fine grid (the target).
  ctx.target.resize(g.fine_n);
  const double inv_sqrt_dx = 1.0 / std::sqrt(grid.delta_x);
  for (int t = 0; t < g.fine_n; ++t) {
    cd acc = 0.0;
    const double x = g.x(t);
    for (int j = 0; j < grid.N_x; ++j)
      acc += dv.amps[j] * sinc_kernel(grid, x - grid.x(j));
    ctx.target[t] = inv_sqrt_dx * acc;
  }
  ctx.target /= riemann_norm(ctx.target, g.fine_dx);
  if (dv.fock_n >= 0) {
    ctx.target_raw.resize(g.fine_n);
    for (int t = 0; t < g.fine_n; ++t)
      ctx.target_raw[t] = fock_wavefunction(dv.fock_n, grid.mu, g.x(t));
    ctx.target_raw /= riemann_norm(ctx.target_raw, g.fine_dx);
  }
  ctx.L_eps = dv_support_radius(dv, eps);
  return ctx;
}

namespace {

// Conditional (unnormalized) CV state after the DV momentum measurement m.
Eigen::VectorXcd dvcv_conditional(const DvcvContext& ctx, int m) {
  const GridSpec& grid = ctx.grid;
  const SampledCVState& g = ctx.g;
  const int ov = g.oversample;
  const long base =
      long(ov) * m - long(ov) * (grid.N_x - 1) / 2 - g.fine_n / 2;
  Eigen::VectorXcd h(g.fine_n);
  for (int t = 0; t < g.fine_n; ++t)
    h[t] = g.amps[t] * aper_lookup(ctx.aper_table, base + t);
  return h;
}

void finish_outcome(const DvcvContext& ctx, TransferOutcome& out,
                    Eigen::VectorXcd xi) {
  const SampledCVState& g = ctx.g;
  xi /= riemann_norm(xi, g.fine_dx);
  out.cv_out = g;
  out.cv_out.amps = xi;
  out.cv_out.fock_n = -1;
  out.fidelity = std::abs(ctx.target.dot(xi)) * g.fine_dx;
  if (ctx.target_raw.size() > 0)
    out.fidelity_raw = std::abs(ctx.target_raw.dot(xi)) * g.fine_dx;
  const GridSpec& grid = ctx.grid;
  out.in_window =
      std::abs(out.measured_value) <
      (grid.L - ctx.L_eps) * std::sqrt(grid.mu) + 0.5 * grid.delta_p;
}

}  // namespace

TransferOutcome dvcv_transfer(const DvcvContext& ctx, int m) {
  const GridSpec& grid = ctx.grid;
  if (m < 0 || m >= grid.N_x)
    throw validation_error("dvcv_transfer: m out of range");
  const SampledCVState& g = ctx.g;
  const int F = g.fine_n;
  const double p_m = grid.p(m);
  TransferOutcome out;
  out.measured_value = p_m;
  Eigen::VectorXcd h = dvcv_conditional(ctx, m);
  out.probability = grid.delta_p * h.squaredNorm() * g.fine_dx;
  if (h.norm() < 1e-14)
    throw numerical_error("dvcv_transfer: outcome has vanishing probability");
  h /= riemann_norm(h, g.fine_dx);
  // Displacement e^{-i(p_m/mu)P}: exact phase multiplication in Fourier space.
  const double d = p_m / grid.mu;
  fft(h, -1);
  const double dk = 2.0 * M_PI / (F * g.fine_dx);
  for (int l = 0; l < F; ++l) {
    const double kappa = dk * (l < F / 2 ? l : l - F);
    h[l] *= std::polar(1.0 / F, -kappa * d);
  }
  fft(h, +1);
  // Scaled Fourier transform F_mu: xi(x_t) = sqrt(mu/2pi) * fine_dx *
  // sum_s h(x_s) e^{i mu x_s x_t}, via a zero-padded FFT of size N_x*ov^2
  // (mu * fine_dx^2 = 2pi / (N_x ov^2)).
  const int P = grid.N_x * g.oversample * g.oversample;
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(P);
  for (int s = 0; s < F; ++s) {
    const long st = s - F / 2;
    buf[(st % P + P) % P] += h[s];
  }
  fft(buf, +1);
  const double scale = std::sqrt(grid.mu / (2.0 * M_PI)) * g.fine_dx;
  Eigen::VectorXcd xi(F);
  for (int t = 0; t < F; ++t) {
    const long tt = t - F / 2;
    xi[t] = scale * buf[(tt % P + P) % P];
  }
  finish_outcome(ctx, out, std::move(xi));
  return out;
}

TransferOutcome dvcv_transfer(const DiscreteQumode& dv,
                              const SampledCVState& g, int m, double eps) {
  return dvcv_transfer(make_dvcv_context(dv, g, eps), m);
}

TransferOutcome dvcv_transfer_analytic(const DvcvContext& ctx, int m,
                                       InitialCvKind kind, double sigma) {
  const GridSpec& grid = ctx.grid;
  if (m < 0 || m >= grid.N_x)
    throw validation_error("dvcv_transfer_analytic: m out of range");
  if (kind == InitialCvKind::gaussian && sigma <= 0.0)
    throw validation_error("dvcv_transfer_analytic: gaussian needs sigma > 0");
  const SampledCVState& g = ctx.g;
  const double p_m = grid.p(m);
  const int N = grid.N_x;
  // xi(x) e^{-i x p_m} = C sum_j phi(x_j) e^{-i x_j p_m} ghat[mu(x_j - x)].
  std::vector<cd> phased(N);
  for (int j = 0; j < N; ++j)
    phased[j] = ctx.dv.amps[j] / std::sqrt(grid.delta_x) *
                std::polar(1.0, -grid.x(j) * p_m);
  Eigen::VectorXcd xi(g.fine_n);
  if (kind == InitialCvKind::rectangular) {
    // Exact closed form of the discretized pipeline: the rectangular window
    // covers M = N_x * oversample fine samples, so the kernel is the
    // M-point Dirichlet kernel D_M(theta) = sin(M theta/2)/sin(theta/2),
    // theta = mu (x - x_j) fine_dx, which already carries every aliasing
    // image of the fine grid. The window's half-sample offset contributes
    // the phase e^{-i mu (x - x_j) fine_dx / 2}.
    const int M = N * g.oversample;
    auto dirichlet = [M](double theta) -> double {
      const double h = 0.5 * theta;
      const double sh = std::sin(h);
      if (std::abs(sh) < 1e-9) return M * std::cos(M * h) / std::cos(h);
      return std::sin(M * h) / sh;
    };
    for (int t = 0; t < g.fine_n; ++t) {
      const double x = g.x(t);
      cd acc = 0.0;
      for (int j = 0; j < N; ++j) {
        const double theta = grid.mu * (x - grid.x(j)) * g.fine_dx;
        acc += phased[j] * dirichlet(theta) * std::polar(1.0, -0.5 * theta);
      }
      xi[t] = std::polar(1.0, x * p_m) * acc;
    }
  } else {
    auto g_hat = [&](double z) {
      return std::pow(M_PI, -0.25) * std::sqrt(sigma) *
             std::exp(-0.5 * sigma * sigma * z * z);
    };
    for (int t = 0; t < g.fine_n; ++t) {
      const double x = g.x(t);
      cd acc = 0.0;
      for (int j = 0; j < N; ++j)
        acc += phased[j] * g_hat(grid.mu * (grid.x(j) - x));
      xi[t] = std::polar(1.0, x * p_m) * acc;
    }
  }
  TransferOutcome out;
  out.measured_value = p_m;
  if (kind == InitialCvKind::rectangular) {
    out.probability = 1.0 / N;
  } else {
    double pr = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double dxij = grid.x(i) - grid.x(j);
        pr += std::real(std::conj(ctx.dv.amps[i]) * ctx.dv.amps[j] *
                        std::polar(1.0, dxij * p_m)) *
              std::exp(-0.25 * sigma * sigma * grid.mu * grid.mu * dxij * dxij);
      }
    out.probability = pr * grid.delta_p / (grid.N_x * grid.mu * grid.delta_x);
  }
  finish_outcome(ctx, out, std::move(xi));
  return out;
}

SuccessReport dvcv_success_probability(const DiscreteQumode& dv,
                                       const SampledCVState& g, double eps) {
  DvcvContext ctx = make_dvcv_context(dv, g, eps);
  SuccessReport rep;
  rep.eps = eps;
  rep.n_points = dv.grid.N_x;
  double acc_win = 0.0, acc_fid = 0.0;
  for (int m = 0; m < dv.grid.N_x; ++m) {
    TransferOutcome oc = dvcv_transfer(ctx, m);
    if (oc.in_window) acc_win += oc.probability;
    if (oc.fidelity > 1.0 - eps) acc_fid += oc.probability;
  }
  rep.p_success = acc_win;
  rep.p_success_fid = acc_fid;
  rep.predicted = (dv.grid.L - ctx.L_eps) / dv.grid.L;
  return rep;
}

}  // namespace qm
