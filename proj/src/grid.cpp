#include "qumode/grid.hpp"

#include <cmath>

namespace qm {

GridSpec make_grid(int n_q, double mu) {
  if (n_q < 1 || n_q > 16)
    throw validation_error("make_grid: n_q must be in [1,16], got " +
                           std::to_string(n_q));
  if (!(mu > 0.0)) throw validation_error("make_grid: mu must be positive");
  GridSpec g;
  g.n_q = n_q;
  g.mu = mu;
  g.N_x = 1 << n_q;
  g.delta_x = std::sqrt(2.0 * M_PI / (g.N_x * mu));
  g.delta_p = mu * g.delta_x;
  g.L = std::sqrt(M_PI * g.N_x / 2.0);
  return g;
}

double fock_wavefunction(int n, double mu, double x) {
  if (n < 0 || n > 512)
    throw validation_error("fock_wavefunction: order must be in [0,512]");
  const double f0 = std::pow(mu / M_PI, 0.25) * std::exp(-0.5 * mu * x * x);
  if (n == 0) return f0;
  double fm = 0.0, fc = f0;
  for (int k = 0; k < n; ++k) {
    double fn = x * std::sqrt(2.0 * mu / (k + 1)) * fc -
                std::sqrt(double(k) / (k + 1)) * fm;
    fm = fc;
    fc = fn;
  }
  return fc;
}

cd fock_momentum_wavefunction(int n, double mu, double p) {
  static const cd phases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^n
  return phases[n & 3] * fock_wavefunction(n, mu, p / mu) / std::sqrt(mu);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol * 0.5, depth + 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, tol * 0.5, depth + 1);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol) {
  if (a == b) return 0.0;
  // Split into a few panels first so narrow features are not missed.
  const int panels = 8;
  double h = (b - a) / panels, total = 0.0;
  for (int i = 0; i < panels; ++i) {
    double pa = a + i * h, pb = pa + h, pm = 0.5 * (pa + pb);
    double fa = f(pa), fb = f(pb), fm = f(pm);
    double whole = simpson(f, pa, fa, pb, fb, pm, fm);
    total +=
        adaptive_step(f, pa, fa, pb, fb, pm, fm, whole, tol / panels, 0);
  }
  return total;
}

namespace {

// Tail norm of phi_n outside [-Lval/sqrt(mu), Lval/sqrt(mu)].
double tail_norm(int n, double mu, double Lval, double quad_tol) {
  const double a = Lval / std::sqrt(mu);
  const double b = (std::sqrt(2.0 * n + 1.0) + 25.0) / std::sqrt(mu);
  if (a >= b) return 0.0;
  auto w = [n, mu](double x) {
    double v = fock_wavefunction(n, mu, x);
    return v * v;
  };
  double integral = 2.0 * adaptive_quad(w, a, b, quad_tol);
  return std::sqrt(std::max(0.0, integral));
}

}  // namespace

SupportRadius support_radius(int n, double eps, double mu) {
  if (!(eps >= 1e-12 && eps < 1.0))
    throw validation_error("support_radius: eps must be in [1e-12, 1)");
  if (n < 0 || n > 512)
    throw validation_error("support_radius: order must be in [0,512]");
  // The tail condition compares sqrt(integral) <= eps, so the integral must be
  // resolved well below eps^2.
  const double quad_tol = eps * eps / 100.0;
  double lo = 0.0;
  double hi = std::sqrt(2.0 * n + 1.0) + 15.0;
  while (tail_norm(n, mu, hi, quad_tol) > eps) hi += 5.0;
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (tail_norm(n, mu, mid, quad_tol) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return SupportRadius{n, eps, hi, mu};
}

FockSpectrumWeight truncation_weight(const Eigen::VectorXcd& coeffs, int N_b) {
  if (N_b < 0) throw validation_error("truncation_weight: N_b must be >= 0");
  double norm = coeffs.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw validation_error("truncation_weight: coefficients not normalized");
  double tail = 0.0;
  for (int i = N_b; i < coeffs.size(); ++i) tail += std::norm(coeffs[i]);
  FockSpectrumWeight w;
  w.N_b = N_b;
  w.omega = std::min(1.0, std::sqrt(tail));
  return w;
}

double sinc_kernel(const GridSpec& g, double x) {
  double t = M_PI * x / g.delta_x;
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

cd sinc_interpolate(const Eigen::VectorXcd& samples, const GridSpec& g,
                    double x, double delta) {
  if (samples.size() != g.N_x)
    throw validation_error("sinc_interpolate: sample length != N_x");
  if (std::abs(delta) > 0.5 + 1e-12)
    throw validation_error("sinc_interpolate: |delta| must be <= 0.5");
  cd acc = 0.0;
  for (int j = 0; j < g.N_x; ++j)
    acc += samples[j] * sinc_kernel(g, x - g.x(j) - delta * g.delta_x);
  return acc;
}

}  // namespace qm
