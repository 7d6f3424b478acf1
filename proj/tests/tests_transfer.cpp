// Unit tests for the measurement-based transfer protocols (both directions),
// the register resize operations, and the config/serialization helpers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "qumode/ancilla.hpp"
#include "qumode/grid.hpp"
#include "qumode/io.hpp"
#include "qumode/transfer.hpp"

using namespace qm;
using std::abs;

namespace {
const double PI = std::acos(-1.0);
}

TEST_CASE("sampled CV states are normalized and span the fine grid") {
  const GridSpec g = make_grid(7, 1.0);
  for (int n : {0, 10}) {
    const SampledCVState cv = make_fock_cv(g, n);
    double mass = 0.0;
    for (int t = 0; t < cv.fine_n; ++t) mass += std::norm(cv.amps[t]);
    mass *= cv.fine_dx;
    CHECK(abs(mass - 1.0) < 1e-8);
    CHECK(-cv.x_min >= 2 * g.L / std::sqrt(g.mu) - 1e-9);
  }
  const SampledCVState rect =
      make_initial_cv(InitialCvKind::rectangular, g);
  double mass = 0.0;
  for (int t = 0; t < rect.fine_n; ++t) mass += std::norm(rect.amps[t]);
  CHECK(abs(mass * rect.fine_dx - 1.0) < 1e-8);
  CHECK_THROWS_AS(make_initial_cv(InitialCvKind::gaussian, g, 0.0),
                  validation_error);
}

TEST_CASE("rectangular ancilla momentum transform is the sinc kernel") {
  // The Fourier transform of the width-2L/sqrt(mu) rectangle evaluated at
  // p = mu*x equals u(x)/sqrt(delta_p), u the grid sinc kernel.
  const GridSpec g = make_grid(6, 1.0);
  const SampledCVState rect =
      make_initial_cv(InitialCvKind::rectangular, g, 0.0, 16, 2);
  // pointwise values: constant inside [-L/sqrt(mu), L/sqrt(mu)], zero outside
  const double inside = std::pow(g.mu, 0.25) / std::sqrt(2 * g.L);
  const double a = g.L / std::sqrt(g.mu);
  for (int t = 0; t < rect.fine_n; ++t) {
    const double x = rect.x(t);
    if (abs(x) < a - rect.fine_dx)
      CHECK(abs(rect.amps[t] - cd(inside)) < 1e-12);
    if (abs(x) > a + rect.fine_dx) CHECK(abs(rect.amps[t]) < 1e-12);
  }
  for (double x : {0.0, 0.11, -0.73, 2.5}) {
    const double p = g.mu * x;
    // Riemann integral of the rectangle's Fourier transform; accuracy is
    // limited by the O((p*fine_dx)^2) midpoint error of the sampled edges
    cd ft = 0.0;
    for (int t = 0; t < rect.fine_n; ++t)
      ft += rect.amps[t] * std::polar(1.0, -p * rect.x(t));
    ft *= rect.fine_dx / std::sqrt(2 * PI);
    CHECK(abs(ft - cd(sinc_kernel(g, x) / std::sqrt(g.delta_p))) < 2e-3);
  }
}

TEST_CASE("joint state preparation and entangler") {
  const GridSpec g = make_grid(4, 1.0);
  const SampledCVState cv = make_fock_cv(g, 0);
  JointState joint = prepare_joint_cvdv(cv, g);
  double norm2 = joint.amps.cwiseAbs2().sum() * cv.fine_dx;
  CHECK(abs(norm2 - 1.0) < 1e-8);
  // DV marginal uniform 1/N_x
  for (int j = 0; j < g.N_x; ++j) {
    const double col = joint.amps.col(j).cwiseAbs2().sum() * cv.fine_dx;
    CHECK(abs(col - 1.0 / g.N_x) < 1e-8);
  }
  // entangler with scale 0 is the identity; scale 1 preserves norm
  JointState copy = joint;
  apply_entangler_cvdv(copy, 0.0);
  CHECK((copy.amps - joint.amps).cwiseAbs().maxCoeff() == 0.0);
  apply_entangler_cvdv(joint);
  CHECK(abs(joint.amps.cwiseAbs2().sum() * cv.fine_dx - 1.0) < 1e-12);
}

TEST_CASE("CV->DV pdf: plateau and normalization") {
  const GridSpec g = make_grid(7, 1.0);
  const SampledCVState cv = make_fock_cv(g, 0);
  const double plateau = 1.0 / (g.N_x * g.delta_p);
  const double Leps = support_radius(0, 1e-4, 1.0).L_eps;
  const double win = (g.L - Leps) * std::sqrt(g.mu);
  double mx = 0.0, mn = 1e300;
  for (int k = 0; k <= 40; ++k) {
    const double p = -win + 2 * win * k / 40.0;
    const double pr = cvdv_measurement_pdf(cv, g, p);
    mx = std::max(mx, pr);
    mn = std::min(mn, pr);
  }
  CHECK(mx / mn <= 1.0 + 50 * 1e-4 * g.N_x * g.delta_p);
  CHECK(abs(mx - plateau) < 10 * 1e-4 * plateau);
  // integral over the full span is 1
  const double span = g.L * std::sqrt(g.mu) * 2.5;
  const int K = 4000;
  double total = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double p = -span + 2 * span * k / K;
    const double w = (k == 0 || k == K) ? 0.5 : 1.0;
    total += w * cvdv_measurement_pdf(cv, g, p);
  }
  total *= 2 * span / K;
  CHECK(abs(total - 1.0) < 1e-4);
}

TEST_CASE("CV->DV transfer: in-window fidelity and window falloff") {
  for (int n_q : {6, 7}) {
    const GridSpec g = make_grid(n_q, 1.0);
    for (int n : {0, 10, 31}) {
      const SampledCVState cv = make_fock_cv(g, n);
      const double Leps = support_radius(n, 1e-4, 1.0).L_eps;
      if (Leps > g.L) continue;  // state does not fit this grid
      const double win = (g.L - Leps) * std::sqrt(g.mu);
      for (int k = 0; k <= 10; ++k) {
        const double p = -win + 2 * win * k / 10.0;
        const TransferOutcome oc = cvdv_transfer(cv, g, p);
        CHECK(oc.fidelity > 1.0 - 10 * 1e-4);
        CHECK(oc.in_window);
      }
    }
  }
  // well outside the window the fidelity collapses
  const GridSpec g = make_grid(7, 1.0);
  const SampledCVState cv31 = make_fock_cv(g, 31);
  const TransferOutcome far = cvdv_transfer(cv31, g, 0.95 * g.L);
  CHECK_FALSE(far.in_window);
  CHECK(far.fidelity < 0.9);
}

TEST_CASE("CV->DV transfer is linear: superposition input") {
  const GridSpec g = make_grid(6, 1.0);
  SampledCVState a = make_fock_cv(g, 0);
  const SampledCVState b = make_fock_cv(g, 1);
  a.amps = (a.amps + b.amps) / std::sqrt(2.0);
  a.fock_n = -1;
  const TransferOutcome oc = cvdv_transfer(a, g, 0.0);
  const DiscreteQumode target = encode_cv(a, g);
  CHECK(abs(oc.dv_out.amps.dot(target.amps)) > 1.0 - 10 * 1e-4);
}

TEST_CASE("CV->DV success probability matches the closed form") {
  const GridSpec g = make_grid(7, 1.0);
  const SampledCVState cv = make_fock_cv(g, 0);
  const SuccessReport rep = cvdv_success_probability(cv, g, 1e-4);
  CHECK(rep.n_points >= 200);
  CHECK(abs(rep.p_success - rep.predicted) < 0.02);
  // monotone in eps
  const double p2 = cvdv_success_probability(cv, g, 1e-2).p_success;
  const double p3 = cvdv_success_probability(cv, g, 1e-3).p_success;
  CHECK(p2 >= p3 - 1e-12);
  CHECK(p3 >= rep.p_success - 1e-12);
  // larger register -> higher success; higher Fock order -> lower success
  const GridSpec g8 = make_grid(8, 1.0);
  CHECK(cvdv_success_probability(make_fock_cv(g8, 0), g8, 1e-4).p_success >
        rep.p_success);
  CHECK(cvdv_success_probability(make_fock_cv(g, 10), g, 1e-4).p_success <
        rep.p_success);
}

TEST_CASE("sampled CV->DV outcomes are seed-deterministic") {
  const GridSpec g = make_grid(6, 1.0);
  const SampledCVState cv = make_fock_cv(g, 0);
  const TransferOutcome a = sample_cvdv(cv, g, 1234);
  const TransferOutcome b = sample_cvdv(cv, g, 1234);
  CHECK(a.measured_value == b.measured_value);
  CHECK(a.fidelity == b.fidelity);
  const TransferOutcome c = sample_cvdv(cv, g, 99);
  CHECK(a.measured_value != c.measured_value);
}

TEST_CASE("aperiodic momentum extension: anti-periodicity and window match") {
  const GridSpec g = make_grid(6, 1.0);
  const DiscreteQumode dv = encode_fock(0, g);
  const double period = g.N_x * g.delta_p;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ud(-2 * period, 2 * period);
  for (int k = 0; k < 50; ++k) {
    const double p = ud(rng);
    CHECK(abs(aperiodic_momentum_extension(dv, p + period) +
              aperiodic_momentum_extension(dv, p)) < 1e-12);
  }
  // equals the continuum momentum wavefunction inside the principal window,
  // and is real/even there for the vacuum
  for (double p : {0.0, 0.4, -1.3, 3.0}) {
    const cd v = aperiodic_momentum_extension(dv, p);
    CHECK(abs(v - fock_momentum_wavefunction(0, 1.0, p)) < 10 * 1e-4);
    CHECK(abs(v.imag()) < 1e-10);
    CHECK(abs(v - aperiodic_momentum_extension(dv, -p)) < 1e-10);
  }
}

TEST_CASE("DV->CV rectangular: uniform outcome law, in-window fidelity") {
  const GridSpec g = make_grid(8, 1.0);
  const SampledCVState rect = make_initial_cv(InitialCvKind::rectangular, g);
  for (int n : {0, 10, 31}) {
    const DiscreteQumode dv = encode_fock(n, g);
    const DvcvContext ctx = make_dvcv_context(dv, rect);
    double total = 0.0;
    const double Leps = support_radius(n, 1e-4, 1.0).L_eps;
    for (int m = 0; m < g.N_x; ++m) {
      const TransferOutcome oc = dvcv_transfer(ctx, m);
      CHECK(abs(oc.probability - 1.0 / g.N_x) < 1e-6);
      total += oc.probability;
      if (abs(g.p(m)) < (g.L - Leps) * std::sqrt(g.mu)) {
        CHECK(oc.fidelity > 1.0 - 10 * 1e-4);
        CHECK(oc.in_window);
      }
    }
    CHECK(abs(total - 1.0) < 1e-8);
  }
}

TEST_CASE("DV->CV at the central outcome reproduces the sinc target") {
  const GridSpec g = make_grid(6, 1.0);
  const DiscreteQumode dv = encode_fock(0, g);
  const SampledCVState rect = make_initial_cv(InitialCvKind::rectangular, g);
  // N_x even: the outcome grid has no exact p_m = 0, take the nearest
  const int m0 = g.N_x / 2;
  const TransferOutcome oc =
      dvcv_transfer(make_dvcv_context(dv, rect), m0);
  CHECK(oc.fidelity > 1.0 - 10 * 1e-4);
  double err = 0.0;
  for (int t = 0; t < oc.cv_out.fine_n; ++t) {
    const double x = oc.cv_out.x(t);
    if (abs(x) > g.L) continue;
    err = std::max(err, abs(abs(oc.cv_out.amps[t]) -
                            abs(sinc_interpolate(dv.amps, g, x)) /
                                std::sqrt(g.delta_x)));
  }
  CHECK(err < 1e-2);
}

TEST_CASE("DV->CV closed form agrees with the step-by-step simulation") {
  const GridSpec g = make_grid(6, 1.0);
  const SampledCVState rect = make_initial_cv(InitialCvKind::rectangular, g);
  for (int n : {0, 5}) {
    const DiscreteQumode dv = encode_fock(n, g);
    const DvcvContext ctx = make_dvcv_context(dv, rect);
    for (int m = 0; m < g.N_x; ++m) {
      const TransferOutcome sim = dvcv_transfer(ctx, m);
      const TransferOutcome ana =
          dvcv_transfer_analytic(ctx, m, InitialCvKind::rectangular);
      CHECK(abs(sim.probability - ana.probability) < 1e-8);
      double err = 0.0;
      for (int t = 0; t < sim.cv_out.fine_n; ++t)
        err = std::max(err, abs(sim.cv_out.amps[t] - ana.cv_out.amps[t]));
      CHECK(err < 1e-5);
    }
  }
}

TEST_CASE("DV->CV gaussian ancilla: bell-shaped law, closed-form agreement") {
  const GridSpec g = make_grid(6, 1.0);
  const double sigma = 0.5 * g.L / std::sqrt(g.mu);
  // wide-span ancilla so the anti-period image of the conditional state
  // stays clear of the simulated window
  const SampledCVState gauss =
      make_initial_cv(InitialCvKind::gaussian, g, sigma, 16, 4);
  const DiscreteQumode dv = encode_fock(0, g);
  const DvcvContext ctx = make_dvcv_context(dv, gauss);
  double total = 0.0, peak = 0.0;
  int argpeak = -1;
  for (int m = 0; m < g.N_x; ++m) {
    const TransferOutcome sim = dvcv_transfer(ctx, m);
    total += sim.probability;
    if (sim.probability > peak) {
      peak = sim.probability;
      argpeak = m;
    }
    const TransferOutcome ana =
        dvcv_transfer_analytic(ctx, m, InitialCvKind::gaussian, sigma);
    CHECK(abs(sim.probability - ana.probability) < 1e-8);
    double err = 0.0;
    for (int t = 0; t < sim.cv_out.fine_n; ++t)
      err = std::max(err, abs(sim.cv_out.amps[t] - ana.cv_out.amps[t]));
    CHECK(err < 1e-5);
  }
  CHECK(abs(total - 1.0) < 1e-8);
  // the law peaks at the center and decays towards the edges
  CHECK(abs(argpeak - (g.N_x - 1) / 2) <= 1);
  const TransferOutcome edge = dvcv_transfer(ctx, 0);
  CHECK(edge.probability < 0.05 * peak);
}

TEST_CASE("DV->CV success probability: closed form, monotonicity, eps=1") {
  const GridSpec g = make_grid(8, 1.0);
  const SampledCVState rect = make_initial_cv(InitialCvKind::rectangular, g);
  const DiscreteQumode dv = encode_fock(0, g);
  const SuccessReport rep = dvcv_success_probability(dv, rect, 1e-4);
  CHECK(abs(rep.p_success - rep.predicted) < 0.02);
  const double p2 = dvcv_success_probability(dv, rect, 1e-2).p_success;
  const double p3 = dvcv_success_probability(dv, rect, 1e-3).p_success;
  CHECK(p2 >= p3 - 1e-12);
  CHECK(p3 >= rep.p_success - 1e-12);
  // with a near-unity threshold every outcome counts as a success
  CHECK(dvcv_success_probability(dv, rect, 0.999).p_success_fid ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("discard: vacuum loses a qubit with negligible leak") {
  const GridSpec g = make_grid(7, 1.0);
  const ResizeReport rep = discard_qubit(encode_fock(0, g));
  CHECK(rep.after.grid.n_q == 6);
  CHECK(rep.leak < 1e-4);
  CHECK(rep.fidelity_vs_target > 1.0 - 1e-3);
  // refuse states whose support does not fit the halved grid
  CHECK_THROWS_AS(discard_qubit(encode_fock(31, g)), validation_error);
}

TEST_CASE("pad then discard round-trips; pad grows the register") {
  const GridSpec g6 = make_grid(6, 1.0);
  const ResizeReport up = pad_qubit(encode_fock(0, g6));
  CHECK(up.after.grid.n_q == 7);
  CHECK(up.fidelity_vs_target > 1.0 - 1e-3);
  // the padded grid has delta_x smaller by sqrt(2)
  CHECK(up.after.grid.delta_x ==
        doctest::Approx(g6.delta_x / std::sqrt(2.0)).epsilon(1e-12));
  const GridSpec g7 = make_grid(7, 1.0);
  for (int n : {0, 5, 10}) {
    const DiscreteQumode orig = encode_fock(n, g7);
    const ResizeReport down = discard_qubit(orig);
    const ResizeReport back = pad_qubit(down.after);
    CHECK(abs(back.after.amps.dot(orig.amps)) > 1.0 - 2e-3);
  }
}

TEST_CASE("resize_to: multi-step resize matches the direct encode") {
  const GridSpec g10 = make_grid(10, 1.0);
  const ResizeReport rep = resize_to(encode_fock(31, g10), 8);
  CHECK(rep.after.grid.n_q == 8);
  const DiscreteQumode direct = encode_fock(31, make_grid(8, 1.0));
  CHECK(abs(rep.after.amps.dot(direct.amps)) > 1.0 - 1e-3);
  // identity resize
  const ResizeReport same = resize_to(encode_fock(0, g10), 10);
  CHECK(same.leak == 0.0);
  CHECK(same.fidelity_vs_target == doctest::Approx(1.0));
  // infeasible shrink is refused
  CHECK_THROWS_AS(resize_to(encode_fock(31, g10), 5), validation_error);
  // report serialization carries the documented keys
  const std::string js = resize_report_to_json(rep);
  CHECK(js.find("\"n_q_before\"") != std::string::npos);
  CHECK(js.find("\"n_q_after\"") != std::string::npos);
  CHECK(js.find("\"leak\"") != std::string::npos);
  CHECK(js.find("\"fidelity\"") != std::string::npos);
}

TEST_CASE("config parsing: defaults, comments, unknown keys") {
  const ExperimentConfig d = parse_config_text("");
  CHECK(d.mu == 1.0);
  CHECK(d.eps == 1e-4);
  CHECK(d.oversample == 16);
  CHECK(d.seed == 42);
  const ExperimentConfig c = parse_config_text(
      "# a comment\n"
      "experiment = transfer-cvdv\n"
      "n_q = 8  # trailing comment\n"
      "mu = 0.5\n"
      "n = 10\n"
      "eps = 1e-3\n");
  CHECK(c.experiment == "transfer-cvdv");
  CHECK(c.n_q == 8);
  CHECK(c.mu == 0.5);
  CHECK(c.fock_n == 10);
  CHECK(c.eps == 1e-3);
  CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), validation_error);
  CHECK_THROWS_AS(parse_config_text("n_q = twelve\n"), validation_error);
  CHECK_THROWS_AS(parse_config_text("just a line\n"), validation_error);
}

TEST_CASE("number formatting, CSV lines, atomic file write") {
  CHECK(format_sig(0.1) == "0.1");
  CHECK(format_sig(1234567890.123) == "1234567890");
  CHECK(csv_line({"a", "b", "c"}) == "a,b,c\n");
  CHECK(csv_line({}) == "\n");
  const std::string path = "qumode_io_test_tmp.txt";
  write_file_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  in.close();
  std::remove(path.c_str());
}
