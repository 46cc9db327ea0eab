// Acceptance suite: `dce_acceptance <1..8|all> [--trials N]`.
// Each criterion prints its measurements and one "criterion N: PASS|FAIL" line.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dce/analysis.hpp"
#include "dce/channel.hpp"
#include "dce/errors.hpp"
#include "dce/estimators.hpp"
#include "dce/experiment_io.hpp"
#include "dce/powalloc.hpp"
#include "dce/simulation.hpp"
#include "dce/training.hpp"

using namespace dce;

namespace {

long long g_trials = 20000;

void note(const char* fmt, auto... args) {
  std::printf("  ");
  std::printf(fmt, args...);
  std::printf("\n");
}

bool check(bool ok, const std::string& what) {
  std::printf("  %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  return ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

ExperimentSpec desk_spec(Scheme scheme, AttackMode attack, std::vector<double> snr,
                         double gamma) {
  ExperimentSpec spec;
  spec.scheme = scheme;
  spec.attack = {attack, 1.0};
  spec.snr_db_grid = std::move(snr);
  spec.gamma = gamma;
  spec.cfg.gamma = gamma;
  spec.trials = g_trials;
  spec.master_seed = 20240601;
  return spec;
}

double rel_gap(double emp, double cf) { return std::abs(emp - cf) / cf; }

SystemConfig desk_config(double gamma, double snr_db) {
  SystemConfig cfg;
  cfg.gamma = gamma;
  cfg.sigma0_sq = snr_to_sigma0_sq(snr_db);
  return cfg;
}

bool criterion1() {
  bool pass = true;
  for (const ResultRow& r :
       run_experiment(desk_spec(Scheme::wr, AttackMode::none, {15, 20, 25}, 0.03))) {
    const double gap = rel_gap(*r.nmse_lr_emp, *r.nmse_lr_cf);
    pass &= check(gap <= 0.10, fmt("SNR %g dB: NMSE_L emp %.5e cf %.5e gap %.2f%% (<= 10%%)",
                                   r.sweep_value, *r.nmse_lr_emp, *r.nmse_lr_cf, 100 * gap));
  }
  return pass;
}

bool criterion2() {
  bool pass = true;
  for (const ResultRow& r :
       run_experiment(desk_spec(Scheme::wr, AttackMode::none, {15, 20, 25}, 0.03))) {
    const double gap = rel_gap(*r.nmse_ur_emp, *r.nmse_ur_cf);
    pass &= check(gap <= 0.10, fmt("SNR %g dB: NMSE_U emp %.5e cf %.5e gap %.2f%% (<= 10%%)",
                                   r.sweep_value, *r.nmse_ur_emp, *r.nmse_ur_cf, 100 * gap));
    const SystemConfig cfg = desk_config(0.03, r.sweep_value);
    const double active = nmse_ur_closed(cfg, *r.p1, *r.sigma_a_sq);
    pass &= check(std::abs(active - 0.03) <= 1e-6,
                  fmt("SNR %g dB: NMSE_U closed form at allocation %.12f (gamma 0.03 +- 1e-6)",
                      r.sweep_value, active));
  }
  return pass;
}

bool criterion3() {
  bool pass = true;
  for (const double gamma : {0.03, 0.1}) {
    const PowerAllocationProblem p(desk_config(gamma, 20));
    const PowerAllocation s = solve(p);
    const PowerAllocation o = solve_grid_oracle(p, 2000);
    pass &= check(s.objective <= o.objective * 1.005,
                  fmt("gamma %g: solve %.9e vs 2000x2000 grid %.9e", gamma, s.objective,
                      o.objective));
    if (gamma == 0.03) {
      const bool at = std::abs(s.x - 17.2439) <= 1e-3 && std::abs(s.y - 0.50732) <= 1e-3 &&
                      std::abs(s.z - 1.0) <= 1e-3;
      pass &= check(at, fmt("(x, y, z) = (%.6f, %.6f, %.6f) vs (17.2439, 0.50732, 1) +- 1e-3",
                            s.x, s.y, s.z));
    }
  }

  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int worse = 0;
  double worst = -1.0;
  for (int i = 0; i < 100; ++i) {
    SystemConfig cfg;
    cfg.n_t = 2 + static_cast<int>(u(gen) * 7);
    cfg.n_l = 1 + static_cast<int>(u(gen) * (cfg.n_t - 1));
    cfg.t0 = cfg.n_l + static_cast<int>(u(gen) * 300);
    cfg.t1 = cfg.n_t + static_cast<int>(u(gen) * 300);
    cfg.sigma0_sq = std::pow(10.0, -3.5 + 3.0 * u(gen));
    cfg.sigma_g_sq = 0.1 + 4.9 * u(gen);
    cfg.p_ave = 0.2 + 4.8 * u(gen);
    const GammaBounds b = gamma_bounds(cfg);
    cfg.gamma = std::exp(std::log(b.lower) +
                         (std::log(b.upper) - std::log(b.lower)) * (0.01 + 0.98 * u(gen)));
    const PowerAllocationProblem p(cfg);
    const PowerAllocation s = solve(p);
    const PowerAllocation o = solve_grid_oracle(p, 2000);
    const double excess = (s.objective - o.objective) / o.objective;
    worst = std::max(worst, excess);
    if (excess > 0.005) ++worse;
  }
  pass &= check(worse == 0, fmt("100 random configs: %d worse than grid oracle + 0.5%%, "
                                "max relative excess %.3e",
                                worse, worst));
  return pass;
}

bool criterion4() {
  bool pass = true;
  const GammaBounds b = gamma_bounds(desk_config(0.03, 20));
  pass &= check(std::abs(b.lower - 2.857e-4) <= 1e-7 && std::abs(b.upper - 2.0) <= 1e-7,
                fmt("gamma bounds (%.7e, %.7f) vs (2.857e-4, 2.0) +- 1e-7", b.lower, b.upper));
  for (const double gamma : {2.0e-4, 2.5}) {
    bool threw = false;
    try {
      (void)solve(PowerAllocationProblem(desk_config(gamma, 20)));
    } catch (const InfeasibleError&) {
      threw = true;
    }
    pass &= check(threw, fmt("gamma %g rejected as infeasible by the library", gamma));
#ifdef DCE_CLI_PATH
    const std::string cmd = fmt("%s power-alloc --gamma %g --snr-db 20 >/dev/null 2>&1",
                                DCE_CLI_PATH, gamma);
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    pass &= check(code == 2, fmt("dce power-alloc --gamma %g exits with %d (expect 2)", gamma, code));
#endif
  }
  return pass;
}

bool criterion5() {
  SystemConfig cfg = desk_config(0.03, 20);
  cfg.sigma0_sq = 0.0;
  const PowerAllocation with_an = solve(PowerAllocationProblem(cfg));
  PowerAllocation without_an = with_an;
  without_an.p1 = cfg.p_ave;
  without_an.sigma_a_sq = 0.0;
  const double lr_size = cfg.n_l * cfg.n_t;
  const double ur_size = cfg.n_u * cfg.n_t;
  double worst_lr = 0.0;
  double worst_ur = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const RngStream rng(5, trial);
    // Total squared error bounds every entry's squared error.
    worst_lr = std::max(worst_lr, run_trial(cfg, with_an, Scheme::wr, {}, rng).lr * lr_size);
    const TrialErrors e = run_trial(cfg, without_an, Scheme::wr, {}, rng);
    worst_lr = std::max(worst_lr, e.lr * lr_size);
    worst_ur = std::max(worst_ur, e.ur * ur_size);
  }
  bool pass = check(worst_lr <= 1e-16,
                    fmt("LR worst squared entry error %.3e over 2000 noise-free trials", worst_lr));
  pass &= check(worst_ur <= 1e-16,
                fmt("UR worst squared entry error %.3e over 1000 noise-free AN-free trials",
                    worst_ur));
  return pass;
}

bool criterion6() {
  bool pass = true;
  const std::vector<double> snr{5, 10, 15, 20, 25, 30};
  for (const double gamma : {0.03, 0.1}) {
    const auto wr = run_experiment(desk_spec(Scheme::wr, AttackMode::none, snr, gamma));
    const auto lmmse = run_experiment(desk_spec(Scheme::lmmse, AttackMode::none, snr, gamma));
    const auto perfect =
        run_experiment(desk_spec(Scheme::wr_perfect_csi, AttackMode::none, snr, gamma));
    for (std::size_t i = 0; i < snr.size(); ++i) {
      const double w = *wr[i].nmse_lr_emp;
      const double l = *lmmse[i].nmse_lr_emp;
      const double p = *perfect[i].nmse_lr_emp;
      pass &= check(w <= l, fmt("gamma %g SNR %g: WR %.5e <= LMMSE %.5e (ratio %.4f)", gamma,
                                snr[i], w, l, w / l));
      pass &= check(p <= w, fmt("gamma %g SNR %g: perfect-CSI %.5e <= WR %.5e", gamma, snr[i],
                                p, w));
    }
  }
  return pass;
}

bool criterion7() {
  bool pass = true;
  const auto lmmse_clean =
      run_experiment(desk_spec(Scheme::lmmse, AttackMode::none, {25}, 0.03)).at(0);
  const auto lmmse_attacked =
      run_experiment(desk_spec(Scheme::lmmse, AttackMode::known_pilot, {25}, 0.03)).at(0);
  const double ratio_a = *lmmse_attacked.nmse_lr_emp / *lmmse_clean.nmse_lr_emp;
  pass &= check(ratio_a >= 5.0, fmt("(a) LMMSE known-pilot NMSE_L %.5e vs clean %.5e: %.2fx (>= 5x)",
                                    *lmmse_attacked.nmse_lr_emp, *lmmse_clean.nmse_lr_emp,
                                    ratio_a));

  const auto wr_clean = run_experiment(desk_spec(Scheme::wr, AttackMode::none, {25}, 0.03)).at(0);
  const auto wr_attacked =
      run_experiment(desk_spec(Scheme::wr, AttackMode::guess, {25}, 0.03)).at(0);
  const double gap = rel_gap(*wr_attacked.nmse_lr_emp, *wr_attacked.nmse_lr_cf);
  pass &= check(gap <= 0.15, fmt("(b) WR guess NMSE_L %.5e vs attacked closed form %.5e: gap "
                                 "%.1f%% (<= 15%%)",
                                 *wr_attacked.nmse_lr_emp, *wr_attacked.nmse_lr_cf, 100 * gap));
  const double ratio_b = *wr_attacked.nmse_lr_emp / *wr_clean.nmse_lr_emp;
  pass &= check(ratio_b <= 2.0, fmt("(b) WR guess NMSE_L vs clean %.5e: %.2fx (<= 2x)",
                                    *wr_clean.nmse_lr_emp, ratio_b));

  ExperimentSpec sweep = desk_spec(Scheme::wr, AttackMode::guess, {25}, 0.03);
  for (int k = 1; k <= 10; ++k) sweep.p0_bar_grid.push_back(k / 10.0);
  double lo = 1e300;
  double hi = 0.0;
  for (const ResultRow& r : run_experiment(sweep)) {
    note("P0_bar %.1f: NMSE_L %.5e", r.sweep_value, *r.nmse_lr_emp);
    lo = std::min(lo, *r.nmse_lr_emp);
    hi = std::max(hi, *r.nmse_lr_emp);
  }
  pass &= check(hi / lo < 2.0, fmt("(c) P0_bar sweep max/min %.2f (< 2)", hi / lo));
  return pass;
}

bool criterion8() {
  bool pass = true;
  const SystemConfig cfg = desk_config(0.03, 25);
  double unitarity = 0.0;
  double bilinear = 0.0;
  double invisibility = 0.0;
  double pilots = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream rng(8, trial);
    const ChannelRealization ch = sample_channels(cfg, rng);
    const WRDecomposition wr = wr_decompose(ch.h.transpose());
    const SvdResult s = svd(ch.h);
    auto unit_err = [](const ComplexMatrix& m) {
      return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
    };
    unitarity = std::max({unitarity, unit_err(wr.q), unit_err(s.u), unit_err(s.v)});

    const ReverseSignal rev = build_reverse_signal(cfg, 1.0, PilotMode::random, &rng);
    const ComplexMatrix x0 = add_awgn(ch.h.transpose() * rev.s0, cfg.sigma0_sq, rng);
    const ComplexMatrix w0 = blind_whitening_tx(x0, 1.0, cfg.t0, cfg.n_l).matrix;
    bilinear = std::max(bilinear, (w0.transpose() * build_an_basis(w0)).norm() / w0.norm());

    const ComplexMatrix n = build_an_basis(wr.w);
    const ForwardSignal f = build_forward_signal(cfg, n, 0.49, 0.255, rng);
    invisibility = std::max(invisibility, (ch.h * f.s1 - ch.h * f.s1_pilot).norm());

    const AttackSignal bar = build_attack_signal(cfg, 1.0, AttackMode::guess, nullptr, rng);
    for (const ComplexMatrix* c : {&rev.c0, &f.c1, &bar.c0_bar}) {
      pilots = std::max(pilots,
                        (*c * c->adjoint() - ComplexMatrix::Identity(c->rows(), c->rows())).norm());
    }
  }
  pass &= check(unitarity <= 1e-10, fmt("unitarity of svd and WR rotation factors: %.3e", unitarity));
  pass &= check(bilinear <= 1e-10, fmt("bilinear null space W0^T N: %.3e", bilinear));
  pass &= check(invisibility <= 1e-10, fmt("AN at LR with exact reverse estimate: %.3e", invisibility));
  pass &= check(pilots <= 1e-12, fmt("pilot orthonormality C C^H = I: %.3e", pilots));

  // Transmitted forward power per symbol against the allocation.
  const PowerAllocation a = solve(PowerAllocationProblem(cfg));
  double tx_power = 0.0;
  double an_power = 0.0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    RngStream rng(88, trial);
    const ChannelRealization ch = sample_channels(cfg, rng);
    const ComplexMatrix n = build_an_basis(wr_decompose(ch.h.transpose()).w);
    const ForwardSignal f = build_forward_signal(cfg, n, a.p1, a.sigma_a_sq, rng);
    tx_power += f.s1.squaredNorm() / cfg.t1;
    an_power += (f.s1 - f.s1_pilot).squaredNorm() / cfg.t1;
  }
  tx_power /= trials;
  an_power /= trials;
  const double an_expected = (cfg.n_t - cfg.n_l) * a.sigma_a_sq;
  pass &= check(rel_gap(an_power, an_expected) <= 0.02,
                fmt("AN power %.5f vs (n_t-n_l) sigma_a^2 %.5f (2%%)", an_power, an_expected));
  pass &= check(rel_gap(tx_power, cfg.p_ave) <= 0.02,
                fmt("forward power %.5f vs budget %.5f (2%%)", tx_power, cfg.p_ave));
  pass &= check(a.p1 + an_expected <= cfg.p_ave + 1e-12 && a.p0 <= cfg.p_ave + 1e-12,
                fmt("allocation within budget: p1 + AN = %.12f, p0 = %.12f", a.p1 + an_expected,
                    a.p0));

  ExperimentSpec spec = desk_spec(Scheme::wr, AttackMode::guess, {15, 25}, 0.03);
  spec.trials = std::min<long long>(g_trials, 2000);
  std::ostringstream one;
  std::ostringstream four;
  spec.workers = 1;
  write_csv(run_experiment(spec), one);
  spec.workers = 4;
  write_csv(run_experiment(spec), four);
  pass &= check(one.str() == four.str(), "CSV byte-identical with 1 and 4 workers");
  return pass;
}

const std::vector<std::pair<const char*, std::function<bool()>>> kCriteria{
    {"closed-form NMSE_L agreement", criterion1},
    {"closed-form NMSE_U agreement and UR constraint activity", criterion2},
    {"power allocation against grid oracle", criterion3},
    {"gamma bounds and infeasible rejection", criterion4},
    {"noise-free exactness", criterion5},
    {"DCE ordering WR vs LMMSE vs perfect CSI", criterion6},
    {"attack robustness", criterion7},
    {"structural invariants", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--trials" && i + 1 < argc) {
      g_trials = std::atoll(argv[++i]);
    } else if (arg == "all") {
      for (int c = 1; c <= 8; ++c) selected.push_back(c);
    } else {
      const int c = std::atoi(arg.c_str());
      if (c < 1 || c > 8) {
        std::fprintf(stderr, "usage: dce_acceptance <1..8|all>... [--trials N]\n");
        return 2;
      }
      selected.push_back(c);
    }
  }
  if (selected.empty()) {
    for (int c = 1; c <= 8; ++c) selected.push_back(c);
  }

  bool all = true;
  std::vector<std::string> summary;
  for (const int c : selected) {
    const auto& [name, run] = kCriteria[c - 1];
    std::printf("criterion %d (%s)\n", c, name);
    std::fflush(stdout);
    bool ok = false;
    try {
      ok = run();
    } catch (const std::exception& e) {
      std::printf("  FAIL exception: %s\n", e.what());
    }
    all &= ok;
    summary.push_back(fmt("criterion %d: %s  %s", c, ok ? "PASS" : "FAIL", name));
    std::printf("%s\n", summary.back().c_str());
    std::fflush(stdout);
  }
  if (selected.size() > 1) {
    std::printf("\nsummary\n");
    for (const std::string& line : summary) std::printf("%s\n", line.c_str());
  }
  return all ? 0 : 1;
}
