#include "dce/simulation.hpp"

#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "dce/analysis.hpp"
#include "dce/errors.hpp"
#include "dce/estimators.hpp"
#include "dce/training.hpp"

namespace dce {

namespace {

// Fork salts; part of the reproducibility contract.
enum StreamSalt : std::uint64_t {
  kChannels = 1,
  kReversePilot = 2,
  kReverseNoise = 3,
  kAttack = 4,
  kArtificialNoise = 5,
  kLrNoise = 6,
  kUrNoise = 7,
};

std::optional<double> closed_form_lr(Scheme scheme, const SystemConfig& cfg,
                                     const PowerAllocation& a, const AttackScenario& attack) {
  switch (scheme) {
    case Scheme::lmmse:
      return std::nullopt;
    case Scheme::wr_perfect_csi:
      return nmse_lr_closed(cfg, a.p0, a.p1, 0.0);
    case Scheme::wr:
      if (attack.mode == AttackMode::guess) {
        return nmse_lr_attack_closed(cfg, a.p0, attack.p0_bar, a.p1, a.sigma_a_sq);
      }
      return nmse_lr_closed(cfg, a.p0, a.p1, a.sigma_a_sq);
  }
  return std::nullopt;
}

std::optional<double> closed_form_ur(Scheme scheme, const SystemConfig& cfg,
                                     const PowerAllocation& a, const AttackScenario& attack) {
  if (scheme == Scheme::lmmse) return std::nullopt;
  // No closed form covers the UR once the reverse phase is contaminated.
  if (scheme == Scheme::wr && attack.mode != AttackMode::none) return std::nullopt;
  return nmse_ur_closed(cfg, a.p1, a.sigma_a_sq);
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::wr:
      return "wr";
    case Scheme::lmmse:
      return "lmmse";
    case Scheme::wr_perfect_csi:
      return "wr-perfect-csi";
  }
  return "?";
}

std::string_view to_string(AttackMode m) {
  switch (m) {
    case AttackMode::none:
      return "none";
    case AttackMode::known_pilot:
      return "known-pilot";
    case AttackMode::guess:
      return "guess";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "wr") return Scheme::wr;
  if (text == "lmmse") return Scheme::lmmse;
  if (text == "wr-perfect-csi" || text == "wr_perfect_csi") return Scheme::wr_perfect_csi;
  throw UsageError("unknown scheme '" + std::string(text) + "'");
}

AttackMode parse_attack_mode(std::string_view text) {
  if (text == "none") return AttackMode::none;
  if (text == "known-pilot" || text == "known_pilot") return AttackMode::known_pilot;
  if (text == "guess") return AttackMode::guess;
  throw UsageError("unknown attack mode '" + std::string(text) + "'");
}

TrialErrors run_trial(const SystemConfig& cfg, const PowerAllocation& allocation, Scheme scheme,
                      const AttackScenario& attack, const RngStream& rng) {
  RngStream channel_rng = rng.fork(kChannels);
  const ChannelRealization ch = sample_channels(cfg, channel_rng);

  ComplexMatrix an_basis;
  if (scheme == Scheme::wr_perfect_csi) {
    an_basis = build_an_basis(wr_decompose(ch.h.transpose()).w);
  } else {
    const PilotMode pilots = scheme == Scheme::lmmse ? PilotMode::fixed : PilotMode::random;
    check_attack_compatible(attack, pilots);

    RngStream pilot_rng = rng.fork(kReversePilot);
    RngStream noise_rng = rng.fork(kReverseNoise);
    RngStream attack_rng = rng.fork(kAttack);
    const ReverseSignal reverse = build_reverse_signal(cfg, allocation.p0, pilots, &pilot_rng);
    const ReversePhaseTerms terms{ch.h.transpose() * reverse.s0,
                                  complex_gaussian(noise_rng, cfg.n_t, cfg.t0, cfg.sigma0_sq)};
    const ComplexMatrix x0 = contaminate_reverse(terms, ch.g, attack, cfg, reverse, attack_rng);

    const UplinkEstimate uplink =
        scheme == Scheme::lmmse ? lmmse_uplink(x0, reverse, cfg.sigma_h_sq, cfg.sigma0_sq)
                                : blind_whitening_tx(x0, allocation.p0, cfg.t0, cfg.n_l);
    an_basis = build_an_basis(uplink.matrix);
  }

  RngStream an_rng = rng.fork(kArtificialNoise);
  RngStream lr_rng = rng.fork(kLrNoise);
  RngStream ur_rng = rng.fork(kUrNoise);
  const ForwardSignal forward =
      build_forward_signal(cfg, an_basis, allocation.p1, allocation.sigma_a_sq, an_rng);
  const ComplexMatrix x1 = add_awgn(ch.h * forward.s1, cfg.sigma0_sq, lr_rng);
  const ComplexMatrix y1 = add_awgn(ch.g * forward.s1, cfg.sigma0_sq, ur_rng);

  ChannelEstimate h_hat;
  ChannelEstimate g_hat;
  if (scheme == Scheme::lmmse) {
    h_hat = lmmse_downlink(x1, forward, cfg.sigma_h_sq, cfg.sigma0_sq);
    g_hat = lmmse_downlink(y1, forward, cfg.sigma_g_sq, cfg.sigma0_sq);
  } else {
    h_hat = wr_estimate_lr(x1, forward.s1_pilot, allocation.p1, cfg.t1, cfg.n_t);
    g_hat = wr_estimate_ur(y1, forward.s1_pilot, allocation.p1, cfg.t1, cfg.n_t);
  }
  return {empirical_nmse(h_hat.matrix, ch.h), empirical_nmse(g_hat.matrix, ch.g)};
}

SweepKind validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw UsageError("trials must be at least 1");
  if (spec.snr_db_grid.empty()) throw UsageError("snr_db_grid must not be empty");
  const bool t1_sweep = !spec.t1_grid.empty();
  const bool p0_bar_sweep = !spec.p0_bar_grid.empty();
  if (t1_sweep && p0_bar_sweep) throw UsageError("sweep either t1 or p0_bar, not both");
  if ((t1_sweep || p0_bar_sweep) && spec.snr_db_grid.size() != 1) {
    throw UsageError("a t1 or p0_bar sweep needs exactly one SNR value");
  }
  if (p0_bar_sweep && spec.attack.mode == AttackMode::none) {
    throw UsageError("a p0_bar sweep needs an attack mode");
  }
  if (spec.scheme == Scheme::wr) check_attack_compatible(spec.attack, PilotMode::random);
  if (t1_sweep) return SweepKind::t1;
  if (p0_bar_sweep) return SweepKind::p0_bar;
  return SweepKind::snr;
}

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
  const SweepKind kind = validate(spec);
  SystemConfig base = spec.cfg;
  base.gamma = spec.gamma;
  std::vector<SweepPoint> points;
  auto at_snr = [&](double snr_db) {
    SweepPoint p{snr_db, base, spec.attack};
    p.cfg.sigma0_sq = snr_to_sigma0_sq(snr_db);
    return p;
  };
  switch (kind) {
    case SweepKind::snr:
      for (const double snr : spec.snr_db_grid) points.push_back(at_snr(snr));
      break;
    case SweepKind::t1:
      for (const int t1 : spec.t1_grid) {
        SweepPoint p = at_snr(spec.snr_db_grid.front());
        p.sweep_value = t1;
        p.cfg.t1 = t1;
        points.push_back(p);
      }
      break;
    case SweepKind::p0_bar:
      for (const double p0_bar : spec.p0_bar_grid) {
        SweepPoint p = at_snr(spec.snr_db_grid.front());
        p.sweep_value = p0_bar;
        p.attack.p0_bar = p0_bar;
        points.push_back(p);
      }
      break;
  }
  return points;
}

std::uint64_t trial_stream_id(std::size_t sweep, long long trial) {
  return (static_cast<std::uint64_t>(sweep) << 32) + static_cast<std::uint64_t>(trial);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  const std::vector<SweepPoint> points = sweep_points(spec);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<long long>(spec.workers > 0 ? spec.workers : hw);

  std::vector<ResultRow> rows;
  rows.reserve(points.size());
  for (std::size_t s = 0; s < points.size(); ++s) {
    const SweepPoint& point = points[s];
    ResultRow row;
    row.sweep_value = point.sweep_value;
    row.scheme = spec.scheme;
    row.attack_mode = point.attack.mode;
    row.seed = spec.master_seed;

    PowerAllocation alloc;
    try {
      validate(point.cfg);
      alloc = solve(PowerAllocationProblem(point.cfg));
    } catch (const InfeasibleError&) {
      rows.push_back(row);
      continue;
    }

    std::vector<double> lr(static_cast<std::size_t>(spec.trials));
    std::vector<double> ur(static_cast<std::size_t>(spec.trials));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](long long begin, long long end) {
      try {
        for (long long i = begin; i < end; ++i) {
          const RngStream rng(spec.master_seed, trial_stream_id(s, i));
          const TrialErrors e = run_trial(point.cfg, alloc, spec.scheme, point.attack, rng);
          lr[static_cast<std::size_t>(i)] = e.lr;
          ur[static_cast<std::size_t>(i)] = e.ur;
        }
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    const long long n_workers = std::min(workers, spec.trials);
    if (n_workers <= 1) {
      work(0, spec.trials);
    } else {
      std::vector<std::jthread> pool;
      const long long chunk = (spec.trials + n_workers - 1) / n_workers;
      for (long long begin = 0; begin < spec.trials; begin += chunk) {
        pool.emplace_back(work, begin, std::min(spec.trials, begin + chunk));
      }
    }
    if (failure) std::rethrow_exception(failure);

    row.p1 = alloc.p1;
    row.sigma_a_sq = alloc.sigma_a_sq;
    row.p0 = alloc.p0;
    row.nmse_lr_emp = compensated_mean(lr);
    row.nmse_ur_emp = compensated_mean(ur);
    row.nmse_lr_cf = closed_form_lr(spec.scheme, point.cfg, alloc, point.attack);
    row.nmse_ur_cf = closed_form_ur(spec.scheme, point.cfg, alloc, point.attack);
    row.trials = spec.trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dce
