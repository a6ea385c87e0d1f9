#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/clause_codec.hpp"
#include "satstream/errors.hpp"
#include "satstream/exact_solver.hpp"
#include "satstream/l0_sampler.hpp"
#include "satstream/lp.hpp"
#include "satstream/reservoir.hpp"
#include "satstream/rng.hpp"
#include "satstream/space.hpp"
#include "satstream/stream.hpp"

namespace satstream {

enum class MaxSatMode : std::uint8_t { exact_perturb, lp_round };

// Derived knobs of the meta-algorithm. gamma is the per-literal truth
// probability of the post-processing (eps for the exact-with-perturbation
// pipeline, 1/4 for LP rounding); beta is the large-clause threshold,
// Q the trial count, sample_size the target number of stored small clauses.
// All logs are natural, with K absorbing constants.
struct MaxSatConfig {
  Parameters params;
  MaxSatMode mode = MaxSatMode::lp_round;
  bool dynamic = false;
  double gamma = 0.25;
  long beta = 1;
  long Q = 1;
  std::size_t sample_size = 1;
  double l0_delta = 1e-3;
  std::size_t budget_words = 0;  // 0 = unlimited

  static MaxSatConfig make(const Parameters& params, MaxSatMode mode,
                           bool dynamic = false) {
    params.validate();
    if (params.eps >= 0.25)
      throw ConfigError("eps must be < 1/4 for the streaming pipelines");
    MaxSatConfig cfg;
    cfg.params = params;
    cfg.mode = mode;
    cfg.dynamic = dynamic;
    cfg.gamma = mode == MaxSatMode::exact_perturb ? params.eps : 0.25;
    const double logm = std::log(static_cast<double>(params.m));
    cfg.beta = std::max<long>(
        1, static_cast<long>(std::ceil(params.K * logm / cfg.gamma)));
    cfg.Q = std::max<long>(
        1, static_cast<long>(std::ceil(params.K * logm / params.eps)));
    cfg.sample_size = static_cast<std::size_t>(
        std::ceil(params.K * params.n / (params.eps * params.eps)));
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (!(gamma > 0.0) || gamma > 0.5)
      throw ConfigError("gamma must lie in (0, 1/2]");
    if (beta < 1) throw ConfigError("beta must be >= 1");
    if (Q < 1) throw ConfigError("Q must be >= 1");
    if (sample_size < 1) throw ConfigError("sample size must be >= 1");
  }
};

inline bool is_large(const Clause& c, long beta) {
  return static_cast<long>(c.size()) >= beta;
}

// Independently flips each coordinate with probability eps, so every literal
// ends up true with probability at least eps. eps = 0 is the identity and is
// allowed for deterministic tests.
inline Assignment perturb(const Assignment& a, double eps, Rng& rng) {
  if (eps < 0.0 || eps >= 0.5)
    throw ConfigError("perturbation probability must lie in [0, 1/2)");
  Assignment out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.chance(eps)) out[i] = !out[i];
  return out;
}

// Best of Q independent trials, scored by satisfied count on `sample`;
// ties go to the earliest trial.
template <class TrialFn>
Assignment best_of_trials(TrialFn&& make_trial, long q,
                          const std::vector<Clause>& sample) {
  Assignment best;
  long best_score = -1;
  for (long t = 0; t < q; ++t) {
    Assignment a = make_trial();
    const long score = evaluate(a, sample);
    if (score > best_score) {
      best_score = score;
      best = std::move(a);
    }
  }
  return best;
}

// Exact optimum on the sample, then Q perturbation trials; the winner keeps
// the sample's near-optimal value while satisfying every large clause of the
// full input with high probability.
inline Assignment postprocess_exact_perturb(const std::vector<Clause>& sample,
                                            const MaxSatConfig& cfg, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(cfg.params.n);
  if (sample.empty()) return Assignment(n, false);
  Assignment base = exact_maxsat(sample, cfg.params.n).first;
  return best_of_trials(
      [&] { return perturb(base, cfg.gamma, rng); }, cfg.Q, sample);
}

// Independent rounding at probability 1/4 + y*/2 per variable. Variables
// absent from the model are unconstrained and round at 1/2.
inline Assignment lp_round(const LPSolution& sol, const LPModel& model, int n,
                           Rng& rng) {
  Assignment a(static_cast<std::size_t>(n), false);
  std::vector<double> prob(static_cast<std::size_t>(n), 0.5);
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const double y = sol.y_star[j];
    prob[static_cast<std::size_t>(model.vars[j]) - 1] = 0.25 + 0.5 * y;
  }
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.chance(prob[i]);
  return a;
}

inline Assignment postprocess_lp_round(const std::vector<Clause>& sample,
                                       const MaxSatConfig& cfg, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(cfg.params.n);
  if (sample.empty()) return Assignment(n, false);
  const LPModel model = build_lp(sample);
  const LPSolution sol = solve_lp(model);
  return best_of_trials(
      [&] { return lp_round(sol, model, cfg.params.n, rng); }, cfg.Q, sample);
}

struct SampleSet {
  std::vector<Clause> clauses;
  enum class Source : std::uint8_t { reservoir, l0 } source = Source::reservoir;
  std::size_t achieved = 0;
};

struct MaxSatResult {
  Assignment assignment;
  long satisfied_on_sample = 0;
  double estimate = 0.0;              // includes large clauses (w.h.p. satisfied)
  double estimate_conservative = 0.0; // sampled small clauses only
  long small_count = 0;
  long large_count = 0;
  SampleSet sample;
  SpaceReport space;
  std::string branch = "none";
};

namespace detail {

inline void enforce_budget(const MaxSatConfig& cfg, const SpaceReport& space) {
  if (cfg.budget_words != 0 && space.words_stored_peak > cfg.budget_words)
    throw SpaceBudgetExceeded(space.words_stored_peak, cfg.budget_words);
}

template <class EventSource>
SampleSet sample_static(EventSource& events, const MaxSatConfig& cfg,
                        Rng& rng, long& small_count, long& large_count,
                        SpaceReport& space) {
  ReservoirSampler<Clause> reservoir(cfg.sample_size, rng.next());
  std::size_t words_peak = 0;
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("delete event in a static pipeline");
    if (is_large(ev->clause, cfg.beta)) {
      ++large_count;
      continue;
    }
    ++small_count;
    reservoir.offer(ev->clause);
    const std::size_t words = words_for_clauses(reservoir.items()) + 2;
    if (words > words_peak) words_peak = words;
    space.track_peak(words);
    enforce_budget(cfg, space);
  }
  SampleSet w;
  w.clauses = reservoir.items();
  w.source = SampleSet::Source::reservoir;
  w.achieved = w.clauses.size();
  space.note("reservoir", words_peak);
  return w;
}

template <class EventSource>
SampleSet sample_dynamic(EventSource& events, const MaxSatConfig& cfg,
                         Rng& rng, long& small_count, long& large_count,
                         SpaceReport& space) {
  const int codec_beta =
      static_cast<int>(std::min<long>(cfg.beta - 1, 2L * cfg.params.n));
  std::optional<ClauseCodec> codec;
  std::optional<L0SampleBank> bank;
  if (codec_beta >= 1) {
    codec.emplace(cfg.params.n, codec_beta);
    bank.emplace(codec->universe_size(), cfg.sample_size, cfg.l0_delta,
                 rng.next());
    space.track_peak(bank->words());
    space.note("l0_bank", bank->words());
    enforce_budget(cfg, space);
  }
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    const int delta = ev->op == StreamOp::insert ? 1 : -1;
    if (is_large(ev->clause, cfg.beta)) {
      large_count += delta;
      continue;
    }
    small_count += delta;
    if (bank) bank->update(codec->encode(ev->clause), delta);
  }
  SampleSet w;
  w.source = SampleSet::Source::l0;
  if (bank) {
    const L0SampleSet set = bank->extract();
    for (std::uint64_t idx : set.indices)
      w.clauses.push_back(codec->decode(idx));
    w.achieved = set.achieved;
  }
  return w;
}

}  // namespace detail

// The meta-algorithm: ignore beta-large clauses, keep a uniform sample of the
// small ones (reservoir when insertion-only, L0 samplers under deletions;
// when the stream holds at most sample_size small clauses the sample is the
// whole input), then hand the sample to the configured post-processing. The
// estimate rescales the winner's satisfied count by the inverse sampling
// rate; the non-conservative variant credits the dropped large clauses,
// which hold with high probability rather than with certainty.
template <class EventSource>
MaxSatResult stream_maxsat(EventSource& events, const MaxSatConfig& cfg,
                           Rng& rng) {
  MaxSatResult res;
  if (cfg.dynamic) {
    res.sample = detail::sample_dynamic(events, cfg, rng, res.small_count,
                                        res.large_count, res.space);
  } else {
    res.sample = detail::sample_static(events, cfg, rng, res.small_count,
                                       res.large_count, res.space);
  }
  res.space.samples_achieved = res.sample.achieved;
  res.space.large_clauses_dropped = res.large_count;

  res.assignment = cfg.mode == MaxSatMode::exact_perturb
                       ? postprocess_exact_perturb(res.sample.clauses, cfg, rng)
                       : postprocess_lp_round(res.sample.clauses, cfg, rng);
  res.satisfied_on_sample = evaluate(res.assignment, res.sample.clauses);

  const double rate_inv =
      res.sample.clauses.empty()
          ? 0.0
          : static_cast<double>(res.small_count) /
                static_cast<double>(res.sample.clauses.size());
  res.estimate_conservative = res.satisfied_on_sample * rate_inv;
  res.estimate = res.estimate_conservative + static_cast<double>(res.large_count);
  return res;
}

// Theorem 1(1) refinement for the LP pipeline on insertion-only streams.
// Runs both branches' bookkeeping online and commits at stream end:
//   A. unit clauses are rare (<= eps * m): they are ignored; Q fair-coin
//      assignments are scored online against every clause of size >= 2.
//   B. unit clauses are frequent: the no-duplicate assumption bounds m by
//      2n/eps, so all clauses up to size K log m are stored and the LP
//      pipeline runs on them.
template <class EventSource>
MaxSatResult one_literal_branch(EventSource& events, const MaxSatConfig& cfg,
                                Rng& rng) {
  if (cfg.dynamic)
    throw ConfigError("the one-literal branch needs an insertion-only stream");
  const std::size_t n = static_cast<std::size_t>(cfg.params.n);
  const double logm = std::log(static_cast<double>(cfg.params.m));
  const long beta_b =
      std::max<long>(1, static_cast<long>(std::ceil(cfg.params.K * logm)));
  const std::size_t budget_b = static_cast<std::size_t>(
      std::ceil(4.0 * cfg.params.K * (cfg.params.n / cfg.params.eps) *
                std::max(1.0, logm)));

  // Branch A state: Q coin assignments, scored online.
  std::vector<Assignment> trials;
  trials.reserve(static_cast<std::size_t>(cfg.Q));
  for (long t = 0; t < cfg.Q; ++t) {
    Assignment a(n, false);
    for (std::size_t i = 0; i < n; ++i) a[i] = rng.chance(0.5);
    trials.push_back(std::move(a));
  }
  std::vector<long> scores(trials.size(), 0);

  // Branch B state: stored small clauses, dropped if over budget.
  std::vector<Clause> stored;
  std::size_t stored_words = 0;
  std::size_t overflow_words = 0;
  bool branch_b_alive = true;

  long m_seen = 0, unit_count = 0, large_b = 0;
  MaxSatResult res;

  const std::size_t words_per_trial = (n + 63) / 64 + 1;
  std::size_t base_words = trials.size() * words_per_trial + trials.size() + 4;
  res.space.track_peak(base_words);
  res.space.note("coin_trials", base_words);

  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("the one-literal branch needs an insertion-only stream");
    const Clause& c = ev->clause;
    ++m_seen;
    if (c.size() == 1) ++unit_count;
    if (c.size() >= 2) {
      for (std::size_t t = 0; t < trials.size(); ++t)
        scores[t] += clause_satisfied(c, trials[t]);
    }
    if (branch_b_alive) {
      if (is_large(c, beta_b)) {
        ++large_b;
      } else {
        stored.push_back(c);
        stored_words += words_for_clause(c);
        res.space.track_peak(base_words + stored_words);
        if (stored_words > budget_b) {
          branch_b_alive = false;
          overflow_words = stored_words;
          stored.clear();
          stored.shrink_to_fit();
          stored_words = 0;
        }
      }
    }
  }
  res.space.note("stored_small", stored_words);

  const bool take_a =
      static_cast<double>(unit_count) <= cfg.params.eps * m_seen;
  if (take_a || m_seen == 0) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < trials.size(); ++t)
      if (scores[t] > scores[best]) best = t;
    res.branch = "A";
    res.assignment = trials.empty() ? Assignment(n, false) : trials[best];
    res.satisfied_on_sample = trials.empty() ? 0 : scores[best];
    res.estimate_conservative = static_cast<double>(res.satisfied_on_sample);
    res.estimate = res.estimate_conservative;
    res.small_count = m_seen - unit_count;
    return res;
  }

  if (!branch_b_alive)
    throw SpaceBudgetExceeded(overflow_words, budget_b);
  res.branch = "B";
  res.small_count = static_cast<long>(stored.size());
  res.large_count = large_b;
  res.space.samples_achieved = stored.size();
  res.space.large_clauses_dropped = large_b;
  res.assignment = postprocess_lp_round(stored, cfg, rng);
  res.satisfied_on_sample = evaluate(res.assignment, stored);
  res.estimate_conservative = static_cast<double>(res.satisfied_on_sample);
  res.estimate = res.estimate_conservative + static_cast<double>(large_b);
  res.sample.clauses = std::move(stored);
  res.sample.achieved = res.sample.clauses.size();
  return res;
}

}  // namespace satstream
