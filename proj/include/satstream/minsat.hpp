#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"
#include "satstream/exact_solver.hpp"
#include "satstream/f0_sketch.hpp"
#include "satstream/rng.hpp"
#include "satstream/space.hpp"
#include "satstream/stream.hpp"

namespace satstream {

enum class MinSatOffline : std::uint8_t { exact, kohli };

struct MinSatConfig {
  Parameters params;
  long u = 1;                  // optimum bound fed to the settled algorithm
  MinSatOffline offline = MinSatOffline::exact;
  long f = 0;                  // max clause occurrences per variable
  double sketch_delta = 1e-3;

  static MinSatConfig make(const Parameters& params,
                           MinSatOffline offline = MinSatOffline::exact) {
    params.validate();
    if (params.eps >= 0.25) throw ConfigError("eps must be < 1/4");
    MinSatConfig cfg;
    cfg.params = params;
    cfg.offline = offline;
    cfg.u = static_cast<long>(
        std::ceil(2.0 * params.K * params.n / (params.eps * params.eps)));
    return cfg;
  }

  // Sampling probability of the guess-z instance.
  double guess_probability(long z) const {
    const double p =
        params.K * params.n / (params.eps * params.eps * static_cast<double>(z));
    return p < 1.0 ? p : 1.0;
  }

  // Stored-clause word budget per guess instance.
  std::size_t guess_budget_words() const {
    return static_cast<std::size_t>(4) * static_cast<std::size_t>(params.n) *
           static_cast<std::size_t>(u);
  }
};

// Randomized greedy of Kohli, Krishnamurti and Mirchandani: variables in
// index order, each set true with probability b/(a+b) where a and b count the
// clauses newly satisfied by true and false. 2-approximation in expectation.
inline std::pair<Assignment, long> kohli_greedy(
    const std::vector<Clause>& clauses, int n, Rng& rng) {
  std::vector<char> satisfied(clauses.size(), 0);
  Assignment a(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> occ_pos(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<int>> occ_neg(static_cast<std::size_t>(n) + 1);
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    if (clauses[j].kind != ClauseKind::disjunctive)
      throw ConfigError("kohli greedy expects disjunctive clauses");
    for (const Literal& l : clauses[j])
      (l.negated ? occ_neg : occ_pos)[static_cast<std::size_t>(l.var)]
          .push_back(static_cast<int>(j));
  }
  long value = 0;
  for (int v = 1; v <= n; ++v) {
    long newly_true = 0, newly_false = 0;
    for (int j : occ_pos[static_cast<std::size_t>(v)]) newly_true += !satisfied[j];
    for (int j : occ_neg[static_cast<std::size_t>(v)]) newly_false += !satisfied[j];
    bool val = false;
    if (newly_true + newly_false > 0) {
      const double p_true = static_cast<double>(newly_false) /
                            static_cast<double>(newly_true + newly_false);
      val = rng.chance(p_true);
    }
    a[static_cast<std::size_t>(v) - 1] = val;
    for (int j : (val ? occ_pos : occ_neg)[static_cast<std::size_t>(v)]) {
      if (!satisfied[j]) {
        satisfied[j] = 1;
        ++value;
      }
    }
  }
  return {std::move(a), value};
}

// Best of ceil(eps^-1 log n) greedy repetitions.
inline std::pair<Assignment, long> kohli_greedy_amplified(
    const std::vector<Clause>& clauses, int n, double eps, Rng& rng) {
  const long reps = std::max<long>(
      1, static_cast<long>(std::ceil(std::log(std::max(n, 2)) / eps)));
  std::pair<Assignment, long> best{Assignment(static_cast<std::size_t>(n), false),
                                   static_cast<long>(clauses.size()) + 1};
  for (long r = 0; r < reps; ++r) {
    auto cand = kohli_greedy(clauses, n, rng);
    if (cand.second < best.second) best = std::move(cand);
  }
  if (clauses.empty()) best.second = 0;
  return best;
}

// Streaming state of the settled-variable algorithm. A literal contained in
// more than u stored clauses forces its variable: setting it the other way
// would satisfy more than u >= opt clauses. Stored clauses are reduced to
// unsettled literals; clauses satisfied by a settled-true literal are counted
// and dropped, clauses whose literals all settled false can never be
// satisfied and cost nothing.
class SettledState {
 public:
  SettledState(int n, long u) : n_(n), u_(u) {
    status_.assign(static_cast<std::size_t>(n) + 1, 0);  // 0 unsettled
    count_.assign(2 * static_cast<std::size_t>(n), 0);
  }

  void update(const Clause& c) {
    if (c.kind != ClauseKind::disjunctive)
      throw ConfigError("settled algorithm expects disjunctive clauses");
    Clause reduced;
    reduced.kind = ClauseKind::disjunctive;
    for (const Literal& l : c.lits) {
      const int st = status_[static_cast<std::size_t>(l.var)];
      if (st == 0) {
        reduced.lits.push_back(l);
      } else if ((st == 1) != l.negated) {
        ++forced_satisfied_;  // settled literal already true
        return;
      }
      // settled literal false: drop it from the clause
    }
    if (reduced.lits.empty()) {
      ++never_satisfiable_;
      return;
    }
    for (const Literal& l : reduced.lits)
      ++count_[static_cast<std::size_t>(literal_code(l))];
    stored_.push_back(reduced);
    stored_words_ += words_for_clause(reduced);
    if (stored_words_ > words_peak_) words_peak_ = stored_words_;
    for (const Literal& l : reduced.lits) {
      if (status_[static_cast<std::size_t>(l.var)] == 0 &&
          count_[static_cast<std::size_t>(literal_code(l))] > u_)
        settle(l.var, l.negated);  // falsify the overfull literal
    }
  }

  // Offline solve on the reduced instance, merged with the settled values.
  std::pair<Assignment, long> finish(MinSatOffline offline, double eps,
                                     Rng& rng) const {
    std::pair<Assignment, long> sub =
        offline == MinSatOffline::exact
            ? exact_minsat(stored_, n_)
            : kohli_greedy_amplified(stored_, n_, eps, rng);
    Assignment merged = std::move(sub.first);
    for (int v = 1; v <= n_; ++v) {
      const int st = status_[static_cast<std::size_t>(v)];
      if (st != 0) merged[static_cast<std::size_t>(v) - 1] = st == 1;
    }
    return {std::move(merged), sub.second + forced_satisfied_};
  }

  long settled_count() const {
    long c = 0;
    for (int v = 1; v <= n_; ++v) c += status_[static_cast<std::size_t>(v)] != 0;
    return c;
  }

  const std::vector<Clause>& stored() const { return stored_; }
  long forced_satisfied() const { return forced_satisfied_; }
  long never_satisfiable() const { return never_satisfiable_; }

  std::size_t words() const {
    // stored clauses + literal counters + status array
    return stored_words_ + 2 * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(n_);
  }
  std::size_t stored_words_peak() const { return words_peak_; }

 private:
  void settle(int var, bool value) {
    status_[static_cast<std::size_t>(var)] = value ? 1 : 2;
    std::size_t w = 0;
    for (std::size_t j = 0; j < stored_.size();) {
      Clause& c = stored_[j];
      bool drop_satisfied = false;
      for (std::size_t i = 0; i < c.lits.size();) {
        if (c.lits[i].var != var) {
          ++i;
          continue;
        }
        if (c.lits[i].negated != value) {
          drop_satisfied = true;  // literal became true
          break;
        }
        c.lits.erase(c.lits.begin() + static_cast<long>(i));
      }
      if (drop_satisfied) {
        ++forced_satisfied_;
        stored_[j] = std::move(stored_.back());
        stored_.pop_back();
        continue;
      }
      if (c.lits.empty()) {
        ++never_satisfiable_;
        stored_[j] = std::move(stored_.back());
        stored_.pop_back();
        continue;
      }
      w += words_for_clause(c);
      ++j;
    }
    stored_words_ = w;
  }

  int n_;
  long u_;
  std::vector<int> status_;  // 0 unsettled, 1 true, 2 false
  std::vector<long> count_;  // per literal code; never decremented
  std::vector<Clause> stored_;
  long forced_satisfied_ = 0;
  long never_satisfiable_ = 0;
  std::size_t stored_words_ = 0;
  std::size_t words_peak_ = 0;
};

// Tracks, per variable, whether it ever occurs positively or negatively.
// opt = 0 exactly when every variable is one-sided; the witness falsifies
// each literal that occurs.
class OptZeroDetector {
 public:
  explicit OptZeroDetector(int n)
      : pos_(static_cast<std::size_t>(n) + 1, 0),
        neg_(static_cast<std::size_t>(n) + 1, 0) {}

  void update(const Clause& c) {
    for (const Literal& l : c.lits)
      (l.negated ? neg_ : pos_)[static_cast<std::size_t>(l.var)] = 1;
  }

  std::pair<bool, std::optional<Assignment>> result() const {
    const std::size_t n = pos_.size() - 1;
    Assignment witness(n, false);
    for (std::size_t v = 1; v <= n; ++v) {
      if (pos_[v] && neg_[v]) return {false, std::nullopt};
      witness[v - 1] = neg_[v] && !pos_[v];
    }
    return {true, witness};
  }

 private:
  std::vector<char> pos_, neg_;
};

template <class EventSource>
std::pair<bool, std::optional<Assignment>> detect_opt_zero(EventSource& events) {
  OptZeroDetector det(events.header().n);
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("opt-zero detection expects an insertion-only stream");
    det.update(ev->clause);
  }
  return det.result();
}

struct MinSatResult {
  Assignment assignment;
  double value = 0.0;       // streaming estimate (exact where noted)
  long guesses_run = 0;
  long guesses_terminated = 0;
  long chosen_z = 0;
  long settled_count = 0;
  bool opt_zero = false;
  SpaceReport space;
};

// Subsampling framework: one settled-variable instance per guess
// z = 1, 2, 4, ..., each sampling clauses independently with probability
// min(1, K n / (eps^2 z)); instances that outgrow their word budget are
// terminated. The kept assignment minimizes the 1/p-rescaled estimate, or the
// exact full-stream value when `full_evaluation` (oracle/test mode) is set.
template <class EventSource>
MinSatResult minsat_subsampled(EventSource& events, const MinSatConfig& cfg,
                               Rng& rng, bool full_evaluation = false) {
  const int n = cfg.params.n;
  std::vector<long> zs;
  for (long z = 1;; z *= 2) {
    zs.push_back(z);
    if (z >= 2 * cfg.params.m) break;
  }
  struct Guess {
    long z;
    double p;
    SettledState state;
    Rng coin;
    bool alive = true;
  };
  std::vector<Guess> guesses;
  guesses.reserve(zs.size());
  for (long z : zs)
    guesses.push_back(Guess{z, cfg.guess_probability(z), SettledState(n, cfg.u),
                            rng.fork(static_cast<std::uint64_t>(z))});

  OptZeroDetector zero(n);
  std::vector<Clause> full;  // oracle mode only
  const std::size_t budget = cfg.guess_budget_words();

  MinSatResult res;
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("min-sat pipelines expect insertion-only streams");
    zero.update(ev->clause);
    if (full_evaluation) full.push_back(ev->clause);
    std::size_t live_words = 0;
    for (Guess& g : guesses) {
      if (!g.alive) continue;
      if (g.p < 1.0 && !g.coin.chance(g.p)) continue;
      g.state.update(ev->clause);
      if (g.state.words() > budget) {
        g.alive = false;
        continue;
      }
      live_words += g.state.words();
    }
    res.space.track_peak(live_words);
  }

  res.guesses_run = static_cast<long>(guesses.size());
  for (const Guess& g : guesses) res.guesses_terminated += !g.alive;

  const auto [is_zero, witness] = zero.result();
  if (is_zero) {
    res.opt_zero = true;
    res.assignment = *witness;
    res.value = 0.0;
    res.chosen_z = 0;
    return res;
  }

  bool found = false;
  double best_score = 0.0;
  for (Guess& g : guesses) {
    if (!g.alive) continue;
    auto [a, v] = g.state.finish(cfg.offline, cfg.params.eps, rng);
    const double score =
        full_evaluation ? static_cast<double>(evaluate(a, full))
                        : static_cast<double>(v) / g.p;
    res.space.note("z=" + std::to_string(g.z), g.state.words());
    if (!found || score < best_score) {
      found = true;
      best_score = score;
      res.assignment = std::move(a);
      res.value = score;
      res.chosen_z = g.z;
      res.settled_count = g.state.settled_count();
    }
  }
  if (!found) throw AllInstancesTerminated();
  return res;
}

// Theorem-4 pipeline for streams where every variable occurs in at most f
// clauses. Clauses larger than sqrt(fn) are ignored (there are fewer than
// sqrt(fn) of them); each variable takes the value whose literal covers
// fewer small clauses. The reported value is the standard overcount
// sum |S_{l_i}| plus the ignored large clauses; the opt-zero detector runs
// alongside and wins when it fires.
template <class EventSource>
MinSatResult minsat_bounded_freq(EventSource& events, long f) {
  const int n = events.header().n;
  if (f < 1) throw ConfigError("f must be >= 1");
  const double threshold = std::sqrt(static_cast<double>(f) * n);
  std::vector<long> cover(2 * static_cast<std::size_t>(n), 0);
  std::vector<long> occurrences(static_cast<std::size_t>(n) + 1, 0);
  OptZeroDetector zero(n);
  long large_ignored = 0;

  MinSatResult res;
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("min-sat pipelines expect insertion-only streams");
    const Clause& c = ev->clause;
    for (const Literal& l : c.lits) {
      if (++occurrences[static_cast<std::size_t>(l.var)] > f)
        throw FrequencyBoundViolated(l.var, f);
    }
    zero.update(c);
    if (static_cast<double>(c.size()) > threshold) {
      ++large_ignored;
      continue;
    }
    for (const Literal& l : c.lits)
      ++cover[static_cast<std::size_t>(literal_code(l))];
  }
  res.space.track_peak(cover.size() + occurrences.size() * 2 + 4);

  const auto [is_zero, witness] = zero.result();
  if (is_zero) {
    res.opt_zero = true;
    res.assignment = *witness;
    res.value = 0.0;
    return res;
  }
  res.assignment.assign(static_cast<std::size_t>(n), false);
  double total = 0.0;
  for (int v = 1; v <= n; ++v) {
    const long pos = cover[static_cast<std::size_t>(literal_code(Literal{v, false}))];
    const long neg = cover[static_cast<std::size_t>(literal_code(Literal{v, true}))];
    const bool val = pos <= neg;  // ties go to true
    res.assignment[static_cast<std::size_t>(v) - 1] = val;
    total += static_cast<double>(val ? pos : neg);
  }
  res.value = total + static_cast<double>(large_ignored);
  return res;
}

// One F0 sketch per literal over clause ids.
class LiteralSketchBank {
 public:
  LiteralSketchBank(int n, std::size_t k, std::uint64_t seed, double delta)
      : n_(n) {
    sketches_.reserve(2 * static_cast<std::size_t>(n));
    for (int code = 0; code < 2 * n; ++code)
      sketches_.emplace_back(k, seed, delta);
  }

  void add(const Clause& c, std::uint64_t clause_id) {
    for (const Literal& l : c.lits)
      sketches_[static_cast<std::size_t>(literal_code(l))].update(clause_id);
  }

  const F0Sketch& of(const Literal& l) const {
    return sketches_[static_cast<std::size_t>(literal_code(l))];
  }

  std::size_t words() const {
    std::size_t w = 0;
    for (const F0Sketch& s : sketches_) w += s.words();
    return w;
  }

  int n() const { return n_; }

 private:
  int n_;
  std::vector<F0Sketch> sketches_;
};

// Appendix-A brute force: sketch every literal's clause set online, then
// scan all 2^n literal combinations for the smallest estimated coverage.
template <class EventSource>
MinSatResult minsat_f0_bruteforce(EventSource& events, double eps, double delta,
                                  std::uint64_t seed) {
  const int n = events.header().n;
  if (n > kSatGuard) throw TooManyVariables(n, kSatGuard);
  const std::size_t k = F0Sketch::k_for(eps, delta);
  LiteralSketchBank bank(n, k, seed, delta);

  std::uint64_t clause_id = 0;
  std::optional<StreamEvent> ev;
  while ((ev = events.next())) {
    if (ev->op != StreamOp::insert)
      throw ConfigError("min-sat pipelines expect insertion-only streams");
    bank.add(ev->clause, clause_id++);
  }

  MinSatResult res;
  res.space.track_peak(bank.words());
  res.assignment.assign(static_cast<std::size_t>(n), false);
  double best = -1.0;
  Assignment current(static_cast<std::size_t>(n), false);

  // Depth-first over literal choices with shared prefix merges.
  std::vector<F0Sketch> stack;
  stack.reserve(static_cast<std::size_t>(n) + 1);
  stack.emplace_back(k, seed, delta);
  auto descend = [&](auto&& self, int var) -> void {
    if (var > n) {
      const double est = stack.back().estimate();
      if (best < 0.0 || est < best) {
        best = est;
        res.assignment = current;
      }
      return;
    }
    for (const bool value : {false, true}) {
      current[static_cast<std::size_t>(var) - 1] = value;
      F0Sketch merged = stack.back();
      merged.merge_in(bank.of(Literal{var, !value}));  // the true literal
      stack.push_back(std::move(merged));
      self(self, var + 1);
      stack.pop_back();
    }
  };
  descend(descend, 1);
  res.value = best < 0.0 ? 0.0 : best;
  return res;
}

}  // namespace satstream
