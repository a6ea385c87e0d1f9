#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"
#include "satstream/exact_solver.hpp"
#include "satstream/maxsat.hpp"
#include "satstream/minsat.hpp"
#include "satstream/rng.hpp"
#include "satstream/space.hpp"
#include "satstream/stream.hpp"

namespace satstream {

using json = nlohmann::ordered_json;

// Uniform random normalized clauses, sizes uniform in [size_min, size_max],
// distinct variables per clause, no duplicate clauses in the instance.
inline std::vector<Clause> random_instance_clauses(int n, long m, int size_min,
                                                   int size_max,
                                                   std::uint64_t seed) {
  if (n < 1 || m < 0 || size_min < 1 || size_max < size_min || size_max > n)
    throw ConfigError("bad random instance parameters");
  Rng rng(seed);
  std::vector<Clause> out;
  out.reserve(static_cast<std::size_t>(m));
  std::set<std::vector<int>> seen;
  long attempts = 0;
  const long attempt_cap = 1000 * std::max<long>(m, 1);
  while (static_cast<long>(out.size()) < m) {
    if (++attempts > attempt_cap)
      throw ConfigError("cannot place that many distinct clauses");
    const int size =
        size_min + static_cast<int>(rng.below(
                       static_cast<std::uint64_t>(size_max - size_min + 1)));
    std::vector<Literal> lits;
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < size) {
      const int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (vars.insert(v).second)
        lits.push_back(Literal{v, rng.chance(0.5)});
    }
    auto clause = normalize_clause(std::move(lits), ClauseKind::disjunctive);
    std::vector<int> key;
    for (const Literal& l : clause->lits) key.push_back(literal_code(l));
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(*clause));
  }
  return out;
}

inline void write_stream_file(const std::string& path, const StreamHeader& header,
                              const std::vector<StreamEvent>& events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << render_header(header) << "\n";
  for (const StreamEvent& e : events) out << render_event(e) << "\n";
}

// The spec'd stream-file product: byte-identical for a fixed seed.
inline void random_instance_file(const std::string& path, int n, long m,
                                 int size_min, int size_max,
                                 std::uint64_t seed) {
  const std::vector<Clause> clauses =
      random_instance_clauses(n, m, size_min, size_max, seed);
  std::vector<StreamEvent> events;
  events.reserve(clauses.size());
  for (const Clause& c : clauses) events.push_back({StreamOp::insert, c});
  write_stream_file(path, StreamHeader{n, std::max<long>(m, 1), false,
                                       ClauseKind::disjunctive},
                    events);
}

inline json space_to_json(const SpaceReport& s) {
  json breakdown = json::object();
  for (const auto& [name, words] : s.breakdown) breakdown[name] = words;
  return json{{"words_stored_peak", s.words_stored_peak},
              {"samples_achieved", s.samples_achieved},
              {"large_clauses_dropped", s.large_clauses_dropped},
              {"breakdown", breakdown}};
}

// One experiment = one task over a corpus (files or a generated family),
// several seeded runs each, optionally scored against the exact oracle.
struct ExperimentConfig {
  std::string task = "maxsat";         // maxsat | minsat_settled | minsat_freq | minsat_f0
  std::string mode = "lp_round";       // maxsat: exact_perturb | lp_round
  std::string offline = "exact";       // minsat: exact | kohli
  double eps = 0.15;
  double K = 4.0;
  long f = 4;
  bool dynamic = false;
  bool oracle = true;
  bool measure_time = false;
  long runs_per_instance = 1;
  std::uint64_t master_seed = 1;
  std::vector<std::string> instances;  // stream files
  struct Generate {
    long count = 0;
    int n = 10;
    long m = 100;
    int size_min = 1;
    int size_max = 4;
  } generate;
  std::optional<double> min_ratio;      // maxsat success threshold
  std::optional<double> max_ratio;      // minsat success threshold
  std::optional<double> success_fraction;

  static ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;
    c.task = j.value("task", c.task);
    c.mode = j.value("mode", c.mode);
    c.offline = j.value("offline", c.offline);
    c.eps = j.value("eps", c.eps);
    c.K = j.value("K", c.K);
    c.f = j.value("f", c.f);
    c.dynamic = j.value("dynamic", c.dynamic);
    c.oracle = j.value("oracle", c.oracle);
    c.measure_time = j.value("measure_time", c.measure_time);
    c.runs_per_instance = j.value("runs", c.runs_per_instance);
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("instances"))
      c.instances = j["instances"].get<std::vector<std::string>>();
    if (j.contains("generate")) {
      const json& g = j["generate"];
      c.generate.count = g.value("count", 0L);
      c.generate.n = g.value("n", 10);
      c.generate.m = g.value("m", 100L);
      c.generate.size_min = g.value("size_min", 1);
      c.generate.size_max = g.value("size_max", 4);
    }
    if (j.contains("thresholds")) {
      const json& t = j["thresholds"];
      if (t.contains("min_ratio")) c.min_ratio = t["min_ratio"].get<double>();
      if (t.contains("max_ratio")) c.max_ratio = t["max_ratio"].get<double>();
      if (t.contains("success_fraction"))
        c.success_fraction = t["success_fraction"].get<double>();
    }
    return c;
  }

  json echo() const {
    json j{{"task", task},          {"eps", eps},
           {"K", K},                {"dynamic", dynamic},
           {"oracle", oracle},      {"runs", runs_per_instance},
           {"master_seed", master_seed}};
    if (task == "maxsat") j["mode"] = mode;
    if (task.rfind("minsat", 0) == 0) j["offline"] = offline;
    if (task == "minsat_freq") j["f"] = f;
    return j;
  }
};

struct ResultReport {
  json config;
  std::vector<json> runs;
  json aggregate;
  bool thresholds_met = true;

  std::string to_jsonl() const {
    std::string out = json{{"config", config}}.dump() + "\n";
    for (const json& r : runs) out += r.dump() + "\n";
    out += json{{"aggregate", aggregate}}.dump() + "\n";
    return out;
  }
};

namespace detail {

struct NamedInstance {
  std::string name;
  std::vector<Clause> clauses;
  int n = 0;
};

inline std::vector<NamedInstance> load_corpus(const ExperimentConfig& cfg) {
  std::vector<NamedInstance> corpus;
  for (const std::string& path : cfg.instances) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open stream file " + path);
    StreamReader reader(in);
    NamedInstance inst;
    inst.name = path;
    inst.n = reader.header().n;
    inst.clauses = collect_final_clauses(reader);
    corpus.push_back(std::move(inst));
  }
  for (long i = 0; i < cfg.generate.count; ++i) {
    NamedInstance inst;
    inst.name = "generated/" + std::to_string(i);
    inst.n = cfg.generate.n;
    inst.clauses = random_instance_clauses(
        cfg.generate.n, cfg.generate.m, cfg.generate.size_min,
        cfg.generate.size_max, splitmix64(cfg.master_seed ^ (0x9e37ULL + i)));
    corpus.push_back(std::move(inst));
  }
  return corpus;
}

}  // namespace detail

// Deterministic given (config, master seed): every run's RNG is derived from
// them, and timing is only measured when asked (it is zero otherwise so that
// reports stay byte-identical).
inline ResultReport run_experiment(const ExperimentConfig& cfg) {
  ResultReport report;
  report.config = cfg.echo();

  const std::vector<detail::NamedInstance> corpus = detail::load_corpus(cfg);
  long successes = 0, scored = 0;
  double ratio_sum = 0.0;

  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const detail::NamedInstance& inst = corpus[idx];
    std::optional<long> opt;
    if (cfg.oracle) {
      if (cfg.task == "maxsat")
        opt = exact_maxsat(inst.clauses, inst.n).second;
      else
        opt = exact_minsat(inst.clauses, inst.n).second;
    }
    for (long r = 0; r < cfg.runs_per_instance; ++r) {
      const std::uint64_t seed =
          splitmix64(cfg.master_seed ^ splitmix64(idx * 1000003ULL + r));
      Rng rng(seed);
      const auto start = std::chrono::steady_clock::now();

      Parameters params{inst.n,
                        std::max<long>(1, static_cast<long>(inst.clauses.size())),
                        cfg.eps, cfg.K};
      Assignment a;
      SpaceReport space;
      if (cfg.task == "maxsat") {
        MaxSatConfig mc = MaxSatConfig::make(
            params,
            cfg.mode == "exact_perturb" ? MaxSatMode::exact_perturb
                                        : MaxSatMode::lp_round,
            false);
        VectorEvents events = VectorEvents::inserts(inst.n, inst.clauses);
        MaxSatResult res = stream_maxsat(events, mc, rng);
        a = std::move(res.assignment);
        space = std::move(res.space);
      } else if (cfg.task == "minsat_settled") {
        MinSatConfig mc = MinSatConfig::make(
            params, cfg.offline == "kohli" ? MinSatOffline::kohli
                                           : MinSatOffline::exact);
        VectorEvents events = VectorEvents::inserts(inst.n, inst.clauses);
        MinSatResult res = minsat_subsampled(events, mc, rng, cfg.oracle);
        a = std::move(res.assignment);
        space = std::move(res.space);
      } else if (cfg.task == "minsat_freq") {
        VectorEvents events = VectorEvents::inserts(inst.n, inst.clauses);
        MinSatResult res = minsat_bounded_freq(events, cfg.f);
        a = std::move(res.assignment);
        space = std::move(res.space);
      } else if (cfg.task == "minsat_f0") {
        VectorEvents events = VectorEvents::inserts(inst.n, inst.clauses);
        MinSatResult res = minsat_f0_bruteforce(events, cfg.eps, 1e-3, seed);
        a = std::move(res.assignment);
        space = std::move(res.space);
      } else {
        throw ConfigError("unknown task " + cfg.task);
      }

      const long value = evaluate(a, inst.clauses);
      double runtime_ms = 0.0;
      if (cfg.measure_time) {
        runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      }
      json run{{"instance", inst.name}, {"seed", seed}, {"value", value}};
      if (opt) {
        const double denom = cfg.task == "maxsat"
                                 ? static_cast<double>(*opt)
                                 : static_cast<double>(std::max<long>(*opt, 1));
        const double ratio =
            denom > 0.0 ? static_cast<double>(value) / denom : 1.0;
        run["opt"] = *opt;
        run["ratio"] = ratio;
        ratio_sum += ratio;
        ++scored;
        bool ok = true;
        if (cfg.min_ratio) ok = ok && ratio >= *cfg.min_ratio - 1e-12;
        if (cfg.max_ratio) ok = ok && ratio <= *cfg.max_ratio + 1e-12;
        successes += ok;
      }
      run["runtime_ms"] = runtime_ms;
      run["space"] = space_to_json(space);
      report.runs.push_back(std::move(run));
    }
  }

  const double success_fraction =
      scored > 0 ? static_cast<double>(successes) / scored : 1.0;
  report.aggregate = json{
      {"runs", report.runs.size()},
      {"success_fraction", success_fraction},
      {"mean_ratio", scored > 0 ? ratio_sum / scored : 0.0}};
  report.thresholds_met =
      !cfg.success_fraction || success_fraction >= *cfg.success_fraction - 1e-12;
  report.aggregate["thresholds_met"] = report.thresholds_met;
  return report;
}

}  // namespace satstream
