//
// Copyright 2026 The privboost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "privboost/cli.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "privboost/boosting.h"
#include "privboost/data.h"
#include "privboost/error.h"
#include "privboost/games.h"
#include "privboost/halfspace.h"
#include "privboost/measures.h"
#include "privboost/privacy.h"
#include "privboost/rng.h"
#include "privboost/sample.h"

namespace privboost {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kReportDelta = 1e-6;

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kWeakLearnerFailure:
    case ErrorCode::kSmoothnessViolation:
    case ErrorCode::kAdvantageViolation:
    case ErrorCode::kInfeasibleProjection:
    case ErrorCode::kIoError:
      return false;
    default:
      return true;
  }
}

Json NumberOrNull(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

template <typename T>
Json OptionalOrNull(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::uint64_t ResolveSeed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("PRIVBOOST_SEED")) {
    const std::string_view s(env);
    std::uint64_t parsed = 0;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), parsed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kBadConfig,
                  "PRIVBOOST_SEED is not an unsigned integer");
    }
    return parsed;
  }
  return 0;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Rows [begin, end) of a sample.
LabeledSample Slice(const LabeledSample& s, std::size_t begin,
                    std::size_t end) {
  const auto f = s.all_features();
  const auto l = s.labels();
  return LabeledSample(s.dim(),
                       std::vector<double>(f.begin() + begin * s.dim(),
                                           f.begin() + end * s.dim()),
                       std::vector<int>(l.begin() + begin, l.begin() + end));
}

double MinMargin(const LinearHypothesis& h, const LabeledSample& s) {
  const std::vector<double> v = EvaluateAll(h, s);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    m = std::min(m, static_cast<double>(s.label(i)) * v[i]);
  }
  return m;
}

// ---------------------------------------------------------------- train

struct TrainSettings {
  std::string data;
  std::string test_data;
  double alpha = 0.2;
  double beta = 0.1;
  double tau = 0.0;
  std::optional<double> eta;
  std::uint64_t seed = 0;
  std::optional<double> sigma;
  std::optional<double> epsilon;
  double delta = kReportDelta;
  double c = 1.0;
  std::optional<std::int64_t> rounds;
  bool strict_sample_size = false;

  double EffectiveEta() const { return eta.value_or(alpha * tau / 32.0); }
};

Json SettingsToJson(const TrainSettings& s) {
  Json j;
  j["data"] = s.data;
  j["test_data"] = s.test_data.empty() ? Json(nullptr) : Json(s.test_data);
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["tau"] = s.tau;
  j["eta"] = s.EffectiveEta();
  j["seed"] = s.seed;
  j["sigma"] = OptionalOrNull(s.sigma);
  j["epsilon"] = OptionalOrNull(s.epsilon);
  j["delta"] = s.delta;
  j["c"] = s.c;
  j["rounds"] = OptionalOrNull(s.rounds);
  j["strict_sample_size"] = s.strict_sample_size;
  return j;
}

template <typename T>
std::optional<T> OptionalFrom(const Json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

TrainSettings SettingsFromJson(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kBadConfig, "config must be a JSON object");
  }
  TrainSettings s;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "data") {
        s.data = v.get<std::string>();
      } else if (key == "test_data") {
        s.test_data = v.is_null() ? "" : v.get<std::string>();
      } else if (key == "alpha") {
        s.alpha = v.get<double>();
      } else if (key == "beta") {
        s.beta = v.get<double>();
      } else if (key == "tau") {
        s.tau = v.get<double>();
      } else if (key == "eta") {
        s.eta = OptionalFrom<double>(v);
      } else if (key == "seed") {
        s.seed = v.get<std::uint64_t>();
      } else if (key == "sigma") {
        s.sigma = OptionalFrom<double>(v);
      } else if (key == "epsilon") {
        s.epsilon = OptionalFrom<double>(v);
      } else if (key == "delta") {
        s.delta = v.get<double>();
      } else if (key == "c") {
        s.c = v.get<double>();
      } else if (key == "rounds") {
        s.rounds = OptionalFrom<std::int64_t>(v);
      } else if (key == "strict_sample_size") {
        s.strict_sample_size = v.get<bool>();
      } else {
        throw Error(ErrorCode::kBadConfig, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadConfig,
                std::string("bad config value: ") + e.what());
  }
  if (s.data.empty()) throw Error(ErrorCode::kBadConfig, "config lacks data");
  return s;
}

HsStlParams ToParams(const TrainSettings& s) {
  HsStlParams p;
  p.alpha = s.alpha;
  p.beta = s.beta;
  p.tau = s.tau;
  p.sigma_override = s.sigma;
  if (s.epsilon) p.privacy_target = ApproxDpParams::Make(*s.epsilon, s.delta);
  p.noise_constant = s.c;
  p.rounds_override = s.rounds;
  p.strict_sample_size = s.strict_sample_size;
  p.Validate();
  return p;
}

// Trains on `clean` after label noise and evaluates. The record's config
// echo is `echo`.
Json TrainRecord(const TrainSettings& s, const LabeledSample& clean,
                 const std::optional<LabeledSample>& test, Json echo) {
  const auto start = std::chrono::steady_clock::now();
  const HsStlParams params = ToParams(s);
  if (!(s.delta > 0.0 && s.delta < 1.0)) {
    throw Error(ErrorCode::kBadDelta, "delta must lie in (0, 1)");
  }
  if (test && test->dim() != clean.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "test data dimension differs from the training data");
  }
  const NoisySample noisy =
      ApplyRcn(clean, NoiseConfig{s.EffectiveEta(), s.seed});
  Rng rng = Rng(s.seed).Derive("boost");
  const HsStlResult r = HsStl(noisy.sample, params, rng);
  const LinearHypothesis& z = r.hypothesis;

  double adv_min = std::numeric_limits<double>::infinity();
  double adv_max = -adv_min;
  double adv_sum = 0.0;
  for (const RoundDiagnostics& d : r.boost.trace) {
    adv_min = std::min(adv_min, d.advantage);
    adv_max = std::max(adv_max, d.advantage);
    adv_sum += d.advantage;
  }
  const double gamma = s.tau / 4.0;
  const double rho = r.ledger.rho_total();
  const bool is_private = std::isfinite(rho);

  Json rec;
  rec["task"] = "train";
  rec["config"] = std::move(echo);
  rec["seed"] = s.seed;
  rec["plan"] = {{"kappa", r.plan.kappa},
                 {"lambda", r.plan.lambda},
                 {"rounds", r.plan.rounds},
                 {"sigma", r.plan.sigma},
                 {"per_round_rho", NumberOrNull(r.plan.per_round_rho)},
                 {"min_sample_size", r.plan.min_sample_size}};
  rec["model"] = {{"dim", z.dim()},
                  {"z", std::vector<double>(z.z().begin(), z.z().end())}};

  Json m;
  m["n_train"] = clean.size();
  m["flipped"] = noisy.flipped.size();
  m["train_error"] = EmpiricalError(z, noisy.sample);
  m["train_error_clean"] = EmpiricalError(z, clean);
  m["n_test"] = test ? Json(test->size()) : Json(nullptr);
  m["test_error"] = test ? Json(EmpiricalError(z, *test)) : Json(nullptr);
  m["min_margin"] = MinMargin(z, clean);
  m["gamma"] = gamma;
  m["margin_failure_fraction"] =
      MarginFailureFraction(r.boost, noisy.sample, gamma);
  m["z_norm"] = z.Norm();
  m["advantage"] = {
      {"min", adv_min},
      {"mean", adv_sum / static_cast<double>(r.boost.trace.size())},
      {"max", adv_max}};
  m["private"] = is_private;
  m["rho_total"] = NumberOrNull(rho);
  m["delta"] = s.delta;
  m["epsilon"] =
      is_private ? Json(ZcdpToDp(rho, s.delta).epsilon) : Json(nullptr);
  m["epsilon_three_root"] =
      is_private ? Json(ThreeRootEpsilon(rho, s.delta)) : Json(nullptr);
  m["wall_clock_seconds"] = Seconds(start);
  rec["metrics"] = std::move(m);
  rec["warnings"] = r.warnings;
  return rec;
}

void Emit(const Json& record, const std::string& path, std::ostream& out) {
  const std::string text = record.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    WriteFileAtomic(path, text);
  }
}

// ---------------------------------------------------------------- sweep

struct Cell {
  std::int64_t n = 0;
  double tau = 0.0;
  double alpha = 0.0;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::uint64_t seed = 0;

  auto Key() const {
    return std::make_tuple(n, tau, alpha, eta.value_or(-1.0),
                           sigma.value_or(-1.0), seed);
  }
  std::string Name() const {
    return "n" + std::to_string(n) + "_tau" + FormatDouble(tau) + "_alpha" +
           FormatDouble(alpha) + "_eta" +
           (eta ? FormatDouble(*eta) : std::string("auto")) + "_sigma" +
           (sigma ? FormatDouble(*sigma) : std::string("auto")) + "_seed" +
           std::to_string(seed);
  }
};

struct SweepSettings {
  std::int64_t d = 20;
  double beta = 0.1;
  std::int64_t test_n = 2000;
  std::optional<std::int64_t> rounds;
  double delta = kReportDelta;
  double c = 1.0;
  std::string out_dir;
  int jobs = 1;
};

Json RunCell(const SweepSettings& sw, const Cell& cell) {
  GeneratorConfig g;
  g.d = sw.d;
  g.n = cell.n + sw.test_n;
  g.tau = cell.tau;
  g.seed = cell.seed;
  const MarginSample all = GenerateMarginSample(g);
  const auto n = static_cast<std::size_t>(cell.n);
  const LabeledSample train = Slice(all.sample, 0, n);
  std::optional<LabeledSample> test;
  if (sw.test_n > 0) test = Slice(all.sample, n, all.sample.size());

  TrainSettings s;
  s.data = "generated";
  s.alpha = cell.alpha;
  s.beta = sw.beta;
  s.tau = cell.tau;
  s.eta = cell.eta;
  s.seed = cell.seed;
  s.sigma = cell.sigma;
  s.delta = sw.delta;
  s.c = sw.c;
  s.rounds = sw.rounds;
  Json echo = SettingsToJson(s);
  Json rec = TrainRecord(s, train, test, echo);
  rec["cell"] = {{"name", cell.Name()},
                 {"d", sw.d},
                 {"n", cell.n},
                 {"test_n", sw.test_n},
                 {"tau", cell.tau},
                 {"alpha", cell.alpha},
                 {"eta", s.EffectiveEta()},
                 {"sigma", OptionalOrNull(cell.sigma)},
                 {"seed", cell.seed}};
  return rec;
}

std::string CsvField(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return FormatDouble(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

int RunSweep(const SweepSettings& sw, std::vector<Cell> cells,
             std::ostream& out, std::ostream& err) {
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.Key() < b.Key(); });
  std::filesystem::create_directories(sw.out_dir);

  std::vector<Json> records(cells.size());
  std::vector<std::string> failures(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      const std::string path =
          (std::filesystem::path(sw.out_dir) / (cells[k].Name() + ".json"))
              .string();
      try {
        records[k] = RunCell(sw, cells[k]);
        records[k]["status"] = "ok";
      } catch (const std::exception& e) {
        failures[k] = e.what();
        records[k] = {{"task", "train"},
                      {"cell", {{"name", cells[k].Name()}}},
                      {"status", "failed"},
                      {"error", e.what()}};
        std::lock_guard<std::mutex> lock(err_mu);
        err << "cell " << cells[k].Name() << " failed: " << e.what() << "\n";
      }
      WriteFileAtomic(path, records[k].dump(2) + "\n");
    }
  };
  const int jobs =
      std::max(1, std::min<int>(sw.jobs, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string csv =
      "cell,n,tau,alpha,eta,sigma,seed,status,train_error,test_error,"
      "margin_failure_fraction,z_norm,rho_total,epsilon,wall_clock_seconds\n";
  std::size_t failed = 0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells[k];
    const bool ok = failures[k].empty();
    failed += ok ? 0 : 1;
    csv += c.Name() + "," + std::to_string(c.n) + "," + FormatDouble(c.tau) +
           "," + FormatDouble(c.alpha) + "," +
           (c.eta ? FormatDouble(*c.eta) : "") + "," +
           (c.sigma ? FormatDouble(*c.sigma) : "") + "," +
           std::to_string(c.seed) + "," + (ok ? "ok" : "failed");
    for (const char* key :
         {"train_error", "test_error", "margin_failure_fraction", "z_norm",
          "rho_total", "epsilon", "wall_clock_seconds"}) {
      csv += ",";
      if (ok) csv += CsvField(records[k]["metrics"][key]);
    }
    csv += "\n";
  }
  WriteFileAtomic((std::filesystem::path(sw.out_dir) / "summary.csv").string(),
                  csv);
  out << Json{{"task", "sweep"},
              {"cells", cells.size()},
              {"failed", failed},
              {"out_dir", sw.out_dir}}
             .dump(2)
      << "\n";
  return failed == cells.size() ? kExitRuntime : kExitOk;
}

// ---------------------------------------------------------------- regret

struct RegretSimSettings {
  std::int64_t n = 16;
  double kappa = 0.25;
  std::optional<double> lambda;
  std::int64_t rounds = 100;
  std::int64_t trials = 100;
  std::int64_t comparators = 10;
  std::uint64_t seed = 0;
};

Json RegretSim(const RegretSimSettings& s) {
  if (s.n < 1 || s.rounds < 1 || s.trials < 1 || s.comparators < 0) {
    throw Error(ErrorCode::kBadConfig,
                "n, T and trials must be positive, comparators non-negative");
  }
  if (!(s.kappa > 0.0 && s.kappa < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "kappa must lie in (0, 1)");
  }
  if (s.lambda && !(*s.lambda > 0.0 && *s.lambda < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "lambda must lie in (0, 1)");
  }
  const auto n = static_cast<std::size_t>(s.n);
  const Rng root(s.seed);
  std::int64_t passes = 0;
  std::int64_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < s.trials; ++k) {
    Rng rng = root.Derive("trial", static_cast<std::uint64_t>(k));
    const double lambda = s.lambda ? *s.lambda : rng.Uniform(0.01, 0.3);
    std::vector<std::vector<double>> losses(static_cast<std::size_t>(s.rounds),
                                            std::vector<double>(n));
    for (auto& row : losses) {
      for (double& v : row) v = rng.Uniform01();
    }
    FixedLossColumns columns(std::move(losses));
    const PlayTrace trace =
        IteratedPlay(n, columns, s.kappa, lambda, s.rounds, rng);
    bool all = true;
    auto check = [&](const BoundedMeasure& comp) {
      const RegretCheck c = VerifyRegret(trace, comp, s.kappa, lambda);
      min_slack = std::min(min_slack, c.slack);
      if (!c.holds) {
        all = false;
        ++violations;
      }
    };
    check(BestFixedDenseMeasure(CumulativeLosses(trace), s.kappa));
    for (std::int64_t j = 0; j < s.comparators; ++j) {
      check(RandomDenseMeasure(n, s.kappa, rng));
    }
    passes += all ? 1 : 0;
  }
  Json config = {{"n", s.n},
                 {"kappa", s.kappa},
                 {"lambda", OptionalOrNull(s.lambda)},
                 {"T", s.rounds},
                 {"trials", s.trials},
                 {"comparators", s.comparators},
                 {"seed", s.seed}};
  return {{"task", "regret-sim"},
          {"config", std::move(config)},
          {"seed", s.seed},
          {"metrics",
           {{"trials", s.trials},
            {"passes", passes},
            {"violations", violations},
            {"min_slack", min_slack}}}};
}

// ------------------------------------------------------------ accountant

struct AccountantSettings {
  std::optional<double> kappa;
  std::optional<std::int64_t> n;
  std::int64_t rounds = 1;
  std::optional<double> sigma;
  std::optional<double> s;
  std::optional<double> epsilon;
  double delta = kReportDelta;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> tau;
};

Json BoundJson(const SampleBoundTerms& t, std::int64_t n) {
  return {{"privacy", t.privacy},
          {"accuracy", t.accuracy},
          {"noise", t.noise},
          {"generalization", t.generalization},
          {"required_n", n}};
}

Json Accountant(const AccountantSettings& a) {
  Json rec;
  rec["task"] = "accountant";
  rec["delta"] = a.delta;
  bool any = false;
  const bool have_kn = a.kappa && a.n;
  if (a.sigma) {
    if (!have_kn) {
      throw Error(ErrorCode::kBadConfig, "--sigma needs --kappa and --n");
    }
    const double kn = *a.kappa * static_cast<double>(*a.n);
    const double s = a.s.value_or(std::min(1.0, 1.0 / kn));
    const double per_round = WeakLearnerRho(*a.kappa, *a.n, s, *a.sigma);
    ZcdpLedger ledger;
    for (std::int64_t t = 0; t < a.rounds; ++t) {
      ledger.Append(per_round, "round " + std::to_string(t));
    }
    rec["composition"] = {
        {"sigma", *a.sigma},
        {"s", s},
        {"rounds", a.rounds},
        {"per_round_rho", per_round},
        {"rho_total", ledger.rho_total()},
        {"epsilon", ZcdpToDp(ledger.rho_total(), a.delta).epsilon},
        {"epsilon_three_root", ThreeRootEpsilon(ledger.rho_total(), a.delta)}};
    any = true;
  }
  if (a.epsilon && have_kn) {
    const ApproxDpParams target = ApproxDpParams::Make(*a.epsilon, a.delta);
    const double sigma = CalibrateSigma(target, a.rounds, *a.kappa, *a.n);
    const double sigma_exact =
        CalibrateSigma(target, a.rounds, *a.kappa, *a.n, /*exact=*/true);
    const double kn = *a.kappa * static_cast<double>(*a.n);
    const double rho =
        static_cast<double>(a.rounds) *
        WeakLearnerRho(*a.kappa, *a.n, std::min(1.0, 1.0 / kn), sigma);
    rec["calibration"] = {
        {"epsilon_target", *a.epsilon},
        {"rounds", a.rounds},
        {"sigma", sigma},
        {"sigma_exact", sigma_exact},
        {"rho_total", rho},
        {"epsilon", ZcdpToDp(rho, a.delta).epsilon},
        {"epsilon_three_root", ThreeRootEpsilon(rho, a.delta)}};
    any = true;
  }
  if (a.alpha && a.beta && a.tau && a.epsilon) {
    rec["sample_bounds"] = {
        {"fat_shattering",
         BoundJson(FatShatteringBoundTerms(*a.alpha, *a.beta, *a.tau,
                                           *a.epsilon, a.delta),
                   RequiredNFatShattering(*a.alpha, *a.beta, *a.tau, *a.epsilon,
                                          a.delta))},
        {"privacy_only",
         BoundJson(PrivacyOnlyBoundTerms(*a.alpha, *a.beta, *a.tau, *a.epsilon,
                                         a.delta),
                   RequiredNPrivacyOnly(*a.alpha, *a.beta, *a.tau, *a.epsilon,
                                        a.delta))}};
    any = true;
  }
  if (!any) {
    throw Error(ErrorCode::kBadConfig,
                "nothing to compute: give --sigma, --epsilon with --kappa and "
                "--n, or --alpha --beta --tau --epsilon");
  }
  return rec;
}

// ------------------------------------------------------------ dispatch

template <typename T>
std::optional<T> IfGiven(const CLI::Option* opt, const T& value) {
  return opt->count() > 0 ? std::optional<T>(value) : std::nullopt;
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Private smooth boosting for large-margin halfspaces",
               "privboost"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a margin sample");
  GeneratorConfig gcfg;
  std::int64_t gen_test_n = 0;
  std::string gen_out;
  std::string gen_test_out;
  double gen_eta = 0.0;
  std::string gen_flips_out;
  std::uint64_t gen_seed_value = 0;
  gen->add_option("--d", gcfg.d, "Dimension")->required();
  gen->add_option("--n", gcfg.n, "Number of examples")->required();
  gen->add_option("--tau", gcfg.tau, "Margin")->required();
  auto* gen_seed = gen->add_option("--seed", gen_seed_value, "Seed");
  gen->add_option("--out", gen_out, "Output CSV")->required();
  gen->add_option("--test-n", gen_test_n,
                  "Extra held-out examples from the same target");
  gen->add_option("--test-out", gen_test_out, "Held-out CSV");
  gen->add_option("--eta", gen_eta, "Flip training labels with this rate");
  gen->add_option("--flips-out", gen_flips_out, "Flip mask CSV");

  // train
  auto* train = app.add_subcommand("train", "Train a private halfspace");
  TrainSettings ts;
  std::string train_out;
  std::string from_config;
  double eta_value = 0.0;
  double sigma_value = 0.0;
  double epsilon_value = 0.0;
  std::int64_t rounds_value = 0;
  std::uint64_t train_seed_value = 0;
  train->add_option("--data", ts.data, "Training CSV");
  train->add_option("--test-data", ts.test_data, "Held-out CSV");
  train->add_option("--alpha", ts.alpha, "Target error");
  train->add_option("--beta", ts.beta, "Failure probability");
  auto* tau_opt = train->add_option("--tau", ts.tau, "Margin");
  auto* eta_opt = train->add_option("--eta", eta_value, "Label noise rate");
  auto* train_seed = train->add_option("--seed", train_seed_value, "Seed");
  auto* sigma_opt = train->add_option("--sigma", sigma_value, "Noise scale");
  auto* eps_opt =
      train->add_option("--epsilon", epsilon_value, "Privacy target epsilon");
  train->add_option("--delta", ts.delta, "Privacy delta");
  train->add_option("--c", ts.c, "Constant in the noise formula");
  auto* rounds_opt = train->add_option("--rounds", rounds_value, "Rounds");
  train->add_flag("--strict-sample-size", ts.strict_sample_size,
                  "Fail when n is below the advisory minimum");
  train->add_option("--out", train_out, "Output JSON (default stdout)");
  auto* from_opt = train->add_option(
      "--from-config", from_config,
      "Re-run from a config echo (a record or its config object)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a trained model");
  std::string eval_model;
  std::string eval_data;
  std::string eval_out;
  eval->add_option("--model", eval_model, "Model JSON")->required();
  eval->add_option("--data", eval_data, "CSV")->required();
  eval->add_option("--out", eval_out, "Output JSON (default stdout)");

  // regret-sim
  auto* regret = app.add_subcommand("regret-sim", "Regret-bound campaign");
  RegretSimSettings rs;
  double lambda_value = 0.0;
  std::uint64_t regret_seed_value = 0;
  std::string regret_out;
  regret->add_option("--n", rs.n, "Rows");
  regret->add_option("--kappa", rs.kappa, "Density");
  auto* lambda_opt = regret->add_option(
      "--lambda", lambda_value, "Learning rate (random per trial if absent)");
  regret->add_option("--T", rs.rounds, "Rounds per trial");
  regret->add_option("--trials", rs.trials, "Trials");
  regret->add_option("--comparators", rs.comparators,
                     "Random dense comparators per trial");
  auto* regret_seed = regret->add_option("--seed", regret_seed_value, "Seed");
  regret->add_option("--out", regret_out, "Output JSON (default stdout)");

  // accountant
  auto* acct = app.add_subcommand("accountant", "Privacy arithmetic");
  AccountantSettings as;
  double a_kappa = 0, a_sigma = 0, a_s = 0, a_eps = 0, a_alpha = 0, a_beta = 0,
         a_tau = 0;
  std::int64_t a_n = 0;
  auto* ak = acct->add_option("--kappa", a_kappa, "Density");
  auto* an = acct->add_option("--n", a_n, "Sample size");
  acct->add_option("--rounds", as.rounds, "Rounds");
  auto* asg = acct->add_option("--sigma", a_sigma, "Noise scale");
  auto* ass = acct->add_option("--s", a_s, "Distribution distance");
  auto* ae = acct->add_option("--epsilon", a_eps, "Target epsilon");
  acct->add_option("--delta", as.delta, "Delta");
  auto* aa = acct->add_option("--alpha", a_alpha, "Target error");
  auto* ab = acct->add_option("--beta", a_beta, "Failure probability");
  auto* at = acct->add_option("--tau", a_tau, "Margin");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid of generated experiments");
  SweepSettings sw;
  std::vector<std::int64_t> g_n;
  std::vector<double> g_tau, g_alpha, g_eta, g_sigma;
  std::vector<std::uint64_t> g_seed;
  sweep->add_option("--d", sw.d, "Dimension");
  sweep->add_option("--n", g_n, "Sample sizes")->delimiter(',')->required();
  sweep->add_option("--tau", g_tau, "Margins")->delimiter(',')->required();
  sweep->add_option("--alpha", g_alpha, "Target errors")->delimiter(',');
  sweep->add_option("--eta", g_eta, "Noise rates")->delimiter(',');
  sweep->add_option("--sigma", g_sigma, "Noise scales")->delimiter(',');
  auto* sweep_seed =
      sweep->add_option("--seed", g_seed, "Seeds")->delimiter(',');
  sweep->add_option("--beta", sw.beta, "Failure probability");
  sweep->add_option("--test-n", sw.test_n, "Held-out examples per cell");
  sweep->add_option("--rounds", sw.rounds, "Rounds override");
  sweep->add_option("--delta", sw.delta, "Privacy delta");
  sweep->add_option("--c", sw.c, "Constant in the noise formula");
  sweep->add_option("--out-dir", sw.out_dir, "Output directory")->required();
  sweep->add_option("--jobs", sw.jobs, "Parallel cells");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  if (gen->parsed()) {
    gcfg.seed = ResolveSeed(gen_seed, gen_seed_value);
    if (gen_test_n < 0) throw Error(ErrorCode::kBadConfig, "--test-n < 0");
    if (gen_test_n > 0 && gen_test_out.empty()) {
      throw Error(ErrorCode::kBadConfig, "--test-n needs --test-out");
    }
    const std::int64_t n_train = gcfg.n;
    GeneratorConfig full = gcfg;
    full.n = gcfg.n + gen_test_n;
    const MarginSample all = GenerateMarginSample(full);
    LabeledSample train_set =
        Slice(all.sample, 0, static_cast<std::size_t>(n_train));
    std::size_t flipped = 0;
    if (gen_eta > 0.0) {
      NoisySample noisy = ApplyRcn(train_set, NoiseConfig{gen_eta, gcfg.seed});
      train_set = noisy.sample;
      flipped = noisy.flipped.size();
      if (!gen_flips_out.empty()) WriteFlipMask(noisy.flipped, gen_flips_out);
    } else if (!gen_flips_out.empty()) {
      WriteFlipMask({}, gen_flips_out);
    }
    const SampleHeader header{gcfg.d, gcfg.tau, gcfg.seed};
    WriteSample(train_set, gen_out, header);
    if (gen_test_n > 0) {
      WriteSample(Slice(all.sample, static_cast<std::size_t>(n_train),
                        all.sample.size()),
                  gen_test_out, header);
    }
    out << Json{{"task", "gen-data"},
                {"config",
                 {{"d", gcfg.d},
                  {"n", gcfg.n},
                  {"tau", gcfg.tau},
                  {"seed", gcfg.seed},
                  {"test_n", gen_test_n},
                  {"eta", gen_eta}}},
                {"out", gen_out},
                {"rows", n_train},
                {"flipped", flipped}}
               .dump(2)
        << "\n";
    return kExitOk;
  }

  if (train->parsed()) {
    Json echo;
    if (from_opt->count() > 0) {
      Json j;
      try {
        j = Json::parse(ReadFile(from_config));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::kParseError, e.what());
      }
      if (j.contains("config") && j.contains("task")) j = j["config"];
      ts = SettingsFromJson(j);
    } else {
      if (ts.data.empty())
        throw Error(ErrorCode::kBadConfig, "--data is required");
      if (tau_opt->count() == 0) {
        throw Error(ErrorCode::kBadConfig, "--tau is required");
      }
      ts.seed = ResolveSeed(train_seed, train_seed_value);
      ts.eta = IfGiven(eta_opt, eta_value);
      ts.sigma = IfGiven(sigma_opt, sigma_value);
      ts.epsilon = IfGiven(eps_opt, epsilon_value);
      ts.rounds = IfGiven(rounds_opt, rounds_value);
    }
    echo = SettingsToJson(ts);
    const LabeledSample data = ReadSample(ts.data);
    std::optional<LabeledSample> test;
    if (!ts.test_data.empty()) test = ReadSample(ts.test_data);
    Emit(TrainRecord(ts, data, test, std::move(echo)), train_out, out);
    return kExitOk;
  }

  if (eval->parsed()) {
    Json model;
    try {
      model = Json::parse(ReadFile(eval_model));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError, e.what());
    }
    if (!model.contains("model") || !model["model"].contains("z")) {
      throw Error(ErrorCode::kParseError, "model file lacks model.z");
    }
    const LinearHypothesis h(model["model"]["z"].get<std::vector<double>>());
    const LabeledSample data = ReadSample(eval_data);
    Emit(Json{{"task", "eval"},
              {"model", eval_model},
              {"data", eval_data},
              {"metrics",
               {{"n", data.size()},
                {"error", EmpiricalError(h, data)},
                {"min_margin", MinMargin(h, data)},
                {"z_norm", h.Norm()}}}},
         eval_out, out);
    return kExitOk;
  }

  if (regret->parsed()) {
    rs.lambda = IfGiven(lambda_opt, lambda_value);
    rs.seed = ResolveSeed(regret_seed, regret_seed_value);
    Emit(RegretSim(rs), regret_out, out);
    return kExitOk;
  }

  if (acct->parsed()) {
    as.kappa = IfGiven(ak, a_kappa);
    as.n = IfGiven(an, a_n);
    as.sigma = IfGiven(asg, a_sigma);
    as.s = IfGiven(ass, a_s);
    as.epsilon = IfGiven(ae, a_eps);
    as.alpha = IfGiven(aa, a_alpha);
    as.beta = IfGiven(ab, a_beta);
    as.tau = IfGiven(at, a_tau);
    if (as.rounds < 1) throw Error(ErrorCode::kBadConfig, "--rounds < 1");
    out << Accountant(as).dump(2) << "\n";
    return kExitOk;
  }

  if (sweep->parsed()) {
    if (g_alpha.empty()) g_alpha = {0.2};
    if (sweep_seed->count() == 0) g_seed = {ResolveSeed(sweep_seed, 0)};
    std::vector<std::optional<double>> etas, sigmas;
    for (double e : g_eta) etas.emplace_back(e);
    for (double s : g_sigma) sigmas.emplace_back(s);
    if (etas.empty()) etas.emplace_back(std::nullopt);
    if (sigmas.empty()) sigmas.emplace_back(std::nullopt);
    std::vector<Cell> cells;
    for (std::int64_t n : g_n) {
      for (double tau : g_tau) {
        for (double alpha : g_alpha) {
          for (const auto& eta : etas) {
            for (const auto& sigma : sigmas) {
              for (std::uint64_t seed : g_seed) {
                cells.push_back({n, tau, alpha, eta, sigma, seed});
              }
            }
          }
        }
      }
    }
    if (sw.test_n < 0 || sw.jobs < 1) {
      throw Error(ErrorCode::kBadConfig, "--test-n >= 0 and --jobs >= 1");
    }
    return RunSweep(sw, std::move(cells), out, err);
  }
  return kExitValidation;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  try {
    return Dispatch(args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return IsValidationError(e.code()) ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace privboost
