// Copyright 2026 The istruct Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "istruct/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "istruct/common.h"
#include "istruct/csv.h"
#include "istruct/dynamics.h"
#include "istruct/equilibria.h"
#include "istruct/gpsr.h"
#include "istruct/info_graph.h"
#include "istruct/learner.h"
#include "istruct/model_io.h"
#include "istruct/planning.h"
#include "istruct/zoo.h"

namespace istruct {
namespace {

constexpr double kPsrTolerance = 1e-8;
constexpr double kFactorTolerance = 1e-9;
constexpr double kOomTolerance = 1e-8;

struct RunConfig {
  std::string subcommand;
  std::string model;
  std::string class_dir;
  std::string out;
  std::string summary;
  std::string binary;
  std::string expected;
  std::string kind;
  std::string params;
  double epsilon = 0.1;
  double delta = 0.1;
  int iters = 100;
  std::uint64_t seed = 0;
  int m = 1;
  double alpha_reveal = 0.1;
  std::int64_t budget_flag = 0;
  bool has_budget = false;
  std::string equilibrium = "cce";
  double alpha = 0.0, lambda = 0.0, beta = 0.0, p_min = 0.0;
  bool has_alpha = false, has_lambda = false, has_beta = false,
       has_p_min = false;
};

void WriteOutput(const std::string& path, const std::string& text,
                 std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError(path + ": cannot open for writing");
  file << text;
  if (!file) throw ValidationError(path + ": write failed");
}

PostModel LoadAnyPost(const std::string& path) {
  nlohmann::json doc = ReadJsonFile(path);
  try {
    if (IsGameDocument(doc)) return ParsePosg(doc).post();
    return ParsePost(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what(), e.variable_id());
  }
}

PosgModel LoadGame(const std::string& path) {
  nlohmann::json doc = ReadJsonFile(path);
  try {
    return ParsePosg(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what(), e.variable_id());
  }
}

// Model files of a class directory in filename order.
std::vector<std::string> ClassFiles(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw ValidationError(dir + ": not a directory");
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError(dir + ": no .json model files");
  return files;
}

std::string Names(const PostModel& model, const std::vector<int>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out += ' ';
    out += model.VariableLabel(vars[i]);
  }
  return out;
}

std::vector<int> OneBased(const std::vector<int>& vars) {
  std::vector<int> ids;
  for (int t : vars) ids.push_back(t + 1);
  return ids;
}

std::string Trajectory(const std::vector<int>& obs) {
  return JoinInts(obs);
}

int RunValidate(const RunConfig& c, std::ostream& out) {
  nlohmann::json doc = ReadJsonFile(c.model);
  nlohmann::json canonical;
  try {
    canonical = IsGameDocument(doc) ? ToJson(ParsePosg(doc))
                                    : ToJson(ParsePost(doc));
  } catch (const ValidationError& e) {
    throw ValidationError(c.model + ": " + e.what(), e.variable_id());
  }
  WriteOutput(c.out, CanonicalDump(canonical), out);
  return kExitOk;
}

int RunAnalyze(const RunConfig& c, std::int64_t budget, std::ostream& out) {
  PostModel model = LoadAnyPost(c.model);
  std::vector<Separator> seps = AllSeparators(model);
  std::vector<int> ranks(seps.size(), -1);
  if (model.joint_size() <= budget &&
      model.trajectory_space().size() <= budget) {
    for (const RankCheck& r : VerifyRankBound(model, budget)) {
      ranks[r.h] = r.numerical_rank;
    }
  }
  CsvTable table({"h", "t", "separator_ids", "separator_names",
                  "separator_size", "numerical_rank", "bound_satisfied"});
  for (const Separator& s : seps) {
    int t = s.h == 0 ? 0 : model.observable_variable(s.h - 1) + 1;
    bool known = ranks[s.h] >= 0;
    table.AddRow({std::to_string(s.h), std::to_string(t),
                  JoinInts(OneBased(s.vars)), Names(model, s.vars),
                  std::to_string(s.joint_size),
                  known ? std::to_string(ranks[s.h]) : "",
                  known ? FormatBool(ranks[s.h] <= s.joint_size) : ""});
  }
  WriteOutput(c.out, table.str(), out);
  return kExitOk;
}

int RunConstructPsr(const RunConfig& c, std::int64_t budget,
                    std::ostream& out) {
  PostModel model = LoadAnyPost(c.model);
  GpsrModel psr = ConstructGpsrFromPost(model, c.m, c.alpha_reveal, budget);
  std::vector<double> exact = DoTable(model, budget);
  std::vector<double> rebuilt = PsrDoTable(psr);
  double error = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    error = std::max(error, std::abs(exact[i] - rebuilt[i]));
  }
  GammaReport gamma = MeasureGamma(psr);
  CsvTable table({"h", "d", "separator_ids", "separator_size", "sigma",
                  "gated", "step_gamma", "reconstruction_error", "gamma",
                  "theorem_gamma"});
  for (int h = 0; h < psr.horizon(); ++h) {
    table.AddRow({std::to_string(h), std::to_string(psr.dims[h]),
                  JoinInts(OneBased(psr.separators[h].vars)),
                  std::to_string(psr.separators[h].joint_size),
                  FormatDouble(psr.sigmas[h]), FormatBool(psr.gated[h]),
                  FormatDouble(gamma.step_gamma[h]), FormatDouble(error),
                  FormatDouble(gamma.gamma), FormatDouble(gamma.theorem_gamma)});
  }
  WriteOutput(c.out, table.str(), out);
  if (!c.binary.empty()) {
    std::ostringstream bin(std::ios::binary);
    WriteGpsrBinary(psr, bin);
    std::ofstream file(c.binary, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError(c.binary + ": cannot open for writing");
    file << bin.str();
  }
  return kExitOk;
}

LearnerConfig MakeLearnerConfig(const RunConfig& c, std::int64_t budget) {
  LearnerConfig config;
  config.iterations = c.iters;
  config.m = c.m;
  config.epsilon = c.epsilon;
  config.delta = c.delta;
  config.seed = c.seed;
  config.budget = budget;
  if (c.has_alpha) config.alpha = c.alpha;
  if (c.has_lambda) config.lambda = c.lambda;
  if (c.has_beta) config.beta = c.beta;
  if (c.has_p_min) config.p_min = c.p_min;
  return config;
}

void AddParameterRows(CsvTable& summary, const LearnerParameters& p) {
  summary.AddRow({"p_min", FormatDouble(p.p_min)});
  summary.AddRow({"lambda", FormatDouble(p.lambda)});
  summary.AddRow({"alpha", FormatDouble(p.alpha)});
  summary.AddRow({"beta", FormatDouble(p.beta)});
  summary.AddRow({"gamma", FormatDouble(p.gamma)});
}

int RunLearn(const RunConfig& c, std::int64_t budget, std::ostream& out) {
  PostModel truth = LoadAnyPost(c.model);
  if (!truth.has_reward()) throw ValidationError(c.model + ": no reward");
  std::vector<PostModel> candidates;
  for (const std::string& f : ClassFiles(c.class_dir)) {
    candidates.push_back(LoadAnyPost(f));
  }
  HypothesisClass cls(std::move(candidates), c.m, c.alpha_reveal, budget);
  cls.MarkTruth(truth);
  Environment env(truth);
  LearnerConfig config = MakeLearnerConfig(c, budget);
  LearnResult r = UcbLearn(env, cls, config, truth.reward(), &truth);

  CsvTable table({"k", "h", "trajectory", "bonus", "confidence_size",
                  "estimate", "suboptimality", "truth_in_theta_min",
                  "tv_squared_sum", "hellinger_sum", "relaxed"});
  for (const IterationRecord& rec : r.trace) {
    for (int h = 0; h < truth.horizon(); ++h) {
      const Episode& e = r.dataset.steps[h][rec.k - 1];
      table.AddRow({std::to_string(rec.k), std::to_string(h + 1),
                    Trajectory(e.obs), FormatDouble(rec.bonus_value),
                    std::to_string(rec.confidence_size),
                    std::to_string(rec.estimate + 1),
                    FormatDouble(rec.suboptimality),
                    FormatBool(rec.truth_in_theta_min),
                    FormatDouble(rec.tv_squared_sum),
                    FormatDouble(rec.hellinger_sum), FormatBool(rec.relaxed)});
    }
  }
  WriteOutput(c.out, table.str(), out);
  if (!c.summary.empty()) {
    std::vector<double> truth_table = DoTable(truth, budget);
    std::vector<double> weights = Product(truth.reward(), truth_table);
    double optimal = PlanExhaustive(truth, weights, budget).value;
    double achieved = DeterministicValue(truth, r.policy, weights);
    CsvTable summary({"key", "value"});
    summary.AddRow({"terminated", FormatBool(r.terminated)});
    summary.AddRow({"iterations", std::to_string(r.iterations)});
    summary.AddRow({"chosen_iteration", std::to_string(r.chosen_iteration)});
    summary.AddRow({"estimate", std::to_string(r.estimate + 1)});
    summary.AddRow({"episodes", std::to_string(r.episodes)});
    summary.AddRow({"estimated_value", FormatDouble(r.estimated_value)});
    summary.AddRow({"true_value", FormatDouble(achieved)});
    summary.AddRow({"optimal_value", FormatDouble(optimal)});
    summary.AddRow({"suboptimality", FormatDouble(optimal - achieved)});
    summary.AddRow({"max_tv", FormatDouble(MaxPolicyTotalVariation(
                                  truth, cls.do_table(r.estimate), truth_table,
                                  budget))});
    AddParameterRows(summary, r.params);
    WriteOutput(c.summary, summary.str(), out);
  }
  return kExitOk;
}

int RunSelfPlay(const RunConfig& c, std::int64_t budget, std::ostream& out) {
  PosgModel truth = LoadGame(c.model);
  std::vector<PostModel> candidates;
  for (const std::string& f : ClassFiles(c.class_dir)) {
    candidates.push_back(LoadAnyPost(f));
  }
  HypothesisClass cls(std::move(candidates), c.m, c.alpha_reveal, budget);
  cls.MarkTruth(truth.post());
  Environment env(truth.post());
  EquilibriumKind kind;
  if (c.equilibrium == "cce") {
    kind = EquilibriumKind::kCce;
  } else if (c.equilibrium == "ne") {
    kind = EquilibriumKind::kNash;
  } else {
    throw ValidationError("unknown equilibrium kind '" + c.equilibrium + "'");
  }
  EquilibriumOptions options;
  options.budget = budget;
  SelfPlayResult r = SelfPlay(env, cls, truth, MakeLearnerConfig(c, budget),
                              kind, &truth, options);

  CsvTable table({"record", "agent", "seed", "probability", "policy",
                  "estimated_value", "estimated_best_response",
                  "estimated_gap", "true_value", "true_best_response",
                  "true_gap"});
  const SeededJointPolicy& pi = r.estimated.policy;
  const bool shared = pi.kind == EquilibriumKind::kCce;
  for (std::size_t s = 0; s < pi.seed_probs.size(); ++s) {
    for (std::size_t w = 0; w < pi.seed_probs[s].size(); ++w) {
      table.AddRow({"support", shared ? "" : std::to_string(s + 1),
                    std::to_string(w + 1), FormatDouble(pi.seed_probs[s][w]),
                    std::to_string(pi.seed_policies[s][w]), "", "", "", "", "",
                    ""});
    }
  }
  for (int i = 0; i < truth.num_agents(); ++i) {
    table.AddRow({"agent", std::to_string(i + 1), "", "", "",
                  FormatDouble(r.estimated.values[i]),
                  FormatDouble(r.estimated.best_responses[i]),
                  FormatDouble(r.estimated.gaps[i]),
                  FormatDouble(r.true_values[i]),
                  FormatDouble(r.true_best_responses[i]),
                  FormatDouble(r.true_gaps[i])});
  }
  WriteOutput(c.out, table.str(), out);
  if (!c.summary.empty()) {
    CsvTable summary({"key", "value"});
    summary.AddRow({"kind", KindName(kind)});
    summary.AddRow({"terminated", FormatBool(r.learn.terminated)});
    summary.AddRow({"iterations", std::to_string(r.learn.iterations)});
    summary.AddRow({"estimate", std::to_string(r.learn.estimate + 1)});
    summary.AddRow({"episodes", std::to_string(r.learn.episodes)});
    summary.AddRow({"estimated_epsilon",
                    FormatDouble(r.estimated.certified_epsilon)});
    summary.AddRow({"true_epsilon", FormatDouble(r.true_epsilon)});
    summary.AddRow({"exact_fallback", FormatBool(r.estimated.exact_fallback)});
    summary.AddRow({"max_tv", FormatDouble(r.max_tv)});
    summary.AddRow({"proof_chain_holds", FormatBool(r.proof_chain_holds)});
    AddParameterRows(summary, r.learn.params);
    WriteOutput(c.summary, summary.str(), out);
  }
  return kExitOk;
}

ZooParams ParseZooParams(const std::string& text, std::uint64_t seed) {
  ZooParams p;
  p.seed = seed;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("zoo parameter '" + item + "' is not key=value");
    }
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "noise") {
      try {
        std::size_t used = 0;
        p.noise = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ValidationError("zoo parameter 'noise' needs a number");
      }
      continue;
    }
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ValidationError("zoo parameter '" + key + "' needs an integer");
    }
    if (key == "agents") p.agents = static_cast<int>(v);
    else if (key == "states") p.states = static_cast<int>(v);
    else if (key == "observations") p.observations = static_cast<int>(v);
    else if (key == "actions") p.actions = static_cast<int>(v);
    else if (key == "horizon") p.horizon = static_cast<int>(v);
    else if (key == "memory") p.memory = static_cast<int>(v);
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(v);
    else throw ValidationError("unknown zoo parameter '" + key + "'");
  }
  return p;
}

int RunZoo(const RunConfig& c, std::ostream& out) {
  ZooEntry e = MakeExample(c.kind, ParseZooParams(c.params, c.seed));
  nlohmann::json doc = e.game ? ToJson(*e.game) : ToJson(e.model);
  WriteOutput(c.out, CanonicalDump(doc), out);
  if (!c.expected.empty()) {
    CsvTable table({"h", "label", "separator_ids", "separator_names"});
    for (const ExpectedSeparator& s : e.expected_separators) {
      table.AddRow({std::to_string(s.h), s.label, JoinInts(OneBased(s.vars)),
                    Names(e.model, s.vars)});
    }
    WriteOutput(c.expected, table.str(), out);
  }
  return kExitOk;
}

int RunVerify(const RunConfig& c, std::int64_t budget, std::ostream& out) {
  PostModel model = LoadAnyPost(c.model);
  CsvTable table({"check", "h", "value", "threshold", "pass"});
  bool ok = true;
  auto add = [&](const std::string& check, int h, double value,
                 double threshold, bool pass, bool required) {
    table.AddRow({check, h < 0 ? "" : std::to_string(h), FormatDouble(value),
                  FormatDouble(threshold), FormatBool(pass)});
    if (required && !pass) ok = false;
  };
  for (const RankCheck& r : VerifyRankBound(model, budget)) {
    add("rank_bound", r.h, r.numerical_rank,
        static_cast<double>(r.separator.joint_size), r.ok, true);
  }
  for (int h = 0; h <= model.horizon(); ++h) {
    Factorization f = FactorizeDynamics(model, h, budget);
    add("factorization", h, f.max_error, kFactorTolerance,
        f.max_error <= kFactorTolerance, true);
  }
  std::vector<double> exact = DoTable(model, budget);
  RevealingReport rev = WeaklyRevealingCheck(model, c.m, c.alpha_reveal, budget);
  add("weakly_revealing", -1, rev.min_sigma, c.alpha_reveal, rev.passed, false);
  if (rev.passed) {
    GpsrModel psr = ConstructGpsrFromPost(model, c.m, c.alpha_reveal, budget);
    std::vector<double> rebuilt = PsrDoTable(psr);
    double error = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      error = std::max(error, std::abs(exact[i] - rebuilt[i]));
    }
    add("psr_exactness", -1, error, kPsrTolerance, error <= kPsrTolerance,
        true);
  }
  OomModel oom = ConstructOom(model, budget);
  OomCheck check = CheckOom(oom, model, exact);
  add("oom_operator_norm", -1, check.max_operator_norm, 1.0 + 1e-9,
      check.max_operator_norm <= 1.0 + 1e-9, true);
  add("oom_b0_norm", -1, check.b0_norm, check.b0_bound,
      check.b0_norm <= check.b0_bound + 1e-9, true);
  add("oom_v_ratio", -1, check.max_v_ratio, 1.0 + 1e-9,
      check.max_v_ratio <= 1.0 + 1e-9, true);
  add("oom_recursion", -1, check.recursion_error, kOomTolerance,
      check.recursion_error <= kOomTolerance, true);
  add("oom_probability", -1, check.probability_error, kOomTolerance,
      check.probability_error <= kOomTolerance, true);
  WriteOutput(c.out, table.str(), out);
  return ok ? kExitOk : kExitValidation;
}

const char* kAnalyzeColumns =
    "CSV columns: h,t,separator_ids,separator_names,separator_size,"
    "numerical_rank,bound_satisfied. One row per boundary h = 0..H (past = "
    "first h observables); t is the 1-based id of the last past observable; "
    "ids are 1-based; rank columns are empty when the budget does not allow "
    "the dynamics matrices.";
const char* kPsrColumns =
    "CSV columns: h,d,separator_ids,separator_size,sigma,gated,step_gamma,"
    "reconstruction_error,gamma,theorem_gamma. One row per step h = 0..H-1. "
    "--binary writes the operators: magic ISTPSR01, int32 H, int32 m, int32 "
    "cards[H], int32 dims[H], then float64 psi_0, ops and final weights, "
    "row-major and little-endian.";
const char* kLearnColumns =
    "CSV columns: k,h,trajectory,bonus,confidence_size,estimate,"
    "suboptimality,truth_in_theta_min,tv_squared_sum,hellinger_sum,relaxed. "
    "One row per iteration k and exploration step h; estimate is the 1-based "
    "candidate in filename order. --summary writes key,value rows.";
const char* kSelfPlayColumns =
    "CSV columns: record,agent,seed,probability,policy,estimated_value,"
    "estimated_best_response,estimated_gap,true_value,true_best_response,"
    "true_gap. 'support' rows list seed values with their probability and "
    "deterministic policy index (a joint profile for cce, an agent policy for "
    "ne); 'agent' rows give per-agent values and gaps. --summary writes "
    "key,value rows.";
const char* kZooColumns =
    "Writes a canonical model file. --params takes key=value pairs from "
    "agents, states, observations, actions, horizon, memory, noise, seed. "
    "--expected writes CSV columns h,label,separator_ids,separator_names.";
const char* kVerifyColumns =
    "CSV columns: check,h,value,threshold,pass. Exit status 1 when a rank, "
    "factorization, representation or operator check fails; the "
    "weakly_revealing row is informational.";

}  // namespace

std::int64_t ResolveBudget(std::optional<std::int64_t> flag) {
  if (flag) {
    if (*flag <= 0) throw ValidationError("--budget must be positive");
    return *flag;
  }
  const char* env = std::getenv("ISTRUCT_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  std::string text(env);
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size() || v <= 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("ISTRUCT_BUDGET must be a positive integer, got '" +
                          text + "'");
  }
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  RunConfig c;
  CLI::App app{"Information-structure analysis, predictive representations "
               "and learning for sequential teams and games"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "istruct 1.0");

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "Model file (JSON)")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output path (default: stdout)");
  };
  std::vector<CLI::Option*> budget_opts;
  auto add_budget = [&](CLI::App* sub) {
    budget_opts.push_back(sub->add_option(
        "--budget", c.budget_flag,
        "Enumeration budget (overrides ISTRUCT_BUDGET)"));
  };
  auto add_reveal = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "Core test length")->default_val(1);
    sub->add_option("--alpha-reveal", c.alpha_reveal,
                    "Weakly-revealing threshold")
        ->default_val(0.1);
  };
  std::vector<CLI::Option*> alpha_opts, lambda_opts, beta_opts, pmin_opts;
  auto add_learning = [&](CLI::App* sub) {
    sub->add_option("--class-dir", c.class_dir,
                    "Directory of candidate model files")
        ->required();
    sub->add_option("--epsilon", c.epsilon, "Target accuracy")->default_val(0.1);
    sub->add_option("--delta", c.delta, "Failure probability")
        ->default_val(0.1);
    sub->add_option("--iters", c.iters, "Maximum iterations K")
        ->default_val(100);
    sub->add_option("--seed", c.seed, "Random seed")->default_val(0);
    sub->add_option("--summary", c.summary, "Summary CSV path");
    alpha_opts.push_back(sub->add_option("--alpha", c.alpha, "Bonus scale"));
    lambda_opts.push_back(
        sub->add_option("--lambda", c.lambda, "Covariance regularizer"));
    beta_opts.push_back(
        sub->add_option("--beta", c.beta, "Confidence set width"));
    pmin_opts.push_back(
        sub->add_option("--p-min", c.p_min, "Probability floor"));
  };

  CLI::App* validate = app.add_subcommand("validate", "Validate and echo a "
                                                      "canonical model file");
  add_model(validate);
  add_out(validate);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Information-structural states and rank bounds");
  add_model(analyze);
  add_out(analyze);
  add_budget(analyze);
  analyze->footer(kAnalyzeColumns);

  CLI::App* psr = app.add_subcommand(
      "construct-psr", "Build the predictive representation of a model");
  add_model(psr);
  add_out(psr);
  add_budget(psr);
  add_reveal(psr);
  psr->add_option("--binary", c.binary, "Binary operator dump path");
  psr->footer(kPsrColumns);

  CLI::App* learn = app.add_subcommand("learn", "UCB learning of a team "
                                                "policy");
  add_model(learn);
  add_out(learn);
  add_budget(learn);
  add_reveal(learn);
  add_learning(learn);
  learn->footer(kLearnColumns);

  CLI::App* selfplay =
      app.add_subcommand("selfplay", "UCB self-play for an equilibrium");
  add_model(selfplay);
  add_out(selfplay);
  add_budget(selfplay);
  add_reveal(selfplay);
  add_learning(selfplay);
  selfplay->add_option("--kind", c.equilibrium, "cce or ne")
      ->default_val("cce");
  selfplay->footer(kSelfPlayColumns);

  CLI::App* zoo = app.add_subcommand("zoo", "Emit an example model");
  zoo->add_option("kind", c.kind, "pomdp, dec_pomdp, limited_memory, "
                                  "mean_field, comm_feedback, "
                                  "fully_connected")
      ->required();
  zoo->add_option("--params", c.params, "key=value,... sizes");
  zoo->add_option("--seed", c.seed, "Kernel seed")->default_val(0);
  zoo->add_option("--expected", c.expected, "Expected separators CSV path");
  add_out(zoo);
  zoo->footer(kZooColumns);

  CLI::App* verify =
      app.add_subcommand("verify", "Check rank, representation and operator "
                                   "properties of a model");
  add_model(verify);
  add_out(verify);
  add_budget(verify);
  add_reveal(verify);
  verify->footer(kVerifyColumns);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (CLI::Option* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  };
  c.has_budget = given(budget_opts);
  c.has_alpha = given(alpha_opts);
  c.has_lambda = given(lambda_opts);
  c.has_beta = given(beta_opts);
  c.has_p_min = given(pmin_opts);

  try {
    std::int64_t budget = ResolveBudget(
        c.has_budget ? std::optional<std::int64_t>(c.budget_flag) : std::nullopt);
    if (validate->parsed()) return RunValidate(c, out);
    if (analyze->parsed()) return RunAnalyze(c, budget, out);
    if (psr->parsed()) return RunConstructPsr(c, budget, out);
    if (learn->parsed()) return RunLearn(c, budget, out);
    if (selfplay->parsed()) return RunSelfPlay(c, budget, out);
    if (zoo->parsed()) return RunZoo(c, out);
    if (verify->parsed()) return RunVerify(c, budget, out);
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConstructionRefused& e) {
    err << "error: construction refused: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Unsupported& e) {
    err << "error: unsupported: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace istruct
