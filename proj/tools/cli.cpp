#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "asmooth/asmooth.h"

namespace asmooth::cli {

namespace {

using nlohmann::json;

// A failed library call or a command-level problem, carried to the exit code.
struct Failure {
  asm_status status;
  std::string message;
};

void check(asm_status status) {
  if (status != ASM_OK) throw Failure{status, asm_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{ASM_ERR_USAGE, message}; }

int exit_code(asm_status status) {
  switch (status) {
    case ASM_OK: return kSuccess;
    case ASM_ERR_USAGE:
    case ASM_ERR_IO:
    case ASM_ERR_PARSE: return kUsageOrIo;
    default: return kDomainFailure;
  }
}

struct ModelDeleter {
  void operator()(asm_model* m) const { asm_model_free(m); }
};
struct PolicyDeleter {
  void operator()(asm_policy* p) const { asm_policy_free(p); }
};
using Model = std::unique_ptr<asm_model, ModelDeleter>;
using Policy = std::unique_ptr<asm_policy, PolicyDeleter>;

std::string take(char* text) {
  std::string out = text ? text : "";
  asm_string_free(text);
  return out;
}

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

struct Config {
  std::string model = "grid";
  int horizon = -1;
  std::string objective = "smoother";
  int density = 5;
  double epsilon = 1e-4;
  std::string prune = "lp";
  std::string log_base = "e";
  std::size_t runs = 10000;
  std::uint64_t seed = 1;
  std::string out;
  bool exact = false;
  std::string trace;
  std::string variant = "miss-goal";
  std::vector<std::string> policies;
  std::vector<std::string> builtins;
  std::vector<int> densities{1, 2, 3, 4, 5};
};

asm_log_base log_base(const Config& c) { return c.log_base == "2" ? ASM_LOG_2 : ASM_LOG_E; }

asm_solve_options solve_options(const Config& c) {
  asm_solve_options o;
  asm_solve_options_init(&o);
  o.objective = c.objective == "belief-sum"   ? ASM_OBJECTIVE_BELIEF_SUM
                : c.objective == "costs-only" ? ASM_OBJECTIVE_COSTS_ONLY
                                              : ASM_OBJECTIVE_SMOOTHER;
  o.prune = c.prune == "none" ? ASM_PRUNE_NONE : c.prune == "pairwise" ? ASM_PRUNE_PAIRWISE : ASM_PRUNE_LP;
  o.density = c.density;
  o.epsilon = c.epsilon;
  o.log_base = log_base(c);
  return o;
}

// "grid" and "grid:miss-goal" name the built-in corridor whose terminal cost
// is paid outside the goal cell; "grid:at-goal" the one paid inside it.
Model open_model(const Config& c) {
  asm_model* raw = nullptr;
  if (c.model == "grid" || c.model == "grid:miss-goal")
    check(asm_model_grid_agent(ASM_GRID_MISS_GOAL, &raw));
  else if (c.model == "grid:at-goal")
    check(asm_model_grid_agent(ASM_GRID_AT_GOAL, &raw));
  else
    check(asm_model_load(c.model.c_str(), &raw));
  Model model(raw);
  if (c.horizon >= 0) check(asm_model_set_horizon(raw, c.horizon));
  return model;
}

Model valid_model(const Config& c) {
  Model model = open_model(c);
  char* report = nullptr;
  const asm_status status = asm_model_validate(model.get(), &report);
  const std::string text = take(report);
  if (status != ASM_OK) throw Failure{status, std::string(asm_last_error()) + "\n" + text};
  return model;
}

std::string fingerprint(const asm_model* model) {
  char* text = nullptr;
  check(asm_model_fingerprint(model, &text));
  return take(text);
}

std::vector<std::size_t> stage_sizes(const asm_policy* policy) {
  int horizon = 0;
  check(asm_policy_horizon(policy, &horizon));
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= horizon; ++k) {
    std::size_t n = 0;
    check(asm_policy_stage_size(policy, k, &n));
    sizes.push_back(n);
  }
  return sizes;
}

std::string join(const std::vector<std::size_t>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
  return out;
}

json config_json(const std::string& command, const Config& c, const asm_model* model) {
  json j;
  j["command"] = command;
  j["model"] = c.model;
  j["model_fingerprint"] = fingerprint(model);
  int horizon = 0;
  check(asm_model_dimensions(model, nullptr, nullptr, nullptr, &horizon));
  j["horizon"] = horizon;
  j["log_base"] = c.log_base;
  j["version"] = asm_version();
  return j;
}

void add_solver_config(json& j, const Config& c) {
  j["objective"] = c.objective;
  j["base_points"] = c.density;
  j["epsilon"] = c.epsilon;
  j["prune"] = c.prune;
}

void add_sampling_config(json& j, const Config& c) {
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["rng"] = asm_rng_description();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Failure{ASM_ERR_IO, "cannot write '" + path.string() + "'"};
  file << text;
  if (!file) throw Failure{ASM_ERR_IO, "write failed for '" + path.string() + "'"};
}

// Writes to --out when given, otherwise to stdout.
void emit(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out.empty())
    out << text;
  else
    write_file(c.out, text);
}

struct NamedPolicy {
  std::string name;
  Policy policy;
};

struct Row {
  std::string name;
  asm_metrics metrics;
};

const char* const kMetricsHeader =
    "policy,evaluation,runs,terminal_cost,terminal_cost_se,stage_cost,stage_cost_se,"
    "total_belief_entropy,total_belief_entropy_se,smoother_entropy,smoother_entropy_se,"
    "total_cost,total_cost_se\n";

std::string metrics_csv(const json& config, const std::vector<Row>& rows) {
  std::string text = "# config: " + config.dump() + "\n" + kMetricsHeader;
  for (const auto& row : rows) {
    const asm_metrics& m = row.metrics;
    text += row.name + "," + (m.exact ? "exact" : "monte-carlo") + "," + std::to_string(m.runs);
    for (const asm_estimate* e : {&m.terminal_cost, &m.stage_cost, &m.total_belief_entropy,
                                  &m.smoother_entropy, &m.total_cost})
      text += "," + fmt(e->mean) + "," + fmt(e->standard_error);
    text += "\n";
  }
  return text;
}

std::size_t builtin_control(const std::string& name) {
  if (name == "always-west") return 0;
  if (name == "always-stay") return 1;
  if (name == "always-east") return 2;
  const std::string prefix = "always-";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
      return std::stoul(digits);
  }
  usage("unknown built-in policy '" + name + "' (use always-west|always-stay|always-east|always-<control>)");
}

std::vector<NamedPolicy> collect_policies(const Config& c, const asm_model* model) {
  std::vector<NamedPolicy> out;
  const std::string model_fp = fingerprint(model);
  std::size_t n_controls = 0;
  check(asm_model_dimensions(model, nullptr, &n_controls, nullptr, nullptr));
  for (const auto& path : c.policies) {
    asm_policy* raw = nullptr;
    check(asm_policy_load(path.c_str(), &raw));
    Policy policy(raw);
    char* fp = nullptr;
    check(asm_policy_fingerprint(raw, &fp));
    const std::string policy_fp = take(fp);
    if (policy_fp != model_fp)
      throw Failure{ASM_ERR_CONFIGURATION, "policy '" + path + "' was solved for model " +
                                               policy_fp + ", not " + model_fp};
    out.push_back({std::filesystem::path(path).stem().string(), std::move(policy)});
  }
  for (const auto& name : c.builtins) {
    const std::size_t u = builtin_control(name);
    if (u >= n_controls) usage("built-in policy '" + name + "' needs control " + std::to_string(u));
    asm_policy* raw = nullptr;
    check(asm_policy_fixed_action(u, &raw));
    out.push_back({name, Policy(raw)});
  }
  if (out.empty()) usage("no policies given (use --policy or --builtin)");
  return out;
}

std::vector<Row> compare(const asm_model* model, const std::vector<NamedPolicy>& policies,
                         std::size_t runs, std::uint64_t seed, asm_log_base base) {
  std::vector<const asm_policy*> handles;
  for (const auto& p : policies) handles.push_back(p.policy.get());
  std::vector<asm_metrics> metrics(policies.size());
  check(asm_compare(model, handles.data(), handles.size(), runs, seed, base, metrics.data()));
  std::vector<Row> rows;
  for (std::size_t i = 0; i < policies.size(); ++i) rows.push_back({policies[i].name, metrics[i]});
  return rows;
}

std::vector<Row> exact_rows(const asm_model* model, const std::vector<NamedPolicy>& policies,
                            asm_log_base base) {
  std::vector<Row> rows;
  for (const auto& p : policies) {
    asm_metrics m{};
    check(asm_exact_metrics(model, p.policy.get(), base, &m));
    rows.push_back({p.name, m});
  }
  return rows;
}

json rollout(const asm_model* model, const asm_policy* policy, std::uint64_t seed,
             asm_log_base base, long initial_state) {
  char* text = nullptr;
  check(asm_rollout_json(model, policy, seed, base, initial_state, &text));
  return json::parse(take(text));
}

Policy solve(const asm_model* model, const asm_solve_options& options, std::ostream& log,
             const std::string& label) {
  const auto start = std::chrono::steady_clock::now();
  asm_policy* raw = nullptr;
  check(asm_solve(model, &options, &raw));
  Policy policy(raw);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs", seconds);
  log << label << ": stage sizes " << join(stage_sizes(raw), "/") << " (" << buf << ")\n";
  return policy;
}

// --- commands -------------------------------------------------------------

int cmd_validate(const Config& c, std::ostream& out) {
  Model model = open_model(c);
  char* report = nullptr;
  const asm_status status = asm_model_validate(model.get(), &report);
  const std::string text = take(report);
  if (status != ASM_OK) {
    if (status != ASM_ERR_CONFIGURATION) check(status);
    out << "invalid model\n" << text;
    return kDomainFailure;
  }
  std::size_t n = 0, u = 0, y = 0;
  int horizon = 0;
  check(asm_model_dimensions(model.get(), &n, &u, &y, &horizon));
  out << "valid: " << n << " states, " << u << " controls, " << y << " observations, horizon "
      << horizon << ", fingerprint " << fingerprint(model.get()) << "\n";
  return kSuccess;
}

int cmd_grid(const Config& c, std::ostream& out) {
  asm_model* raw = nullptr;
  check(asm_model_grid_agent(c.variant == "at-goal" ? ASM_GRID_AT_GOAL : ASM_GRID_MISS_GOAL, &raw));
  Model model(raw);
  if (c.horizon >= 0) check(asm_model_set_horizon(raw, c.horizon));
  char* text = nullptr;
  check(asm_model_to_json(raw, &text));
  emit(c, out, take(text) + "\n");
  return kSuccess;
}

int cmd_solve(const Config& c, std::ostream& out, std::ostream& err) {
  Model model = valid_model(c);
  Policy policy = solve(model.get(), solve_options(c), err, c.objective);
  if (c.out.empty()) {
    char* text = nullptr;
    check(asm_policy_to_json(policy.get(), &text));
    out << take(text) << "\n";
  } else {
    check(asm_policy_save(policy.get(), c.out.c_str()));
    out << "wrote " << c.out << " (stage sizes " << join(stage_sizes(policy.get()), "/") << ")\n";
  }
  return kSuccess;
}

void write_traces(const Config& c, const asm_model* model, const std::vector<NamedPolicy>& policies) {
  std::string text;
  const std::uint64_t seed = asm_derive_run_seed(c.seed, 0);
  for (const auto& p : policies) {
    json line = rollout(model, p.policy.get(), seed, log_base(c), -1);
    line["policy"] = p.name;
    text += line.dump() + "\n";
  }
  write_file(c.trace, text);
}

int cmd_simulate(const Config& c, std::ostream& out) {
  Model model = valid_model(c);
  const auto policies = collect_policies(c, model.get());
  if (c.runs == 0) usage("--runs must be positive");
  std::vector<Row> rows = compare(model.get(), policies, c.runs, c.seed, log_base(c));
  if (c.exact)
    for (auto& row : exact_rows(model.get(), policies, log_base(c))) rows.push_back(std::move(row));
  json config = config_json("simulate", c, model.get());
  add_sampling_config(config, c);
  config["policies"] = c.policies;
  config["builtins"] = c.builtins;
  emit(c, out, metrics_csv(config, rows));
  if (!c.trace.empty()) write_traces(c, model.get(), policies);
  return kSuccess;
}

int cmd_evaluate_exact(const Config& c, std::ostream& out) {
  Model model = valid_model(c);
  const auto policies = collect_policies(c, model.get());
  json config = config_json("evaluate-exact", c, model.get());
  config["policies"] = c.policies;
  config["builtins"] = c.builtins;
  emit(c, out, metrics_csv(config, exact_rows(model.get(), policies, log_base(c))));
  return kSuccess;
}

struct SweepRow {
  int density;
  asm_metrics metrics;
  std::vector<std::size_t> sizes;
};

// Exact evaluation when the enumeration fits, Monte Carlo otherwise.
asm_metrics evaluate(const asm_model* model, const asm_policy* policy, const Config& c) {
  asm_metrics m{};
  const asm_status status = asm_exact_metrics(model, policy, log_base(c), &m);
  if (status == ASM_ERR_SIZE_GUARD) {
    check(asm_monte_carlo(model, policy, c.runs, c.seed, log_base(c), &m));
    return m;
  }
  check(status);
  return m;
}

std::string sweep_csv(const json& config, const std::vector<SweepRow>& rows) {
  std::string text = "# config: " + config.dump() + "\n" +
                     "density,objective,objective_se,evaluation,smoother_entropy,"
                     "total_belief_entropy,terminal_cost,stage_sizes\n";
  for (const auto& r : rows) {
    const asm_metrics& m = r.metrics;
    text += std::to_string(r.density) + "," + fmt(m.total_cost.mean) + "," +
            fmt(m.total_cost.standard_error) + "," + (m.exact ? "exact" : "monte-carlo") + "," +
            fmt(m.smoother_entropy.mean) + "," + fmt(m.total_belief_entropy.mean) + "," +
            fmt(m.terminal_cost.mean) + "," + join(r.sizes, ";") + "\n";
  }
  return text;
}

std::vector<SweepRow> run_sweep(const asm_model* model, const Config& c, std::ostream& log,
                                const asm_policy* reuse = nullptr, int reuse_density = -1) {
  if (c.densities.empty()) usage("empty density list");
  std::vector<SweepRow> rows;
  for (int d : c.densities) {
    Policy owned;
    const asm_policy* policy = reuse;
    if (d != reuse_density || !reuse) {
      Config at = c;
      at.density = d;
      owned = solve(model, solve_options(at), log, c.objective + " d=" + std::to_string(d));
      policy = owned.get();
    }
    rows.push_back({d, evaluate(model, policy, c), stage_sizes(policy)});
  }
  return rows;
}

int cmd_sweep(const Config& c, std::ostream& out, std::ostream& err) {
  Model model = valid_model(c);
  const auto rows = run_sweep(model.get(), c, err);
  json config = config_json("sweep", c, model.get());
  add_solver_config(config, c);
  config.erase("base_points");
  config["densities"] = c.densities;
  add_sampling_config(config, c);
  emit(c, out, sweep_csv(config, rows));
  return kSuccess;
}

std::string realisations_csv(const json& config, const std::vector<std::pair<std::string, json>>& traces,
                             std::size_t n_states) {
  std::string text = "# config: " + config.dump() + "\n" + "policy,stage,state,observation,control";
  for (std::size_t i = 0; i < n_states; ++i) text += ",belief_" + std::to_string(i);
  text += ",belief_entropy\n";
  for (const auto& [name, t] : traces) {
    const auto& states = t["states"];
    for (std::size_t k = 0; k < states.size(); ++k) {
      text += name + "," + std::to_string(k) + "," + std::to_string(states[k].get<std::size_t>()) +
              "," + std::to_string(t["observations"][k].get<std::size_t>()) + ",";
      if (k < t["controls"].size()) text += std::to_string(t["controls"][k].get<std::size_t>());
      for (const auto& p : t["beliefs"][k]) text += "," + fmt(p.get<double>());
      text += "," + fmt(t["belief_entropies"][k].get<double>()) + "\n";
    }
  }
  return text;
}

// Full experiment on the built-in corridor: both planners, the fixed east
// policy, Monte Carlo and exact summaries, the density sweep and one example
// trajectory per policy.
int cmd_paper(Config c, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) c.out = "paper-output";
  const std::filesystem::path dir = c.out;
  Model model = valid_model(c);
  const asm_model* m = model.get();
  check(asm_model_save(m, (dir / "model.json").string().c_str()));

  Config active_config = c;
  active_config.objective = "smoother";
  Config belief_config = c;
  belief_config.objective = "belief-sum";
  std::vector<NamedPolicy> policies;
  policies.push_back({"active-smoothing", solve(m, solve_options(active_config), err, "active-smoothing")});
  policies.push_back({"belief-sum", solve(m, solve_options(belief_config), err, "belief-sum")});
  asm_policy* east = nullptr;
  check(asm_policy_fixed_action(2, &east));
  policies.push_back({"always-east", Policy(east)});
  check(asm_policy_save(policies[0].policy.get(), (dir / "policy_active_smoothing.json").string().c_str()));
  check(asm_policy_save(policies[1].policy.get(), (dir / "policy_belief_sum.json").string().c_str()));

  json config = config_json("paper", c, m);
  add_solver_config(config, c);
  config.erase("objective");
  add_sampling_config(config, c);

  const auto mc = compare(m, policies, c.runs, c.seed, log_base(c));
  write_file(dir / "table1.csv", metrics_csv(config, mc));
  const auto exact = exact_rows(m, policies, log_base(c));
  write_file(dir / "table1_exact.csv", metrics_csv(config, exact));

  Config sweep_config = active_config;
  const auto sweep = run_sweep(m, sweep_config, err, policies[0].policy.get(), c.density);
  json sweep_json = config;
  sweep_json["objective"] = "smoother";
  sweep_json["densities"] = c.densities;
  write_file(dir / "sweep.csv", sweep_csv(sweep_json, sweep));

  std::size_t n_states = 0;
  check(asm_model_dimensions(m, &n_states, nullptr, nullptr, nullptr));
  const long initial_state = n_states > 1 ? 1 : 0;
  const std::uint64_t trace_seed = asm_derive_run_seed(c.seed, 0);
  std::vector<std::pair<std::string, json>> traces;
  for (const auto& p : policies)
    traces.emplace_back(p.name, rollout(m, p.policy.get(), trace_seed, log_base(c), initial_state));
  json trace_config = config;
  trace_config["initial_state"] = initial_state;
  trace_config["trace_seed"] = trace_seed;
  write_file(dir / "realisations.csv", realisations_csv(trace_config, traces, n_states));

  json meta;
  meta["config"] = config;
  meta["stage_sizes"] = {{"active-smoothing", stage_sizes(policies[0].policy.get())},
                         {"belief-sum", stage_sizes(policies[1].policy.get())}};
  // Published cardinalities of Gamma_0..Gamma_2 from another solver; they
  // depend on pruning details and are listed only for comparison.
  meta["reference_stage_sizes"] = {{"active-smoothing", {158, 93, 46}},
                                   {"belief-sum", {438, 224, 46}}};
  meta["files"] = {"model.json", "policy_active_smoothing.json", "policy_belief_sum.json",
                   "table1.csv", "table1_exact.csv", "sweep.csv", "realisations.csv"};
  write_file(dir / "metadata.json", meta.dump(2) + "\n");

  out << "policy               smoother_H   belief_H   terminal   total\n";
  for (const auto& row : mc) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %10.4f %10.4f %10.4f %8.4f\n", row.name.c_str(),
                  row.metrics.smoother_entropy.mean, row.metrics.total_belief_entropy.mean,
                  row.metrics.terminal_cost.mean, row.metrics.total_cost.mean);
    out << line;
  }
  out << "wrote " << dir.string() << "/\n";
  return kSuccess;
}

void add_model_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--model", c.model,
                  "Model JSON file, or grid / grid:miss-goal / grid:at-goal for the built-in corridor")
      ->capture_default_str();
  cmd->add_option("--horizon", c.horizon, "Override the horizon (stationary stage costs only)");
  cmd->add_option("--log-base", c.log_base, "Entropy logarithm base")
      ->check(CLI::IsMember({"e", "2"}))
      ->capture_default_str();
}

void add_solver_options(CLI::App* cmd, Config& c, bool objective = true) {
  if (objective)
    cmd->add_option("--objective", c.objective)
        ->check(CLI::IsMember({"smoother", "belief-sum", "costs-only"}))
        ->capture_default_str();
  cmd->add_option("--base-points", c.density, "Base points per belief dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--epsilon", c.epsilon, "Interior offset of the base points")->capture_default_str();
  cmd->add_option("--prune", c.prune)
      ->check(CLI::IsMember({"none", "pairwise", "lp"}))
      ->capture_default_str();
}

void add_sampling_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--runs", c.runs, "Monte Carlo runs")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
}

void add_policy_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--policy", c.policies, "Policy file (repeatable)");
  cmd->add_option("--builtin", c.builtins,
                  "Fixed-action policy: always-west, always-stay, always-east or always-<control>");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Active smoothing: plan controls that make the state trajectory easy to reconstruct"};
  app.name(args.empty() ? "asmooth" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a model file");
  add_model_options(validate, c);

  auto* grid = app.add_subcommand("grid", "Write the built-in corridor model as JSON");
  grid->add_option("--variant", c.variant, "Terminal cost paid outside (miss-goal) or inside (at-goal) the goal cell")
      ->check(CLI::IsMember({"miss-goal", "at-goal"}))
      ->capture_default_str();
  grid->add_option("--horizon", c.horizon);
  grid->add_option("--out", c.out);

  auto* solve_cmd = app.add_subcommand("solve", "Compute an alpha-vector policy");
  add_model_options(solve_cmd, c);
  add_solver_options(solve_cmd, c);
  solve_cmd->add_option("--out", c.out, "Policy file (default: print JSON)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison of policies");
  add_model_options(simulate, c);
  add_policy_options(simulate, c);
  add_sampling_options(simulate, c);
  simulate->add_flag("--exact", c.exact, "Also evaluate every policy exactly");
  simulate->add_option("--trace", c.trace, "Write one trajectory per policy as JSON lines");
  simulate->add_option("--out", c.out, "CSV file (default: stdout)");

  auto* exact = app.add_subcommand("evaluate-exact", "Exact policy metrics by enumeration");
  add_model_options(exact, c);
  add_policy_options(exact, c);
  exact->add_option("--out", c.out, "CSV file (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "Objective of the solved policy for several base-point densities");
  add_model_options(sweep, c);
  add_solver_options(sweep, c);
  add_sampling_options(sweep, c);
  sweep->add_option("--densities", c.densities, "Comma-separated densities")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--out", c.out, "CSV file (default: stdout)");

  auto* paper = app.add_subcommand("paper", "Run the full corridor experiment");
  add_model_options(paper, c);
  add_solver_options(paper, c, false);
  add_sampling_options(paper, c);
  paper->add_option("--densities", c.densities, "Densities for the sweep")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  paper->add_option("--out", c.out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageOrIo;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (grid->parsed()) return cmd_grid(c, out);
    if (solve_cmd->parsed()) return cmd_solve(c, out, err);
    if (simulate->parsed()) return cmd_simulate(c, out);
    if (exact->parsed()) return cmd_evaluate_exact(c, out);
    if (sweep->parsed()) return cmd_sweep(c, out, err);
    if (paper->parsed()) return cmd_paper(c, out, err);
  } catch (const Failure& f) {
    err << "error (" << asm_status_name(f.status) << "): " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsageOrIo;
}

}  // namespace asmooth::cli
