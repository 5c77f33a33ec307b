#include "asmooth/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "asmooth/error.hpp"
#include "asmooth/solver.hpp"

namespace asmooth {

using nlohmann::json;

namespace {

Vector vector_from(const json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError(name + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(name + ": expected numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError(name + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(name + ": ragged rows");
    m.row(static_cast<Eigen::Index>(r)) = vector_from(j[r], name).transpose();
  }
  return m;
}

std::vector<Matrix> matrices_from(const json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError(name + ": expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(matrix_from(j[k], name + "[" + std::to_string(k) + "]"));
  return out;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

std::size_t count_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() <= 0)
    throw ParseError(std::string(key) + ": expected a positive integer");
  return doc[key].get<std::size_t>();
}

int array_depth(const json& j) {
  int depth = 0;
  const json* cur = &j;
  while (cur->is_array() && !cur->empty()) {
    ++depth;
    cur = &(*cur)[0];
  }
  return depth;
}

std::string log_base_name(LogBase base) { return base == LogBase::kTwo ? "2" : "e"; }

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::kNatural;
  if (text == "2") return LogBase::kTwo;
  throw ParseError("log_base: expected \"e\" or \"2\"");
}

}  // namespace

namespace {

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw ParseError("model file: expected a JSON object");
  Problem p;
  ControlledHmm& m = p.model;
  m.n_states = count_field(doc, "n_states");
  m.n_controls = count_field(doc, "n_controls");
  m.n_observations = count_field(doc, "n_observations");
  for (const char* key : {"prior", "transition", "observation", "stage_cost", "terminal_cost", "horizon"})
    if (!doc.contains(key)) throw ParseError(std::string("model file: missing field '") + key + "'");
  m.prior = vector_from(doc["prior"], "prior");
  m.transition = matrices_from(doc["transition"], "transition");
  m.observation = matrices_from(doc["observation"], "observation");
  if (doc.contains("initial_observation")) {
    m.initial_observation = matrix_from(doc["initial_observation"], "initial_observation");
  } else {
    const std::size_t fallback = doc.value("default_control", std::size_t{0});
    if (fallback >= m.observation.size())
      throw ParseError("default_control: no observation kernel for control " + std::to_string(fallback));
    m.initial_observation = m.observation[fallback];
  }

  CostModel& c = p.costs;
  if (!doc["horizon"].is_number_integer() || doc["horizon"].get<long long>() < 0)
    throw ParseError("horizon: expected a nonnegative integer");
  c.horizon = doc["horizon"].get<int>();
  const json& stage = doc["stage_cost"];
  if (array_depth(stage) == 3)
    c.stage_cost = matrices_from(stage, "stage_cost");
  else
    c.stage_cost = {matrix_from(stage, "stage_cost")};
  c.terminal_cost = vector_from(doc["terminal_cost"], "terminal_cost");
  return p;
}

}  // namespace

Problem problem_from_json(const json& doc) {
  try {
    return parse_problem(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

json problem_to_json(const Problem& problem) {
  const ControlledHmm& m = problem.model;
  const CostModel& c = problem.costs;
  json doc;
  doc["n_states"] = m.n_states;
  doc["n_controls"] = m.n_controls;
  doc["n_observations"] = m.n_observations;
  doc["prior"] = to_json(m.prior);
  doc["transition"] = json::array();
  for (const auto& a : m.transition) doc["transition"].push_back(to_json(a));
  doc["observation"] = json::array();
  for (const auto& b : m.observation) doc["observation"].push_back(to_json(b));
  doc["initial_observation"] = to_json(m.initial_observation);
  if (c.stage_cost.size() == 1) {
    doc["stage_cost"] = to_json(c.stage_cost.front());
  } else {
    doc["stage_cost"] = json::array();
    for (const auto& t : c.stage_cost) doc["stage_cost"].push_back(to_json(t));
  }
  doc["terminal_cost"] = to_json(c.terminal_cost);
  doc["horizon"] = c.horizon;
  return doc;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

}  // namespace

Problem load_problem(const std::filesystem::path& path) {
  return problem_from_json(parse_json(read_text(path), path.string()));
}

void save_problem(const std::filesystem::path& path, const Problem& problem) {
  write_text(path, problem_to_json(problem).dump(2) + "\n");
}

std::string model_fingerprint(const Problem& problem) {
  const std::string canonical = problem_to_json(problem).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json policy_to_json(const ValuePolicy& policy) {
  json doc;
  doc["format"] = "asmooth-policy";
  doc["version"] = 1;
  doc["objective"] = to_string(policy.objective);
  doc["log_base"] = log_base_name(policy.log_base);
  doc["density"] = policy.density;
  doc["epsilon"] = policy.epsilon;
  doc["prune"] = to_string(policy.prune);
  doc["model_fingerprint"] = policy.model_fingerprint;
  doc["stages"] = json::array();
  for (const auto& stage : policy.stages) {
    json vectors = json::array();
    for (const auto& alpha : stage) {
      json entry;
      entry["values"] = to_json(alpha.values);
      entry["action"] = alpha.action ? json(*alpha.action) : json(nullptr);
      vectors.push_back(std::move(entry));
    }
    doc["stages"].push_back(std::move(vectors));
  }
  return doc;
}

ValuePolicy policy_from_json(const json& doc) {
  try {
    if (!doc.is_object() || doc.value("format", "") != "asmooth-policy")
      throw ParseError("policy file: missing format tag 'asmooth-policy'");
    ValuePolicy policy;
    policy.objective = parse_objective(doc.at("objective").get<std::string>());
    policy.log_base = parse_log_base(doc.at("log_base").get<std::string>());
    policy.density = doc.at("density").get<int>();
    policy.epsilon = doc.at("epsilon").get<double>();
    policy.prune = parse_prune_mode(doc.at("prune").get<std::string>());
    policy.model_fingerprint = doc.at("model_fingerprint").get<std::string>();
    for (const auto& stage : doc.at("stages")) {
      AlphaSet set;
      for (const auto& entry : stage) {
        AlphaVector alpha{vector_from(entry.at("values"), "values"), std::nullopt};
        if (!entry.at("action").is_null()) alpha.action = entry.at("action").get<std::size_t>();
        set.push_back(std::move(alpha));
      }
      if (set.empty()) throw ParseError("policy file: empty stage");
      policy.stages.push_back(std::move(set));
    }
    if (policy.stages.empty()) throw ParseError("policy file: no stages");
    return policy;
  } catch (const json::exception& e) {
    throw ParseError(std::string("policy file: ") + e.what());
  } catch (const UsageError& e) {
    throw ParseError(std::string("policy file: ") + e.what());
  }
}

ValuePolicy load_policy(const std::filesystem::path& path) {
  return policy_from_json(parse_json(read_text(path), path.string()));
}

void save_policy(const std::filesystem::path& path, const ValuePolicy& policy) {
  write_text(path, policy_to_json(policy).dump(1) + "\n");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace asmooth
