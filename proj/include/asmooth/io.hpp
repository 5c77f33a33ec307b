#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "asmooth/model.hpp"

namespace asmooth {

struct ValuePolicy;

// Model files: n_states, n_controls, n_observations, prior, transition
// (per control, entry [i][j] = p(i | j, u)), observation (per control, N x |Y|),
// optional initial_observation (defaults to observation[default_control],
// default_control defaulting to 0), stage_cost (N x |U| or T x N x |U|),
// terminal_cost, horizon.
Problem problem_from_json(const nlohmann::json& doc);
nlohmann::json problem_to_json(const Problem& problem);
Problem load_problem(const std::filesystem::path& path);
void save_problem(const std::filesystem::path& path, const Problem& problem);

// FNV-1a 64-bit hash of the canonical model JSON, as 16 hex digits.
std::string model_fingerprint(const Problem& problem);

nlohmann::json policy_to_json(const ValuePolicy& policy);
ValuePolicy policy_from_json(const nlohmann::json& doc);
ValuePolicy load_policy(const std::filesystem::path& path);
void save_policy(const std::filesystem::path& path, const ValuePolicy& policy);

// 17 significant digits; round-trips every finite double.
std::string format_double(double value);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace asmooth
