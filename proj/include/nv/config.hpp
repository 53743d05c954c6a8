#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace nv {

// Schema violations: unknown keys, type mismatches, malformed documents.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string command;
  nlohmann::json params;  // fully resolved parameter tree
  std::string out_path;   // empty writes to stdout only
  std::string format = "csv";
};

const std::vector<std::string>& known_commands();
const std::vector<std::string>& known_presets();

// Complete default parameter tree; doubles as the strict schema.
nlohmann::json command_defaults(const std::string& command);

// Named parameter fragment, validated against the command schema.
nlohmann::json preset_overlay(const std::string& preset,
                              const std::string& command);

// Validates every key of `user` against the shape of `schema`.
void validate_params(const nlohmann::json& user, const nlohmann::json& schema,
                     const std::string& path = "");

// Single JSON document {command, preset?, params?, out?, format?}.
RunConfig parse_config(const std::string& text);

// Flag-driven construction; `sets` holds dot-path=value overrides.
RunConfig make_run_config(const std::string& command, const std::string& preset,
                          const std::vector<std::string>& sets,
                          const std::string& out_path,
                          const std::string& format);

// Canonical form: sorted keys, resolved params, trailing newline.
std::string emit_config(const RunConfig& rc);

// FNV-1a over the canonical form, 16 hex digits.
std::string inputs_hash(const RunConfig& rc);

}  // namespace nv
