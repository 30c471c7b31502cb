#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace clab::config {

using Value = std::variant<double, std::string, std::vector<double>>;

// Flat "key = value" experiment description (TOML-compatible subset):
// numbers, bare or quoted strings, and bracketed comma lists of numbers.
// '#' starts a comment.
struct ExperimentConfig {
  std::string experiment;
  std::string output_path;
  std::uint64_t seed = 0;
  std::map<std::string, Value> parameters;

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> vector(const std::string& key) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace clab::config
