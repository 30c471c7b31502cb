#include "core/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace clab::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

Value parse_value(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  if (v.empty()) fail(errc::schema_violation, "empty value at line " + std::to_string(line_no));
  if (v.front() == '[') {
    if (v.back() != ']') {
      fail(errc::schema_violation, "unterminated vector at line " + std::to_string(line_no));
    }
    std::vector<double> items;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string entry = trim(item);
      if (entry.empty()) continue;
      double num;
      if (!parse_number(entry, num)) {
        fail(errc::schema_violation,
             "non-numeric vector entry '" + entry + "' at line " + std::to_string(line_no));
      }
      items.push_back(num);
    }
    return items;
  }
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  double num;
  if (parse_number(v, num)) return num;
  return v;  // bare string
}

}  // namespace

bool ExperimentConfig::has(const std::string& key) const { return parameters.count(key) > 0; }

double ExperimentConfig::number(const std::string& key) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) fail(errc::schema_violation, "missing required key '" + key + "'");
  if (const double* d = std::get_if<double>(&it->second)) return *d;
  fail(errc::schema_violation, "key '" + key + "' must be a number");
}

double ExperimentConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ExperimentConfig::integer(const std::string& key) const {
  const double d = number(key);
  const long v = static_cast<long>(std::llround(d));
  if (std::abs(d - static_cast<double>(v)) > 1e-9) {
    fail(errc::schema_violation, "key '" + key + "' must be an integer");
  }
  return v;
}

long ExperimentConfig::integer_or(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ExperimentConfig::text(const std::string& key) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) fail(errc::schema_violation, "missing required key '" + key + "'");
  if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
  fail(errc::schema_violation, "key '" + key + "' must be a string");
}

std::string ExperimentConfig::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

std::vector<double> ExperimentConfig::vector(const std::string& key) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) fail(errc::schema_violation, "missing required key '" + key + "'");
  if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
  if (const double* d = std::get_if<double>(&it->second)) return {*d};  // singleton promotion
  fail(errc::schema_violation, "key '" + key + "' must be a vector");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(errc::schema_violation, "expected 'key = value' at line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(errc::schema_violation, "empty key at line " + std::to_string(line_no));
    const Value value = parse_value(line.substr(eq + 1), line_no);
    if (key == "experiment") {
      if (const std::string* s = std::get_if<std::string>(&value)) {
        config.experiment = *s;
      } else {
        fail(errc::schema_violation, "'experiment' must be a string");
      }
    } else if (key == "output_path") {
      if (const std::string* s = std::get_if<std::string>(&value)) {
        config.output_path = *s;
      } else {
        fail(errc::schema_violation, "'output_path' must be a string");
      }
    } else if (key == "seed") {
      if (const double* d = std::get_if<double>(&value)) {
        if (*d < 0.0) fail(errc::schema_violation, "'seed' must be a nonnegative integer");
        config.seed = static_cast<std::uint64_t>(*d);
      } else {
        fail(errc::schema_violation, "'seed' must be a nonnegative integer");
      }
    } else {
      config.parameters[key] = value;
    }
  }
  if (config.experiment.empty()) {
    fail(errc::schema_violation, "missing required key 'experiment'");
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_failure, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace clab::config
