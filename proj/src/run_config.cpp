#include "gff/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gff {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view key, std::string_view origin) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(std::string(origin) + ": invalid value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

BasisSpec RunConfig::truncation() const {
  BasisSpec spec = default_basis_spec(dim == 3 ? 3 : 2);
  if (max_degree) spec.max_degree = *max_degree;
  if (max_radial) spec.max_radial = *max_radial;
  return spec;
}

std::vector<std::string> RunConfig::selected_suites() const {
  std::vector<std::string> out;
  if (suites.empty()) {
    for (const auto& s : registered_suites()) out.push_back(s.name);
  } else {
    out = suites;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SuiteContext RunConfig::suite_context() const {
  SuiteContext ctx;
  ctx.dim = dim;
  ctx.seed = seed;
  ctx.replicas = replicas;
  ctx.truncation = truncation();
  ctx.tolerances = tolerances;
  ctx.family_level = family_level;
  return ctx;
}

void RunConfig::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3, got " + std::to_string(dim));
  if (replicas < 2) throw ConfigError("replicas must be at least 2");
  if (!(family_level > 0.0 && family_level < 1.0)) throw ConfigError("family_level must lie in (0, 1)");
  if (max_degree && *max_degree < 0) throw ConfigError("truncation.max_degree must be non-negative");
  if (max_radial && *max_radial < 1) throw ConfigError("truncation.max_radial must be positive");
  try {
    truncation().validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid truncation: ") + e.what());
  }
  const auto& known = known_tolerances();
  for (const auto& [key, value] : tolerances) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown tolerance '" + key + "'");
    if (!std::isfinite(value) || value < 0.0)
      throw ConfigError("tolerance '" + key + "' must be a non-negative number");
  }
  for (const auto& name : suites)
    if (!find_suite(name)) throw ConfigError("unknown suite '" + name + "'");
}

nlohmann::ordered_json RunConfig::echo() const {
  const BasisSpec spec = truncation();
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["seed"] = seed;
  j["replicas"] = replicas;
  j["truncation"] = {{"max_degree", spec.max_degree}, {"max_radial", spec.max_radial}};
  j["suites"] = selected_suites();
  j["family_level"] = family_level;
  nlohmann::ordered_json tol = nlohmann::ordered_json::object();
  for (const auto& [key, value] : tolerances) tol[key] = value;
  j["tolerances"] = std::move(tol);
  return j;
}

std::string RunConfig::hash() const { return fnv1a_hex(echo().dump()); }

std::string RunConfig::provenance() const {
  const BasisSpec spec = truncation();
  return "seed=" + std::to_string(seed) + ", truncation=d=" + std::to_string(spec.dim) +
         ",N=" + std::to_string(spec.max_degree) + ",K=" + std::to_string(spec.max_radial) +
         ", config_hash=" + hash();
}

void apply_config_text(RunConfig& config, std::string_view text, std::string_view origin) {
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const auto bare = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (bare.empty()) throw ConfigError(where + ": empty key");
    const std::string key = section.empty() ? std::string(bare) : section + "." + std::string(bare);

    if (key == "dim") {
      config.dim = parse_number<int>(value, key, where);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, key, where);
    } else if (key == "replicas") {
      config.replicas = parse_number<std::size_t>(value, key, where);
    } else if (key == "suites") {
      config.suites = split_list(value);
    } else if (key == "out") {
      config.out_dir = std::string(value);
    } else if (key == "family_level") {
      config.family_level = parse_number<double>(value, key, where);
    } else if (key == "truncation.max_degree") {
      config.max_degree = parse_number<int>(value, key, where);
    } else if (key == "truncation.max_radial") {
      config.max_radial = parse_number<int>(value, key, where);
    } else if (key.starts_with("tolerances.")) {
      config.tolerances[key.substr(11)] = parse_number<double>(value, key, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

RunConfig load_config(const std::optional<std::filesystem::path>& file, const ConfigOverrides& overrides) {
  RunConfig config;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read config file " + file->string());
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(config, text.str(), file->string());
  }
  if (overrides.dim) config.dim = *overrides.dim;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.replicas) config.replicas = *overrides.replicas;
  if (overrides.suites) config.suites = *overrides.suites;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  config.validate();
  return config;
}

}  // namespace gff
