#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "bsubgrad/experiment.hpp"

namespace bsubgrad {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  return v;
}

double parse_real(const std::string& field, const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError(field, "expected a decimal number, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& field, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError(field, "expected true or false, got '" + text + "'");
}

void require_one_of(const std::string& field, const std::string& value,
                    std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string msg = "expected one of";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw ConfigError(field, msg + ", got '" + value + "'");
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  std::string value = trim(raw_value);

  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "n") {
    cfg.n = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "radius") {
    cfg.radius = parse_real(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_real(key, value);
  } else if (key == "m") {
    cfg.m = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "anchors") {
    cfg.anchors = value;
  } else if (key == "anchor-seed") {
    cfg.anchor_seed = parse_u64(key, value);
  } else if (key == "prox") {
    cfg.prox = value;
  } else if (key == "oracle") {
    cfg.oracle = value;
  } else if (key == "noise") {
    cfg.noise = value;
  } else if (key == "magnitude") {
    cfg.magnitude = value;
  } else if (key == "step-rule") {
    cfg.step_rule = value;
  } else if (key == "iters") {
    cfg.iters = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "log-every") {
    cfg.log_every = parse_u64(key, value);
  } else if (key == "lipschitz-mode") {
    cfg.lipschitz_mode = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "summary") {
    cfg.summary = value;
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, value);
  } else if (key == "alphas") {
    cfg.alphas = value;
  } else if (key == "deltas") {
    cfg.deltas = value;
  } else if (key == "seeds") {
    cfg.seeds = value;
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_u64(key, value));
  } else {
    throw ConfigError(key.empty() ? "config" : key, "unknown setting");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& cfg) {
  require_one_of("problem", cfg.problem, {"ex1", "ex2"});
  if (cfg.n && *cfg.n == 0) throw ConfigError("n", "must be >= 1");
  if (!(cfg.radius > 0.0)) throw ConfigError("radius", "must be positive");
  if (cfg.problem == "ex1" && !(cfg.gamma > 0.0)) throw ConfigError("gamma", "must be positive");
  if (cfg.problem == "ex2" && cfg.anchors.empty() && cfg.m == 0)
    throw ConfigError("m", "must be >= 1");
  require_one_of("prox", cfg.prox, {"euclidean", "entropy"});
  if (cfg.prox == "entropy")
    throw ConfigError("prox", "entropy requires a simplex feasible set; " + cfg.problem +
                                  " is posed on the Euclidean ball");
  try {
    (void)InexactnessModel::parse(cfg.oracle);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("oracle", e.what());
  }
  require_one_of("noise", cfg.noise, {"random", "adversarial"});
  require_one_of("magnitude", cfg.magnitude, {"worst", "uniform"});
  if (cfg.step_rule) require_one_of("step-rule", *cfg.step_rule, {"exact", "inexact"});
  if (cfg.iters && *cfg.iters == 0) throw ConfigError("iters", "must be >= 1");
  if (cfg.log_every == 0) throw ConfigError("log-every", "must be >= 1");
  require_one_of("lipschitz-mode", cfg.lipschitz_mode, {"paper", "analytic"});
  if (cfg.workers && *cfg.workers == 0) throw ConfigError("workers", "must be >= 1");
}

unsigned sweep_workers(std::optional<unsigned> requested) {
  unsigned w = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("BSUBGRAD_WORKERS")) {
    unsigned cap = 0;
    std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && ptr == text.data() + text.size() && cap > 0) w = std::min(w, cap);
  }
  return std::max(1u, w);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bsubgrad
