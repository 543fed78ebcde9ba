// bsubgrad command-line front end. Links only the C API.

#include <cstdio>
#include <deque>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "bsubgrad/bsubgrad.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBoundViolation = 2;

struct ConfigHandle {
  bsg_config* cfg = nullptr;
  ConfigHandle() {
    if (bsg_config_new(&cfg) != BSG_OK) throw std::runtime_error(bsg_last_error());
  }
  ~ConfigHandle() { bsg_config_free(cfg); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
};

// Flag name -> value captured by CLI11, applied in declaration order.
struct Settings {
  std::string config_path;
  std::deque<std::pair<std::string, std::string>> values;
  bool timing = false;

  void add(CLI::App* app, const std::string& name, const std::string& help) {
    values.emplace_back(name, std::string());
    app->add_option("--" + name, values.back().second, help);
  }
};

void add_common(CLI::App* app, Settings& s) {
  app->add_option("--config", s.config_path, "key = value configuration file");
  s.add(app, "problem", "ex1 or ex2");
  s.add(app, "n", "dimension");
  s.add(app, "radius", "feasible ball radius R");
  s.add(app, "gamma", "Example 1 coefficient");
  s.add(app, "m", "Example 2 anchor count");
  s.add(app, "anchors", "Example 2 anchor file, one point per line");
  s.add(app, "anchor-seed", "seed for sampled anchors");
  s.add(app, "prox", "euclidean or entropy");
  s.add(app, "oracle", "exact | relative:<alpha> | absolute:<delta>");
  s.add(app, "noise", "random or adversarial");
  s.add(app, "magnitude", "worst or uniform");
  s.add(app, "step-rule", "exact or inexact (default: matched to the oracle)");
  s.add(app, "iters", "iteration count N");
  s.add(app, "seed", "oracle seed");
  s.add(app, "log-every", "checkpoint period");
  s.add(app, "lipschitz-mode", "paper or analytic");
  s.add(app, "out", "CSV path");
  s.add(app, "summary", "JSON summary path");
  app->add_flag("--timing", s.timing, "record wall-clock seconds in the summary");
}

void add_sweep(CLI::App* app, Settings& s) {
  s.add(app, "alphas", "comma-separated relative levels");
  s.add(app, "deltas", "comma-separated absolute levels");
  s.add(app, "seeds", "comma-separated seeds");
  s.add(app, "workers", "concurrent cells");
}

int report_error(const char* context) {
  std::string field = bsg_last_error_field();
  std::cerr << "bsubgrad " << context << ": " << bsg_last_error();
  if (!field.empty()) std::cerr << " [field: " << field << "]";
  std::cerr << "\n";
  return kExitError;
}

// Returns false and prints a diagnostic on failure.
bool build_config(const Settings& s, bsg_config* cfg, const char* context) {
  if (!s.config_path.empty() && bsg_config_load_file(cfg, s.config_path.c_str()) != BSG_OK) {
    report_error(context);
    return false;
  }
  for (const auto& [key, value] : s.values) {
    if (value.empty()) continue;
    if (bsg_config_set(cfg, key.c_str(), value.c_str()) != BSG_OK) {
      report_error(context);
      return false;
    }
  }
  if (s.timing && bsg_config_set(cfg, "timing", "true") != BSG_OK) {
    report_error(context);
    return false;
  }
  return true;
}

int execute(const Settings& s, bool sweep) {
  const char* name = sweep ? "sweep" : "run";
  ConfigHandle h;
  if (!build_config(s, h.cfg, name)) return kExitError;
  int ok = 1;
  bsg_status st = sweep ? bsg_cmd_sweep(h.cfg, &ok) : bsg_cmd_run(h.cfg, &ok);
  if (st != BSG_OK) return report_error(name);
  if (!ok) {
    std::cerr << "bsubgrad " << name << ": a certified bound was violated\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

void print_line(const char* line, void*) { std::printf("%s\n", line); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-free mirror descent with bound certification"};
  app.set_version_flag("--version", std::string(bsg_version()));
  app.require_subcommand(1);

  Settings run_settings;
  auto* run = app.add_subcommand("run", "single run: CSV trajectory and JSON summary");
  add_common(run, run_settings);

  Settings sweep_settings;
  auto* sweep = app.add_subcommand("sweep", "grid of inexact runs plus an exact baseline");
  add_common(sweep, sweep_settings);
  add_sweep(sweep, sweep_settings);

  std::string certify_path;
  auto* certify = app.add_subcommand("certify", "re-verify a JSON summary");
  certify->add_option("summary", certify_path, "summary file")->required();

  auto* list = app.add_subcommand("list-problems", "built-in objectives");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return execute(run_settings, false);
    if (*sweep) return execute(sweep_settings, true);
    if (*certify) {
      int passed = 0;
      if (bsg_cmd_certify(certify_path.c_str(), print_line, nullptr, &passed) != BSG_OK)
        return report_error("certify");
      std::fflush(stdout);
      return passed ? kExitOk : kExitError;
    }
    if (*list) {
      if (bsg_list_problems(print_line, nullptr) != BSG_OK) return report_error("list-problems");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "bsubgrad: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
