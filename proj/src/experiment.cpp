#include "bsubgrad/experiment.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "bsubgrad/problems.hpp"
#include "summary.hpp"

namespace bsubgrad {

using detail::BoundContext;
using detail::Json;

namespace {

constexpr std::uint64_t kDefaultRunIters = 100000;
constexpr std::uint64_t kDefaultSweepIters = 10000;

struct Prepared {
  Problem problem;
  ProxSetup prox = ProxSetup::euclidean_ball(1.0);
  std::string anchor_source;
  std::size_t n = 0;
};

Prepared prepare(const ExperimentConfig& cfg) {
  validate(cfg);
  Prepared p;
  if (cfg.problem == "ex1") {
    p.n = cfg.n.value_or(1000);
    p.problem = make_example1({p.n, cfg.radius, cfg.gamma});
  } else {
    Example2Params params;
    params.radius = cfg.radius;
    params.seed = cfg.anchor_seed;
    if (!cfg.anchors.empty()) {
      try {
        params.anchors = load_anchors(cfg.anchors);
      } catch (const std::exception& e) {
        throw ConfigError("anchors", e.what());
      }
      std::size_t file_dim = params.anchors.front().dim();
      if (cfg.n && *cfg.n != file_dim)
        throw ConfigError("anchors", "file has dimension " + std::to_string(file_dim) +
                                         " but n = " + std::to_string(*cfg.n));
      params.n = file_dim;
      p.anchor_source = "file:" + cfg.anchors;
    } else {
      params.n = cfg.n.value_or(1000);
      params.m = cfg.m;
      p.anchor_source = "sampled:ball(R/2),seed=" + std::to_string(cfg.anchor_seed);
    }
    p.n = params.n;
    try {
      p.problem = make_example2(params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("anchors", e.what());
    }
  }
  p.prox = ProxSetup::euclidean_ball(cfg.radius);
  return p;
}

RunOptions run_options(const ExperimentConfig& cfg, const InexactnessModel& model,
                       std::uint64_t iters, std::uint64_t seed) {
  RunOptions o;
  o.model = model;
  if (cfg.step_rule) o.rule_override = parse_step_rule(*cfg.step_rule);
  o.iterations = iters;
  o.seed = seed;
  o.log_every = cfg.log_every;
  o.direction = cfg.noise == "adversarial" ? NoiseDirection::Adversarial : NoiseDirection::Random;
  o.magnitude = cfg.magnitude == "uniform" ? NoiseMagnitude::Uniform : NoiseMagnitude::Worst;
  return o;
}

BoundContext bound_context(const ExperimentConfig& cfg, const Problem& pr, const RunRecord& rec) {
  BoundContext ctx;
  ctx.mu = pr.mu;
  ctx.model = rec.options.model;
  ctx.rule = rec.rule.kind;
  ctx.mode = parse_lipschitz_mode(cfg.lipschitz_mode);
  ctx.lipschitz = ctx.mode == LipschitzMode::Paper ? pr.lipschitz_paper : pr.lipschitz_analytic;
  return ctx;
}

Json problem_json(const ExperimentConfig& cfg, const Prepared& p) {
  Json j;
  j["name"] = p.problem.name;
  j["n"] = p.n;
  j["radius"] = cfg.radius;
  if (p.problem.name == "ex1") {
    j["gamma"] = cfg.gamma;
  } else {
    j["anchor_source"] = p.anchor_source;
  }
  j["mu"] = p.problem.mu;
  j["lipschitz_paper"] = p.problem.lipschitz_paper ? Json(*p.problem.lipschitz_paper) : Json(nullptr);
  j["lipschitz_analytic"] =
      p.problem.lipschitz_analytic ? Json(*p.problem.lipschitz_analytic) : Json(nullptr);
  if (p.problem.optimum) {
    j["f_star"] = p.problem.optimum->f_star;
    j["x_star"] = p.problem.optimum->x_star.data();
  }
  return j;
}

Json config_echo(const ExperimentConfig& cfg, const Prepared& p, std::uint64_t iters) {
  Json j;
  j["problem"] = cfg.problem;
  j["n"] = p.n;
  j["radius"] = cfg.radius;
  if (cfg.problem == "ex1") {
    j["gamma"] = cfg.gamma;
  } else {
    j["m"] = cfg.anchors.empty() ? Json(cfg.m) : Json(nullptr);
    j["anchors"] = cfg.anchors.empty() ? Json(nullptr) : Json(cfg.anchors);
    j["anchor_seed"] = cfg.anchor_seed;
  }
  j["prox"] = cfg.prox;
  j["oracle"] = cfg.oracle;
  j["noise"] = cfg.noise;
  j["magnitude"] = cfg.magnitude;
  j["step_rule_override"] = cfg.step_rule ? Json(*cfg.step_rule) : Json(nullptr);
  j["iters"] = iters;
  j["seed"] = cfg.seed;
  j["log_every"] = cfg.log_every;
  j["lipschitz_mode"] = cfg.lipschitz_mode;
  return j;
}

struct CellOutput {
  std::vector<std::vector<std::string>> rows;
  Json summary;
  bool bounds_ok = true;
};

// Runs one configuration and renders its rows and summary body.
CellOutput run_cell(const ExperimentConfig& cfg, const Prepared& p, const RunOptions& opts) {
  RunRecord rec = run(p.problem, p.prox, opts);
  BoundContext ctx = bound_context(cfg, p.problem, rec);

  CellOutput out;
  Json cps = Json::array();
  for (const Checkpoint& cp : rec.checkpoints) {
    BoundReport r = ctx.at(cp.sums, cp.k);
    out.rows.push_back(detail::csv_fields(cp, r));
    cps.push_back(detail::checkpoint_json(cp));
  }

  double f_star = p.problem.optimum ? p.problem.optimum->f_star : 0.0;
  auto violations = detail::validity_violations(rec.checkpoints, ctx, f_star);
  auto dominance = detail::dominance_violations(rec.checkpoints, ctx);
  out.bounds_ok = violations.empty();

  const Checkpoint& last = rec.checkpoints.back();
  Json s;
  s["run"] = detail::context_json(ctx);
  s["run"]["step_rule_overridden"] = rec.rule_overridden;
  s["run"]["noise"] = cfg.noise;
  s["run"]["magnitude"] = cfg.magnitude;
  s["seed"] = opts.seed;
  s["final"] = {{"n_iter", rec.iterations},
                {"f_avg", last.f_avg},
                {"gap_avg", last.gap_avg ? Json(*last.gap_avg) : Json(nullptr)},
                {"dist_avg", last.dist_avg ? Json(*last.dist_avg) : Json(nullptr)},
                {"bounds", detail::bounds_json(ctx.at(rec.sums, rec.iterations))}};
  s["aggregates"] = {{"s1", rec.sums.s1}, {"s2", rec.sums.s2}, {"s3", rec.sums.s3},
                     {"s4", rec.sums.s4}, {"s5", rec.sums.s5}, {"delta", rec.sums.delta}};
  s["checks"] = {{"validity", violations.empty()},
                 {"validity_violations", violations.size()},
                 {"dominance", dominance.empty()}};
  s["checkpoints"] = std::move(cps);
  out.summary = std::move(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("out", "cannot write '" + path + "'");
  f << text;
  if (!f) throw ConfigError("out", "write failed for '" + path + "'");
}

void finish_summary(Json& summary, const std::optional<double>& seconds) {
  if (seconds) summary["wall_clock_seconds"] = *seconds;
  summary["checksum"] = detail::checksum(summary);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

RunResult cmd_run(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Prepared p = prepare(cfg);
  std::uint64_t iters = cfg.iters.value_or(kDefaultRunIters);
  InexactnessModel model = InexactnessModel::parse(cfg.oracle);
  CellOutput cell = run_cell(cfg, p, run_options(cfg, model, iters, cfg.seed));

  RunResult res;
  res.csv_path = cfg.out.value_or("run.csv");
  res.summary_path = cfg.summary.value_or("run.json");
  res.bounds_ok = cell.bounds_ok;

  std::string csv = detail::csv_header() + "\n";
  for (const auto& row : cell.rows) csv += detail::join_csv(row) + "\n";

  Json summary;
  summary["format"] = detail::kRunFormat;
  summary["version"] = kVersion;
  summary["config"] = config_echo(cfg, p, iters);
  summary["outputs"] = {{"csv", res.csv_path}};
  summary["problem"] = problem_json(cfg, p);
  for (auto& [k, v] : cell.summary.items()) summary[k] = v;
  std::optional<double> seconds;
  if (cfg.timing)
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finish_summary(summary, seconds);

  write_text(res.csv_path, csv);
  write_text(res.summary_path, summary.dump(2) + "\n");
  return res;
}

RunResult cmd_sweep(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> alphas = split_list(cfg.alphas);
  std::vector<std::string> deltas = split_list(cfg.deltas);
  std::vector<std::string> seed_text = split_list(cfg.seeds);
  if (alphas.empty() && deltas.empty())
    throw ConfigError("alphas", "sweep needs a nonempty alpha or delta grid");
  if (seed_text.empty()) throw ConfigError("seeds", "sweep needs a nonempty seed list");

  struct Cell {
    std::string model_name;
    std::string value;
    std::uint64_t seed;
    InexactnessModel model;
  };
  std::vector<std::uint64_t> seeds;
  for (const auto& s : seed_text) {
    ExperimentConfig scratch;
    apply_setting(scratch, "seed", s);
    seeds.push_back(scratch.seed);
  }
  std::vector<Cell> cells;
  cells.push_back({"exact", "", seeds.front(), InexactnessModel::exact()});
  auto add_grid = [&](const std::vector<std::string>& values, const char* kind, const char* field) {
    for (const auto& v : values) {
      InexactnessModel model = InexactnessModel::exact();
      try {
        model = InexactnessModel::parse(std::string(kind) + ":" + v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
      }
      for (std::uint64_t s : seeds) cells.push_back({kind, v, s, model});
    }
  };
  add_grid(alphas, "relative", "alphas");
  add_grid(deltas, "absolute", "deltas");

  Prepared p = prepare(cfg);
  std::uint64_t iters = cfg.iters.value_or(kDefaultSweepIters);

  std::vector<CellOutput> outputs(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        outputs[i] = run_cell(cfg, p, run_options(cfg, cells[i].model, iters, cells[i].seed));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned nworkers = std::min<unsigned>(sweep_workers(cfg.workers),
                                         static_cast<unsigned>(cells.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < nworkers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunResult res;
  res.csv_path = cfg.out.value_or("sweep.csv");
  res.summary_path = cfg.summary.value_or("sweep.json");

  std::string csv = "model,value,seed," + detail::csv_header() + "\n";
  Json cell_json = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    std::string prefix = c.model_name + "," + c.value + "," + std::to_string(c.seed) + ",";
    for (const auto& row : outputs[i].rows) csv += prefix + detail::join_csv(row) + "\n";
    Json cj;
    cj["model"] = c.model_name;
    cj["value"] = c.value;
    for (auto& [k, v] : outputs[i].summary.items()) cj[k] = v;
    cell_json.push_back(std::move(cj));
    all_ok = all_ok && outputs[i].bounds_ok;
  }
  res.bounds_ok = all_ok;

  Json summary;
  summary["format"] = detail::kSweepFormat;
  summary["version"] = kVersion;
  Json echo = config_echo(cfg, p, iters);
  echo.erase("oracle");
  echo.erase("seed");
  echo["alphas"] = alphas;
  echo["deltas"] = deltas;
  echo["seeds"] = seeds;
  summary["config"] = std::move(echo);
  summary["outputs"] = {{"csv", res.csv_path}};
  summary["problem"] = problem_json(cfg, p);
  summary["cells"] = std::move(cell_json);
  summary["checks"] = {{"validity", all_ok}};
  std::optional<double> seconds;
  if (cfg.timing)
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finish_summary(summary, seconds);

  write_text(res.csv_path, csv);
  write_text(res.summary_path, summary.dump(2) + "\n");
  return res;
}

std::vector<ProblemDescription> list_problems() {
  return {
      {"ex1", "f(x) = ||x||_2 + 2 gamma ||x||_2^2 on the ball ||x||_2 <= R; mu = 2 gamma; "
              "flags: --n --radius --gamma"},
      {"ex2", "f(x) = max_i ||x - A_i||_2^2 on the ball ||x||_2 <= R; mu = 2; "
              "flags: --n --radius --m --anchor-seed | --anchors <file>"},
  };
}

}  // namespace bsubgrad
