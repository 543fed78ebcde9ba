#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "bsubgrad/experiment.hpp"
#include "summary.hpp"

namespace bsubgrad {

using detail::BoundContext;
using detail::Json;

namespace {

class Table {
 public:
  explicit Table(std::ostream& os) : os_(os) {}

  void pass(const std::string& name, const std::string& detail = {}) { line("PASS", name, detail); }
  void fail(const std::string& name, const std::string& detail) {
    failed_ = true;
    line("FAIL", name, detail);
  }
  void skip(const std::string& name, const std::string& detail) { line("SKIP", name, detail); }
  void check(bool ok, const std::string& name, const std::string& detail) {
    if (ok)
      pass(name);
    else
      fail(name, detail);
  }
  bool failed() const { return failed_; }

 private:
  void line(const char* tag, const std::string& name, const std::string& detail) {
    os_ << tag << "  " << name;
    if (!detail.empty()) os_ << "  (" << detail << ")";
    os_ << "\n";
  }

  std::ostream& os_;
  bool failed_ = false;
};

using CsvRows = std::map<std::string, std::vector<std::vector<std::string>>>;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Rows keyed by their leading `key_cols` fields joined with ','.
std::optional<CsvRows> read_csv(const std::string& path, std::size_t key_cols,
                                const std::string& expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  CsvRows rows;
  std::string line;
  if (!std::getline(in, line) || line != expected_header)
    throw std::runtime_error("CSV header mismatch in " + path);
  while (std::getline(in, line)) {
    auto f = split_fields(line);
    std::string key;
    for (std::size_t i = 0; i < key_cols && i < f.size(); ++i) key += (i ? "," : "") + f[i];
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(std::min(key_cols, f.size())));
    rows[key].push_back(std::move(f));
  }
  return rows;
}

std::string resolve_csv(const std::string& recorded, const std::string& summary_path) {
  namespace fs = std::filesystem;
  if (fs::exists(recorded)) return recorded;
  fs::path alt = fs::path(summary_path).parent_path() / fs::path(recorded).filename();
  return alt.string();
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void certify_cell(const Json& cell, const std::string& label, std::optional<double> f_star,
                  const std::vector<std::vector<std::string>>* csv_rows, Table& t) {
  BoundContext ctx = detail::context_from_json(cell.at("run"));
  const Json& agg_j = cell.at("aggregates");
  Aggregates agg{agg_j.at("s1").get<double>(), agg_j.at("s2").get<double>(),
                 agg_j.at("s3").get<double>(), agg_j.at("s4").get<double>(),
                 agg_j.at("s5").get<double>(), agg_j.at("delta").get<double>()};
  std::uint64_t n_iter = cell.at("final").at("n_iter").get<std::uint64_t>();

  std::vector<Checkpoint> cps;
  for (const Json& j : cell.at("checkpoints")) cps.push_back(detail::checkpoint_from_json(j, agg.delta));
  if (cps.empty()) {
    t.fail(label + "checkpoints", "record has no checkpoints");
    return;
  }

  // Aggregate consistency.
  {
    std::string why;
    for (std::size_t i = 1; i < cps.size() && why.empty(); ++i) {
      const Aggregates& a = cps[i - 1].sums;
      const Aggregates& b = cps[i].sums;
      if (cps[i].k <= cps[i - 1].k) why = "checkpoint k not increasing at " + std::to_string(cps[i].k);
      else if (b.s1 < a.s1 || b.s2 < a.s2 || b.s3 < a.s3 || b.s4 < a.s4 || b.s5 < a.s5)
        why = "aggregates decrease at k=" + std::to_string(cps[i].k);
    }
    if (why.empty() && !(cps.back().sums == agg)) why = "final aggregates differ from last checkpoint";
    if (why.empty() && cps.back().k != n_iter) why = "last checkpoint is not the final iteration";
    t.check(why.empty(), label + "aggregate-consistency", why);
  }

  // Stored final bounds against a recomputation from the sums.
  {
    Json recomputed = detail::bounds_json(ctx.at(agg, n_iter));
    t.check(recomputed == cell.at("final").at("bounds"), label + "final-bounds-recomputed",
            "stored bound values differ from recomputation");
  }

  if (csv_rows) {
    std::string why;
    if (csv_rows->size() != cps.size()) {
      why = "CSV has " + std::to_string(csv_rows->size()) + " rows, summary has " +
            std::to_string(cps.size()) + " checkpoints";
    }
    for (std::size_t i = 0; i < cps.size() && why.empty(); ++i) {
      auto expected = detail::csv_fields(cps[i], ctx.at(cps[i].sums, cps[i].k));
      if (expected != (*csv_rows)[i]) why = "row k=" + std::to_string(cps[i].k) + " differs";
    }
    t.check(why.empty(), label + "csv-bounds-recomputed", why);
  } else {
    t.skip(label + "csv-bounds-recomputed", "CSV not available");
  }

  BoundReport final_report = ctx.at(agg, n_iter);
  bool certified = final_report.func_new || final_report.func_inexact();
  if (!certified) {
    t.skip(label + "validity", "no bound certifies this model/step-rule pair");
  } else if (!f_star) {
    t.skip(label + "validity", "no reference optimum");
  } else {
    auto v = detail::validity_violations(cps, ctx, *f_star);
    t.check(v.empty(), label + "validity",
            v.empty() ? "" : "k=" + std::to_string(v.front().k) + ": " + v.front().what);
  }

  if (final_report.func_new && final_report.func_classical &&
      ctx.mode == LipschitzMode::Analytic) {
    auto v = detail::dominance_violations(cps, ctx);
    t.check(v.empty(), label + "dominance",
            v.empty() ? "" : "k=" + std::to_string(v.front().k) + ": " + v.front().what);
  } else {
    t.skip(label + "dominance", "needs exact model, exact steps and analytic constants");
  }

  bool zero_noise = ctx.model.param() == 0.0 && agg.delta == 0.0;
  if (ctx.rule == StepRuleKind::InexactTheorem && zero_noise) {
    double fr = bound_func_relative(agg, n_iter, ctx.mu, 0.0);
    double fa = bound_func_absolute(agg, n_iter, ctx.mu, 0.0);
    double dr = bound_dist_relative(agg, n_iter, ctx.mu, 0.0);
    double da = bound_dist_absolute(agg, n_iter, ctx.mu, 0.0);
    bool ok = close_rel(fr, fa, 1e-12) && close_rel(dr, da, 1e-12);
    t.check(ok, label + "reduction-consistency",
            "relative(0) " + format_double(fr) + " vs absolute(0) " + format_double(fa));
  } else {
    t.skip(label + "reduction-consistency", "needs a zero-noise model under inexact steps");
  }
}

}  // namespace

bool cmd_certify(const std::string& summary_path, std::ostream& report) {
  std::ifstream in(summary_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open summary '" + summary_path + "'");
  Json summary;
  try {
    summary = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::runtime_error("malformed summary '" + summary_path + "': " + e.what());
  }

  Table t(report);
  try {
    std::string format = summary.at("format").get<std::string>();
    if (format != detail::kRunFormat && format != detail::kSweepFormat)
      throw std::runtime_error("unknown summary format '" + format + "'");

    Json payload = summary;
    payload.erase("checksum");
    std::string stored = summary.at("checksum").get<std::string>();
    t.check(stored == detail::checksum(payload), "checksum", "content does not match " + stored);

    std::optional<double> f_star;
    const Json& prob = summary.at("problem");
    if (prob.contains("f_star")) f_star = prob.at("f_star").get<double>();

    std::string csv_path =
        resolve_csv(summary.at("outputs").at("csv").get<std::string>(), summary_path);

    if (format == detail::kRunFormat) {
      auto rows = read_csv(csv_path, 0, detail::csv_header());
      const std::vector<std::vector<std::string>>* cell_rows = rows ? &(*rows)[""] : nullptr;
      certify_cell(summary, "", f_star, cell_rows, t);
    } else {
      auto rows = read_csv(csv_path, 3, "model,value,seed," + detail::csv_header());
      std::size_t i = 0;
      for (const Json& cell : summary.at("cells")) {
        std::string key = cell.at("model").get<std::string>() + "," +
                          cell.at("value").get<std::string>() + "," +
                          std::to_string(cell.at("seed").get<std::uint64_t>());
        std::string label = "cell[" + std::to_string(i++) + " " + key + "] ";
        const std::vector<std::vector<std::string>>* cell_rows = nullptr;
        if (rows) cell_rows = &(*rows)[key];
        certify_cell(cell, label, f_star, cell_rows, t);
      }
    }
  } catch (const Json::exception& e) {
    throw std::runtime_error("malformed summary '" + summary_path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("malformed summary '" + summary_path + "': " + e.what());
  }
  return !t.failed();
}

}  // namespace bsubgrad
