#include "summary.hpp"

#include <cmath>
#include <cstdio>

#include "bsubgrad/experiment.hpp"

namespace bsubgrad::detail {

namespace {

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> opt_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "k",
      "f_x",
      "f_avg",
      "gap_avg",
      "dist_avg",
      "grad_dual_norm",
      "noisy_grad_dual_norm",
      "bound_func_new",
      "bound_func_classical",
      "bound_dist_new",
      "bound_dist_classical",
      "bound_func_inexact",
      "bound_dist_inexact"};
  return cols;
}

std::string csv_header() { return join_csv(csv_columns()); }

std::vector<std::string> csv_fields(const Checkpoint& cp, const BoundReport& r) {
  return {std::to_string(cp.k),
          format_double(cp.f_x),
          format_double(cp.f_avg),
          opt_field(cp.gap_avg),
          opt_field(cp.dist_avg),
          format_double(cp.grad_dual_norm),
          opt_field(cp.noisy_grad_dual_norm),
          opt_field(r.func_new),
          opt_field(r.func_classical),
          opt_field(r.dist_new),
          opt_field(r.dist_classical),
          opt_field(r.func_inexact()),
          opt_field(r.dist_inexact())};
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

Json bounds_json(const BoundReport& r) {
  Json j;
  j["n_iter"] = r.n_iter;
  j["lipschitz_mode"] = to_string(r.lipschitz_mode);
  j["func_new"] = opt_json(r.func_new);
  j["func_classical"] = opt_json(r.func_classical);
  j["dist_new"] = opt_json(r.dist_new);
  j["dist_classical"] = opt_json(r.dist_classical);
  j["func_relative"] = opt_json(r.func_relative);
  j["func_absolute"] = opt_json(r.func_absolute);
  j["dist_relative"] = opt_json(r.dist_relative);
  j["dist_absolute"] = opt_json(r.dist_absolute);
  return j;
}

Json checkpoint_json(const Checkpoint& cp) {
  Json j;
  j["k"] = cp.k;
  j["f_x"] = cp.f_x;
  j["f_avg"] = cp.f_avg;
  j["gap_avg"] = opt_json(cp.gap_avg);
  j["dist_avg"] = opt_json(cp.dist_avg);
  j["grad_dual_norm"] = cp.grad_dual_norm;
  j["noisy_grad_dual_norm"] = opt_json(cp.noisy_grad_dual_norm);
  j["sums"] = Json::array({cp.sums.s1, cp.sums.s2, cp.sums.s3, cp.sums.s4, cp.sums.s5});
  return j;
}

Checkpoint checkpoint_from_json(const Json& j, double delta) {
  Checkpoint cp;
  cp.k = j.at("k").get<std::uint64_t>();
  cp.f_x = j.at("f_x").get<double>();
  cp.f_avg = j.at("f_avg").get<double>();
  cp.gap_avg = opt_from(j, "gap_avg");
  cp.dist_avg = opt_from(j, "dist_avg");
  cp.grad_dual_norm = j.at("grad_dual_norm").get<double>();
  cp.noisy_grad_dual_norm = opt_from(j, "noisy_grad_dual_norm");
  const Json& s = j.at("sums");
  if (!s.is_array() || s.size() != 5) throw std::runtime_error("checkpoint sums must have 5 entries");
  cp.sums = Aggregates{s[0].get<double>(), s[1].get<double>(), s[2].get<double>(),
                       s[3].get<double>(), s[4].get<double>(), delta};
  return cp;
}

Json context_json(const BoundContext& ctx) {
  Json j;
  j["mu"] = ctx.mu;
  j["model"] = ctx.model.to_string();
  j["step_rule"] = to_string(ctx.rule);
  j["lipschitz_mode"] = to_string(ctx.mode);
  j["lipschitz_used"] = opt_json(ctx.lipschitz);
  return j;
}

BoundContext context_from_json(const Json& j) {
  BoundContext ctx;
  ctx.mu = j.at("mu").get<double>();
  ctx.model = InexactnessModel::parse(j.at("model").get<std::string>());
  ctx.rule = parse_step_rule(j.at("step_rule").get<std::string>());
  ctx.mode = parse_lipschitz_mode(j.at("lipschitz_mode").get<std::string>());
  ctx.lipschitz = opt_from(j, "lipschitz_used");
  return ctx;
}

std::string checksum(const Json& payload) {
  std::string text = payload.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Violation> validity_violations(const std::vector<Checkpoint>& cps,
                                           const BoundContext& ctx, double f_star) {
  std::vector<Violation> out;
  for (const Checkpoint& cp : cps) {
    BoundReport r = ctx.at(cp.sums, cp.k);
    std::optional<double> fb = r.func_new ? r.func_new : r.func_inexact();
    std::optional<double> db = r.dist_new ? r.dist_new : r.dist_inexact();
    if (cp.gap_avg && fb && !within_bound(*cp.gap_avg, *fb, std::abs(f_star) + *fb))
      out.push_back({cp.k, "gap " + format_double(*cp.gap_avg) + " > bound " + format_double(*fb)});
    if (cp.dist_avg && db && !within_bound(*cp.dist_avg, *db, *db))
      out.push_back(
          {cp.k, "distance " + format_double(*cp.dist_avg) + " > bound " + format_double(*db)});
  }
  return out;
}

std::vector<Violation> dominance_violations(const std::vector<Checkpoint>& cps,
                                            const BoundContext& ctx) {
  std::vector<Violation> out;
  for (const Checkpoint& cp : cps) {
    BoundReport r = ctx.at(cp.sums, cp.k);
    if (r.func_new && r.func_classical && *r.func_new > *r.func_classical * (1.0 + 1e-12))
      out.push_back({cp.k, "function bound " + format_double(*r.func_new) + " > classical " +
                               format_double(*r.func_classical)});
    if (r.dist_new && r.dist_classical && *r.dist_new > *r.dist_classical * (1.0 + 1e-12))
      out.push_back({cp.k, "distance bound " + format_double(*r.dist_new) + " > classical " +
                               format_double(*r.dist_classical)});
  }
  return out;
}

}  // namespace bsubgrad::detail
