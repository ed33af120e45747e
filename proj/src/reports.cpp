#include "expander/reports.hpp"

#include <cmath>
#include <string>

#include "expander/errors.hpp"
#include "expander/format.hpp"

namespace expander {

namespace {

Json json_rational_part(const std::optional<Rational>& r, bool numerator) {
  if (!r) return nullptr;
  return numerator ? r->numerator() : r->denominator();
}

Json json_opt_real(const std::optional<double>& x) { return x ? json_real(*x) : Json(nullptr); }

Json json_girth(const Girth& g) { return g ? Json(*g) : Json(nullptr); }

Json json_rational(const std::optional<Rational>& r) {
  return r ? Json(format_rational(r)) : Json(nullptr);
}

std::optional<Rational> rational_from(const Json& num, const Json& den) {
  if (num.is_null() || den.is_null()) return std::nullopt;
  return Rational(num.get<std::int64_t>(), den.get<std::int64_t>());
}

std::optional<double> real_from(const Json& x) {
  if (x.is_null()) return std::nullopt;
  return x.get<double>();
}

}  // namespace

Json json_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_real(x));
}

Json to_json(const MetricsReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["max_degree"] = r.max_degree;
  j["h_exact_num"] = json_rational_part(r.h_exact, true);
  j["h_exact_den"] = json_rational_part(r.h_exact, false);
  j["conductance_num"] = json_rational_part(r.conductance_exact, true);
  j["conductance_den"] = json_rational_part(r.conductance_exact, false);
  j["lambda2"] = json_opt_real(r.lambda2);
  j["rho_star"] = json_opt_real(r.rho_star);
  j["gap"] = json_opt_real(r.gap);
  j["girth"] = json_girth(r.girth);
  j["girth_unbounded"] = !r.girth.has_value();
  j["diameter"] = r.diameter ? Json(*r.diameter) : Json(nullptr);
  j["diameter_disconnected"] = !r.diameter.has_value();
  return j;
}

MetricsReport metrics_from_json(const Json& j) {
  try {
    MetricsReport r;
    r.n = j.at("n").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.max_degree = j.at("max_degree").get<std::size_t>();
    r.h_exact = rational_from(j.at("h_exact_num"), j.at("h_exact_den"));
    r.conductance_exact = rational_from(j.at("conductance_num"), j.at("conductance_den"));
    r.lambda2 = real_from(j.at("lambda2"));
    r.rho_star = real_from(j.at("rho_star"));
    r.gap = real_from(j.at("gap"));
    if (!j.at("girth_unbounded").get<bool>()) r.girth = j.at("girth").get<std::size_t>();
    if (!j.at("diameter_disconnected").get<bool>()) r.diameter = j.at("diameter").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed metrics report: ") + e.what());
  }
}

Json to_json(const SearchResult& r) {
  Json j;
  j["strategy"] = std::string(to_string(r.strategy));
  j["seed"] = r.seed;
  j["n"] = r.vertex_count;
  j["kept_edges"] = r.kept.size();
  j["girth_target"] = r.girth_target;
  j["girth"] = json_girth(r.girth_achieved);
  j["girth_unbounded"] = !r.girth_achieved.has_value();
  j["gap"] = json_real(r.gap);
  j["h_exact"] = json_rational(r.h_exact);
  j["connected"] = r.connected;
  j["meets_target"] = r.meets_target();
  j["iterations_used"] = r.iterations_used;
  return j;
}

Json to_json(const BallProfile& p) {
  Json j;
  j["radius"] = p.radius;
  j["balls"] = p.rows.size();
  j["min_gap"] = json_opt_real(p.min_gap);
  j["median_gap"] = json_opt_real(p.median_gap);
  j["min_h_exact"] = json_rational(p.min_h_exact);
  return j;
}

Json to_json(const ProbeReport& r) {
  Json records = Json::array();
  for (const ProbeRecord& rec : r.records) {
    Json j;
    j["family"] = rec.family;
    j["instance"] = rec.instance;
    j["group"] = rec.group;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["d"] = rec.d;
    j["host_gap"] = json_real(rec.host_gap);
    j["host_h_exact"] = json_rational(rec.host_h_exact);
    j["diameter"] = rec.diameter;
    j["c"] = json_real(rec.c);
    j["girth_target"] = rec.girth_target;
    j["strategy"] = std::string(to_string(rec.strategy));
    j["best_girth"] = json_girth(rec.best_girth);
    j["best_girth_unbounded"] = !rec.best_girth.has_value();
    j["best_gap"] = json_real(rec.best_gap);
    j["best_h_exact"] = json_rational(rec.best_h_exact);
    j["ratio_achieved"] = json_real(rec.ratio_achieved);
    j["success"] = rec.success;
    j["degenerate_diameter"] = rec.degenerate_diameter;
    j["seed"] = rec.seed;
    Json runs = Json::array();
    for (const SearchResult& s : rec.runs) runs.push_back(to_json(s));
    j["runs"] = std::move(runs);
    records.push_back(std::move(j));
  }
  Json families = Json::array();
  for (const FamilySummary& fs : r.families) {
    Json per_ratio = Json::array();
    for (const FamilyRatioSummary& rs : fs.per_ratio) {
      Json g = Json::array();
      for (const auto& [n, girth] : rs.girth_by_n) g.push_back({{"n", n}, {"girth", json_girth(girth)}});
      per_ratio.push_back({{"c", json_real(rs.c)},
                           {"f_estimate", json_real(rs.f_estimate)},
                           {"successes", rs.successes},
                           {"instances", rs.instances},
                           {"girth_by_n", std::move(g)},
                           {"girth_grows", rs.girth_grows ? Json(*rs.girth_grows) : Json(nullptr)}});
    }
    families.push_back({{"family", fs.family}, {"per_ratio", std::move(per_ratio)}});
  }
  Json j;
  j["records"] = std::move(records);
  j["families"] = std::move(families);
  return j;
}

Json to_json(const TowerReport& r) {
  Json rows = Json::array();
  for (const TowerRow& row : r.rows) {
    rows.push_back({{"level", row.level},
                    {"modulus", row.modulus},
                    {"vertices", row.vertices},
                    {"group_order", row.group_order ? Json(*row.group_order) : Json(nullptr)},
                    {"degree", row.degree},
                    {"girth", json_girth(row.girth)},
                    {"lambda2", json_real(row.lambda2)},
                    {"gap", json_real(row.gap)}});
  }
  Json j;
  j["p"] = r.p;
  j["recipe"] = r.recipe;
  j["girth_nondecreasing"] = r.girth_nondecreasing;
  j["rows"] = std::move(rows);
  return j;
}

std::string format_tower_csv(std::span<const TowerReport> reports) {
  std::string out = "p,recipe,level,modulus,vertices,group_order,degree,girth,lambda2,gap\n";
  for (const TowerReport& r : reports) {
    for (const TowerRow& row : r.rows) {
      out += std::to_string(r.p) + "," + r.recipe + "," + std::to_string(row.level) + "," +
             std::to_string(row.modulus) + "," + std::to_string(row.vertices) + "," +
             (row.group_order ? std::to_string(*row.group_order) : std::string()) + "," +
             std::to_string(row.degree) + "," + format_girth(row.girth) + "," +
             format_real(row.lambda2) + "," + format_real(row.gap) + "\n";
    }
  }
  return out;
}

std::string format_ball_csv(const BallProfile& p) {
  std::string out = "center,ball_size,gap,h_exact\n";
  for (const BallRow& row : p.rows) {
    out += std::to_string(row.center) + "," + std::to_string(row.ball_size) + "," +
           (row.gap ? format_real(*row.gap) : std::string()) + "," + format_rational(row.h_exact) +
           "\n";
  }
  return out;
}

}  // namespace expander
