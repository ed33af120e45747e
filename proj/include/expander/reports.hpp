#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "expander/matrix_group.hpp"
#include "expander/metrics.hpp"
#include "expander/percolation.hpp"
#include "expander/probe.hpp"
#include "expander/search.hpp"

namespace expander {

using Json = nlohmann::ordered_json;

/// A double rounded to the 9 significant digits used in every table.
Json json_real(double x);

/// Flat object: n, m, max_degree, h_exact_num, h_exact_den, conductance_num,
/// conductance_den, lambda2, rho_star, gap, girth, girth_unbounded, diameter,
/// diameter_disconnected. Absent values are null.
Json to_json(const MetricsReport& r);
MetricsReport metrics_from_json(const Json& j);

/// Summary of a search without the edge set.
Json to_json(const SearchResult& r);
Json to_json(const BallProfile& p);
Json to_json(const ProbeReport& r);
Json to_json(const TowerReport& r);

/// p,recipe,level,modulus,vertices,group_order,degree,girth,lambda2,gap
std::string format_tower_csv(std::span<const TowerReport> reports);
/// center,ball_size,gap,h_exact
std::string format_ball_csv(const BallProfile& p);

}  // namespace expander
