#include "graphon/io.hpp"

#include <cmath>

#include <json.hpp>

#include "graphon/error.hpp"

namespace graphon {

namespace {

using nlohmann::json;

json graphon_json(const MultipodalGraphon& g) {
  json blocks = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g.block(i, j));
    blocks.push_back(std::move(row));
  }
  return json{{"podes", g.widths()}, {"blocks", std::move(blocks)}};
}

json multipliers_json(const Multipliers& m) {
  return json{{"alpha", m.alpha}, {"beta", m.beta}, {"degenerate", m.degenerate}};
}

// nlohmann writes non-finite doubles as null; keep that explicit.
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::kParse, what); }

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where + ": expected a number");
  return v.get<double>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    parse_fail(std::string("invalid JSON: ") + err.what());
  }
}

}  // namespace

std::string graphon_to_json(const MultipodalGraphon& g, int indent) {
  return graphon_json(g).dump(indent);
}

MultipodalGraphon graphon_from_json(const std::string& text) {
  json doc = parse(text);
  if (doc.is_object() && doc.contains("graphon")) doc = doc["graphon"];
  if (!doc.is_object()) parse_fail("graphon: expected an object");
  if (!doc.contains("podes")) parse_fail("graphon: missing field \"podes\"");
  if (!doc.contains("blocks")) parse_fail("graphon: missing field \"blocks\"");
  const json& podes = doc["podes"];
  const json& blocks = doc["blocks"];
  if (!podes.is_array() || podes.empty()) parse_fail("podes: expected a non-empty array");
  const std::size_t k = podes.size();
  std::vector<double> c;
  for (std::size_t i = 0; i < k; ++i) c.push_back(number_at(podes[i], "podes[" + std::to_string(i) + "]"));
  if (!blocks.is_array() || blocks.size() != k) {
    parse_fail("blocks: expected " + std::to_string(k) + " rows");
  }
  Matrix b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const std::string row = "blocks[" + std::to_string(i) + "]";
    if (!blocks[i].is_array() || blocks[i].size() != k) {
      parse_fail(row + ": expected " + std::to_string(k) + " entries");
    }
    for (std::size_t j = 0; j < k; ++j) {
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number_at(blocks[i][j], row + "[" + std::to_string(j) + "]");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto a = static_cast<Eigen::Index>(i), d = static_cast<Eigen::Index>(j);
      if (std::abs(b(a, d) - b(d, a)) > 1e-12) {
        parse_fail("blocks[" + std::to_string(i) + "][" + std::to_string(j) +
                   "]: matrix is not symmetric");
      }
    }
  }
  try {
    return MultipodalGraphon(std::move(c), std::move(b));
  } catch (const Error& err) {
    parse_fail(std::string("graphon: ") + err.what());
  }
}

std::optional<Multipliers> multipliers_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object() || !doc.contains("multipliers")) return std::nullopt;
  const json& m = doc["multipliers"];
  if (!m.is_object() || !m.contains("alpha") || !m.contains("beta")) {
    parse_fail("multipliers: expected {\"alpha\", \"beta\"}");
  }
  Multipliers out;
  out.alpha = number_at(m["alpha"], "multipliers.alpha");
  out.beta = number_at(m["beta"], "multipliers.beta");
  return out;
}

std::string phase_to_json(const PhaseLabel& label, int indent) {
  json p{{"rank", label.rank}, {"region_tag", label.region_tag}};
  p["symmetry"] = label.symmetry ? json::array({label.symmetry->first, label.symmetry->second})
                                 : json(nullptr);
  json ops = json::object();
  for (std::size_t i = 0; i < label.order_params.size(); ++i) {
    ops["p" + std::to_string(i + 2)] = real(label.order_params[i]);
  }
  p["order_params"] = std::move(ops);
  return p.dump(indent);
}

std::string result_to_json(const OptimizationResult& r, const PhaseLabel* label,
                           const OptimalityDiagnostics* diag, int indent) {
  json out{{"e", r.e},
           {"t", r.t},
           {"graphon", graphon_json(r.graphon)},
           {"entropy", real(r.entropy)},
           {"edge_error", real(r.edge_error)},
           {"triangle_error", real(r.triangle_error)},
           {"multipliers", multipliers_json(r.multipliers)},
           {"el_residual", real(r.el_residual)},
           {"worth_spread", real(r.worth_spread)},
           {"n_starts", r.n_starts},
           {"n_converged", r.n_converged},
           {"distinct_optima", r.distinct_optima}};
  if (label) out["phase"] = json::parse(phase_to_json(*label, -1));
  if (diag) {
    out["diagnostics"] = json{{"alpha", real(diag->multipliers.alpha)},
                              {"beta", real(diag->multipliers.beta)},
                              {"el_residual", real(diag->el_residual)},
                              {"worth_spread", real(diag->worth_spread)},
                              {"worth_gap", real(diag->worth_gap)}};
  }
  return out.dump(indent);
}

std::string invisibility_to_json(const InvisibilityReport& rep, int indent) {
  json out{{"e", rep.e},
           {"t", rep.t},
           {"multipliers", multipliers_json(rep.multipliers)},
           {"constrained", graphon_json(rep.constrained)},
           {"constrained_entropy", real(rep.constrained_entropy)},
           {"constrained_free_energy", real(rep.constrained_free_energy)},
           {"best_competitor", graphon_json(rep.best_competitor)},
           {"competitor_free_energy", real(rep.competitor_free_energy)},
           {"visible", rep.visible},
           {"margin", real(rep.margin)},
           {"marginal", rep.marginal}};
  return out.dump(indent);
}

std::string worthcheck_to_json(const MultipodalGraphon& g, const Multipliers& mult,
                               const WorthSearch& search, int indent) {
  const auto pode = pode_worths(g, mult);
  const double best_pode = *std::max_element(pode.begin(), pode.end());
  json maxima = json::array();
  for (const auto& m : search.maxima) {
    maxima.push_back(json{{"column", m.column.values}, {"worth", real(m.worth)}});
  }
  json out{{"multipliers", multipliers_json(mult)},
           {"pode_worths", pode},
           {"worth_spread", real(worth_spread(g, mult))},
           {"el_residual", real(el_residual(g, mult))},
           {"maxima", std::move(maxima)},
           {"worth_gap", search.maxima.empty() ? 0.0 : search.maxima.front().worth - best_pode},
           {"failed_starts", search.failed_starts}};
  return out.dump(indent);
}

}  // namespace graphon
