#pragma once

#include <string>

#include "graphon/ergm.hpp"
#include "graphon/graphon.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/phase.hpp"
#include "graphon/variational.hpp"

namespace graphon {

/// {"podes": [...], "blocks": [[...], ...]}; numbers round-trip exactly.
std::string graphon_to_json(const MultipodalGraphon& g, int indent = -1);

/// Reads a graphon object, or any object holding one under "graphon".
/// Throws kParse with the offending field; asymmetry above 1e-12 is rejected.
MultipodalGraphon graphon_from_json(const std::string& text);

/// Optional "multipliers": {"alpha", "beta"} next to the graphon, if any.
std::optional<Multipliers> multipliers_from_json(const std::string& text);

std::string result_to_json(const OptimizationResult& r, const PhaseLabel* label,
                           const OptimalityDiagnostics* diag, int indent = 2);
std::string phase_to_json(const PhaseLabel& label, int indent = 2);
std::string invisibility_to_json(const InvisibilityReport& rep, int indent = 2);
std::string worthcheck_to_json(const MultipodalGraphon& g, const Multipliers& mult,
                               const WorthSearch& search, int indent = 2);

}  // namespace graphon
