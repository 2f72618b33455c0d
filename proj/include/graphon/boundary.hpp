#pragma once

#include "graphon/graphon.hpp"

namespace graphon {

/// One arc of the lower boundary of the feasible (e, t) region for
/// n/(n+1) <= e < (n+1)/(n+2). Extremal graphons there have n podes of
/// width c0 plus two podes of width (1 - n c0) / 2.
struct ScallopSpec {
  int n = 0;
  double e = 0.0;
  double c0 = 0.0;  ///< width of each of the n clique-like podes
  double t0 = 0.0;  ///< minimal triangle density at e
  double p = 0.0;   ///< block value between the two remaining podes
  bool at_cusp = false;
};

/// Throws kInvalidArgument for e < 1/2 (flat region) or e >= 1.
ScallopSpec scallop_params(double e);

/// Triangle density of the scallop family with n podes of width c:
/// n(n+1)(n+2)c^3 - 3n(n+1)c^2 + 3nec.
double scallop_family_triangle_density(int n, double e, double c);

/// Block value p(c) that keeps the family's edge density at e.
double scallop_family_block(int n, double e, double c);

/// Entropy (1 - nc)^2 H(p(c)) / 2 of the family graphon.
double scallop_family_entropy(int n, double e, double c);

/// Closed-form dS/dc = n((n+2)c - 1) ln(1-p) + 2n(1 - (n+1)c) ln p.
double scallop_family_entropy_slope(int n, double e, double c);

/// Family graphon with n podes of width c.
MultipodalGraphon scallop_family_graphon(int n, double e, double c);

/// 0 for e <= 1/2, the scallop minimum t0 above.
double min_triangle_density(double e);

/// e^{3/2}.
double max_triangle_density(double e);

/// Erdos-Renyi curve e^3.
double er_curve(double e);

/// True iff min_triangle_density(e) <= t <= e^{3/2} (1e-12 slack).
bool contains(double e, double t);

enum class Region { kBottomFlat, kScallop, kTop, kErdosRenyi };

/// Extremal / reference graphon for a region at edge density e.
MultipodalGraphon reference_graphon(Region region, double e);

}  // namespace graphon
