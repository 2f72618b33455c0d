#pragma once

#include <optional>
#include <random>
#include <vector>

#include "graphon/graphon.hpp"

namespace graphon::detail {

using Rng = std::mt19937_64;

/// Uniform random k-podal graphon: Dirichlet(1) widths, uniform blocks.
MultipodalGraphon random_graphon(int k, Rng& rng);

/// Bring g to exactly k podes by splitting the widest pode at a random
/// fraction and jittering the new rows by up to `jitter`. Returns nothing
/// when g already has more than k podes.
std::optional<MultipodalGraphon> adapt_pode_count(const MultipodalGraphon& g, int k, Rng& rng,
                                                  double jitter);

/// Pull every block into [floor, 1 - floor].
MultipodalGraphon clamp_blocks(const MultipodalGraphon& g, double floor);

/// The mixture (1 - s) ref + s e, with s chosen by bisection so that the
/// triangle density is t (edge density stays that of ref, assumed e).
/// Nothing when t is not between tau(ref) and e^3.
std::optional<MultipodalGraphon> mix_toward_constant(const MultipodalGraphon& ref, double e,
                                                     double t);

/// Member of the n-th scallop family (n podes of width c below the family's
/// minimizer c0) with triangle density t, if the family reaches t.
std::optional<MultipodalGraphon> scallop_family_point(int n, double e, double t);

/// Structured starting points on or near the constraint set (e, t): the
/// symmetric bipodal closed form, scallop family points, and mixtures of
/// the region reference graphons with the constant e.
std::vector<MultipodalGraphon> structured_seeds(double e, double t);

}  // namespace graphon::detail
