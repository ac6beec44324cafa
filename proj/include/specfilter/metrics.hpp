// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "specfilter/eig.hpp"
#include "specfilter/matrix.hpp"

namespace specfilter {

// Hausdorff distance between two finite nonempty sets of reals.
// Throws Error("Hausdorff undefined for empty set") on empty input.
double hausdorff_distance(const std::vector<double>& x, const std::vector<double>& y);

// One-sided subspace distance delta(span U, span V) in the inner product
// induced by the positive-definite Gram g: the largest distance of a unit
// vector of span U to span V. Computed through g-orthonormalized bases; the
// result lies in [0, 1]. Not symmetric; take the max of both orientations
// for the gap. Throws on rank-deficient U or V (naming the argument).
double subspace_gap(const Matrix& u, const Matrix& v, const HermitianMatrix& g);

}  // namespace specfilter
