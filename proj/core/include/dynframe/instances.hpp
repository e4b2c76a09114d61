#pragma once

#include <vector>

#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::instances {

// Diagonal operator T e_k = lambda_k e_k; all entries must lie strictly
// inside the unit disc.
ops::OperatorSpec carleson_diag(const std::vector<Complex>& lambdas);

// inf_k prod_{j != k} |lambda_k - lambda_j| / |1 - conj(lambda_k) lambda_j|
// over the supplied truncation. A single entry gives 1 (empty product).
double carleson_margin(const std::vector<Complex>& lambdas);

// lambda_1 repeated N-1 times followed by the sequence itself, so the
// first entry has eigenspace dimension N (forcing N generators).
ops::OperatorSpec head_multiplicity_diag(Index n, const std::vector<Complex>& lambdas);

// T e_1 = 2 e_2, T e_2 = 0, T e_j = lambda_j e_j on the rest: similar to
// a stable contraction (frame exists) but with norm 2 (no Parseval frame).
ops::OperatorSpec stable_non_contraction(const std::vector<Complex>& lambdas);

// Hand witness for the instance above: e_1 plus one vector spread over
// the diagonal block with the square-root defect weighting that keeps
// the orbit sums conditioned.
Mat stable_non_contraction_witness(const std::vector<Complex>& lambdas);

// The documented default sequence lambda_k = 1 - 2^{-k}, k = 1..count.
std::vector<Complex> dyadic_carleson(Index count);

// A bounded-radius separated disc sequence: dyadic radius levels with
// evenly spread phases, suitable for deep truncations where the plain
// dyadic radii would crowd the unit circle.
std::vector<Complex> leveled_carleson(Index count);

}  // namespace dynframe::instances
