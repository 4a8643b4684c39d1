#pragma once

#include <span>

#include "beam/discretization.hpp"

namespace beam::detail {

enum class SolveStatus { Ok, NotPositiveDefinite };

/// Solves (D + scale·A) x = rhs, D = diag(diagonal), A the fourth-order
/// operator. FD: banded Cholesky (bandwidth 2). Spectral: conjugate gradients
/// preconditioned by the modal diagonal mean(D) + scale·λ_k.
SolveStatus solve_shifted_operator(const Operator4& op, std::span<const double> diagonal, double scale,
                                   std::span<const double> rhs, std::span<double> x);

double max_abs(std::span<const double> v);

}  // namespace beam::detail
