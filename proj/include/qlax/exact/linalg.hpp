#pragma once

#include <vector>

#include "qlax/exact/rational.hpp"

namespace qlax {

using Matrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gaussian elimination.
std::size_t matrix_rank(Matrix m);

/// Solves the square system A x = b. Throws DegenerateNodes if A is singular.
std::vector<Rational> solve_linear_system(Matrix a, std::vector<Rational> b);

}  // namespace qlax
