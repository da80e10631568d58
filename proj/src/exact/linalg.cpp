#include "qlax/exact/linalg.hpp"

#include <utility>

namespace qlax {

std::size_t matrix_rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Rational> solve_linear_system(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c].is_zero()) ++pivot;
    if (pivot == n) throw DegenerateNodes("singular linear system");
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace qlax
