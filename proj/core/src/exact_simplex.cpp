#include "cstar/exact_simplex.hpp"

#include <cstddef>

#include "cstar/errors.hpp"

namespace cstar::lp {

std::optional<std::vector<Rational>> find_feasible(const Matrix& a, const std::vector<Rational>& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw InvalidArgument("simplex: row count of A and b differ");
  const std::size_t vars = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != vars) throw InvalidArgument("simplex: ragged constraint matrix");
  }
  if (rows == 0) return std::vector<Rational>(vars);

  // Columns: [0, vars) originals, [vars, vars + rows) artificials, last = rhs.
  const std::size_t cols = vars + rows + 1;
  const std::size_t rhs = cols - 1;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < vars; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t[i][vars + i] = 1;
    t[i][rhs] = flip ? Rational(-b[i]) : b[i];
    basis[i] = vars + i;
  }
  // Reduced costs of "minimize sum of artificials".
  std::vector<Rational> cost(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) cost[j] -= t[i][j];
    cost[rhs] -= t[i][rhs];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase I is bounded below by 0, so an entering column always has a pivot.
    if (leave == rows) throw InternalVerificationFailure("simplex: unbounded phase I");

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational factor = cost[enter];
      for (std::size_t j = 0; j < cols; ++j) cost[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (cost[rhs] != 0) return std::nullopt;
  std::vector<Rational> x(vars);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) x[basis[i]] = t[i][rhs];
  }
  return x;
}

}  // namespace cstar::lp
