#pragma once

#include <optional>
#include <vector>

#include "cstar/rational.hpp"

namespace cstar::lp {

/// Dense rows of an equality system A x = b.
using Matrix = std::vector<std::vector<Rational>>;

/// Some x >= 0 with A x = b, or nullopt if none exists.
///
/// Phase I of the tableau simplex method over exact rationals: one artificial
/// variable per row, minimize their sum, Bland's smallest-index rule for both
/// the entering and the leaving variable (so no cycling and a deterministic
/// answer). Throws InvalidArgument on ragged input.
std::optional<std::vector<Rational>> find_feasible(const Matrix& a, const std::vector<Rational>& b);

}  // namespace cstar::lp
