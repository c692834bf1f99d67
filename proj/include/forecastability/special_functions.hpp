#pragma once

namespace fcast {

/// Digamma function psi(x) for x > 0, absolute error below 1e-10.
///
/// Shifts x upward with psi(x) = psi(x + 1) - 1/x until x >= 6, then sums the
/// asymptotic series through the x^-12 term. Throws DomainError for x <= 0.
[[nodiscard]] double digamma(double x);

}  // namespace fcast
