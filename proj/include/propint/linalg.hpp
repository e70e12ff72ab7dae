#pragma once

#include <cstddef>
#include <vector>

#include "propint/rational.hpp"

namespace propint {

using Vector = std::vector<Rational>;
/// Dense row-major matrix over Q.
using Matrix = std::vector<Vector>;

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
std::size_t rank(Matrix m);
/// Basis of {v : m v = 0}, one vector per entry.
std::vector<Vector> nullspace(Matrix m, std::size_t columns);

/// Generalized kernel of a square matrix: ker b^k for k large enough that it
/// has stabilized, returned as the stabilized power b^k.
Matrix stable_power(Matrix b);

/// Low-degree-first coefficients of a univariate polynomial over Q.
using UPoly = std::vector<Rational>;

void trim(UPoly& p);
int degree(const UPoly& p);
Rational evaluate(const UPoly& p, const Rational& x);
UPoly derivative(const UPoly& p);
/// Quotient and remainder of a by b (b nonzero).
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);
/// Distinct rational roots, ascending. Exact: Sturm isolation followed by
/// recovery of the unique small-denominator candidate in each isolating interval.
std::vector<Rational> rational_roots(const UPoly& p);

/// The rational of smallest denominator in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace propint
