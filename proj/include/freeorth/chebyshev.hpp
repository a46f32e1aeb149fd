#pragma once

#include <utility>
#include <vector>

#include "freeorth/rational.hpp"

namespace freeorth {

/// Dilated Chebyshev polynomial of the second kind, mu_k.
/// mu_0 = 1, mu_1 = X, mu_{k+1} = X mu_k - mu_{k-1}. Coefficients are exact
/// integers, stored dense in ascending powers. mu_k(2 cos t) = sin((k+1)t)/sin(t).
struct DilatedChebyshev {
    int degree = 0;
    std::vector<BigInt> coefficients;  // size degree+1, leading coefficient 1

    BigRat eval_coefficients(const BigRat& x) const;  // Horner on the stored coefficients
};

/// Returns mu_k with exact integer coefficients (memoized, safe for concurrent use).
const DilatedChebyshev& chebyshev_mu(int k);

/// Evaluates mu_k(x) by the three-term recurrence (never via expanded coefficients).
double eval_mu(int k, double x);
BigRat eval_mu_exact(int k, const BigRat& x);

/// Sup over [-2,2] of |sum a_k mu_k| for the given (coefficient, degree) pairs,
/// computed through x = 2 cos(theta) on a dense grid with golden-section
/// refinement of the local maxima. Throws std::invalid_argument on empty input.
double sup_norm_interval(const std::vector<std::pair<double, int>>& combination);

/// mu_k(t) / mu_k(s) for s > 2, 0 <= t <= s. Throws std::domain_error otherwise.
double net_coefficient(int k, double t, double s);
BigRat net_coefficient_exact(int k, const BigRat& t, const BigRat& s);

}  // namespace freeorth
