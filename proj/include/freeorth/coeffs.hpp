#pragma once

#include <memory>

#include "freeorth/fusion.hpp"

namespace freeorth {

struct BoundTriple {
    double lower = 0;    // R(d) = (d+1)/3
    double refined = 0;  // K(q) (2d^2 - d + 1)
    double upper = 0;    // P(d) = K(q) (d+1)(2d+1)
};

struct So3Row {
    double bound = 0;  // P(2d) at q(delta)
    bool admissible = false;
};

/// All scalar coefficients of the block calculus, exact where the formulas
/// are rational in the quantum dimensions:
///
///   N_{a,b}^c     = 1 - D_{(a-b+c)/2} D_{(b-a+c)/2-1} / (D_{a+1} D_b)
///   |mu_j^d(k)|^2 = prod_{i<j} N^{d-j+k}_{d-j+i, k+i}
///   chi_j^d(k)    = sqrt(D_{d-j} D_{j+k} / (D_{d-j+k} D_j)) / |mu_j^d(k)|^2
///   lambda_j^d(k) = D_{j+k} / (D_j D_k |mu_j^d(k)|^2)
///   nu_j^d(s)     = prod_{i<j-s} N^{d-j}_{d-j-s+i,s+i} / N^{d-j+1}_{d-j-s+i,s+i+1}
///                 = D_j D_{d-j+1} / (D_s D_{d-s+1})
///   C_j^d(s)      = 1 - 1/nu_j^d(s),  |C_j^d(s)| = D_{d-j-s} D_{j-s-1} / (D_{d-j+1} D_j)
///
/// Empty products are 1 (the j = 0 convention). Exact-identity mismatches
/// throw ExactIdentityError instead of being absorbed into tolerances.
class CoeffBundle {
public:
    explicit CoeffBundle(DeformationParameter param);

    const DeformationParameter& parameter() const { return param_; }
    const QDimTable& dims() const { return *dims_; }
    BigRat qdim(int n) const { return (*dims_)(n); }

    BigRat n_coeff(int a, int b, int c) const;
    BigRat mu_sq(int j, int d, int k) const;
    BigRat chi_sq(int j, int d, int k) const;
    double chi(int j, int d, int k) const;
    BigRat lambda_coeff(int j, int d, int k) const;

    /// Evaluates both the defining product and the closed form and requires
    /// exact agreement before returning the value.
    BigRat nu(int j, int d, int s) const;

    /// Signed value 1 - 1/nu (always >= 0 here since nu >= 1); checked
    /// exactly against the closed form for |C| and against |C| <= q^{2s+2}.
    BigRat c_coeff(int j, int d, int s) const;

    /// sum_s |C_j^d(s)| chi_{j-s}^{d-2s}(s+1), in double precision.
    double constant_sum(int j, int d) const;

    /// K(q) = (1-q^2)^{-1/2} prod_{i>=0} (1-q^{2i+2})^{-1}, truncated when a
    /// factor is within 1e-16 of 1. Throws for q = 1.
    double k_of_q() const;

    BoundTriple bounds(int d) const;

    /// The two telescoping closed forms behind nu (both sides returned for
    /// exact comparison): first = N^{d-j+1}_{d-j-s+i, s+i+1} vs
    /// D_i D_{d-j+i+2} / (D_{d-s-j+i+1} D_{s+i+1}); second =
    /// N^{d-j}_{d-s-j+i, s+i} vs D_i D_{d-j+i+1} / (D_{d-s-j+i+1} D_{s+i}).
    std::pair<BigRat, BigRat> nu_telescoping_first(int d, int j, int s, int i) const;
    std::pair<BigRat, BigRat> nu_telescoping_second(int d, int j, int s, int i) const;

    /// N_{d-j+i, k+i}^{d-j+k} vs D_i D_{d-j+k+i+1} / (D_{d-j+i+1} D_{k+i}).
    std::pair<BigRat, BigRat> chi_telescoping(int d, int j, int k, int i) const;

private:
    void require_jdk(int j, int d, int k) const;
    void require_jds(int j, int d, int s) const;

    DeformationParameter param_;
    std::shared_ptr<QDimTable> dims_;
};

/// P(2d) evaluated at q(delta) together with the admissibility flag
/// q(delta) <= 3^{-1/2}. delta may be irrational (e.g. sqrt(6)).
So3Row so3_bound(int d, double delta);

/// K(q) for a plain floating-point q in [0, 1).
double k_of_q_value(double q);

}  // namespace freeorth
