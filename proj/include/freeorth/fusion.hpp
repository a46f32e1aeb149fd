#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "freeorth/rational.hpp"

namespace freeorth {

/// Thrown when an identity that must hold in exact arithmetic fails. Carries
/// the offending indices and both values so a transcription error is
/// immediately visible.
class ExactIdentityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// delta = q + 1/q held exactly, q = (delta - sqrt(delta^2-4))/2 in floating
/// point. delta must be >= 2, so 0 < q <= 1. Integer delta = N models the
/// Kac case F = I_N.
class DeformationParameter {
public:
    explicit DeformationParameter(BigRat delta);
    static DeformationParameter from_integer(int n) { return DeformationParameter(BigRat(n)); }

    const BigRat& delta() const { return delta_; }
    double delta_double() const { return delta_double_; }
    double q() const { return q_; }
    bool is_kac() const { return kac_; }     // delta is an integer N
    bool is_integer_n() const { return kac_; }
    int integer_n() const;                    // throws unless is_kac()

private:
    BigRat delta_;
    double delta_double_;
    double q_;
    bool kac_;
};

/// q(delta) for a plain floating-point delta >= 2.
double q_from_delta(double delta);

/// Memoized exact quantum dimensions D_n: D_{-1} = 0, D_0 = 1,
/// D_{n+1} = delta D_n - D_{n-1}. Concurrent reads are safe; the table
/// extends itself under an internal lock.
class QDimTable {
public:
    explicit QDimTable(BigRat delta);

    /// D_n for n >= -1, exact. Throws std::domain_error for n < -1.
    BigRat operator()(int n) const;
    const BigRat& delta() const { return delta_; }

private:
    void ensure(int n) const;

    BigRat delta_;
    mutable std::vector<BigRat> values_;  // values_[i] = D_{i-1}
    mutable std::mutex mutex_;
};

/// Irreducible labels in the tensor product decomposition a (x) b:
/// [|a-b|, |a-b|+2, ..., a+b], each with multiplicity one.
std::vector<int> fuse(int a, int b);

struct DimLemmaReport {
    int a = 0, b = 0, c = 0;
    BigRat lower_margin;        // D_b/D_a - 1/D_{a-b}, exact, must be >= 0
    double upper_margin = 0;    // q^{a-b} - D_b/D_a
    double tail_margin = 0;     // (1-q^2)^{-1} - q^c D_c
    bool monotone_ok = false;   // D_{b+n}/D_{a+n} increasing over the checked range
    bool telescoping_ok = false;
    int telescoping_bound = 0;
    bool pass = false;
};

/// Checks D_{a-b}^{-1} <= D_b/D_a <= q^{a-b} and q^c D_c <= (1-q^2)^{-1},
/// together with the exact telescoping identity
/// D_{b+n} D_{a+n+1} = D_{a-b+1} + D_{a-b+3} + ... + D_{a+b+2n+1}
/// for 0 <= n <= telescoping_bound. Requires a > b >= 0, c >= 0, delta > 2.
DimLemmaReport dim_lemma_check(const DeformationParameter& param, const QDimTable& dims, int a, int b, int c,
                               int telescoping_bound = 10);

}  // namespace freeorth
