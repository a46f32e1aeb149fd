#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "freeorth/coeffs.hpp"
#include "freeorth/tlcat.hpp"

namespace freeorth {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One term T (x) x of an operator-valued element; x is a coefficient of the
/// irreducible of the given degree, realized in B(H_degree).
struct GnsTerm {
    CMat aux;
    int degree = 0;
    CMat x;
};

struct GnsElement {
    int aux_dim = 1;
    std::vector<GnsTerm> terms;
    std::vector<int> support() const;
};

/// Keeps only the degree-d terms.
GnsElement project_d(const GnsElement& x, int d);

struct CheckRecord {
    std::string name;
    std::string indices;
    std::uint64_t seed = 0;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    double tolerance = 0;
    bool pass = true;
    std::string note;
};

struct NormEstimate {
    double value = 0;  // certified lower estimate of the truncated norm
    int iterations = 0;
};

/// Truncated GNS model of the reduced algebra at F = I_N: the Hilbert space
/// is (+)_{k <= K} B(H_k) with <A,B>_k = Tr(A^*B)/D_k, realized through the
/// tensor oracle's compressed intertwiners. Vectors are stored in weighted
/// orthonormal coordinates (each degree segment divided by sqrt(D_k)), so
/// plain l2 machinery computes the right norms.
class GnsTruncation {
public:
    GnsTruncation(std::shared_ptr<TemperleyLiebOracle> oracle, int k_max);

    int k_max() const { return k_max_; }
    int n() const { return oracle_->n(); }
    int dim(int k) const { return oracle_->dim(k); }
    TemperleyLiebOracle& oracle() const { return *oracle_; }
    const CoeffBundle& coeffs() const { return coeffs_; }

    GnsElement random_element(int aux_dim, const std::vector<int>& degrees, std::uint64_t seed) const;

    /// pi_h(x) applied to xi: the sum over gamma in fuse(d, b) of
    /// Ad(v_gamma)(x (x) xi). Every channel must fit inside the truncation,
    /// otherwise a TruncationError lists the offending gamma.
    std::map<int, CMat> gns_action(const CMat& x, int d, const CMat& xi, int b) const;

    long long total_dim(int aux_dim) const;
    long long segment_offset(int k, int aux_dim) const;

    /// Compressed operator applied to a weighted-coordinate vector (channels
    /// above K_max are cut by the truncation).
    CVec apply(const GnsElement& x, const CVec& v) const;
    CVec apply_adjoint(const GnsElement& x, const CVec& v) const;

    /// Matrix of B_{a,b}(X) in weighted coordinates,
    /// (aux D_a^2) x (aux D_b^2). Throws std::length_error when too large to
    /// materialize.
    CMat block_matrix(const GnsElement& x, int a, int b) const;

    /// Largest singular value of the block; falls back to power iteration
    /// when the matrix is too large (then a lower estimate).
    double block_norm(const GnsElement& x, int a, int b) const;

    /// Lower estimate of the truncated operator norm: the best of seeded
    /// power iteration and the supplied probe vectors (every unit-vector
    /// image is a certified lower bound).
    NormEstimate truncated_norm(const GnsElement& x, int power_iters, std::uint64_t seed,
                                const std::vector<CVec>& probes = {}) const;

    // --- verification of the block calculus -------------------------------

    /// B_{d-j+k,j+k}(X^d) = lambda_j^d(k) (i (x) M_k^+)(B_{d-j,j}(X^d) (x) i)(i (x) M_k^+)^*.
    CheckRecord verify_block_transfer(const GnsElement& x, int d, int j, int k, std::uint64_t seed = 0) const;

    /// The degree-recursion identity, both per input degree (with nu_j^d(s))
    /// and assembled with the coefficients C_j^d(s).
    std::vector<CheckRecord> verify_recursion(const GnsElement& x, int d, int j, std::uint64_t seed = 0) const;

    /// Reconstruction of X^d from its diagonal blocks plus the vanishing
    /// pattern of non-fusion blocks.
    std::vector<CheckRecord> verify_block_decomposition(const GnsElement& x, int d, std::uint64_t seed) const;

    /// Corner-block norms against the truncated operator norm (left
    /// inequality certified; right inequality and chi-sum diagonals reported).
    std::vector<CheckRecord> haagerup_inequality_check(const GnsElement& x, int d, int power_iters,
                                                       std::uint64_t seed) const;

    /// Compares the truncated norm of pi(chi_d) in the tensor model with the
    /// truncated multiplication operator by mu_d in the character model.
    std::vector<CheckRecord> character_consistency_check(int d, int power_iters) const;

private:
    CMat composite_intertwiner(int d, int j, int k) const;   // V : H_{d-j+k} -> H_d (x) H_{j+k}
    CMat recursion_intertwiner(int l, int d, int j) const;   // V : H_{d-j+1} -> H_l (x) H_{j+1}
    CVec block_apply_dual_route(const GnsElement& x, int a, int b, const CVec& segment) const;

    std::shared_ptr<TemperleyLiebOracle> oracle_;
    int k_max_;
    CoeffBundle coeffs_;
};

struct LowerBoundReport {
    int d = 0;
    int trunc = 0;                  // dimension of the truncated span e_0..e_{trunc-1}
    double translation_norm = 0;    // || T_{d+2} - S_d - T_{-(d+2)} ||
    double multiplication_norm = 0; // truncated multiplication by mu_{d+2} - mu_d
    double realization_error = 0;   // max entry deviation, multiplication matrix vs
                                    // T_{d+2} - S_d + T_{-(d+2)}
    double chi_upper = 0;           // sup |mu_{d+2} - mu_d| on [-2, 2]
    double ratio = 0;               // (d+1) / chi_upper, a lower bound for ||m_{p_d}||
    double lower_bound = 0;         // (d+1)/3
    bool pass = false;
};

/// Character-model lower bound on the span of e_0..e_{trunc-1}. Requires
/// trunc >= d + 10.
LowerBoundReport lower_bound_check(int d, int trunc);

}  // namespace freeorth
