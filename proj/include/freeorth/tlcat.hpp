#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>

#include "freeorth/fusion.hpp"
#include "freeorth/kernels.hpp"
#include "freeorth/linalg.hpp"

namespace freeorth {

class DegreeCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A morphism between tensor powers of C^N, stored as a dense matrix of
/// shape N^target x N^source.
struct TLMorphism {
    int source_degree = 0;
    int target_degree = 0;
    int n = 0;
    CMat matrix;
};

struct JonesWenzlProjector {
    int degree = 0;
    int n = 0;
    long long rank = 0;  // D_degree
    CMat matrix;         // N^degree square, idempotent, self-adjoint
};

/// Deterministic complex Gaussians (Box-Muller over mt19937_64, so results
/// do not depend on the standard library's distribution internals).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
    double normal();
    Complex complex_normal();  // standard complex Gaussian, E|z|^2 = 1

private:
    std::mt19937_64 rng_;
};

CMat random_gaussian_matrix(int rows, int cols, GaussianSource& src);

/// Brute-force tensor oracle in the Kac case F = I_N: Jones-Wenzl
/// projectors on (C^N)^{(x)n}, isometric fusion intertwiners built from the
/// nested cup t = sum_i e_i (x) e_i, and the compressed matrices the GNS
/// model works with. All caches are lock-protected; every returned
/// reference stays valid for the oracle's lifetime.
class TemperleyLiebOracle {
public:
    explicit TemperleyLiebOracle(int n, int degree_cap = 6);

    int n() const { return n_; }
    int degree_cap() const { return degree_cap_; }
    int dim(int k) const;  // D_k = mu_k(N), exact integer
    const QDimTable& qdims() const { return dims_; }

    /// Cup-cap generator e_strand on (C^N)^{(x)deg}; e^2 = e,
    /// e_i e_{i+-1} e_i = N^{-2} e_i.
    CMat tl_generator(int strand, int deg) const;

    /// Wenzl recursion p_{k+1} = p_k (x) 1 - (D_{k-1}/D_k)(p_k (x) 1) E_k (p_k (x) 1).
    const JonesWenzlProjector& jones_wenzl(int deg);

    /// Isometry U_deg : C^{D_deg} -> (C^N)^{(x)deg} onto the range of p_deg.
    const CMat& carrier_basis(int deg);

    /// Ambient isometric intertwiner H_gamma -> H_a (x) H_b (matrix
    /// N^{a+b} x N^gamma, v^* v = p_gamma). Throws std::domain_error
    /// ("zero intertwiner space") when gamma is not a fusion channel of (a, b).
    TLMorphism iso_intertwiner(int a, int b, int gamma);

    /// The same intertwiner compressed to carrier bases: an isometry
    /// (D_a D_b) x D_gamma. Cached.
    const CMat& intertwiner(int a, int b, int gamma);

    /// Compressed nested cup t_j as a D_j x D_j matrix (not normalized).
    const CMat& cup_matrix(int j);

    /// Operator norm of M_k^+ restricted to B(H_l) (x) B(H_k) with respect to
    /// the weighted trace inner products; equals sqrt(D_l D_k / D_{l+k}) for
    /// an exact isometry.
    double m_plus_norm(int k, int l);

    /// Norm quotient at the claimed maximizer x = v v^*.
    double m_plus_attained_ratio(int k, int l);

    /// max |<M_k x, y> - <x, M_k^* y>| over seeded random pairs, with
    /// M_k^* y = (D_l D_k / D_{l+k}) w y w^*.
    double m_plus_adjoint_pairing_error(int k, int l, std::uint64_t seed, int samples = 3);

    /// Frobenius deviation between the weighted matrix adjoint and the
    /// closed-form adjoint map (small l+k only).
    double m_plus_adjoint_matrix_error(int k, int l);

    /// ||T_B||^2 / ||T_A||^2 for the cup-insertion morphisms; matches the
    /// product of N-coefficients computed in the coeffs module.
    double morphism_norm_ratio(int j, int d, int k);

private:
    void require_degree(int deg) const;
    const CMat& jones_wenzl_unlocked(int deg);
    const CMat& carrier_basis_unlocked(int deg);
    const CMat& intertwiner_unlocked(int a, int b, int gamma);
    const CMat& cup_matrix_unlocked(int j);
    CMat intertwiner_columns_ambient(int a, int b, int gamma, const CMat& source_cols);

    int n_;
    int degree_cap_;
    QDimTable dims_;
    std::map<int, JonesWenzlProjector> jw_;
    std::map<int, CMat> basis_;
    std::map<std::array<int, 3>, CMat> inter_;
    std::map<int, CMat> cups_;
    mutable std::mutex mutex_;
};

}  // namespace freeorth
