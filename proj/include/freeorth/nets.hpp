#pragma once

#include <utility>
#include <vector>

#include "freeorth/rational.hpp"

namespace freeorth {

/// Radial approximation net a_i(t) = sum_{k<=i} b_k(t) p_k. The free
/// orthogonal family uses b_k(t) = mu_k(t)/mu_k(N); the quantum
/// automorphism family b_k(t) = mu_{2k}(sqrt t)/mu_{2k}(sqrt dim B).
struct NetSpec {
    enum class Family { free_orthogonal, quantum_automorphism };
    Family family = Family::free_orthogonal;
    double t = 2.5;
    int cutoff = 50;
    int n = 3;      // free_orthogonal
    int dim_b = 9;  // quantum_automorphism, >= 6

    void validate() const;  // throws std::domain_error on invalid range
};

std::vector<std::pair<int, double>> net_table(const NetSpec& spec);

struct K0Estimate {
    double k0 = 1.0;
    bool stabilized = false;
    double t0 = 0;
    int k_max = 0;
    int grid = 0;
};

/// Empirical K_0(t0) = sup over a t-grid in [t0, N) and k <= k_max of
/// b_k(t) (N/t)^k; the running sup must stop moving well before k_max.
K0Estimate estimate_k0(double t0, int n, int k_max = 200, int grid = 50);

/// sum_{k > i} K0 (t/N)^k P(k) with P(k) = Kq (k+1)(2k+1), in closed form.
/// Throws std::domain_error("series diverges") for t >= N.
double tail_sum(int i, double t, int n, double k0, double kq);

}  // namespace freeorth
