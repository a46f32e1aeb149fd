#include "freeorth/nets.hpp"

#include <cmath>
#include <stdexcept>

#include "freeorth/chebyshev.hpp"

namespace freeorth {

void NetSpec::validate() const {
    if (cutoff < 0) throw std::domain_error("net: invalid range (negative cutoff)");
    if (family == Family::free_orthogonal) {
        if (n < 3) throw std::domain_error("net: invalid range (requires N >= 3)");
        if (t < 0.0 || t > n) throw std::domain_error("net: invalid range (requires 0 <= t <= N)");
    } else {
        if (dim_b < 6) throw std::domain_error("net: invalid range (requires dim(B) >= 6)");
        if (t < 0.0 || t > dim_b) throw std::domain_error("net: invalid range (requires 0 <= t <= dim(B))");
    }
}

std::vector<std::pair<int, double>> net_table(const NetSpec& spec) {
    spec.validate();
    std::vector<std::pair<int, double>> out;
    out.reserve(spec.cutoff + 1);
    for (int k = 0; k <= spec.cutoff; ++k) {
        double b;
        if (spec.family == NetSpec::Family::free_orthogonal)
            b = net_coefficient(k, spec.t, spec.n);
        else
            b = net_coefficient(2 * k, std::sqrt(spec.t), std::sqrt(static_cast<double>(spec.dim_b)));
        out.emplace_back(k, b);
    }
    return out;
}

K0Estimate estimate_k0(double t0, int n, int k_max, int grid) {
    if (!(t0 > 2.0 && t0 < n)) throw std::domain_error("estimate_k0: requires 2 < t0 < N");
    K0Estimate est;
    est.t0 = t0;
    est.k_max = k_max;
    est.grid = grid;
    est.k0 = 0.0;
    est.stabilized = true;
    for (int g = 0; g < grid; ++g) {
        const double t = t0 + (n - t0) * g / grid;  // grid in [t0, N)
        double sup = 0.0;
        int arg = 0;
        double ratio_power = 1.0;  // (N/t)^k
        for (int k = 0; k <= k_max; ++k) {
            const double value = net_coefficient(k, t, n) * ratio_power;
            if (value > sup) {
                sup = value;
                arg = k;
            }
            ratio_power *= n / t;
        }
        if (arg > (4 * k_max) / 5) est.stabilized = false;  // sup still moving near the cutoff
        est.k0 = std::max(est.k0, sup);
    }
    return est;
}

double tail_sum(int i, double t, int n, double k0, double kq) {
    if (i < 0) throw std::domain_error("tail_sum: negative index");
    if (t < 0.0) throw std::domain_error("tail_sum: negative t");
    if (t >= n) throw std::domain_error("tail_sum: series diverges");
    const double x = t / n;
    if (x == 0.0) return 0.0;
    const int m = i + 1;
    const double xm = std::pow(x, m);
    const double g = 1.0 - x;
    // sum_{k>=m} x^k {1, k, k^2}
    const double s0 = xm / g;
    const double s1 = xm * (m / g + x / (g * g));
    const double s2 = xm * (static_cast<double>(m) * m / g + 2.0 * m * x / (g * g) + x * (1.0 + x) / (g * g * g));
    // P(k) = Kq (k+1)(2k+1) = Kq (2k^2 + 3k + 1)
    return k0 * kq * (2.0 * s2 + 3.0 * s1 + s0);
}

}  // namespace freeorth
