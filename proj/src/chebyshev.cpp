#include "freeorth/chebyshev.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace freeorth {

BigRat DilatedChebyshev::eval_coefficients(const BigRat& x) const {
    BigRat acc = 0;
    for (int i = degree; i >= 0; --i) acc = acc * x + BigRat(coefficients[static_cast<std::size_t>(i)]);
    return acc;
}

namespace {

std::vector<DilatedChebyshev>& mu_table() {
    static std::vector<DilatedChebyshev> table = {
        DilatedChebyshev{0, {BigInt(1)}},
        DilatedChebyshev{1, {BigInt(0), BigInt(1)}},
    };
    return table;
}

std::mutex& mu_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const DilatedChebyshev& chebyshev_mu(int k) {
    if (k < 0) throw std::domain_error("chebyshev_mu: negative degree");
    std::lock_guard<std::mutex> lock(mu_mutex());
    auto& table = mu_table();
    while (static_cast<int>(table.size()) <= k) {
        const auto& a = table[table.size() - 1];  // mu_n
        const auto& b = table[table.size() - 2];  // mu_{n-1}
        DilatedChebyshev next;
        next.degree = a.degree + 1;
        next.coefficients.assign(static_cast<std::size_t>(next.degree) + 1, BigInt(0));
        for (int i = 0; i <= a.degree; ++i)
            next.coefficients[static_cast<std::size_t>(i) + 1] += a.coefficients[static_cast<std::size_t>(i)];
        for (int i = 0; i <= b.degree; ++i)
            next.coefficients[static_cast<std::size_t>(i)] -= b.coefficients[static_cast<std::size_t>(i)];
        table.push_back(std::move(next));
    }
    return table[static_cast<std::size_t>(k)];
}

double eval_mu(int k, double x) {
    if (k < 0) throw std::domain_error("eval_mu: negative degree");
    double prev = 1.0;  // mu_0
    if (k == 0) return prev;
    double cur = x;  // mu_1
    for (int n = 1; n < k; ++n) {
        double next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

BigRat eval_mu_exact(int k, const BigRat& x) {
    if (k < 0) throw std::domain_error("eval_mu_exact: negative degree");
    BigRat prev = 1;
    if (k == 0) return prev;
    BigRat cur = x;
    for (int n = 1; n < k; ++n) {
        BigRat next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

double eval_combination_at_theta(const std::vector<std::pair<double, int>>& comb, double theta) {
    const double x = 2.0 * std::cos(theta);
    double value = 0.0;
    for (const auto& [a, k] : comb) value += a * eval_mu(k, x);
    return std::abs(value);
}

// Golden-section search for the maximum of f on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

}  // namespace

double sup_norm_interval(const std::vector<std::pair<double, int>>& combination) {
    if (combination.empty()) throw std::invalid_argument("sup_norm_interval: empty input");

    const int grid = 100000;
    const double pi = std::numbers::pi;
    auto f = [&](double theta) { return eval_combination_at_theta(combination, theta); };

    std::vector<double> values(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) values[static_cast<std::size_t>(i)] = f(pi * i / grid);

    double best = 0.0;
    for (int i = 0; i <= grid; ++i) best = std::max(best, values[static_cast<std::size_t>(i)]);

    // Refine every interior local maximum of the sampled |f|, plus the endpoints.
    for (int i = 0; i <= grid; ++i) {
        const bool left_ok = (i == 0) || values[static_cast<std::size_t>(i)] >= values[static_cast<std::size_t>(i) - 1];
        const bool right_ok =
            (i == grid) || values[static_cast<std::size_t>(i)] >= values[static_cast<std::size_t>(i) + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = pi * std::max(0, i - 1) / grid;
        const double hi = pi * std::min(grid, i + 1) / grid;
        best = std::max(best, golden_max(f, lo, hi, 1e-10));
    }
    return best;
}

double net_coefficient(int k, double t, double s) {
    if (k < 0) throw std::domain_error("net_coefficient: negative degree");
    if (!(s > 2.0)) throw std::domain_error("net_coefficient: requires s > 2");
    if (t < 0.0 || t > s) throw std::domain_error("net_coefficient: parameter out of range");
    return eval_mu(k, t) / eval_mu(k, s);
}

BigRat net_coefficient_exact(int k, const BigRat& t, const BigRat& s) {
    if (k < 0) throw std::domain_error("net_coefficient_exact: negative degree");
    if (!(s > 2)) throw std::domain_error("net_coefficient_exact: requires s > 2");
    if (t < 0 || t > s) throw std::domain_error("net_coefficient_exact: parameter out of range");
    return eval_mu_exact(k, t) / eval_mu_exact(k, s);
}

}  // namespace freeorth
