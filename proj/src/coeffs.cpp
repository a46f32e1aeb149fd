#include "freeorth/coeffs.hpp"

#include <cmath>
#include <sstream>

namespace freeorth {

namespace {

[[noreturn]] void fail_exact(const char* what, int i1, int i2, int i3, const BigRat& lhs, const BigRat& rhs) {
    std::ostringstream oss;
    oss << what << " mismatch at (" << i1 << ", " << i2 << ", " << i3 << "): " << to_string(lhs)
        << " != " << to_string(rhs);
    throw ExactIdentityError(oss.str());
}

}  // namespace

CoeffBundle::CoeffBundle(DeformationParameter param)
    : param_(std::move(param)), dims_(std::make_shared<QDimTable>(param_.delta())) {}

BigRat CoeffBundle::n_coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || (a + b + c) % 2 != 0 || c < std::abs(a - b) || c > a + b)
        throw std::domain_error("n_coeff: undefined coefficient");
    const auto& D = *dims_;
    return 1 - D((a - b + c) / 2) * D((b - a + c) / 2 - 1) / (D(a + 1) * D(b));
}

void CoeffBundle::require_jdk(int j, int d, int k) const {
    if (j < 0 || d < 0 || k < 0 || j > d) throw std::domain_error("coeffs: requires 0 <= j <= d, k >= 0");
}

void CoeffBundle::require_jds(int j, int d, int s) const {
    if (j < 0 || d < 0 || j > d || s < 0 || s > std::min(j, d - j))
        throw std::domain_error("coeffs: requires 0 <= s <= min(j, d-j)");
}

BigRat CoeffBundle::mu_sq(int j, int d, int k) const {
    require_jdk(j, d, k);
    BigRat prod = 1;
    for (int i = 0; i < j; ++i) prod *= n_coeff(d - j + i, k + i, d - j + k);
    return prod;
}

BigRat CoeffBundle::chi_sq(int j, int d, int k) const {
    require_jdk(j, d, k);
    const auto& D = *dims_;
    const BigRat mu2 = mu_sq(j, d, k);
    return D(d - j) * D(j + k) / (D(d - j + k) * D(j)) / (mu2 * mu2);
}

double CoeffBundle::chi(int j, int d, int k) const { return std::sqrt(to_double(chi_sq(j, d, k))); }

BigRat CoeffBundle::lambda_coeff(int j, int d, int k) const {
    require_jdk(j, d, k);
    const auto& D = *dims_;
    return D(j + k) / (D(j) * D(k) * mu_sq(j, d, k));
}

BigRat CoeffBundle::nu(int j, int d, int s) const {
    require_jds(j, d, s);
    const auto& D = *dims_;
    BigRat product = 1;
    for (int i = 0; i <= j - s - 1; ++i)
        product *= n_coeff(d - j - s + i, s + i, d - j) / n_coeff(d - j - s + i, s + i + 1, d - j + 1);
    const BigRat closed = D(j) * D(d - j + 1) / (D(s) * D(d - s + 1));
    if (product != closed) fail_exact("nu product/closed form", j, d, s, product, closed);
    return closed;
}

BigRat CoeffBundle::c_coeff(int j, int d, int s) const {
    require_jds(j, d, s);
    const auto& D = *dims_;
    const BigRat value = 1 - BigRat(1) / nu(j, d, s);
    const BigRat closed_abs = D(d - j - s) * D(j - s - 1) / (D(d - j + 1) * D(j));
    const BigRat abs_value = value < 0 ? BigRat(-value) : value;
    if (abs_value != closed_abs) fail_exact("|C| closed form", j, d, s, abs_value, closed_abs);
    const double q = param_.q();
    const double bound = std::pow(q, 2 * s + 2);
    if (to_double(abs_value) > bound * (1.0 + 1e-12)) {
        std::ostringstream oss;
        oss << "|C_" << j << "^" << d << "(" << s << ")| = " << to_double(abs_value) << " exceeds q^{2s+2} = " << bound;
        throw ExactIdentityError(oss.str());
    }
    return value;
}

double CoeffBundle::constant_sum(int j, int d) const {
    if (j < 0 || d < 0 || j > d) throw std::domain_error("constant_sum: requires 0 <= j <= d");
    double sum = 0.0;
    for (int s = 0; s <= std::min(j, d - j); ++s) {
        const BigRat c = c_coeff(j, d, s);
        const BigRat cabs = c < 0 ? BigRat(-c) : c;
        sum += to_double(cabs) * chi(j - s, d - 2 * s, s + 1);
    }
    const double q = param_.q();
    if (1.0 - 2.0 * q * q > 0.0) {
        const double geom = q * q / (1.0 - 2.0 * q * q);
        if (sum > geom * (1.0 + 1e-10)) {
            std::ostringstream oss;
            oss << "constant_sum(" << j << ", " << d << ") = " << sum << " exceeds q^2/(1-2q^2) = " << geom;
            throw ExactIdentityError(oss.str());
        }
    }
    if (q <= 1.0 / std::sqrt(3.0) + 1e-15 && sum > 1.0) {
        std::ostringstream oss;
        oss << "constant_sum(" << j << ", " << d << ") = " << sum << " exceeds 1 at q = " << q;
        throw ExactIdentityError(oss.str());
    }
    return sum;
}

double k_of_q_value(double q) {
    if (!(q < 1.0)) throw std::domain_error("K(q) diverges");
    if (q < 0.0) throw std::domain_error("K(q): negative q");
    double product = 1.0;
    double power = q * q;  // q^{2i+2}
    while (true) {
        const double factor = 1.0 / (1.0 - power);
        product *= factor;
        if (factor - 1.0 < 1e-16) break;
        power *= q * q;
    }
    return product / std::sqrt(1.0 - q * q);
}

double CoeffBundle::k_of_q() const { return k_of_q_value(param_.q()); }

BoundTriple CoeffBundle::bounds(int d) const {
    if (d < 0) throw std::domain_error("bounds: negative degree");
    const double K = k_of_q();
    BoundTriple t;
    t.lower = (d + 1) / 3.0;
    t.refined = K * (2.0 * d * d - d + 1.0);
    t.upper = K * (d + 1.0) * (2.0 * d + 1.0);
    return t;
}

std::pair<BigRat, BigRat> CoeffBundle::nu_telescoping_first(int d, int j, int s, int i) const {
    require_jds(j, d, s);
    if (i < 0 || i > j - s - 1) throw std::domain_error("nu_telescoping_first: i out of range");
    const auto& D = *dims_;
    return {n_coeff(d - j - s + i, s + i + 1, d - j + 1),
            D(i) * D(d - j + i + 2) / (D(d - s - j + i + 1) * D(s + i + 1))};
}

std::pair<BigRat, BigRat> CoeffBundle::nu_telescoping_second(int d, int j, int s, int i) const {
    require_jds(j, d, s);
    if (i < 0 || i > j - s - 1) throw std::domain_error("nu_telescoping_second: i out of range");
    const auto& D = *dims_;
    return {n_coeff(d - s - j + i, s + i, d - j), D(i) * D(d - j + i + 1) / (D(d - s - j + i + 1) * D(s + i))};
}

std::pair<BigRat, BigRat> CoeffBundle::chi_telescoping(int d, int j, int k, int i) const {
    require_jdk(j, d, k);
    if (i < 0 || i > j - 1) throw std::domain_error("chi_telescoping: i out of range");
    const auto& D = *dims_;
    return {n_coeff(d - j + i, k + i, d - j + k), D(i) * D(d - j + k + i + 1) / (D(d - j + i + 1) * D(k + i))};
}

So3Row so3_bound(int d, double delta) {
    if (!(delta > 2.0)) throw std::domain_error("so3_bound: requires delta > 2");
    const double q = q_from_delta(delta);
    So3Row row;
    row.admissible = (q <= 1.0 / std::sqrt(3.0) + 1e-15);
    const double K = k_of_q_value(q);
    const int dd = 2 * d;
    row.bound = K * (dd + 1.0) * (2.0 * dd + 1.0);
    return row;
}

}  // namespace freeorth
