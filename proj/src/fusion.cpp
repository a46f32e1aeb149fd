#include "freeorth/fusion.hpp"

#include <cmath>
#include <sstream>

namespace freeorth {

DeformationParameter::DeformationParameter(BigRat delta) : delta_(std::move(delta)) {
    if (delta_ < 2) throw std::domain_error("DeformationParameter: requires delta >= 2");
    delta_double_ = to_double(delta_);
    q_ = q_from_delta(delta_double_);
    kac_ = (denominator(delta_) == 1);
}

int DeformationParameter::integer_n() const {
    if (!kac_) throw std::logic_error("DeformationParameter: delta is not an integer");
    return numerator(delta_).convert_to<int>();
}

double q_from_delta(double delta) {
    if (delta < 2.0) throw std::domain_error("q_from_delta: requires delta >= 2");
    return (delta - std::sqrt(delta * delta - 4.0)) / 2.0;
}

QDimTable::QDimTable(BigRat delta) : delta_(std::move(delta)) {
    if (delta_ < 2) throw std::domain_error("QDimTable: requires delta >= 2");
    values_ = {BigRat(0), BigRat(1)};  // D_{-1}, D_0
}

void QDimTable::ensure(int n) const {
    // callers hold mutex_
    while (static_cast<int>(values_.size()) <= n + 1) {
        const auto sz = values_.size();
        values_.push_back(delta_ * values_[sz - 1] - values_[sz - 2]);
    }
}

BigRat QDimTable::operator()(int n) const {
    if (n < -1) throw std::domain_error("qdim: index out of range");
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return values_[static_cast<std::size_t>(n) + 1];
}

std::vector<int> fuse(int a, int b) {
    if (a < 0 || b < 0) throw std::domain_error("fuse: negative label");
    std::vector<int> out;
    for (int c = std::abs(a - b); c <= a + b; c += 2) out.push_back(c);
    return out;
}

DimLemmaReport dim_lemma_check(const DeformationParameter& param, const QDimTable& dims, int a, int b, int c,
                               int telescoping_bound) {
    if (a <= b) throw std::domain_error("dim_lemma_check: requires a > b");
    if (b < 0 || c < 0) throw std::domain_error("dim_lemma_check: negative label");
    if (param.delta() == 2) throw std::domain_error("dim_lemma_check: q = 1 unsupported for q-power bounds");

    DimLemmaReport rep;
    rep.a = a;
    rep.b = b;
    rep.c = c;
    rep.telescoping_bound = telescoping_bound;

    const double q = param.q();
    const BigRat ratio = dims(b) / dims(a);
    rep.lower_margin = ratio - BigRat(1) / dims(a - b);
    rep.upper_margin = std::pow(q, a - b) - to_double(ratio);
    rep.tail_margin = 1.0 / (1.0 - q * q) - std::pow(q, c) * to_double(dims(c));

    // D_{b+n} D_{a+n+1} = sum of D over fuse(b+n, a+n+1), and the ratio
    // sequence D_{b+n}/D_{a+n} is nondecreasing.
    rep.telescoping_ok = true;
    rep.monotone_ok = true;
    BigRat prev_ratio = dims(b) / dims(a);
    for (int n = 0; n <= telescoping_bound; ++n) {
        BigRat sum = 0;
        for (int ch : fuse(b + n, a + n + 1)) sum += dims(ch);
        if (sum != dims(b + n) * dims(a + n + 1)) {
            rep.telescoping_ok = false;
            std::ostringstream oss;
            oss << "dim_lemma_check: telescoping identity failed at (a=" << a << ", b=" << b << ", n=" << n
                << "): product=" << to_string(dims(b + n) * dims(a + n + 1)) << " sum=" << to_string(sum);
            throw ExactIdentityError(oss.str());
        }
        if (n > 0) {
            BigRat cur = dims(b + n) / dims(a + n);
            if (cur < prev_ratio) rep.monotone_ok = false;
            prev_ratio = cur;
        }
    }

    rep.pass = rep.telescoping_ok && rep.monotone_ok && rep.lower_margin >= 0 && rep.upper_margin >= -1e-12 &&
               rep.tail_margin >= -1e-12;
    return rep;
}

}  // namespace freeorth
