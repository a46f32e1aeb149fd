#include "freeorth/tlcat.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace freeorth {

namespace {

long long ipow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

constexpr long long kMaxAmbientEntries = 40'000'000;  // ~0.6 GB of complex doubles

}  // namespace

double GaussianSource::normal() {
    // Box-Muller; only the engine is standard-specified, so roll the
    // transform by hand for cross-platform reproducibility.
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex GaussianSource::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

CMat random_gaussian_matrix(int rows, int cols, GaussianSource& src) {
    CMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = src.complex_normal();
    return m;
}

TemperleyLiebOracle::TemperleyLiebOracle(int n, int degree_cap)
    : n_(n), degree_cap_(degree_cap), dims_(BigRat(n)) {
    if (n < 3) throw std::domain_error("TemperleyLiebOracle: requires N >= 3");
    if (degree_cap < 1) throw std::domain_error("TemperleyLiebOracle: degree cap must be positive");
}

int TemperleyLiebOracle::dim(int k) const {
    if (k < -1) throw std::domain_error("dim: index out of range");
    if (k == -1) return 0;
    return dims_(k).convert_to<int>();
}

void TemperleyLiebOracle::require_degree(int deg) const {
    if (deg < 0 || deg > degree_cap_) throw DegreeCapError("oracle degree cap");
}

CMat TemperleyLiebOracle::tl_generator(int strand, int deg) const {
    if (deg < 2 || deg > degree_cap_ + 1) throw DegreeCapError("oracle degree cap");
    if (strand < 1 || strand > deg - 1) throw std::out_of_range("tl_generator: index out of range");
    const long long dim = ipow(n_, deg);
    CMat id = CMat::Identity(dim, dim);
    return kernels::tl_cap_apply(id, strand, deg, n_, 1.0 / n_);
}

const CMat& TemperleyLiebOracle::jones_wenzl_unlocked(int deg) {
    auto it = jw_.find(deg);
    if (it != jw_.end()) return it->second.matrix;
    if (jw_.empty()) {
        jw_[0] = JonesWenzlProjector{0, n_, 1, CMat::Ones(1, 1)};
        jw_[1] = JonesWenzlProjector{1, n_, n_, CMat::Identity(n_, n_)};
    }
    int have = jw_.rbegin()->first;
    while (have < deg) {
        const CMat& p = jw_[have].matrix;
        CMat padded = kernels::kron(p, CMat::Identity(n_, n_));
        CMat capped = kernels::tl_cap_apply(padded, have, have + 1, n_, 1.0);
        CMat sandwiched = kernels::kron_id_right_apply(p, capped, n_);
        const double coeff = to_double(dims_(have - 1) / dims_(have));
        CMat next = padded - coeff * sandwiched;
        ++have;
        jw_[have] = JonesWenzlProjector{have, n_, dim(have), std::move(next)};
    }
    return jw_[deg].matrix;
}

const JonesWenzlProjector& TemperleyLiebOracle::jones_wenzl(int deg) {
    require_degree(deg);
    std::lock_guard<std::mutex> lock(mutex_);
    jones_wenzl_unlocked(deg);
    return jw_[deg];
}

const CMat& TemperleyLiebOracle::carrier_basis_unlocked(int deg) {
    auto it = basis_.find(deg);
    if (it != basis_.end()) return it->second;
    const CMat& p = jones_wenzl_unlocked(deg);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (p + CMat(p.adjoint())));
    const long long rank = dim(deg);
    const long long total = p.rows();
    if (es.eigenvalues()(total - rank) < 0.5 || (total > rank && es.eigenvalues()(total - rank - 1) > 0.5)) {
        std::ostringstream oss;
        oss << "carrier_basis: projector rank at degree " << deg << " does not match D_" << deg << " = " << rank;
        throw std::runtime_error(oss.str());
    }
    basis_[deg] = es.eigenvectors().rightCols(rank);
    return basis_[deg];
}

const CMat& TemperleyLiebOracle::carrier_basis(int deg) {
    require_degree(deg);
    std::lock_guard<std::mutex> lock(mutex_);
    return carrier_basis_unlocked(deg);
}

CMat TemperleyLiebOracle::intertwiner_columns_ambient(int a, int b, int gamma, const CMat& source_cols) {
    const int m = (a + b - gamma) / 2;
    if (ipow(n_, a + b) * source_cols.cols() > kMaxAmbientEntries) throw DegreeCapError("oracle degree cap");
    CMat inserted = kernels::cup_insert(source_cols, a, b, m, n_);
    return kernels::proj_pair_apply(jones_wenzl_unlocked(a), jones_wenzl_unlocked(b), inserted);
}

TLMorphism TemperleyLiebOracle::iso_intertwiner(int a, int b, int gamma) {
    require_degree(a);
    require_degree(b);
    require_degree(gamma);
    const auto channels = fuse(a, b);
    if (std::find(channels.begin(), channels.end(), gamma) == channels.end())
        throw std::domain_error("iso_intertwiner: zero intertwiner space");
    std::lock_guard<std::mutex> lock(mutex_);
    CMat w = intertwiner_columns_ambient(a, b, gamma, jones_wenzl_unlocked(gamma));
    const double scale = w.squaredNorm() / dim(gamma);
    if (!(scale > 1e-12)) throw std::runtime_error("iso_intertwiner: degenerate normalization scalar");
    TLMorphism out;
    out.source_degree = gamma;
    out.target_degree = a + b;
    out.n = n_;
    out.matrix = w / std::sqrt(scale);
    return out;
}

const CMat& TemperleyLiebOracle::intertwiner_unlocked(int a, int b, int gamma) {
    const std::array<int, 3> key{a, b, gamma};
    auto it = inter_.find(key);
    if (it != inter_.end()) return it->second;
    const auto channels = fuse(a, b);
    if (std::find(channels.begin(), channels.end(), gamma) == channels.end())
        throw std::domain_error("intertwiner: zero intertwiner space");
    const CMat& ua = carrier_basis_unlocked(a);
    const CMat& ub = carrier_basis_unlocked(b);
    const CMat& ug = carrier_basis_unlocked(gamma);
    CMat ambient = intertwiner_columns_ambient(a, b, gamma, ug);
    CMat w = kernels::compress_pair(ua, ub, ambient);
    // Multiplicity one: w^dagger w must be a positive scalar times the identity.
    CMat gram = kernels::gemm_adj_a(w, w);
    const double scale = gram.real().trace() / dim(gamma);
    if (!(scale > 1e-12)) throw std::runtime_error("intertwiner: degenerate normalization scalar");
    const double defect = (gram - scale * CMat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-6 * scale) {
        std::ostringstream oss;
        oss << "intertwiner(" << a << ", " << b << ", " << gamma << "): W*W deviates from a scalar by " << defect;
        throw std::runtime_error(oss.str());
    }
    inter_[key] = w / std::sqrt(scale);
    return inter_[key];
}

const CMat& TemperleyLiebOracle::intertwiner(int a, int b, int gamma) {
    require_degree(a);
    require_degree(b);
    require_degree(gamma);
    std::lock_guard<std::mutex> lock(mutex_);
    return intertwiner_unlocked(a, b, gamma);
}

const CMat& TemperleyLiebOracle::cup_matrix_unlocked(int j) {
    auto it = cups_.find(j);
    if (it != cups_.end()) return it->second;
    CMat one = CMat::Ones(1, 1);
    CMat ambient = intertwiner_columns_ambient(j, j, 0, one);
    const CMat& u = carrier_basis_unlocked(j);
    CMat flat = kernels::compress_pair(u, u, ambient);  // D_j^2 x 1
    const int d = dim(j);
    CMat cup(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) cup(r, c) = flat(r * d + c, 0);
    cups_[j] = std::move(cup);
    return cups_[j];
}

const CMat& TemperleyLiebOracle::cup_matrix(int j) {
    require_degree(j);
    std::lock_guard<std::mutex> lock(mutex_);
    return cup_matrix_unlocked(j);
}

double TemperleyLiebOracle::m_plus_norm(int k, int l) {
    const CMat& w = intertwiner(l, k, l + k);
    const double sigma = operator_norm(w);
    return std::sqrt(static_cast<double>(dim(l)) * dim(k) / dim(l + k)) * sigma * sigma;
}

double TemperleyLiebOracle::m_plus_attained_ratio(int k, int l) {
    const CMat& w = intertwiner(l, k, l + k);
    CMat x = w * w.adjoint();
    CMat image = kernels::sandwich(w, x);
    const double src = std::sqrt(x.squaredNorm() / (static_cast<double>(dim(l)) * dim(k)));
    const double tgt = std::sqrt(image.squaredNorm() / static_cast<double>(dim(l + k)));
    return tgt / src;
}

double TemperleyLiebOracle::m_plus_adjoint_pairing_error(int k, int l, std::uint64_t seed, int samples) {
    const CMat& w = intertwiner(l, k, l + k);
    const int src = dim(l) * dim(k);
    const int tgt = dim(l + k);
    const double weight = static_cast<double>(dim(l)) * dim(k) / dim(l + k);
    GaussianSource gen(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        CMat x = random_gaussian_matrix(src, src, gen);
        CMat y = random_gaussian_matrix(tgt, tgt, gen);
        const Complex lhs = (kernels::sandwich(w, x).adjoint() * y).trace() / static_cast<double>(tgt);
        const Complex rhs = (x.adjoint() * (weight * (w * y * w.adjoint()))).trace() / static_cast<double>(src);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    return worst;
}

double TemperleyLiebOracle::m_plus_adjoint_matrix_error(int k, int l) {
    const CMat& w = intertwiner(l, k, l + k);
    const long long src = static_cast<long long>(dim(l)) * dim(k);
    const long long tgt = dim(l + k);
    if (src * src * tgt * tgt > 8'000'000) throw DegreeCapError("oracle degree cap");
    const double weight = static_cast<double>(src) / tgt;
    CMat forward = std::sqrt(weight) * kernels::kron(w.adjoint(), w.transpose());
    CMat closed = std::sqrt(1.0 / weight) * weight * kernels::kron(w, w.conjugate());
    return (CMat(forward.adjoint()) - closed).norm() / closed.norm();
}

double TemperleyLiebOracle::morphism_norm_ratio(int j, int d, int k) {
    if (j < 0 || j > d || k < 0) throw std::domain_error("morphism_norm_ratio: requires 0 <= j <= d, k >= 0");
    const CMat& w1 = intertwiner(d - j, k, d - j + k);           // H_{d-j+k} -> H_{d-j} (x) H_k
    const CMat& wd = intertwiner(d - j, j, d);                   // H_d -> H_{d-j} (x) H_j
    const CMat& wjk = intertwiner(j, k, j + k);                  // H_{j+k} -> H_j (x) H_k
    const CMat& cup = cup_matrix(j);                             // t_j as D_j x D_j
    const int da = dim(d - j), dj = dim(j), dk = dim(k), dd = dim(d), djk = dim(j + k), dsrc = dim(d - j + k);

    // mid = (1_{d-j} (x) t_j (x) 1_k) w1, columns in H_{d-j} (x) H_j (x) H_j (x) H_k
    CMat mid = CMat::Zero(static_cast<long long>(da) * dj * dj * dk, dsrc);
    for (int col = 0; col < dsrc; ++col)
        for (int alpha = 0; alpha < da; ++alpha)
            for (int kap = 0; kap < dk; ++kap) {
                const Complex base = w1(alpha * dk + kap, col);
                if (base == Complex(0, 0)) continue;
                for (int r = 0; r < dj; ++r)
                    for (int rp = 0; rp < dj; ++rp)
                        mid(((static_cast<long long>(alpha) * dj + r) * dj + rp) * dk + kap, col) += base * cup(r, rp);
            }

    // ta = (v_+^{d-j,j} (x) 1_j (x) 1_k) mid, with v_+^{j,0} the identity on H_j
    CMat ta = CMat::Zero(static_cast<long long>(dd) * dj * dk, dsrc);
    for (int col = 0; col < dsrc; ++col)
        for (int g = 0; g < dd; ++g)
            for (int rp = 0; rp < dj; ++rp)
                for (int kap = 0; kap < dk; ++kap) {
                    Complex acc(0, 0);
                    for (int alpha = 0; alpha < da; ++alpha)
                        for (int r = 0; r < dj; ++r)
                            acc += std::conj(wd(alpha * dj + r, g)) *
                                   mid(((static_cast<long long>(alpha) * dj + r) * dj + rp) * dk + kap, col);
                    ta((static_cast<long long>(g) * dj + rp) * dk + kap, col) = acc;
                }

    // tb = (1_d (x) v_+^{j,k}) ta
    CMat tb = CMat::Zero(static_cast<long long>(dd) * djk, dsrc);
    for (int col = 0; col < dsrc; ++col)
        for (int g = 0; g < dd; ++g)
            for (int h = 0; h < djk; ++h) {
                Complex acc(0, 0);
                for (int rp = 0; rp < dj; ++rp)
                    for (int kap = 0; kap < dk; ++kap)
                        acc += std::conj(wjk(rp * dk + kap, h)) *
                               ta((static_cast<long long>(g) * dj + rp) * dk + kap, col);
                tb(static_cast<long long>(g) * djk + h, col) = acc;
            }

    const double na = operator_norm(ta);
    const double nb = operator_norm(tb);
    return (nb * nb) / (na * na);
}

}  // namespace freeorth
