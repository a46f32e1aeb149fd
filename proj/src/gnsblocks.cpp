#include "freeorth/gnsblocks.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "freeorth/chebyshev.hpp"

namespace freeorth {

namespace {

constexpr long long kMaxBlockEntries = 30'000'000;

std::string index_string(std::initializer_list<std::pair<const char*, int>> items) {
    std::ostringstream oss;
    bool first = true;
    for (const auto& [k, v] : items) {
        if (!first) oss << ", ";
        oss << k << "=" << v;
        first = false;
    }
    return oss.str();
}

double rel_deviation(const CMat& a, const CMat& b) {
    const double scale = std::max(a.norm(), b.norm());
    if (scale < 1e-300) return 0.0;
    return (a - b).norm() / scale;
}

}  // namespace

std::vector<int> GnsElement::support() const {
    std::set<int> degs;
    for (const auto& t : terms) degs.insert(t.degree);
    return {degs.begin(), degs.end()};
}

GnsElement project_d(const GnsElement& x, int d) {
    GnsElement out;
    out.aux_dim = x.aux_dim;
    for (const auto& t : x.terms)
        if (t.degree == d) out.terms.push_back(t);
    return out;
}

GnsTruncation::GnsTruncation(std::shared_ptr<TemperleyLiebOracle> oracle, int k_max)
    : oracle_(std::move(oracle)), k_max_(k_max), coeffs_(DeformationParameter(BigRat(oracle_->n()))) {
    if (k_max_ < 0 || k_max_ > oracle_->degree_cap())
        throw std::domain_error("GnsTruncation: K_max must lie within the oracle degree cap");
}

GnsElement GnsTruncation::random_element(int aux_dim, const std::vector<int>& degrees, std::uint64_t seed) const {
    GaussianSource src(seed);
    GnsElement x;
    x.aux_dim = aux_dim;
    for (int l : degrees) {
        if (l < 0 || l > k_max_) throw TruncationError("random_element: degree outside truncation");
        GnsTerm term;
        term.degree = l;
        term.aux = random_gaussian_matrix(aux_dim, aux_dim, src);
        term.x = random_gaussian_matrix(dim(l), dim(l), src);
        x.terms.push_back(std::move(term));
    }
    return x;
}

std::map<int, CMat> GnsTruncation::gns_action(const CMat& x, int d, const CMat& xi, int b) const {
    if (d < 0 || b < 0) throw std::domain_error("gns_action: negative degree");
    std::vector<int> offenders;
    for (int g : fuse(d, b))
        if (g > k_max_) offenders.push_back(g);
    if (d > k_max_ || b > k_max_ || !offenders.empty()) {
        std::ostringstream oss;
        oss << "gns_action: truncation overflow";
        if (!offenders.empty()) {
            oss << ", channels above K_max:";
            for (int g : offenders) oss << " " << g;
        }
        throw TruncationError(oss.str());
    }
    std::map<int, CMat> out;
    for (int g : fuse(d, b)) out[g] = kernels::ad_apply(oracle_->intertwiner(d, b, g), x, xi);
    return out;
}

long long GnsTruncation::segment_offset(int k, int aux_dim) const {
    long long off = 0;
    for (int i = 0; i < k; ++i) off += static_cast<long long>(aux_dim) * dim(i) * dim(i);
    return off;
}

long long GnsTruncation::total_dim(int aux_dim) const { return segment_offset(k_max_ + 1, aux_dim); }

namespace {

// weighted segment <-> matrix helpers
CMat unpack_segment(const CVec& v, long long off, int u, int d, double sqrt_weight) {
    CMat m(d, d);
    const long long base = off + static_cast<long long>(u) * d * d;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = v(base + static_cast<long long>(r) * d + c) * sqrt_weight;
    return m;
}

void accumulate_segment(CVec& v, long long off, int u, const CMat& m, Complex factor, double inv_sqrt_weight) {
    const int d = static_cast<int>(m.rows());
    const long long base = off + static_cast<long long>(u) * d * d;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) v(base + static_cast<long long>(r) * d + c) += factor * m(r, c) * inv_sqrt_weight;
}

}  // namespace

CVec GnsTruncation::apply(const GnsElement& x, const CVec& v) const {
    const int m = x.aux_dim;
    if (v.size() != total_dim(m)) throw std::invalid_argument("apply: vector length mismatch");
    CVec out = CVec::Zero(v.size());
    for (const auto& term : x.terms) {
        for (int b = 0; b <= k_max_; ++b) {
            const long long off_b = segment_offset(b, m);
            const double sw = std::sqrt(static_cast<double>(dim(b)));
            for (int g : fuse(term.degree, b)) {
                if (g > k_max_) continue;
                const CMat& w = oracle_->intertwiner(term.degree, b, g);
                const long long off_g = segment_offset(g, m);
                const double isw = 1.0 / std::sqrt(static_cast<double>(dim(g)));
                for (int u = 0; u < m; ++u) {
                    CMat xi = unpack_segment(v, off_b, u, dim(b), sw);
                    if (xi.norm() == 0.0) continue;
                    CMat eta = kernels::ad_apply(w, term.x, xi);
                    for (int ut = 0; ut < m; ++ut) {
                        const Complex f = term.aux(ut, u);
                        if (f != Complex(0, 0)) accumulate_segment(out, off_g, ut, eta, f, isw);
                    }
                }
            }
        }
    }
    return out;
}

CVec GnsTruncation::apply_adjoint(const GnsElement& x, const CVec& v) const {
    const int m = x.aux_dim;
    if (v.size() != total_dim(m)) throw std::invalid_argument("apply_adjoint: vector length mismatch");
    CVec out = CVec::Zero(v.size());
    for (const auto& term : x.terms) {
        for (int b = 0; b <= k_max_; ++b) {
            const long long off_b = segment_offset(b, m);
            const double isw = 1.0 / std::sqrt(static_cast<double>(dim(b)));
            for (int a : fuse(term.degree, b)) {
                if (a > k_max_) continue;
                const CMat& w = oracle_->intertwiner(term.degree, b, a);
                const long long off_a = segment_offset(a, m);
                const double sw = std::sqrt(static_cast<double>(dim(a)));
                const double weight = static_cast<double>(dim(b)) / dim(a);
                for (int p = 0; p < m; ++p) {
                    CMat eta = unpack_segment(v, off_a, p, dim(a), sw);
                    if (eta.norm() == 0.0) continue;
                    CMat xi = weight * kernels::ad_adjoint_apply(w, term.x, eta);
                    for (int q = 0; q < m; ++q) {
                        const Complex f = std::conj(term.aux(p, q));
                        if (f != Complex(0, 0)) accumulate_segment(out, off_b, q, xi, f, isw);
                    }
                }
            }
        }
    }
    return out;
}

CMat GnsTruncation::block_matrix(const GnsElement& x, int a, int b) const {
    if (a < 0 || a > k_max_ || b < 0 || b > k_max_) throw TruncationError("block_matrix: degree outside truncation");
    const int m = x.aux_dim;
    const long long rows = static_cast<long long>(m) * dim(a) * dim(a);
    const long long cols = static_cast<long long>(m) * dim(b) * dim(b);
    if (rows * cols > kMaxBlockEntries) throw std::length_error("block_matrix: too large to materialize");
    CMat out = CMat::Zero(rows, cols);
    const double weight = std::sqrt(static_cast<double>(dim(b)) / dim(a));
    for (const auto& term : x.terms) {
        const auto channels = fuse(term.degree, b);
        if (std::find(channels.begin(), channels.end(), a) == channels.end()) continue;
        const CMat& w = oracle_->intertwiner(term.degree, b, a);
        CMat ad = kernels::ad_map_matrix(w, term.x);
        out += weight * kernels::kron(term.aux, ad);
    }
    return out;
}

CVec GnsTruncation::block_apply_dual_route(const GnsElement& x, int a, int b, const CVec& segment) const {
    // Independent route for cross-checks: explicit Kronecker product plus a
    // plain sandwich instead of the fused ad_apply kernel.
    const int m = x.aux_dim;
    CVec out = CVec::Zero(static_cast<long long>(m) * dim(a) * dim(a));
    const double sw = std::sqrt(static_cast<double>(dim(b)));
    const double isw = 1.0 / std::sqrt(static_cast<double>(dim(a)));
    for (const auto& term : x.terms) {
        const auto channels = fuse(term.degree, b);
        if (std::find(channels.begin(), channels.end(), a) == channels.end()) continue;
        const CMat& w = oracle_->intertwiner(term.degree, b, a);
        for (int u = 0; u < m; ++u) {
            CMat xi = unpack_segment(segment, 0, u, dim(b), sw);
            CMat eta = kernels::sandwich(w, kernels::kron(term.x, xi));
            for (int ut = 0; ut < m; ++ut) {
                const Complex f = term.aux(ut, u);
                if (f != Complex(0, 0)) accumulate_segment(out, 0, ut, eta, f, isw);
            }
        }
    }
    return out;
}

double GnsTruncation::block_norm(const GnsElement& x, int a, int b) const {
    try {
        return operator_norm(block_matrix(x, a, b));
    } catch (const std::length_error&) {
        // power iteration on the single block
        const int m = x.aux_dim;
        GnsElement shifted = x;  // same terms; block application below restricts to (a, b)
        const long long nb = static_cast<long long>(m) * dim(b) * dim(b);
        GaussianSource src(12345);
        CVec v(nb);
        for (long long i = 0; i < nb; ++i) v(i) = src.complex_normal();
        v.normalize();
        double best = 0.0;
        const double sw_b = std::sqrt(static_cast<double>(dim(b)));
        const double sw_a = std::sqrt(static_cast<double>(dim(a)));
        for (int it = 0; it < 120; ++it) {
            CVec u = block_apply_dual_route(shifted, a, b, v);
            const double sigma = u.norm();
            best = std::max(best, sigma);
            if (sigma == 0.0) break;
            // adjoint of the block
            CVec back = CVec::Zero(nb);
            for (const auto& term : shifted.terms) {
                const auto channels = fuse(term.degree, b);
                if (std::find(channels.begin(), channels.end(), a) == channels.end()) continue;
                const CMat& w = oracle_->intertwiner(term.degree, b, a);
                const double weight = static_cast<double>(dim(b)) / dim(a);
                for (int p = 0; p < m; ++p) {
                    CMat eta = unpack_segment(u, 0, p, dim(a), sw_a);
                    CMat xi = weight * kernels::ad_adjoint_apply(w, term.x, eta);
                    for (int q = 0; q < m; ++q) {
                        const Complex f = std::conj(term.aux(p, q));
                        if (f != Complex(0, 0)) accumulate_segment(back, 0, q, xi, f, 1.0 / sw_b);
                    }
                }
            }
            const double bn = back.norm();
            if (bn == 0.0) break;
            CVec next = back / bn;
            if ((next - v).norm() < 1e-12) {
                v = next;
                break;
            }
            v = next;
        }
        return best;
    }
}

NormEstimate GnsTruncation::truncated_norm(const GnsElement& x, int power_iters, std::uint64_t seed,
                                           const std::vector<CVec>& probes) const {
    const long long total = total_dim(x.aux_dim);
    NormEstimate est;
    CVec start = CVec::Zero(total);
    double best_probe = -1.0;
    for (const auto& p : probes) {
        if (p.size() != total || p.norm() == 0.0) continue;
        CVec q = p / p.norm();
        const double sigma = apply(x, q).norm();
        est.value = std::max(est.value, sigma);
        if (sigma > best_probe) {
            best_probe = sigma;
            start = q;
        }
    }
    GaussianSource src(seed);
    CVec noise(total);
    for (long long i = 0; i < total; ++i) noise(i) = src.complex_normal();
    noise.normalize();
    CVec v = start.norm() > 0 ? CVec(0.9 * start + 0.1 * noise) : noise;
    v.normalize();
    double prev = 0.0;
    for (int it = 0; it < power_iters; ++it) {
        CVec u = apply(x, v);
        const double sigma = u.norm();
        est.value = std::max(est.value, sigma);
        est.iterations = it + 1;
        if (sigma == 0.0) break;
        CVec back = apply_adjoint(x, u);
        const double bn = back.norm();
        if (bn == 0.0) break;
        v = back / bn;
        if (std::abs(sigma - prev) < 1e-11 * std::max(1.0, sigma)) break;
        prev = sigma;
    }
    return est;
}

CMat GnsTruncation::composite_intertwiner(int d, int j, int k) const {
    // V = (1_d (x) w_{j+k}^{j,k *})(w_{d-j}^{d,j} (x) 1_k) w_{d-j+k}^{d-j,k}
    const CMat& wa = oracle_->intertwiner(d, j, d - j);
    const CMat& wb = oracle_->intertwiner(d - j, k, d - j + k);
    const CMat& wc = oracle_->intertwiner(j, k, j + k);
    const int dx = dim(d), dj = dim(j), dk = dim(k), dm = dim(d - j), ds = dim(d - j + k), dh = dim(j + k);

    CMat m1 = CMat::Zero(static_cast<long long>(dx) * dj * dk, ds);
    for (int col = 0; col < ds; ++col)
        for (int alpha = 0; alpha < dm; ++alpha)
            for (int kap = 0; kap < dk; ++kap) {
                const Complex base = wb(alpha * dk + kap, col);
                if (base == Complex(0, 0)) continue;
                for (int g = 0; g < dx; ++g)
                    for (int r = 0; r < dj; ++r)
                        m1((static_cast<long long>(g) * dj + r) * dk + kap, col) += wa(g * dj + r, alpha) * base;
            }

    CMat v = CMat::Zero(static_cast<long long>(dx) * dh, ds);
    for (int col = 0; col < ds; ++col)
        for (int g = 0; g < dx; ++g)
            for (int h = 0; h < dh; ++h) {
                Complex acc(0, 0);
                for (int r = 0; r < dj; ++r)
                    for (int kap = 0; kap < dk; ++kap)
                        acc += std::conj(wc(r * dk + kap, h)) * m1((static_cast<long long>(g) * dj + r) * dk + kap, col);
                v(static_cast<long long>(g) * dh + h, col) = acc;
            }
    return v;
}

CMat GnsTruncation::recursion_intertwiner(int l, int d, int j) const {
    // V = (1_l (x) w_{j+1}^{j,1 *})(w_{d-j}^{l,j} (x) 1_1) w_{d-j+1}^{d-j,1}
    const CMat& wa = oracle_->intertwiner(l, j, d - j);
    const CMat& wb = oracle_->intertwiner(d - j, 1, d - j + 1);
    const CMat& wc = oracle_->intertwiner(j, 1, j + 1);
    const int dl = dim(l), dj = dim(j), d1 = dim(1), dm = dim(d - j), ds = dim(d - j + 1), dh = dim(j + 1);

    CMat m1 = CMat::Zero(static_cast<long long>(dl) * dj * d1, ds);
    for (int col = 0; col < ds; ++col)
        for (int alpha = 0; alpha < dm; ++alpha)
            for (int kap = 0; kap < d1; ++kap) {
                const Complex base = wb(alpha * d1 + kap, col);
                if (base == Complex(0, 0)) continue;
                for (int e = 0; e < dl; ++e)
                    for (int r = 0; r < dj; ++r)
                        m1((static_cast<long long>(e) * dj + r) * d1 + kap, col) += wa(e * dj + r, alpha) * base;
            }

    CMat v = CMat::Zero(static_cast<long long>(dl) * dh, ds);
    for (int col = 0; col < ds; ++col)
        for (int e = 0; e < dl; ++e)
            for (int h = 0; h < dh; ++h) {
                Complex acc(0, 0);
                for (int r = 0; r < dj; ++r)
                    for (int kap = 0; kap < d1; ++kap)
                        acc += std::conj(wc(r * d1 + kap, h)) * m1((static_cast<long long>(e) * dj + r) * d1 + kap, col);
                v(static_cast<long long>(e) * dh + h, col) = acc;
            }
    return v;
}

CheckRecord GnsTruncation::verify_block_transfer(const GnsElement& x, int d, int j, int k,
                                                 std::uint64_t seed) const {
    const int a = d - j + k, b = j + k;
    if (d > k_max_ || a > k_max_ || b > k_max_) throw TruncationError("verify_block_transfer: truncation overflow");
    GnsElement xd = project_d(x, d);
    CMat lhs = block_matrix(xd, a, b);

    const double lambda = to_double(coeffs_.lambda_coeff(j, d, k));
    const double mfactor = static_cast<double>(dim(j)) * dim(k) / dim(j + k);
    const double weight = std::sqrt(static_cast<double>(dim(b)) / dim(a));
    CMat v = composite_intertwiner(d, j, k);
    CMat rhs = CMat::Zero(lhs.rows(), lhs.cols());
    for (const auto& term : xd.terms) rhs += weight * kernels::kron(term.aux, kernels::ad_map_matrix(v, term.x));
    rhs *= lambda * mfactor;

    CheckRecord rec;
    rec.name = "block_transfer";
    rec.indices = index_string({{"d", d}, {"j", j}, {"k", k}});
    rec.seed = seed;
    rec.lhs = lhs.norm();
    rec.rhs = rhs.norm();
    rec.tolerance = 1e-8;
    const double dev = rel_deviation(lhs, rhs);
    rec.margin = rec.tolerance - dev;
    rec.pass = dev <= rec.tolerance;
    std::ostringstream oss;
    oss << "lambda=" << lambda << ", rel_dev=" << dev;
    rec.note = oss.str();
    return rec;
}

std::vector<CheckRecord> GnsTruncation::verify_recursion(const GnsElement& x, int d, int j,
                                                         std::uint64_t seed) const {
    const int a = d - j + 1, b = j + 1;
    if (d + 2 > k_max_ || a > k_max_ || b > k_max_) throw TruncationError("verify_recursion: truncation overflow");
    for (int l : x.support())
        if (l != d + 2 && !(l <= d && (d - l) % 2 == 0))
            throw std::domain_error("verify_recursion: element must be supported in {d-2s} and {d+2}");

    std::vector<CheckRecord> records;
    const int smax = std::min(j, d - j);

    // middle term, assembled per input degree
    auto middle_for = [&](const GnsElement& part) {
        CMat mid = CMat::Zero(static_cast<long long>(part.aux_dim) * dim(a) * dim(a),
                              static_cast<long long>(part.aux_dim) * dim(b) * dim(b));
        const double weight = std::sqrt(static_cast<double>(dim(b)) / dim(a));
        for (const auto& term : part.terms) {
            const auto channels = fuse(term.degree, j);
            if (std::find(channels.begin(), channels.end(), d - j) == channels.end()) continue;
            CMat v = recursion_intertwiner(term.degree, d, j);
            mid += weight * kernels::kron(term.aux, kernels::ad_map_matrix(v, term.x));
        }
        return mid;
    };

    // per-degree identity B = nu_j^d(s) * A for input degree l = d - 2s
    for (int s = 0; s <= smax; ++s) {
        const int l = d - 2 * s;
        GnsElement part = project_d(x, l);
        if (part.terms.empty()) continue;
        CMat bm = block_matrix(part, a, b);
        CMat am = middle_for(part);
        const double nu = to_double(coeffs_.nu(j, d, s));
        CheckRecord rec;
        rec.name = "recursion_per_degree";
        rec.indices = index_string({{"d", d}, {"j", j}, {"s", s}, {"l", l}});
        rec.seed = seed;
        rec.lhs = bm.norm();
        rec.rhs = nu * am.norm();
        rec.tolerance = 1e-8;
        const double dev = rel_deviation(bm, CMat(nu * am));
        rec.margin = rec.tolerance - dev;
        rec.pass = dev <= rec.tolerance;
        std::ostringstream oss;
        oss << "nu=" << nu << ", rel_dev=" << dev;
        rec.note = oss.str();
        records.push_back(std::move(rec));
    }

    // the middle term vanishes on the degree-(d+2) part
    {
        GnsElement top = project_d(x, d + 2);
        if (!top.terms.empty()) {
            CMat am = middle_for(top);
            CheckRecord rec;
            rec.name = "recursion_top_vanishes";
            rec.indices = index_string({{"d", d}, {"j", j}});
            rec.seed = seed;
            rec.lhs = am.norm();
            rec.rhs = 0.0;
            rec.tolerance = 1e-12;
            rec.margin = rec.tolerance - rec.lhs;
            rec.pass = rec.lhs <= rec.tolerance;
            rec.note = "A = 0 at l = d+2";
            records.push_back(std::move(rec));
        }
    }

    // full identity
    {
        CMat lhs = block_matrix(x, a, b) - middle_for(x);
        CMat rhs = block_matrix(project_d(x, d + 2), a, b);
        for (int s = 0; s <= smax; ++s) {
            const double c = to_double(coeffs_.c_coeff(j, d, s));
            GnsElement part = project_d(x, d - 2 * s);
            if (part.terms.empty()) continue;
            rhs += c * block_matrix(part, a, b);
        }
        CheckRecord rec;
        rec.name = "recursion_full";
        rec.indices = index_string({{"d", d}, {"j", j}});
        rec.seed = seed;
        rec.lhs = lhs.norm();
        rec.rhs = rhs.norm();
        rec.tolerance = 1e-8;
        const double dev = rel_deviation(lhs, rhs);
        rec.margin = rec.tolerance - dev;
        rec.pass = dev <= rec.tolerance;
        std::ostringstream oss;
        oss << "rel_dev=" << dev;
        rec.note = oss.str();
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CheckRecord> GnsTruncation::verify_block_decomposition(const GnsElement& x, int d,
                                                                   std::uint64_t seed) const {
    if (d > k_max_) throw TruncationError("verify_block_decomposition: truncation overflow");
    GnsElement xd = project_d(x, d);
    const int m = xd.aux_dim;
    std::vector<CheckRecord> records;
    GaussianSource src(seed);

    for (int b = 0; b <= k_max_; ++b) {
        // random probe supported at degree b
        CVec probe = CVec::Zero(total_dim(m));
        const long long off = segment_offset(b, m);
        const long long len = static_cast<long long>(m) * dim(b) * dim(b);
        for (long long i = 0; i < len; ++i) probe(off + i) = src.complex_normal();
        probe.normalize();
        CVec image = apply(xd, probe);

        // reconstruction through the independent kron+sandwich route
        CVec rebuilt = CVec::Zero(total_dim(m));
        for (int j = 0; j <= std::min(d, b); ++j) {
            const int a = d + b - 2 * j;
            if (a > k_max_) continue;
            CVec seg = probe.segment(off, len);
            CVec out_seg = block_apply_dual_route(xd, a, b, seg);
            rebuilt.segment(segment_offset(a, m), out_seg.size()) += out_seg;
        }
        CheckRecord rec;
        rec.name = "block_decomposition";
        rec.indices = index_string({{"d", d}, {"b", b}});
        rec.seed = seed;
        rec.lhs = image.norm();
        rec.rhs = rebuilt.norm();
        rec.tolerance = 1e-10;
        const double dev = (image - rebuilt).norm() / std::max(1.0, image.norm());
        rec.margin = rec.tolerance - dev;
        rec.pass = dev <= rec.tolerance;
        records.push_back(std::move(rec));

        // vanishing pattern: segments at degrees not of the form d + b - 2j are zero
        double off_mass = 0.0;
        for (int c = 0; c <= k_max_; ++c) {
            bool allowed = false;
            for (int j = 0; j <= std::min(d, b); ++j)
                if (c == d + b - 2 * j) allowed = true;
            if (allowed) continue;
            off_mass += image.segment(segment_offset(c, m), static_cast<long long>(m) * dim(c) * dim(c)).norm();
        }
        CheckRecord van;
        van.name = "block_vanishing";
        van.indices = index_string({{"d", d}, {"b", b}});
        van.seed = seed;
        van.lhs = off_mass;
        van.rhs = 0.0;
        van.tolerance = 1e-12;
        van.margin = van.tolerance - off_mass;
        van.pass = off_mass <= van.tolerance;
        records.push_back(std::move(van));
    }

    // B_{d,0}(X^d) = B_{d,0}(X)
    {
        CMat left = block_matrix(xd, d, 0);
        CMat right = block_matrix(x, d, 0);
        CheckRecord rec;
        rec.name = "block_corner_projection";
        rec.indices = index_string({{"d", d}});
        rec.seed = seed;
        rec.lhs = left.norm();
        rec.rhs = right.norm();
        rec.tolerance = 0.0;
        const double dev = (left - right).norm();
        rec.margin = -dev;
        rec.pass = dev == 0.0;
        rec.note = "B_{d,0}(X^d) vs B_{d,0}(X), exact";
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CheckRecord> GnsTruncation::haagerup_inequality_check(const GnsElement& x, int d, int power_iters,
                                                                  std::uint64_t seed) const {
    if (d > k_max_) throw TruncationError("haagerup_inequality_check: truncation overflow");
    GnsElement xd = project_d(x, d);
    const int m = xd.aux_dim;
    std::vector<CheckRecord> records;

    // corner blocks and their top right singular vectors as probes
    std::vector<double> corner(d + 1, 0.0);
    std::vector<CVec> probes;
    for (int j = 0; j <= d; ++j) {
        CMat blk = block_matrix(xd, d - j, j);
        Eigen::JacobiSVD<CMat> svd(blk, Eigen::ComputeThinV);
        corner[j] = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        if (svd.matrixV().cols() > 0) {
            CVec probe = CVec::Zero(total_dim(m));
            probe.segment(segment_offset(j, m), blk.cols()) = svd.matrixV().col(0);
            probes.push_back(std::move(probe));
        }
    }
    const double max_corner = *std::max_element(corner.begin(), corner.end());

    NormEstimate est = truncated_norm(xd, power_iters, seed, probes);
    // the corner-block norm itself bounds the truncated norm from below
    const double norm_est = std::max(est.value, max_corner);

    for (int j = 0; j <= d; ++j) {
        CheckRecord rec;
        rec.name = "haagerup_left";
        rec.indices = index_string({{"d", d}, {"j", j}});
        rec.seed = seed;
        rec.lhs = corner[j];
        rec.rhs = norm_est;
        rec.tolerance = 0.0;
        rec.margin = norm_est - corner[j];
        rec.pass = rec.margin >= 0.0;
        records.push_back(std::move(rec));
    }

    {
        const double kq = coeffs_.k_of_q();
        CheckRecord rec;
        rec.name = "haagerup_right";
        rec.indices = index_string({{"d", d}});
        rec.seed = seed;
        rec.lhs = norm_est;
        rec.rhs = kq * (d + 1) * max_corner;
        rec.tolerance = 1e-8;
        rec.margin = rec.rhs - rec.lhs;
        rec.pass = rec.margin >= -rec.tolerance * std::max(1.0, rec.rhs);
        rec.note = "truncated norm is a lower estimate";
        records.push_back(std::move(rec));
    }

    // chi-sum diagonals, as far as the truncation reaches
    const double kq = coeffs_.k_of_q();
    for (int j = 0; j <= d; ++j) {
        for (int k = 1; j + k <= k_max_ && d - j + k <= k_max_; ++k) {
            const double blk = block_norm(xd, d - j + k, j + k);
            const double chi = coeffs_.chi(j, d, k);
            CheckRecord rec;
            rec.name = "haagerup_chi_diagonal";
            rec.indices = index_string({{"d", d}, {"j", j}, {"k", k}});
            rec.seed = seed;
            rec.lhs = blk;
            rec.rhs = chi * corner[j];
            rec.tolerance = 1e-8;
            rec.margin = rec.rhs - rec.lhs;
            rec.pass = rec.margin >= -rec.tolerance * std::max(1.0, rec.rhs);
            std::ostringstream oss;
            oss << "chi=" << chi << " <= K(q)=" << kq;
            rec.note = oss.str();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<CheckRecord> GnsTruncation::character_consistency_check(int d, int power_iters) const {
    if (d > k_max_) throw TruncationError("character_consistency_check: truncation overflow");
    std::vector<CheckRecord> records;

    // scalar model: multiplication by mu_d in the orthonormal character basis
    const int size = k_max_ + 1;
    CMat scalar = CMat::Zero(size, size);
    for (int i = 0; i < size; ++i)
        for (int c : fuse(d, i))
            if (c < size) scalar(c, i) += 1.0;
    const double scalar_norm = operator_norm(scalar);

    // tensor model: Theta_d(Id) acting on the truncation
    GnsElement x;
    x.aux_dim = 1;
    x.terms.push_back(GnsTerm{CMat::Ones(1, 1), d, CMat::Identity(dim(d), dim(d))});

    // probe along the central subspace, transported from the scalar model
    Eigen::JacobiSVD<CMat> svd(scalar, Eigen::ComputeThinV);
    CVec probe = CVec::Zero(total_dim(1));
    for (int k = 0; k < size; ++k) {
        const Complex c = svd.matrixV()(k, 0);
        const long long off = segment_offset(k, 1);
        const double isw = 1.0 / std::sqrt(static_cast<double>(dim(k)));
        for (int r = 0; r < dim(k); ++r) probe(off + static_cast<long long>(r) * dim(k) + r) = c * isw;
    }
    NormEstimate est = truncated_norm(x, power_iters, 7, {probe});

    CheckRecord rec;
    rec.name = "character_consistency";
    rec.indices = index_string({{"d", d}, {"K", k_max_}});
    rec.lhs = est.value;
    rec.rhs = scalar_norm;
    rec.tolerance = 1e-6;
    rec.margin = rec.tolerance - std::abs(est.value - scalar_norm);
    rec.pass = std::abs(est.value - scalar_norm) <= rec.tolerance * std::max(1.0, scalar_norm);
    rec.note = "tensor-model norm vs character-model norm at matching truncation";
    records.push_back(std::move(rec));
    return records;
}

LowerBoundReport lower_bound_check(int d, int trunc) {
    if (trunc < d + 10) throw std::invalid_argument("lower_bound_check: trunc too small");
    LowerBoundReport rep;
    rep.d = d;
    rep.trunc = trunc;

    const int shift = d + 2;
    CMat paper_comb = CMat::Zero(trunc, trunc);   // T_{d+2} - S_d - T_{-(d+2)}
    CMat shifted_comb = CMat::Zero(trunc, trunc); // T_{d+2} - S_d + T_{-(d+2)}
    for (int i = 0; i < trunc; ++i) {
        if (i + shift < trunc) {
            paper_comb(i + shift, i) += 1.0;
            shifted_comb(i + shift, i) += 1.0;
        }
        if (i <= d) {
            paper_comb(d - i, i) -= 1.0;
            shifted_comb(d - i, i) -= 1.0;
        }
        if (i >= shift) {
            paper_comb(i - shift, i) -= 1.0;
            shifted_comb(i - shift, i) += 1.0;
        }
    }

    CMat mult = CMat::Zero(trunc, trunc);  // multiplication by mu_{d+2} - mu_d
    for (int i = 0; i < trunc; ++i) {
        for (int c : fuse(d + 2, i))
            if (c < trunc) mult(c, i) += 1.0;
        for (int c : fuse(d, i))
            if (c < trunc) mult(c, i) -= 1.0;
    }

    rep.translation_norm = operator_norm(paper_comb);
    rep.multiplication_norm = operator_norm(mult);
    rep.realization_error = (shifted_comb - mult).cwiseAbs().maxCoeff();
    rep.chi_upper = sup_norm_interval({{1.0, d + 2}, {-1.0, d}});
    rep.ratio = (d + 1) / rep.chi_upper;
    rep.lower_bound = (d + 1) / 3.0;
    rep.pass = rep.translation_norm <= 3.0 + 1e-6 && rep.realization_error == 0.0 &&
               rep.multiplication_norm <= rep.chi_upper + 1e-6 && rep.ratio >= rep.lower_bound - 1e-12;
    return rep;
}

}  // namespace freeorth
