#include "freeorth/kernels.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace freeorth::kernels {

namespace {
std::atomic<Exec> g_default_exec{Exec::parallel};
}

void set_default_exec(Exec e) { g_default_exec.store(e); }
Exec default_exec() { return g_default_exec.load(); }

CMat gemm(const CMat& a, const CMat& b, Exec exec) {
    if (a.cols() != b.rows()) throw std::invalid_argument("gemm: shape mismatch");
    const long long m = a.rows(), p = a.cols(), n = b.cols();
    CMat out = CMat::Zero(m, n);
    const Complex* ad = a.data();
    const Complex* bd = b.data();
    Complex* od = out.data();
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long j = 0; j < n; ++j) {
        Complex* ocol = od + j * m;
        for (long long k = 0; k < p; ++k) {
            const Complex bkj = bd[j * p + k];
            if (bkj == Complex(0, 0)) continue;
            const Complex* acol = ad + k * m;
            for (long long i = 0; i < m; ++i) ocol[i] += bkj * acol[i];
        }
    }
    return out;
}

CMat gemm_adj_a(const CMat& a, const CMat& b, Exec exec) {
    if (a.rows() != b.rows()) throw std::invalid_argument("gemm_adj_a: shape mismatch");
    const long long m = a.cols(), p = a.rows(), n = b.cols();
    CMat out(m, n);
    const Complex* ad = a.data();
    const Complex* bd = b.data();
    Complex* od = out.data();
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long j = 0; j < n; ++j) {
        const Complex* bcol = bd + j * p;
        for (long long i = 0; i < m; ++i) {
            const Complex* acol = ad + i * p;
            Complex acc(0, 0);
            for (long long k = 0; k < p; ++k) acc += std::conj(acol[k]) * bcol[k];
            od[j * m + i] = acc;
        }
    }
    return out;
}

CMat kron(const CMat& a, const CMat& b, Exec exec) {
    const long long ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    CMat out(ra * rb, ca * cb);
    Complex* od = out.data();
    const long long orows = ra * rb;
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long ja = 0; ja < ca; ++ja) {
        for (long long jb = 0; jb < cb; ++jb) {
            Complex* ocol = od + (ja * cb + jb) * orows;
            for (long long ia = 0; ia < ra; ++ia) {
                const Complex aij = a(ia, ja);
                for (long long ib = 0; ib < rb; ++ib) ocol[ia * rb + ib] = aij * b(ib, jb);
            }
        }
    }
    return out;
}

CMat sandwich(const CMat& w, const CMat& m, Exec exec) { return gemm_adj_a(w, gemm(m, w, exec), exec); }

CMat ad_apply(const CMat& w, const CMat& x, const CMat& xi, Exec exec) {
    const long long dx = x.rows(), db = xi.rows(), da = w.cols();
    if (x.cols() != dx || xi.cols() != db || w.rows() != dx * db) throw std::invalid_argument("ad_apply: shapes");
    const bool par = exec == Exec::parallel;

    // z[(c,b), g] = sum_d xi(b, d) w[(c,d), g]
    CMat z(dx * db, da);
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long g = 0; g < da; ++g) {
        for (long long c = 0; c < dx; ++c) {
            const Complex* wcol = w.data() + g * (dx * db) + c * db;
            Complex* zcol = z.data() + g * (dx * db) + c * db;
            for (long long b = 0; b < db; ++b) {
                Complex acc(0, 0);
                const Complex* xirow = xi.data();  // column-major: xi(b, d) = data[d*db + b]
                for (long long d = 0; d < db; ++d) acc += xirow[d * db + b] * wcol[d];
                zcol[b] = acc;
            }
        }
    }

    // y[(c,b), g] = sum_{c'} x(c, c') z[(c',b), g]
    CMat y(dx * db, da);
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long g = 0; g < da; ++g) {
        for (long long c = 0; c < dx; ++c) {
            Complex* ycol = y.data() + g * (dx * db) + c * db;
            for (long long b = 0; b < db; ++b) {
                Complex acc(0, 0);
                for (long long cp = 0; cp < dx; ++cp) acc += x(c, cp) * z(cp * db + b, g);
                ycol[b] = acc;
            }
        }
    }

    return gemm_adj_a(w, y, exec);
}

CMat ad_adjoint_apply(const CMat& w, const CMat& x, const CMat& eta, Exec exec) {
    const long long dx = x.rows(), da = eta.rows();
    if (w.cols() != da || eta.cols() != da) throw std::invalid_argument("ad_adjoint_apply: shapes");
    const long long db = w.rows() / dx;
    if (w.rows() != dx * db) throw std::invalid_argument("ad_adjoint_apply: shapes");
    const bool par = exec == Exec::parallel;

    const CMat a = gemm(w, eta, exec);  // (dx*db) x da

    // a2[(c,b), g] = sum_{c'} conj(x(c', c)) a[(c',b), g]
    CMat a2(dx * db, da);
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long g = 0; g < da; ++g) {
        for (long long c = 0; c < dx; ++c) {
            Complex* col = a2.data() + g * (dx * db) + c * db;
            for (long long b = 0; b < db; ++b) {
                Complex acc(0, 0);
                for (long long cp = 0; cp < dx; ++cp) acc += std::conj(x(cp, c)) * a(cp * db + b, g);
                col[b] = acc;
            }
        }
    }

    // out(b1, b2) = sum_{c,g} a2[(c,b1), g] conj(w[(c,b2), g])
    CMat out(db, db);
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long b2 = 0; b2 < db; ++b2) {
        for (long long b1 = 0; b1 < db; ++b1) {
            Complex acc(0, 0);
            for (long long c = 0; c < dx; ++c) {
                for (long long g = 0; g < da; ++g) acc += a2(c * db + b1, g) * std::conj(w(c * db + b2, g));
            }
            out(b1, b2) = acc;
        }
    }
    return out;
}

CMat ad_map_matrix(const CMat& w, const CMat& x, Exec exec) {
    const long long dx = x.rows(), da = w.cols();
    const long long db = w.rows() / dx;
    if (w.rows() != dx * db) throw std::invalid_argument("ad_map_matrix: shapes");
    const bool par = exec == Exec::parallel;

    // Slice A_b(c, g) = w[(c, b), g]; then M[(g1, g2), (b1, b2)] = (A_{b1}^dagger x A_{b2})(g1, g2).
    std::vector<CMat> xa(static_cast<std::size_t>(db));
    for (long long b = 0; b < db; ++b) {
        CMat ab(dx, da);
        for (long long c = 0; c < dx; ++c)
            for (long long g = 0; g < da; ++g) ab(c, g) = w(c * db + b, g);
        xa[static_cast<std::size_t>(b)] = ab;
    }
    std::vector<CMat> slices = xa;
    for (long long b = 0; b < db; ++b) xa[static_cast<std::size_t>(b)] = gemm(x, slices[static_cast<std::size_t>(b)], Exec::serial);

    CMat out(da * da, db * db);
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long b1 = 0; b1 < db; ++b1) {
        for (long long b2 = 0; b2 < db; ++b2) {
            const CMat g = gemm_adj_a(slices[static_cast<std::size_t>(b1)], xa[static_cast<std::size_t>(b2)], Exec::serial);
            Complex* col = out.data() + (b1 * db + b2) * (da * da);
            for (long long g1 = 0; g1 < da; ++g1)
                for (long long g2 = 0; g2 < da; ++g2) col[g1 * da + g2] = g(g1, g2);
        }
    }
    return out;
}

CMat partial_trace_first(const CMat& m, int da, int db, Exec exec) {
    if (m.rows() != static_cast<long long>(da) * db || m.cols() != m.rows())
        throw std::invalid_argument("partial_trace_first: shapes");
    CMat out(db, db);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static) collapse(2)
    for (long long b2 = 0; b2 < db; ++b2) {
        for (long long b1 = 0; b1 < db; ++b1) {
            Complex acc(0, 0);
            for (long long a = 0; a < da; ++a) acc += m(a * db + b1, a * db + b2);
            out(b1, b2) = acc;
        }
    }
    return out;
}

CMat proj_pair_apply(const CMat& pa, const CMat& pb, const CMat& v, Exec exec) {
    const long long na = pa.rows(), nb = pb.rows(), cols = v.cols();
    if (v.rows() != na * nb) throw std::invalid_argument("proj_pair_apply: shapes");
    CMat out(na * nb, cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long c = 0; c < cols; ++c) {
        // X(i, j) = v[(i,j), c]; out column = vec(pa X pb^T)
        CMat tmp = CMat::Zero(na, nb);
        for (long long i = 0; i < na; ++i) {
            for (long long k = 0; k < na; ++k) {
                const Complex paik = pa(i, k);
                if (paik == Complex(0, 0)) continue;
                for (long long j = 0; j < nb; ++j) tmp(i, j) += paik * v(k * nb + j, c);
            }
        }
        for (long long i = 0; i < na; ++i) {
            for (long long j = 0; j < nb; ++j) {
                Complex acc(0, 0);
                for (long long k = 0; k < nb; ++k) acc += tmp(i, k) * pb(j, k);
                out(i * nb + j, c) = acc;
            }
        }
    }
    return out;
}

CMat compress_pair(const CMat& ua, const CMat& ub, const CMat& v, Exec exec) {
    const long long na = ua.rows(), da = ua.cols(), nb = ub.rows(), db = ub.cols(), cols = v.cols();
    if (v.rows() != na * nb) throw std::invalid_argument("compress_pair: shapes");
    CMat out(da * db, cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long c = 0; c < cols; ++c) {
        // Y = ua^dagger X, then Y conj(ub)
        CMat y(da, nb);
        for (long long i = 0; i < da; ++i) {
            for (long long j = 0; j < nb; ++j) {
                Complex acc(0, 0);
                for (long long k = 0; k < na; ++k) acc += std::conj(ua(k, i)) * v(k * nb + j, c);
                y(i, j) = acc;
            }
        }
        for (long long i = 0; i < da; ++i) {
            for (long long j = 0; j < db; ++j) {
                Complex acc(0, 0);
                for (long long k = 0; k < nb; ++k) acc += y(i, k) * std::conj(ub(k, j));
                out(i * db + j, c) = acc;
            }
        }
    }
    return out;
}

namespace {
long long ipow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

long long digit_reverse(long long value, int digits, int base) {
    long long out = 0;
    for (int i = 0; i < digits; ++i) {
        out = out * base + value % base;
        value /= base;
    }
    return out;
}
}  // namespace

CMat cup_insert(const CMat& v, int a, int b, int m, int n, Exec exec) {
    if (m < 0 || a < m || b < m) throw std::invalid_argument("cup_insert: invalid leg counts");
    const long long nl = ipow(n, a - m), nr = ipow(n, b - m), nj = ipow(n, m);
    if (v.rows() != nl * nr) throw std::invalid_argument("cup_insert: shapes");
    const long long cols = v.cols();
    CMat out = CMat::Zero(ipow(n, a + b), cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long l = 0; l < nl; ++l) {
        for (long long j = 0; j < nj; ++j) {
            const long long jr = digit_reverse(j, m, n);
            const long long base = ((l * nj + j) * nj + jr) * nr;
            for (long long r = 0; r < nr; ++r) {
                for (long long c = 0; c < cols; ++c) out(base + r, c) = v(l * nr + r, c);
            }
        }
    }
    return out;
}

CMat tl_cap_apply(const CMat& m, int strand, int deg, int n, double scale, Exec exec) {
    if (strand < 1 || strand > deg - 1) throw std::invalid_argument("tl_cap_apply: index out of range");
    const long long nl = ipow(n, strand - 1), nr = ipow(n, deg - strand - 1), cols = m.cols();
    if (m.rows() != nl * n * n * nr) throw std::invalid_argument("tl_cap_apply: shapes");
    CMat out = CMat::Zero(m.rows(), cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long c = 0; c < cols; ++c) {
        for (long long l = 0; l < nl; ++l) {
            for (long long r = 0; r < nr; ++r) {
                Complex acc(0, 0);
                for (long long d = 0; d < n; ++d) acc += m(((l * n + d) * n + d) * nr + r, c);
                acc *= scale;
                for (long long d = 0; d < n; ++d) out(((l * n + d) * n + d) * nr + r, c) = acc;
            }
        }
    }
    return out;
}

CMat kron_id_right_apply(const CMat& p, const CMat& b, int n, Exec exec) {
    const long long m = p.rows(), cols = b.cols();
    if (b.rows() != m * n) throw std::invalid_argument("kron_id_right_apply: shapes");
    CMat out(m * n, cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (long long c = 0; c < cols; ++c) {
        for (long long r = 0; r < m; ++r) {
            for (long long s = 0; s < n; ++s) {
                Complex acc(0, 0);
                for (long long rp = 0; rp < m; ++rp) acc += p(r, rp) * b(rp * n + s, c);
                out(r * n + s, c) = acc;
            }
        }
    }
    return out;
}

CMat gemm(const CMat& a, const CMat& b) { return gemm(a, b, default_exec()); }
CMat gemm_adj_a(const CMat& a, const CMat& b) { return gemm_adj_a(a, b, default_exec()); }
CMat kron(const CMat& a, const CMat& b) { return kron(a, b, default_exec()); }
CMat sandwich(const CMat& w, const CMat& m) { return sandwich(w, m, default_exec()); }
CMat ad_apply(const CMat& w, const CMat& x, const CMat& xi) { return ad_apply(w, x, xi, default_exec()); }
CMat ad_adjoint_apply(const CMat& w, const CMat& x, const CMat& eta) {
    return ad_adjoint_apply(w, x, eta, default_exec());
}
CMat partial_trace_first(const CMat& m, int da, int db) { return partial_trace_first(m, da, db, default_exec()); }
CMat ad_map_matrix(const CMat& w, const CMat& x) { return ad_map_matrix(w, x, default_exec()); }
CMat proj_pair_apply(const CMat& pa, const CMat& pb, const CMat& v) {
    return proj_pair_apply(pa, pb, v, default_exec());
}
CMat compress_pair(const CMat& ua, const CMat& ub, const CMat& v) { return compress_pair(ua, ub, v, default_exec()); }
CMat cup_insert(const CMat& v, int a, int b, int m, int n) { return cup_insert(v, a, b, m, n, default_exec()); }
CMat tl_cap_apply(const CMat& m, int strand, int deg, int n, double scale) {
    return tl_cap_apply(m, strand, deg, n, scale, default_exec());
}
CMat kron_id_right_apply(const CMat& p, const CMat& b, int n) { return kron_id_right_apply(p, b, n, default_exec()); }

}  // namespace freeorth::kernels
