#pragma once

#include "freeorth/linalg.hpp"

// Dense contraction kernels behind the tensor oracle. Every kernel has a
// serial and an OpenMP variant; both sum each output entry in the same
// order, so results are bitwise identical and the serial version doubles as
// the reference in tests and benchmarks. Pair indices follow the Kronecker
// convention (i, j) -> i * dim_second + j, and matrices are vectorized
// row-major so that (A (x) B) vec(X) = vec(A X B^T).

namespace freeorth::kernels {

enum class Exec { serial, parallel };

/// Global default for the Exec parameter below (set once at startup).
void set_default_exec(Exec e);
Exec default_exec();

CMat gemm(const CMat& a, const CMat& b, Exec exec);
CMat gemm(const CMat& a, const CMat& b);

/// a^dagger * b.
CMat gemm_adj_a(const CMat& a, const CMat& b, Exec exec);
CMat gemm_adj_a(const CMat& a, const CMat& b);

CMat kron(const CMat& a, const CMat& b, Exec exec);
CMat kron(const CMat& a, const CMat& b);

/// w^dagger m w.
CMat sandwich(const CMat& w, const CMat& m, Exec exec);
CMat sandwich(const CMat& w, const CMat& m);

/// w^dagger (x (x) xi) w without materializing the Kronecker product.
/// w is (dx*db) x da, x is dx x dx, xi is db x db; the result is da x da.
CMat ad_apply(const CMat& w, const CMat& x, const CMat& xi, Exec exec);
CMat ad_apply(const CMat& w, const CMat& x, const CMat& xi);

/// Tr_1[(x^dagger (x) 1) w eta w^dagger], the inner-product adjoint of
/// ad_apply up to the dimension weight the caller supplies.
CMat ad_adjoint_apply(const CMat& w, const CMat& x, const CMat& eta, Exec exec);
CMat ad_adjoint_apply(const CMat& w, const CMat& x, const CMat& eta);

/// Partial trace over the first tensor factor of an (da*db) x (da*db) matrix.
CMat partial_trace_first(const CMat& m, int da, int db, Exec exec);
CMat partial_trace_first(const CMat& m, int da, int db);

/// Dense matrix (da^2 x db^2, row-major vectorization on both sides) of the
/// map xi -> w^dagger (x (x) xi) w, assembled from slices of w.
CMat ad_map_matrix(const CMat& w, const CMat& x, Exec exec);
CMat ad_map_matrix(const CMat& w, const CMat& x);

/// Applies (pa (x) pb) to every column of v, where columns live in
/// C^{na} (x) C^{nb}.
CMat proj_pair_apply(const CMat& pa, const CMat& pb, const CMat& v, Exec exec);
CMat proj_pair_apply(const CMat& pa, const CMat& pb, const CMat& v);

/// Applies (ua (x) ub)^dagger to every column of v.
CMat compress_pair(const CMat& ua, const CMat& ub, const CMat& v, Exec exec);
CMat compress_pair(const CMat& ua, const CMat& ub, const CMat& v);

/// Inserts the m-fold nested cup between the first (a-m) and last (b-m)
/// tensor legs of each column: columns of v live in (C^N)^{(a+b-2m)}, the
/// result's columns in (C^N)^{(a+b)}.
CMat cup_insert(const CMat& v, int a, int b, int m, int n, Exec exec);
CMat cup_insert(const CMat& v, int a, int b, int m, int n);

/// Temperley-Lieb cup-cap at strand i (1-based) on (C^N)^{(x)deg} applied to
/// every column of m, scaled so that the generator squares to `scale` times
/// itself (scale = 1/N gives the idempotent e_i, scale = 1 gives tt^*).
CMat tl_cap_apply(const CMat& m, int strand, int deg, int n, double scale, Exec exec);
CMat tl_cap_apply(const CMat& m, int strand, int deg, int n, double scale);

/// (p (x) I_N) b for p acting on the first deg-1 legs.
CMat kron_id_right_apply(const CMat& p, const CMat& b, int n, Exec exec);
CMat kron_id_right_apply(const CMat& p, const CMat& b, int n);

}  // namespace freeorth::kernels
