#include "freeorth/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace freeorth {

double largest_eigenvalue_psd(const CMat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    const double v = es.eigenvalues().maxCoeff();
    return v > 0.0 ? v : 0.0;
}

double operator_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    // Gram matrix on the smaller side, then the top eigenvalue.
    CMat g;
    if (m.cols() <= m.rows())
        g = m.adjoint() * m;
    else
        g = m * m.adjoint();
    return std::sqrt(largest_eigenvalue_psd(g));
}

}  // namespace freeorth
