#include "qdp/random.hpp"

namespace qdp {

CMat random_complex_gaussian(Rng& rng, int rows, int cols) {
    CMat g(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            g(r, c) = rng.complex_gaussian();
        }
    }
    return g;
}

CMat random_hermitian(Rng& rng, int dim) {
    const CMat g = random_complex_gaussian(rng, dim, dim);
    return 0.5 * (g + g.adjoint());
}

CMat random_isometry(Rng& rng, int rows, int cols) {
    const CMat g = random_complex_gaussian(rng, rows, cols);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(rows, cols);
    const CMat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (int c = 0; c < cols; ++c) {
        const std::complex<double> d = r(c, c);
        if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return q;
}

CMat random_unitary(Rng& rng, int dim) { return random_isometry(rng, dim, dim); }

} // namespace qdp
