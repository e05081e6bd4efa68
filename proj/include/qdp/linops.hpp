#ifndef QDP_LINOPS_HPP
#define QDP_LINOPS_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qdp/errors.hpp"
#include "qdp/tolerances.hpp"

namespace qdp {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Spectral decomposition of a Hermitian operator.
/// Eigenvalues are sorted descending; the columns of `eigenvectors` are the
/// matching orthonormal eigenvectors, phase-fixed so that the largest-modulus
/// entry of each column is real and positive.
struct Spectrum {
    RVec eigenvalues;
    CMat eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

bool is_hermitian(const CMat& h, double rel_tol = tol::herm);
bool all_finite(const CMat& m);

double frobenius_norm(const CMat& m);

/// Diagonalize a Hermitian matrix. Throws NotHermitianError if the input is
/// not Hermitian within tol::herm, NumericalFailure if V Lambda V^dag fails to
/// reconstruct the input within tol::eig.
Spectrum hermitian_eig(const CMat& h);

/// Orthogonal projector onto the span of eigenvectors of `s` whose
/// eigenvalue magnitude exceeds tol::supp relative to the largest.
CMat support_projector(const Spectrum& s);

/// Indices (into s.eigenvalues) retained as support.
std::vector<int> support_indices(const Spectrum& s);

/// f(H) restricted to the support subspace of `support_of`, exactly zero on
/// the orthogonal complement. H is compressed to the support subspace,
/// diagonalized there, and f is applied to the resulting eigenvalues.
/// Retained eigenvalues in [-supp_tol, 0) are clamped to 0 first.
/// Throws DomainError if f is non-finite at a retained eigenvalue.
CMat matrix_fn_on_support(const CMat& h,
                          const std::function<double(double)>& f,
                          const CMat& support_of);

/// Kronecker product. Throws DimensionOverflowError when the output side
/// length would exceed `max_dim`.
CMat tensor(const CMat& a, const CMat& b, int max_dim = tol::max_tensor_dim);
CMat tensor_all(const std::vector<CMat>& factors, int max_dim = tol::max_tensor_dim);

/// Partial trace of an operator on a tensor-product space with subsystem
/// dimensions `dims`, keeping the subsystems listed in `keep` (ascending
/// subsystem order in the output).
CMat partial_trace(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep);

/// Sum of the positive eigenvalues of a Hermitian H. Equals
/// sup { Tr(M H) : 0 <= M <= I }, attained by the projector onto the
/// positive eigenspaces.
double positive_part_trace(const CMat& h);

/// Projector onto the strictly positive eigenspaces of a Hermitian H
/// (the optimizer of positive_part_trace).
CMat positive_eigenspace_projector(const CMat& h);

CMat identity_matrix(int dim);

} // namespace qdp

#endif
