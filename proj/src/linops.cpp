#include "qdp/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdp {

namespace {

// Columns are phase-fixed so the largest-modulus entry is real positive;
// report reproducibility, not mathematics.
void canonicalize_phase(CMat& vectors) {
    for (int c = 0; c < vectors.cols(); ++c) {
        int arg = 0;
        double best = 0.0;
        for (int r = 0; r < vectors.rows(); ++r) {
            const double mag = std::abs(vectors(r, c));
            if (mag > best + 1e-12) {
                best = mag;
                arg = r;
            }
        }
        const std::complex<double> pivot = vectors(arg, c);
        if (std::abs(pivot) > 0.0) {
            vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
        }
    }
}

bool column_less(const CMat& v, int a, int b) {
    for (int r = 0; r < v.rows(); ++r) {
        const auto& x = v(r, a);
        const auto& y = v(r, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

} // namespace

bool all_finite(const CMat& m) {
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

double frobenius_norm(const CMat& m) { return m.norm(); }

bool is_hermitian(const CMat& h, double rel_tol) {
    if (h.rows() != h.cols() || h.rows() < 1) return false;
    if (!all_finite(h)) return false;
    const double scale = std::max(h.norm(), 1.0);
    return (h - h.adjoint()).norm() <= rel_tol * scale;
}

Spectrum hermitian_eig(const CMat& h) {
    if (h.rows() != h.cols() || h.rows() < 1) {
        throw DimensionMismatchError("hermitian_eig: matrix must be square and nonempty");
    }
    if (!is_hermitian(h)) {
        throw NotHermitianError("hermitian_eig: input is not Hermitian within tolerance");
    }
    const CMat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("hermitian_eig: eigensolver did not converge");
    }

    const int n = static_cast<int>(h.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    CMat vectors = solver.eigenvectors();
    canonicalize_phase(vectors);
    const RVec values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (values(a) != values(b)) return values(a) > values(b);
        return column_less(vectors, a, b);
    });

    Spectrum out;
    out.eigenvalues = RVec(n);
    out.eigenvectors = CMat(n, n);
    for (int i = 0; i < n; ++i) {
        out.eigenvalues(i) = values(order[i]);
        out.eigenvectors.col(i) = vectors.col(order[i]);
    }

    const CMat rebuilt =
        out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.adjoint();
    const double scale = std::max(h.norm(), 1.0);
    if ((rebuilt - sym).norm() > tol::eig * scale) {
        throw NumericalFailure("hermitian_eig: reconstruction check failed");
    }
    return out;
}

std::vector<int> support_indices(const Spectrum& s) {
    double top = 0.0;
    for (int i = 0; i < s.dim(); ++i) top = std::max(top, std::abs(s.eigenvalues(i)));
    std::vector<int> kept;
    if (top == 0.0) return kept;
    const double cutoff = tol::supp * top;
    for (int i = 0; i < s.dim(); ++i) {
        if (std::abs(s.eigenvalues(i)) > cutoff) kept.push_back(i);
    }
    return kept;
}

CMat support_projector(const Spectrum& s) {
    const int n = s.dim();
    CMat p = CMat::Zero(n, n);
    for (int i : support_indices(s)) {
        p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
    return p;
}

CMat matrix_fn_on_support(const CMat& h,
                          const std::function<double(double)>& f,
                          const CMat& support_of) {
    if (h.rows() != h.cols() || support_of.rows() != support_of.cols() ||
        h.rows() != support_of.rows()) {
        throw DimensionMismatchError("matrix_fn_on_support: dimension mismatch");
    }
    if (!is_hermitian(h)) {
        throw NotHermitianError("matrix_fn_on_support: operator is not Hermitian");
    }
    const Spectrum basis = hermitian_eig(support_of);
    const std::vector<int> kept = support_indices(basis);
    const int n = static_cast<int>(h.rows());
    if (kept.empty()) return CMat::Zero(n, n);

    CMat isometry(n, static_cast<int>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        isometry.col(static_cast<int>(j)) = basis.eigenvectors.col(kept[j]);
    }

    const CMat compressed = isometry.adjoint() * h * isometry;
    const Spectrum inner = hermitian_eig(compressed);

    double top = 0.0;
    for (int i = 0; i < inner.dim(); ++i) top = std::max(top, std::abs(inner.eigenvalues(i)));
    const double clamp_below = -tol::supp * std::max(top, 1.0);

    RVec mapped(inner.dim());
    for (int i = 0; i < inner.dim(); ++i) {
        double lambda = inner.eigenvalues(i);
        if (lambda < 0.0 && lambda >= clamp_below) lambda = 0.0;
        const double value = f(lambda);
        if (!std::isfinite(value)) {
            throw DomainError("matrix_fn_on_support: function undefined at retained eigenvalue " +
                              std::to_string(lambda));
        }
        mapped(i) = value;
    }

    return isometry * inner.eigenvectors * mapped.asDiagonal() *
           inner.eigenvectors.adjoint() * isometry.adjoint();
}

CMat tensor(const CMat& a, const CMat& b, int max_dim) {
    const long long out_rows = static_cast<long long>(a.rows()) * b.rows();
    const long long out_cols = static_cast<long long>(a.cols()) * b.cols();
    if (std::max(out_rows, out_cols) > max_dim) {
        throw DimensionOverflowError("tensor: output dimension " + std::to_string(out_rows) +
                                     " exceeds limit " + std::to_string(max_dim));
    }
    CMat out(out_rows, out_cols);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMat tensor_all(const std::vector<CMat>& factors, int max_dim) {
    if (factors.empty()) {
        throw DimensionMismatchError("tensor_all: empty factor list");
    }
    CMat out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor(out, factors[i], max_dim);
    }
    return out;
}

CMat partial_trace(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatchError("partial_trace: operator must be square");
    }
    long long total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionMismatchError("partial_trace: subsystem dims must be >= 1");
        total *= d;
    }
    if (total != m.rows()) {
        throw DimensionMismatchError("partial_trace: product of dims " + std::to_string(total) +
                                     " != operator dim " + std::to_string(m.rows()));
    }
    if (keep.empty()) {
        throw DimensionMismatchError("partial_trace: keep set must be nonempty");
    }
    const int n_sub = static_cast<int>(dims.size());
    std::vector<bool> kept(n_sub, false);
    for (int k : keep) {
        if (k < 0 || k >= n_sub) {
            throw DimensionMismatchError("partial_trace: keep index " + std::to_string(k) +
                                         " out of range");
        }
        kept[k] = true;
    }

    int kept_dim = 1;
    int traced_dim = 1;
    for (int s = 0; s < n_sub; ++s) {
        if (kept[s]) kept_dim *= dims[s];
        else traced_dim *= dims[s];
    }

    // Row-major strides over the full index and the two index groups.
    std::vector<int> stride(n_sub, 1);
    for (int s = n_sub - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

    std::vector<int> kept_subs, traced_subs;
    for (int s = 0; s < n_sub; ++s) (kept[s] ? kept_subs : traced_subs).push_back(s);

    auto expand = [&](const std::vector<int>& subs, int flat) {
        int offset = 0;
        for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
            const int d = dims[subs[i]];
            offset += (flat % d) * stride[subs[i]];
            flat /= d;
        }
        return offset;
    };

    CMat out = CMat::Zero(kept_dim, kept_dim);
    for (int r = 0; r < kept_dim; ++r) {
        const int row_base = expand(kept_subs, r);
        for (int c = 0; c < kept_dim; ++c) {
            const int col_base = expand(kept_subs, c);
            std::complex<double> sum = 0.0;
            for (int t = 0; t < traced_dim; ++t) {
                const int off = expand(traced_subs, t);
                sum += m(row_base + off, col_base + off);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

double positive_part_trace(const CMat& h) {
    const Spectrum s = hermitian_eig(h);
    double sum = 0.0;
    for (int i = 0; i < s.dim(); ++i) sum += std::max(s.eigenvalues(i), 0.0);
    return sum;
}

CMat positive_eigenspace_projector(const CMat& h) {
    const Spectrum s = hermitian_eig(h);
    const int n = s.dim();
    CMat p = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (s.eigenvalues(i) > 0.0) {
            p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
        }
    }
    return p;
}

CMat identity_matrix(int dim) { return CMat::Identity(dim, dim); }

} // namespace qdp
