#include <doctest.h>

#include <cmath>

#include "qdp/linops.hpp"
#include "qdp/random.hpp"

using namespace qdp;

namespace {

CMat diag2(double a, double b) {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

TEST_CASE("hermitian_eig on diagonal input") {
    const Spectrum s = hermitian_eig(diag2(3.0, 1.0));
    CHECK(s.eigenvalues(0) == doctest::Approx(3.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
    CHECK((s.eigenvectors - CMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("hermitian_eig on Pauli X") {
    CMat x(2, 2);
    x << 0, 1, 1, 0;
    const Spectrum s = hermitian_eig(x);
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const CMat h = random_hermitian(rng, 4);
        const Spectrum s = hermitian_eig(h);
        const CMat rebuilt =
            s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
        CHECK((rebuilt - h).norm() <= 1e-10 * std::max(h.norm(), 1.0));
        CHECK((s.eigenvectors.adjoint() * s.eigenvectors - CMat::Identity(4, 4)).norm() <
              1e-10);
        for (int i = 1; i < 4; ++i) {
            CHECK(s.eigenvalues(i - 1) >= s.eigenvalues(i));
        }
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    CMat m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitianError);
}

TEST_CASE("matrix_fn_on_support applies f on the support only") {
    const CMat h = diag2(4.0, 0.0);
    const CMat root = matrix_fn_on_support(h, [](double x) { return std::sqrt(x); }, h);
    CHECK((root - diag2(2.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("matrix_fn_on_support masks to the support of another operator") {
    const CMat h = diag2(2.0, 3.0);
    const CMat masked = matrix_fn_on_support(
        h, [](double x) { return 1.0 / std::sqrt(x); }, diag2(1.0, 0.0));
    CHECK((masked - diag2(1.0 / std::sqrt(2.0), 0.0)).norm() < 1e-12);
}

TEST_CASE("matrix_fn_on_support power example") {
    const CMat sigma = diag2(0.5, 0.5);
    const CMat squared =
        matrix_fn_on_support(sigma, [](double x) { return x * x; }, sigma);
    CHECK((squared - diag2(0.25, 0.25)).norm() < 1e-12);
}

TEST_CASE("matrix_fn_on_support is idempotent support projection for identity fn") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat g = random_complex_gaussian(rng, 3, 2);
        const CMat h = g * g.adjoint(); // rank <= 2 PSD
        const CMat projected = matrix_fn_on_support(h, [](double x) { return x; }, h);
        CHECK((projected - h).norm() < 1e-9 * std::max(h.norm(), 1.0));
    }
}

TEST_CASE("matrix_fn_on_support rejects log at a non-positive retained eigenvalue") {
    const CMat h = diag2(1.0, -2.0);
    CHECK_THROWS_AS(
        matrix_fn_on_support(h, [](double x) { return std::log(x); }, h), DomainError);
}

TEST_CASE("tensor basics") {
    const CMat i2 = CMat::Identity(2, 2);
    CHECK((tensor(i2, i2) - CMat::Identity(4, 4)).norm() == 0.0);

    const CMat t = tensor(diag2(1.0, 0.0), diag2(0.0, 1.0));
    CMat expected = CMat::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK((t - expected).norm() == 0.0);
}

TEST_CASE("tensor keeps purity and trace") {
    CVec phi = CVec::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    const CMat bell = phi * phi.adjoint();
    const CMat prod = tensor(diag2(1.0, 0.0), bell);
    CHECK(prod.trace().real() == doctest::Approx(1.0));
    const Spectrum s = hermitian_eig(prod);
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(std::abs(s.eigenvalues(1)) < 1e-12);
}

TEST_CASE("tensor associativity and trace multiplicativity") {
    // Exact associativity on entries that multiply without rounding.
    const CMat d1 = diag2(1.0, -2.0);
    const CMat d2 = diag2(0.5, 4.0);
    const CMat d3 = diag2(-1.0, 0.25);
    CHECK((tensor(tensor(d1, d2), d3) - tensor(d1, tensor(d2, d3))).norm() == 0.0);

    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat a = random_hermitian(rng, 2);
        const CMat b = random_hermitian(rng, 3);
        const CMat c = random_hermitian(rng, 2);
        const CMat left = tensor(tensor(a, b), c);
        const CMat right = tensor(a, tensor(b, c));
        CHECK((left - right).norm() <= 1e-15 * left.norm());
        CHECK(tensor(a, b).trace().real() ==
              doctest::Approx(a.trace().real() * b.trace().real()).epsilon(1e-12));
    }
}

TEST_CASE("tensor rejects oversized outputs") {
    const CMat i16 = CMat::Identity(16, 16);
    CHECK_THROWS_AS(tensor(i16, CMat::Identity(8, 8)), DimensionOverflowError);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    CVec phi = CVec::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    const CMat bell = phi * phi.adjoint();
    const CMat reduced = partial_trace(bell, {2, 2}, {0});
    CHECK((reduced - 0.5 * CMat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("partial trace of a product is the kept factor times the trace") {
    Rng rng(17);
    const CMat rho = random_hermitian(rng, 2);
    const CMat sigma = random_hermitian(rng, 3);
    const CMat reduced = partial_trace(tensor(rho, sigma), {2, 3}, {0});
    CHECK((reduced - sigma.trace() * rho).norm() < 1e-12);
}

TEST_CASE("partial trace preserves trace and positivity") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat g = random_complex_gaussian(rng, 4, 4);
        CMat rho = g * g.adjoint();
        rho /= rho.trace().real();
        const CMat reduced = partial_trace(rho, {2, 2}, {1});
        CHECK(std::abs(reduced.trace().real() - rho.trace().real()) < 1e-12);
        const Spectrum s = hermitian_eig(reduced);
        CHECK(s.eigenvalues(s.dim() - 1) > -1e-12);
    }
}

TEST_CASE("partial trace rejects inconsistent dimensions") {
    CHECK_THROWS_AS(partial_trace(CMat::Identity(6, 6), {2, 2}, {0}),
                    DimensionMismatchError);
    CHECK_THROWS_AS(partial_trace(CMat::Identity(4, 4), {2, 2}, {}),
                    DimensionMismatchError);
}

TEST_CASE("positive_part_trace on pure-state differences") {
    for (double eps : {0.0, 1.0, 10.0}) {
        CHECK(positive_part_trace(diag2(1.0, -std::exp(eps))) == doctest::Approx(1.0));
    }
    CHECK(positive_part_trace(diag2(0.5, -0.5)) == doctest::Approx(0.5));
}

TEST_CASE("positive_part_trace dominates every random measurement operator") {
    Rng rng(23);
    for (int instance = 0; instance < 5; ++instance) {
        const CMat h = random_hermitian(rng, 3);
        const double opt = positive_part_trace(h);

        double best = -1e300;
        for (int i = 0; i < 1000; ++i) {
            RVec vals(3);
            for (int k = 0; k < 3; ++k) vals(k) = rng.uniform();
            const CMat u = random_unitary(rng, 3);
            const CMat m = u * vals.asDiagonal() * u.adjoint();
            best = std::max(best, (m * h).trace().real());
        }
        CHECK(best <= opt + 1e-9);

        const CMat projector = positive_eigenspace_projector(h);
        CHECK((projector * h).trace().real() == doctest::Approx(opt).epsilon(1e-9));
    }
}

TEST_CASE("positive_part_trace rejects non-Hermitian input") {
    CMat m(2, 2);
    m << 0, 2, 0, 0;
    CHECK_THROWS_AS(positive_part_trace(m), NotHermitianError);
}
