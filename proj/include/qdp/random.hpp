#ifndef QDP_RANDOM_HPP
#define QDP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qdp/linops.hpp"

namespace qdp {

/// Deterministic random source. Distributions are generated from the raw
/// mt19937_64 stream by fixed arithmetic so that identical seeds give
/// identical values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller on the pinned uniform stream.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_gaussian() {
        return {gaussian(), gaussian()};
    }

    int uniform_int(int n) { return static_cast<int>(uniform() * n) % n; }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Per-task seeds are derived from a root seed by fixed arithmetic so that
/// parallel or reordered evaluation cannot change results.
inline std::uint64_t task_seed(std::uint64_t root, std::uint64_t index) {
    return root + 0x9e3779b97f4a7c15ull * (index + 1);
}

CMat random_complex_gaussian(Rng& rng, int rows, int cols);
CMat random_hermitian(Rng& rng, int dim);

/// Haar-like random unitary: complex Gaussian matrix, then QR with the phase
/// convention that R has a positive diagonal.
CMat random_unitary(Rng& rng, int dim);

/// Random isometry from dim columns into rows >= dim (used for Kraus sets).
CMat random_isometry(Rng& rng, int rows, int cols);

} // namespace qdp

#endif
