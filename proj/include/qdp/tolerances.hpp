#ifndef QDP_TOLERANCES_HPP
#define QDP_TOLERANCES_HPP

namespace qdp::tol {

// Frobenius-relative Hermiticity tolerance.
inline constexpr double herm = 1e-10;
// Support cutoff, relative to the largest |eigenvalue|.
inline constexpr double supp = 1e-10;
// Eigendecomposition reconstruction tolerance, Frobenius-relative.
inline constexpr double eig = 1e-10;
// PSD slack for density / measurement operators.
inline constexpr double psd = 1e-9;
// |Tr(rho) - 1| slack.
inline constexpr double trace = 1e-9;
// Frobenius slack on sum(K^dag K) = I and sum of POVM effects = I.
inline constexpr double cptp = 1e-9;
// Slack separating genuine privacy violations from round-off.
inline constexpr double verdict = 1e-9;

// Default cap on tensor-product dimensions (six qubits).
inline constexpr int max_tensor_dim = 64;

} // namespace qdp::tol

#endif
