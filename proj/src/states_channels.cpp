#include "qdp/states_channels.hpp"

#include <cmath>

namespace qdp {

namespace {

void require_valid_operator(const CMat& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionMismatchError(std::string(what) + ": matrix must be square, dim >= 1");
    }
    if (!all_finite(m)) {
        throw ParameterOutOfRangeError(std::string(what) + ": entries must be finite");
    }
}

} // namespace

DensityOperator::DensityOperator(CMat mat, std::string label)
    : mat_(std::move(mat)), label_(std::move(label)) {
    require_valid_operator(mat_, "DensityOperator");
    if (!is_hermitian(mat_)) {
        throw NotHermitianError("DensityOperator: not Hermitian within tolerance");
    }
    const Spectrum s = hermitian_eig(mat_);
    if (s.eigenvalues(s.dim() - 1) < -tol::psd) {
        throw ParameterOutOfRangeError("DensityOperator: negative eigenvalue " +
                                       std::to_string(s.eigenvalues(s.dim() - 1)));
    }
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
        throw ParameterOutOfRangeError("DensityOperator: trace " + std::to_string(tr) +
                                       " is not 1");
    }
}

DensityOperator DensityOperator::pure(const CVec& ket, std::string label) {
    const double norm = ket.norm();
    if (norm <= 0.0) {
        throw ParameterOutOfRangeError("DensityOperator::pure: zero vector");
    }
    const CVec unit = ket / norm;
    return DensityOperator(unit * unit.adjoint(), std::move(label));
}

DensityOperator DensityOperator::computational(int dim, int basis_index) {
    if (basis_index < 0 || basis_index >= dim) {
        throw ParameterOutOfRangeError("DensityOperator::computational: index out of range");
    }
    CVec ket = CVec::Zero(dim);
    ket(basis_index) = 1.0;
    return pure(ket);
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
    return DensityOperator(CMat::Identity(dim, dim) / static_cast<double>(dim));
}

MeasurementOperator::MeasurementOperator(CMat mat) : mat_(std::move(mat)) {
    require_valid_operator(mat_, "MeasurementOperator");
    if (!is_hermitian(mat_)) {
        throw NotHermitianError("MeasurementOperator: not Hermitian within tolerance");
    }
    const Spectrum s = hermitian_eig(mat_);
    if (s.eigenvalues(s.dim() - 1) < -tol::psd || s.eigenvalues(0) > 1.0 + tol::psd) {
        throw ParameterOutOfRangeError("MeasurementOperator: spectrum outside [0, 1]");
    }
}

Povm::Povm(std::vector<MeasurementOperator> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw ParameterOutOfRangeError("Povm: effect list must be nonempty");
    }
    const int d = effects_.front().dim();
    CMat sum = CMat::Zero(d, d);
    for (const auto& e : effects_) {
        if (e.dim() != d) throw DimensionMismatchError("Povm: mixed effect dimensions");
        sum += e.mat();
    }
    if ((sum - CMat::Identity(d, d)).norm() > tol::cptp) {
        throw ParameterOutOfRangeError("Povm: effects do not sum to identity");
    }
}

std::vector<double> induced_distribution(const Povm& povm, const DensityOperator& state) {
    if (povm.dim() != state.dim()) {
        throw DimensionMismatchError("induced_distribution: dimension mismatch");
    }
    std::vector<double> p;
    p.reserve(povm.effects().size());
    for (const auto& e : povm.effects()) {
        const double val = (e.mat() * state.mat()).trace().real();
        p.push_back(std::max(val, 0.0));
    }
    return p;
}

DensityOperator StateMap::operator()(const DensityOperator& rho) const {
    if (rho.dim() != dim_in) {
        throw DimensionMismatchError("StateMap: input dim " + std::to_string(rho.dim()) +
                                     " != " + std::to_string(dim_in));
    }
    return fn(rho);
}

KrausChannel::KrausChannel(std::vector<CMat> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) {
        throw ParameterOutOfRangeError("KrausChannel: Kraus list must be nonempty");
    }
    dim_out_ = static_cast<int>(kraus_.front().rows());
    dim_in_ = static_cast<int>(kraus_.front().cols());
    CMat sum = CMat::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            throw DimensionMismatchError("KrausChannel: inconsistent Kraus shapes");
        }
        if (!all_finite(k)) {
            throw ParameterOutOfRangeError("KrausChannel: non-finite Kraus entry");
        }
        sum += k.adjoint() * k;
    }
    if ((sum - CMat::Identity(dim_in_, dim_in_)).norm() > tol::cptp) {
        throw ParameterOutOfRangeError("KrausChannel: sum K^dag K != I (not trace preserving)");
    }
}

StateMap KrausChannel::map() const {
    const KrausChannel copy = *this;
    return StateMap{dim_in_, dim_out_, label_,
                    [copy](const DensityOperator& rho) { return apply(copy, rho); }};
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
    if (rho.dim() != ch.dim_in()) {
        throw DimensionMismatchError("apply: state dim " + std::to_string(rho.dim()) +
                                     " != channel dim_in " + std::to_string(ch.dim_in()));
    }
    return DensityOperator(apply_raw(ch, rho.mat()));
}

CMat apply_raw(const KrausChannel& ch, const CMat& x) {
    CMat out = CMat::Zero(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.kraus()) {
        out += k * x * k.adjoint();
    }
    return out;
}

KrausChannel compose_tensor(const std::vector<KrausChannel>& chs, int max_dim) {
    if (chs.empty()) {
        throw ParameterOutOfRangeError("compose_tensor: empty channel list");
    }
    std::vector<CMat> kraus = chs.front().kraus();
    std::string label = chs.front().label();
    for (std::size_t i = 1; i < chs.size(); ++i) {
        std::vector<CMat> next;
        next.reserve(kraus.size() * chs[i].kraus().size());
        for (const auto& a : kraus) {
            for (const auto& b : chs[i].kraus()) {
                next.push_back(tensor(a, b, max_dim));
            }
        }
        kraus = std::move(next);
        if (!chs[i].label().empty()) {
            label += (label.empty() ? "" : "*") + chs[i].label();
        }
    }
    return KrausChannel(std::move(kraus), std::move(label));
}

StateMap compose_factorized(const std::vector<KrausChannel>& chs, int max_dim) {
    if (chs.empty()) {
        throw ParameterOutOfRangeError("compose_factorized: empty channel list");
    }
    const int dim_in = chs.front().dim_in();
    long long dim_out = 1;
    for (const auto& ch : chs) {
        if (ch.dim_in() != dim_in) {
            throw DimensionMismatchError("compose_factorized: channels must share dim_in");
        }
        dim_out *= ch.dim_out();
        if (dim_out > max_dim) {
            throw DimensionOverflowError("compose_factorized: output dim exceeds limit");
        }
    }
    auto channels = chs;
    return StateMap{dim_in, static_cast<int>(dim_out), "factorized",
                    [channels, max_dim](const DensityOperator& rho) {
                        std::vector<CMat> factors;
                        factors.reserve(channels.size());
                        for (const auto& ch : channels) {
                            factors.push_back(apply(ch, rho).mat());
                        }
                        return DensityOperator(tensor_all(factors, max_dim));
                    }};
}

StateMap marginal_channel(const KrausChannel& ch, const std::vector<int>& dims,
                          const std::vector<int>& keep) {
    long long total = 1;
    for (int d : dims) total *= d;
    if (total != ch.dim_out()) {
        throw DimensionMismatchError("marginal_channel: dims do not factor the output");
    }
    int kept_dim = 1;
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size())) {
            throw DimensionMismatchError("marginal_channel: keep index out of range");
        }
        kept_dim *= dims[k];
    }
    const KrausChannel copy = ch;
    return StateMap{ch.dim_in(), kept_dim, ch.label() + ":marginal",
                    [copy, dims, keep](const DensityOperator& rho) {
                        const CMat full = apply_raw(copy, rho.mat());
                        return DensityOperator(partial_trace(full, dims, keep));
                    }};
}

KrausChannel marginal_kraus_channel(const KrausChannel& ch, const std::vector<int>& dims,
                                    const std::vector<int>& keep) {
    long long total = 1;
    for (int d : dims) total *= d;
    if (total != ch.dim_out()) {
        throw DimensionMismatchError("marginal_kraus_channel: dims do not factor the output");
    }
    const int n_sub = static_cast<int>(dims.size());
    std::vector<bool> kept_flag(n_sub, false);
    for (int k : keep) {
        if (k < 0 || k >= n_sub) {
            throw DimensionMismatchError("marginal_kraus_channel: keep index out of range");
        }
        kept_flag[k] = true;
    }

    int kept_dim = 1;
    int traced_dim = 1;
    for (int s = 0; s < n_sub; ++s) (kept_flag[s] ? kept_dim : traced_dim) *= dims[s];

    std::vector<int> stride(n_sub, 1);
    for (int s = n_sub - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
    std::vector<int> kept_subs, traced_subs;
    for (int s = 0; s < n_sub; ++s) (kept_flag[s] ? kept_subs : traced_subs).push_back(s);

    auto expand = [&](const std::vector<int>& subs, int flat) {
        int offset = 0;
        for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
            const int d = dims[subs[i]];
            offset += (flat % d) * stride[subs[i]];
            flat /= d;
        }
        return offset;
    };

    // Partial trace in Kraus form: Tr_env(X) = sum_b (selector_b) X (selector_b)^dag.
    std::vector<CMat> kraus;
    kraus.reserve(static_cast<std::size_t>(traced_dim) * ch.kraus().size());
    for (int b = 0; b < traced_dim; ++b) {
        CMat selector = CMat::Zero(kept_dim, ch.dim_out());
        const int env_off = expand(traced_subs, b);
        for (int r = 0; r < kept_dim; ++r) {
            selector(r, expand(kept_subs, r) + env_off) = 1.0;
        }
        for (const auto& k : ch.kraus()) {
            kraus.push_back(selector * k);
        }
    }
    return KrausChannel(std::move(kraus), ch.label() + ":marginal");
}

NeighborRelation::NeighborRelation(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
        throw ParameterOutOfRangeError("NeighborRelation: pair list must be nonempty");
    }
    const int d = pairs_.front().first.dim();
    for (const auto& [rho, sigma] : pairs_) {
        if (rho.dim() != d || sigma.dim() != d) {
            throw DimensionMismatchError("NeighborRelation: pairs must share one dimension");
        }
    }
}

NeighborRelation product_relation(const std::vector<NeighborRelation>& slots, int max_dim) {
    if (slots.empty()) {
        throw ParameterOutOfRangeError("product_relation: empty slot list");
    }
    // Slot relations are symmetric, so a product neighbor may take either
    // orientation in each slot. Enumerate orientations modulo a global flip
    // (the first slot stays forward; verifiers cover the reversal).
    const std::size_t k = slots.size();
    std::vector<NeighborRelation::Pair> pairs;
    std::vector<std::size_t> counter(k, 0);
    while (true) {
        for (std::size_t flips = 0; flips < (1u << (k - 1)); ++flips) {
            std::vector<CMat> rho_factors, sigma_factors;
            for (std::size_t s = 0; s < k; ++s) {
                const auto& [rho, sigma] = slots[s].pairs()[counter[s]];
                const bool flipped = s > 0 && ((flips >> (s - 1)) & 1u);
                rho_factors.push_back(flipped ? sigma.mat() : rho.mat());
                sigma_factors.push_back(flipped ? rho.mat() : sigma.mat());
            }
            pairs.emplace_back(DensityOperator(tensor_all(rho_factors, max_dim)),
                               DensityOperator(tensor_all(sigma_factors, max_dim)));
        }

        std::size_t s = k;
        while (s > 0) {
            --s;
            if (++counter[s] < slots[s].pairs().size()) break;
            counter[s] = 0;
            if (s == 0) return NeighborRelation(std::move(pairs));
        }
    }
}

KrausChannel identity_channel(int dim) {
    return KrausChannel({CMat::Identity(dim, dim)}, "identity");
}

KrausChannel depolarizing_channel(double p) {
    if (p < 0.0 || p > 1.0) {
        throw ParameterOutOfRangeError("depolarizing_channel: p must lie in [0, 1]");
    }
    CMat x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    z << 1, 0, 0, -1;
    std::vector<CMat> kraus;
    kraus.push_back(std::sqrt(1.0 - 0.75 * p) * CMat::Identity(2, 2));
    if (p > 0.0) {
        kraus.push_back(std::sqrt(p / 4.0) * x);
        kraus.push_back(std::sqrt(p / 4.0) * y);
        kraus.push_back(std::sqrt(p / 4.0) * z);
    }
    return KrausChannel(std::move(kraus), "depolarizing(" + std::to_string(p) + ")");
}

KrausChannel cnot_ancilla_channel() {
    CMat cnot = CMat::Zero(4, 4);
    cnot(0, 0) = 1.0;
    cnot(1, 1) = 1.0;
    cnot(2, 3) = 1.0;
    cnot(3, 2) = 1.0;
    CMat append = CMat::Zero(4, 2); // |psi> -> |psi> x |0>
    append(0, 0) = 1.0;
    append(2, 1) = 1.0;
    return KrausChannel({cnot * append}, "cnot_ancilla");
}

KrausChannel bell_joint_channel() {
    const double s = 1.0 / std::sqrt(2.0);
    CMat k0 = CMat::Zero(4, 2); // |Phi+><0|
    k0(0, 0) = s;
    k0(3, 0) = s;
    CMat k1 = CMat::Zero(4, 2); // |Phi-><1|
    k1(0, 1) = s;
    k1(3, 1) = -s;
    return KrausChannel({k0, k1}, "bell_joint");
}

KrausChannel classical_embedding_channel(int dim) {
    std::vector<CMat> kraus;
    kraus.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        CMat k = CMat::Zero(dim, dim);
        k(i, i) = 1.0;
        kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus), "classical_embedding");
}

KrausChannel measure_and_dephase_channel(const Povm& povm) {
    const int n = povm.size();
    const int d = povm.dim();
    std::vector<CMat> kraus;
    for (int x = 0; x < n; ++x) {
        const Spectrum s = hermitian_eig(povm.effects()[x].mat());
        for (int j = 0; j < d; ++j) {
            const double m = std::max(s.eigenvalues(j), 0.0);
            if (m <= 0.0) continue;
            CMat k = CMat::Zero(n, d);
            k.row(x) = std::sqrt(m) * s.eigenvectors.col(j).adjoint();
            kraus.push_back(std::move(k));
        }
    }
    return KrausChannel(std::move(kraus), "measure_and_dephase");
}

DensityOperator random_density(Rng& rng, int dim, double min_eigenvalue) {
    RVec vals(dim);
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
        vals(i) = min_eigenvalue + rng.uniform();
        sum += vals(i);
    }
    vals /= sum;
    const CMat u = random_unitary(rng, dim);
    return DensityOperator(u * vals.asDiagonal() * u.adjoint());
}

MeasurementOperator random_effect(Rng& rng, int dim) {
    RVec vals(dim);
    for (int i = 0; i < dim; ++i) vals(i) = rng.uniform();
    const CMat u = random_unitary(rng, dim);
    return MeasurementOperator(u * vals.asDiagonal() * u.adjoint());
}

Povm random_projective_povm(Rng& rng, int dim) {
    const CMat u = random_unitary(rng, dim);
    std::vector<MeasurementOperator> effects;
    effects.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        effects.emplace_back(CMat(u.col(i) * u.col(i).adjoint()));
    }
    return Povm(std::move(effects));
}

Povm random_resolved_povm(Rng& rng, int dim, int outcomes) {
    if (outcomes < 1) {
        throw ParameterOutOfRangeError("random_resolved_povm: outcomes must be >= 1");
    }
    // A_t = G_t G_t^dag normalized by S^{-1/2} on both sides sums to I.
    std::vector<CMat> raw;
    CMat total = CMat::Zero(dim, dim);
    for (int t = 0; t < outcomes; ++t) {
        const CMat g = random_complex_gaussian(rng, dim, dim);
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const CMat inv_sqrt =
        matrix_fn_on_support(total, [](double x) { return 1.0 / std::sqrt(x); }, total);
    std::vector<MeasurementOperator> effects;
    for (auto& a : raw) {
        CMat e = inv_sqrt * a * inv_sqrt;
        e = 0.5 * (e + CMat(e.adjoint()));
        effects.emplace_back(std::move(e));
    }
    return Povm(std::move(effects));
}

KrausChannel random_channel(Rng& rng, int dim, int n_kraus) {
    if (n_kraus < 1) {
        throw ParameterOutOfRangeError("random_channel: need at least one Kraus operator");
    }
    const CMat v = random_isometry(rng, dim * n_kraus, dim);
    std::vector<CMat> kraus;
    kraus.reserve(n_kraus);
    for (int j = 0; j < n_kraus; ++j) {
        kraus.push_back(v.middleRows(j * dim, dim));
    }
    return KrausChannel(std::move(kraus), "random");
}

Povm sample_povm(Rng& rng, int dim, long index) {
    if (index % 2 == 0) {
        return random_projective_povm(rng, dim);
    }
    const CMat h = random_hermitian(rng, dim);
    const Spectrum s = hermitian_eig(h);
    const double top =
        std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(s.dim() - 1)));
    if (top <= 0.0) {
        return random_projective_povm(rng, dim);
    }
    const CMat m = (h + top * CMat::Identity(dim, dim)) / (2.0 * top);
    std::vector<MeasurementOperator> effects;
    effects.emplace_back(m);
    effects.emplace_back(CMat(CMat::Identity(dim, dim) - m));
    return Povm(std::move(effects));
}

KrausChannel mix_with_depolarizing(const KrausChannel& ch, double w) {
    if (ch.dim_in() != 2 || ch.dim_out() != 2) {
        throw DimensionMismatchError("mix_with_depolarizing: qubit channels only");
    }
    if (w < 0.0 || w > 1.0) {
        throw ParameterOutOfRangeError("mix_with_depolarizing: weight must lie in [0, 1]");
    }
    std::vector<CMat> kraus;
    for (const auto& k : ch.kraus()) kraus.push_back(std::sqrt(1.0 - w) * k);
    const KrausChannel depol = depolarizing_channel(1.0);
    for (const auto& k : depol.kraus()) {
        kraus.push_back(std::sqrt(w) * k);
    }
    return KrausChannel(std::move(kraus), ch.label() + "+depol");
}

} // namespace qdp
