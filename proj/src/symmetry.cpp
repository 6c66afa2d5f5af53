#include "dcomb/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dcomb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Internal quaternion for nu = w I - i (x s1 + y s2 + z s3); the product
// below is the Hamilton product in this convention.
struct Quat {
    double w, x, y, z;
};

Quat mul(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y + a.y * b.w + a.z * b.x - a.x * b.z,
            a.w * b.z + a.z * b.w + a.x * b.y - a.y * b.x};
}

Quat conjugate(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

// Entrywise complex conjugation of nu in quaternion language: s1 and s3
// have real entries (their -i multiples are imaginary), s2's are real.
Quat entrywise_conj(const Quat& q) { return {q.w, -q.x, q.y, -q.z}; }

Quat to_quat(const SymmetryElement& e) {
    const double h = 0.5 * e.delta;
    const double s = std::sin(h);
    return {std::cos(h), s * e.axis[0], s * e.axis[1], s * e.axis[2]};
}

SymmetryElement from_quat(Quat q, DiscreteTag d) {
    // SU(2)/Z2: fix the sign so w >= 0, ties broken by the axis.
    double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    q.w /= norm;
    q.x /= norm;
    q.y /= norm;
    q.z /= norm;

    SymmetryElement e;
    e.discrete = d;
    const double vn = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (vn < 1e-15) return e;  // delta = 0 (or 2pi): identity rotation

    double sign = q.w > 0.0 ? 1.0 : (q.w < 0.0 ? -1.0 : 0.0);
    if (sign == 0.0) {
        sign = q.x != 0.0 ? (q.x > 0.0 ? 1.0 : -1.0)
                          : (q.y != 0.0 ? (q.y > 0.0 ? 1.0 : -1.0) : (q.z > 0.0 ? 1.0 : -1.0));
    }
    e.delta = 2.0 * std::atan2(vn, sign * q.w);
    e.axis = {sign * q.x / vn, sign * q.y / vn, sign * q.z / vn};
    return e;
}

bool twist_needed(DiscreteTag d) { return d == DiscreteTag::kappa || d == DiscreteTag::tau; }

// K4 as Z2 x Z2: bit 0 = entrywise conjugation, bit 1 = product reversal.
int tag_bits(DiscreteTag d) {
    switch (d) {
        case DiscreteTag::id: return 0;
        case DiscreteTag::kappa: return 1;
        case DiscreteTag::iota: return 2;
        case DiscreteTag::tau: return 3;
    }
    return 0;
}

DiscreteTag bits_tag(int b) {
    switch (b & 3) {
        case 1: return DiscreteTag::kappa;
        case 2: return DiscreteTag::iota;
        case 3: return DiscreteTag::tau;
        default: return DiscreteTag::id;
    }
}

Mat2 apply_discrete(DiscreteTag d, const Mat2& u) {
    switch (d) {
        case DiscreteTag::id: return u;
        case DiscreteTag::kappa: return u.conjugate();
        case DiscreteTag::iota: return u.adjoint();
        case DiscreteTag::tau: return u.transpose();
    }
    return u;
}

}  // namespace

SymmetryElement make_symmetry(double delta, const std::array<double, 3>& axis, DiscreteTag discrete) {
    if (!std::isfinite(delta) || !std::isfinite(axis[0]) || !std::isfinite(axis[1]) ||
        !std::isfinite(axis[2]))
        throw std::invalid_argument("make_symmetry: non-finite input");
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (n < 1e-14) {
        // No direction: only the trivial rotation is expressible.
        if (std::abs(std::sin(0.5 * delta)) > 1e-12)
            throw std::invalid_argument("make_symmetry: zero axis with nontrivial angle");
        SymmetryElement e;
        e.discrete = discrete;
        return e;
    }
    SymmetryElement raw;
    raw.delta = delta;
    raw.axis = {axis[0] / n, axis[1] / n, axis[2] / n};
    return from_quat(to_quat(raw), discrete);
}

SymmetryElement identity_symmetry() { return SymmetryElement{}; }

bool is_anti_automorphism(const SymmetryElement& e) {
    return e.discrete == DiscreteTag::iota || e.discrete == DiscreteTag::tau;
}

Mat2 inner_matrix(const SymmetryElement& e) {
    const Quat q = to_quat(e);
    return {cplx(q.w, -q.z), cplx(-q.y, -q.x), cplx(q.y, -q.x), cplx(q.w, q.z)};
}

BoundaryCondition apply_symmetry(const SymmetryElement& e, const BoundaryCondition& bc) {
    const Mat2 nu = inner_matrix(e);
    return from_matrix(nu * apply_discrete(e.discrete, unitary_matrix(bc)) * nu.adjoint());
}

SymmetryElement compose(const SymmetryElement& e1, const SymmetryElement& e2) {
    Quat q2 = to_quat(e2);
    if (twist_needed(e1.discrete)) q2 = entrywise_conj(q2);
    const Quat q = mul(to_quat(e1), q2);
    return from_quat(q, bits_tag(tag_bits(e1.discrete) ^ tag_bits(e2.discrete)));
}

SymmetryElement inverse(const SymmetryElement& e) {
    Quat q = to_quat(e);
    if (twist_needed(e.discrete)) q = entrywise_conj(q);
    return from_quat(conjugate(q), e.discrete);
}

BoundaryCondition vertical_transform(const BoundaryCondition& bc, double delta, double k) {
    // Rodrigues rotation of (m1, m2, m3) about the unit axis
    // (cos k, sin k, 0); eta and m0 are untouched, so this is exact in
    // the canonical coordinates (no matrix round trip needed).
    if (!std::isfinite(delta) || !std::isfinite(k))
        throw std::invalid_argument("vertical_transform: non-finite argument");
    const std::array<double, 3> n{std::cos(k), std::sin(k), 0.0};
    const std::array<double, 3> v{bc.m[1], bc.m[2], bc.m[3]};
    const double c = std::cos(delta), s = std::sin(delta);
    const double dot = n[0] * v[0] + n[1] * v[1];
    const std::array<double, 3> cross{n[1] * v[2] - 0.0, 0.0 - n[0] * v[2],
                                      n[0] * v[1] - n[1] * v[0]};
    // Construct the result directly instead of re-canonicalizing:
    // eta and m0 are carried over bit for bit, so every quantity that
    // depends only on them agrees exactly between input and output. A
    // renormalization of m would shift m0 at the last ulp, which the
    // dispersion amplifies by ~eps*sinh(frakq)/frakq deep in the
    // negative window.
    BoundaryCondition out;
    out.eta = bc.eta;
    out.m[0] = bc.m[0];
    for (int i = 0; i < 3; ++i)
        out.m[static_cast<std::size_t>(i) + 1] = v[static_cast<std::size_t>(i)] * c +
                                                 cross[static_cast<std::size_t>(i)] * s +
                                                 n[static_cast<std::size_t>(i)] * dot * (1.0 - c);
    return out;
}

BoundaryCondition oblique_transform(const BoundaryCondition& bc, double delta) {
    if (!std::isfinite(delta)) throw std::invalid_argument("oblique_transform: non-finite shift");
    const double c = std::cos(delta), s = std::sin(delta);
    BoundaryCondition out;
    out.eta = bc.eta;
    out.m = {bc.m[0], c * bc.m[1] - s * bc.m[2], s * bc.m[1] + c * bc.m[2], bc.m[3]};
    return out;
}

BoundaryCondition mirror_transform(const BoundaryCondition& bc) {
    BoundaryCondition out;
    out.eta = bc.eta;
    out.m = {bc.m[0], bc.m[1], bc.m[2], -bc.m[3]};
    return out;
}

DisplacementProfile DisplacementProfile::constant(double delta) {
    if (!std::isfinite(delta)) throw std::invalid_argument("DisplacementProfile: non-finite shift");
    DisplacementProfile p;
    p.constant_ = true;
    p.delta0_ = delta;
    return p;
}

DisplacementProfile DisplacementProfile::sampled(std::vector<double> k, std::vector<double> values) {
    if (k.empty() || k.size() != values.size())
        throw std::invalid_argument("DisplacementProfile: sample vectors empty or mismatched");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!std::isfinite(k[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("DisplacementProfile: non-finite sample");
        if (k[i] < -kPi || k[i] >= kPi)
            throw std::invalid_argument("DisplacementProfile: sample k outside [-pi, pi)");
        if (i > 0 && k[i] <= k[i - 1])
            throw std::invalid_argument("DisplacementProfile: sample k not strictly ascending");
    }
    DisplacementProfile p;
    p.constant_ = false;
    p.k_ = std::move(k);
    p.v_ = std::move(values);
    return p;
}

double DisplacementProfile::operator()(double k) const {
    if (constant_) return delta0_;
    if (k_.size() == 1) return v_[0];
    const double kf = bz_fold(k);
    // Locate the segment, wrapping the last node to the first one a
    // period later.
    const auto it = std::upper_bound(k_.begin(), k_.end(), kf);
    if (it == k_.begin() || it == k_.end()) {
        const double k0 = k_.back(), k1 = k_.front() + kTwoPi;
        double x = kf < k_.front() ? kf + kTwoPi : kf;
        const double w = (x - k0) / (k1 - k0);
        return v_.back() + w * (v_.front() - v_.back());
    }
    const std::size_t i = static_cast<std::size_t>(it - k_.begin());
    const double w = (kf - k_[i - 1]) / (k_[i] - k_[i - 1]);
    return v_[i - 1] + w * (v_[i] - v_[i - 1]);
}

bool DisplacementProfile::induces_bijection() const {
    if (constant_) return true;
    if (k_.size() == 1) return true;
    for (std::size_t i = 0; i + 1 < k_.size(); ++i)
        if (k_[i] + v_[i] >= k_[i + 1] + v_[i + 1]) return false;
    return k_.back() + v_.back() < k_.front() + kTwoPi + v_.front();
}

InvarianceReport check_spectral_invariance(const BoundaryCondition& bc,
                                           const BoundaryCondition& bc2,
                                           const DisplacementProfile& shift, int k_samples,
                                           int eps_samples, double q_max, double frakq_max) {
    if (k_samples < 1 || eps_samples < 1)
        throw std::invalid_argument("check_spectral_invariance: sample counts must be positive");
    if (!(q_max > 0.0) || !(frakq_max > 0.0))
        throw std::invalid_argument("check_spectral_invariance: windows must be positive");
    if (!shift.induces_bijection())
        throw std::invalid_argument("check_spectral_invariance: shift is not a bijection");

    const double eps_lo = -frakq_max * frakq_max;
    const double eps_hi = q_max * q_max;
    double worst = 0.0;
    for (int j = 0; j < k_samples; ++j) {
        const double k = -kPi + kTwoPi * j / k_samples;
        const double k_src = bz_fold(k + shift(k));
        for (int i = 0; i < eps_samples; ++i) {
            const double eps =
                eps_samples == 1 ? eps_lo : eps_lo + (eps_hi - eps_lo) * i / (eps_samples - 1);
            worst = std::max(worst, std::abs(spectral_reduced(bc2, k, eps) -
                                             spectral_reduced(bc, k_src, eps)));
        }
    }

    InvarianceReport rep;
    rep.max_abs_deviation = worst;
    rep.k_samples = k_samples;
    rep.eps_samples = eps_samples;
    rep.constant_shift = shift.is_constant();
    rep.shift_value = shift.is_constant() ? shift.constant_value() : 0.0;
    return rep;
}

std::vector<BoundaryCondition> oblique_orbit(const BoundaryCondition& bc, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("oblique_orbit: n_samples must be >= 1");
    std::vector<BoundaryCondition> orbit;
    orbit.reserve(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j)
        orbit.push_back(oblique_transform(bc, kTwoPi * j / n_samples));
    return orbit;
}

Hearability hearability(const BoundaryCondition& bc) {
    switch (confinement_class(bc)) {
        case ConfinementClass::symmetric_robin: return Hearability::spectrally_unique;
        case ConfinementClass::asymmetric_robin: return Hearability::mirror_pair_only;
        case ConfinementClass::non_confining: return Hearability::not_heard;
    }
    return Hearability::not_heard;
}

const char* hearability_name(Hearability h) {
    switch (h) {
        case Hearability::spectrally_unique: return "spectrally_unique";
        case Hearability::mirror_pair_only: return "mirror_pair_only";
        case Hearability::not_heard: return "not_heard";
    }
    return "?";
}

std::vector<cplx> coupling_fourier_modes(const std::vector<double>& samples, int n_max) {
    if (n_max < 0) throw std::invalid_argument("coupling_fourier_modes: n_max must be >= 0");
    const std::size_t n = samples.size();
    if (n < 2 * static_cast<std::size_t>(n_max) + 1)
        throw std::invalid_argument(
            "coupling_fourier_modes: need at least 2*n_max+1 samples to resolve the modes");

    std::vector<cplx> modes(2 * static_cast<std::size_t>(n_max) + 1);
    for (int m = -n_max; m <= n_max; ++m) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double k = -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            acc += std::polar(1.0, m * k) * samples[j];
        }
        modes[static_cast<std::size_t>(m + n_max)] = acc / static_cast<double>(n);
    }
    return modes;
}

}  // namespace dcomb
