#include "dcomb/boundary.hpp"

#include <cmath>
#include <numbers>

namespace dcomb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTol = 1e-9;
constexpr double kInfinityTol = 1e-12;
constexpr double kSingularTol = 1e-12;
constexpr double kConfinementTol = 1e-10;

bool all_finite(double eta, const std::array<double, 4>& m) {
    if (!std::isfinite(eta)) return false;
    for (double v : m)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

BoundaryCondition make_boundary(double eta, const std::array<double, 4>& m) {
    if (!all_finite(eta, m)) throw std::invalid_argument("make_boundary: non-finite input");
    const double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
    if (norm < 1e-14) throw std::invalid_argument("make_boundary: m must be nonzero");

    BoundaryCondition bc;
    for (int i = 0; i < 4; ++i) bc.m[i] = m[i] / norm;

    // Fold eta into [0, pi) using (eta + pi, -m) ~ (eta, m). The loop
    // guards the rare case where floor-based folding rounds onto pi.
    double n = std::floor(eta / kPi);
    bc.eta = eta - n * kPi;
    bool flip = std::fmod(std::abs(n), 2.0) == 1.0;
    while (bc.eta >= kPi) {
        bc.eta -= kPi;
        flip = !flip;
    }
    while (bc.eta < 0.0) {
        bc.eta += kPi;
        flip = !flip;
    }
    if (flip)
        for (double& v : bc.m) v = -v;
    return bc;
}

Mat2 unitary_matrix(const BoundaryCondition& bc) {
    const cplx phase = std::polar(1.0, bc.eta);
    const auto& m = bc.m;
    return {phase * cplx(m[0], m[3]), phase * cplx(m[2], m[1]),
            phase * cplx(-m[2], m[1]), phase * cplx(m[0], -m[3])};
}

BoundaryCondition from_matrix(const Mat2& u) {
    if (u.unitarity_defect() > kUnitarityTol)
        throw std::invalid_argument("from_matrix: matrix is not unitary");

    // det U = e^{2 i eta}; halve the argument, then peel the phase off.
    const double eta0 = 0.5 * std::arg(u.det());
    const Mat2 v = std::polar(1.0, -eta0) * u;
    const std::array<double, 4> m{
        0.5 * (v.a.real() + v.d.real()),
        0.5 * (v.b.imag() + v.c.imag()),
        0.5 * (v.b.real() - v.c.real()),
        0.5 * (v.a.imag() - v.d.imag()),
    };
    return make_boundary(eta0, m);
}

Couplings kurasov_forward(const BoundaryCondition& bc) {
    const double s = bc.m[1] + std::sin(bc.eta);
    if (std::abs(s) <= kInfinityTol) return Couplings{0.0, 0.0, 0.0, 0.0, true};
    const double c = std::cos(bc.eta);
    return Couplings{(bc.m[0] + c) / s, -bc.m[3] / s, bc.m[2] / s, (bc.m[0] - c) / s, false};
}

BoundaryCondition kurasov_inverse(const Couplings& g) {
    if (g.at_infinity)
        throw singular_representation("kurasov_inverse: couplings at infinity");

    const double delta = 1.0 + g.g1 * g.g4 + g.g2 * g.g2 + g.g3 * g.g3;
    if (std::abs(delta) > kSingularTol) {
        // For delta < 0 atan2 lands in (-pi, 0); the fold in make_boundary
        // adds pi and flips m, which is exactly the orientation that keeps
        // kurasov_forward a left inverse. Do not pre-negate m here.
        const std::array<double, 4> m{g.g1 + g.g4, 2.0 - delta, 2.0 * g.g3, -2.0 * g.g2};
        return make_boundary(std::atan2(delta, g.g1 - g.g4), m);
    }

    // sin(eta) = 0 branch: the generic normalization degenerates.
    const double den = g.g1 - g.g4;
    if (std::abs(den) <= kSingularTol)
        throw std::invalid_argument("kurasov_inverse: degenerate couplings");
    return make_boundary(0.0, {(g.g1 + g.g4) / den, 2.0 / den, 2.0 * g.g3 / den, -2.0 * g.g2 / den});
}

Mat2 jump_average_matrix(const Couplings& g) {
    if (g.at_infinity)
        throw singular_representation("jump_average_matrix: couplings at infinity");
    return {cplx(g.g1, 0.0), cplx(-g.g2, g.g3), cplx(g.g2, g.g3), cplx(g.g4, 0.0)};
}

Mat2 transfer_matrix(const Couplings& g) {
    if (g.at_infinity)
        throw singular_representation("transfer_matrix: couplings at infinity");
    const cplx one_mi_g3(1.0, -g.g3);
    const cplx den = one_mi_g3 * one_mi_g3 - g.g1 * g.g4 - g.g2 * g.g2;
    if (std::abs(den) <= kSingularTol)
        throw singular_representation("transfer_matrix: singular normalization");
    const double quad = g.g1 * g.g4 + g.g3 * g.g3;
    const double p = 1.0 + g.g2, q = 1.0 - g.g2;
    return (1.0 / den) * Mat2{cplx(p * p + quad, 0.0), cplx(2.0 * g.g4, 0.0),
                              cplx(2.0 * g.g1, 0.0), cplx(q * q + quad, 0.0)};
}

Mat2 cayley(const BoundaryCondition& bc) {
    const double den = bc.m[0] - std::cos(bc.eta);
    if (2.0 * std::abs(den) <= kSingularTol)
        throw no_cayley_form("cayley: 1 is an eigenvalue of U");
    const double s = std::sin(bc.eta);
    return (1.0 / den) * Mat2{cplx(-s + bc.m[3], 0.0), cplx(bc.m[1], -bc.m[2]),
                              cplx(bc.m[1], bc.m[2]), cplx(-s - bc.m[3], 0.0)};
}

ConfinementClass confinement_class(const BoundaryCondition& bc) {
    if (std::abs(bc.m[1]) > kConfinementTol || std::abs(bc.m[2]) > kConfinementTol)
        return ConfinementClass::non_confining;
    return std::abs(bc.m[3]) <= kConfinementTol ? ConfinementClass::symmetric_robin
                                                : ConfinementClass::asymmetric_robin;
}

BoundaryCondition named(NamedFamily f, double p1, double p2) {
    constexpr double kHalfPi = kPi / 2.0;
    switch (f) {
        case NamedFamily::dirichlet:
            return make_boundary(0.0, {1.0, 0.0, 0.0, 0.0});
        case NamedFamily::neumann:
            return make_boundary(0.0, {-1.0, 0.0, 0.0, 0.0});
        case NamedFamily::robin:
            return make_boundary(p1, {std::cos(p2), 0.0, 0.0, -std::sin(p2)});
        case NamedFamily::periodic:
            return named(NamedFamily::pseudo_periodic, 0.0);
        case NamedFamily::anti_periodic:
            return named(NamedFamily::pseudo_periodic, kPi);
        case NamedFamily::pseudo_periodic:
            return make_boundary(kHalfPi, {0.0, std::cos(p1), std::sin(p1), 0.0});
        case NamedFamily::imaginary_quasi_periodic:
            return make_boundary(kHalfPi, {0.0, 0.0, std::sin(p1), std::cos(p1)});
        case NamedFamily::zaremba:
            return named(NamedFamily::imaginary_quasi_periodic, 0.0);
        case NamedFamily::delta:
            return make_boundary(kHalfPi - std::atan(p1), {p1, 1.0, 0.0, 0.0});
        case NamedFamily::delta_prime:
            return make_boundary(kHalfPi, {0.0, 1.0 - p1 * p1, 0.0, -2.0 * p1});
        case NamedFamily::gauge:
            return named(NamedFamily::pseudo_periodic, 2.0 * std::atan(p1));
        case NamedFamily::metric:
            return make_boundary(kHalfPi - std::atan(p1), {-p1, 1.0, 0.0, 0.0});
    }
    throw std::invalid_argument("named: unknown family");
}

std::optional<NamedFamily> family_from_string(std::string_view name) {
    using F = NamedFamily;
    static const std::pair<std::string_view, F> table[] = {
        {"dirichlet", F::dirichlet},
        {"neumann", F::neumann},
        {"robin", F::robin},
        {"periodic", F::periodic},
        {"anti_periodic", F::anti_periodic},
        {"pseudo_periodic", F::pseudo_periodic},
        {"imaginary_quasi_periodic", F::imaginary_quasi_periodic},
        {"zaremba", F::zaremba},
        {"delta", F::delta},
        {"delta_prime", F::delta_prime},
        {"gauge", F::gauge},
        {"metric", F::metric},
    };
    for (const auto& [key, value] : table)
        if (key == name) return value;
    return std::nullopt;
}

std::string family_name(NamedFamily f) {
    switch (f) {
        case NamedFamily::dirichlet: return "dirichlet";
        case NamedFamily::neumann: return "neumann";
        case NamedFamily::robin: return "robin";
        case NamedFamily::periodic: return "periodic";
        case NamedFamily::anti_periodic: return "anti_periodic";
        case NamedFamily::pseudo_periodic: return "pseudo_periodic";
        case NamedFamily::imaginary_quasi_periodic: return "imaginary_quasi_periodic";
        case NamedFamily::zaremba: return "zaremba";
        case NamedFamily::delta: return "delta";
        case NamedFamily::delta_prime: return "delta_prime";
        case NamedFamily::gauge: return "gauge";
        case NamedFamily::metric: return "metric";
    }
    return "?";
}

int family_arity(NamedFamily f) {
    switch (f) {
        case NamedFamily::robin:
            return 2;
        case NamedFamily::pseudo_periodic:
        case NamedFamily::imaginary_quasi_periodic:
        case NamedFamily::delta:
        case NamedFamily::delta_prime:
        case NamedFamily::gauge:
        case NamedFamily::metric:
            return 1;
        default:
            return 0;
    }
}

}  // namespace dcomb
