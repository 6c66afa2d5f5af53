#include "dcomb/spectral.hpp"

#include <cmath>
#include <numbers>

namespace dcomb {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeriesCut = 1e-3;
}  // namespace

double bz_fold(double k) {
    double r = std::fmod(k + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r - kPi;
}

cplx wavenumber(double eps) {
    return eps >= 0.0 ? cplx(std::sqrt(eps), 0.0) : cplx(0.0, std::sqrt(-eps));
}

double sinc(double x) {
    if (std::abs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

double sinhc(double x) {
    if (std::abs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

namespace {

// S(eps) = sinc(q), C(eps) = cos(q) continued through eps = 0.
void trig_pair(double eps, double& s, double& c) {
    if (eps >= 0.0) {
        const double x = std::sqrt(eps);
        s = sinc(x);
        c = std::cos(x);
    } else {
        const double x = std::sqrt(-eps);
        s = sinhc(x);
        c = std::cosh(x);
    }
}

}  // namespace

std::pair<cplx, cplx> ab_coefficients(double eps) {
    double s, c;
    trig_pair(eps, s, c);
    const cplx den((eps + 1.0) * s, -2.0 * c);
    return {cplx((eps - 1.0) * s, 0.0) / den, cplx(0.0, 2.0) / den};
}

Mat2 sigma_k(double k) {
    return {0.0, std::polar(1.0, -k), std::polar(1.0, k), 0.0};
}

Mat2 b_matrix(double eps, double k) {
    const auto [a, b] = ab_coefficients(eps);
    Mat2 out = sigma_k(k);
    out.b *= b;
    out.c *= b;
    out.a = a;
    out.d = a;
    return out;
}

cplx spectral_det(const BoundaryCondition& bc, double k, double eps) {
    const auto [a, b] = ab_coefficients(eps);
    const cplx phase = std::polar(1.0, bc.eta);
    const cplx det_u = phase * phase;
    const cplx tr_u = 2.0 * phase * bc.m[0];
    const cplx tr_us = 2.0 * cplx(0.0, 1.0) * phase *
                       (bc.m[1] * std::cos(k) + bc.m[2] * std::sin(k));
    return a * a - b * b + det_u - a * tr_u + b * tr_us;
}

double band_discriminant(const BoundaryCondition& bc, double eps) {
    double s, c;
    trig_pair(eps, s, c);
    const double ce = std::cos(bc.eta);
    return 0.5 * s * (eps * (ce - bc.m[0]) + ce + bc.m[0]) + c * std::sin(bc.eta);
}

double spectral_reduced(const BoundaryCondition& bc, double k, double eps) {
    return bc.m[1] * std::cos(k) + bc.m[2] * std::sin(k) - band_discriminant(bc, eps);
}

double spectral_negative(const BoundaryCondition& bc, double k, double frakq) {
    return spectral_reduced(bc, k, -frakq * frakq);
}

}  // namespace dcomb
