#pragma once

#include <utility>

#include "dcomb/boundary.hpp"
#include "dcomb/matrix2.hpp"

namespace dcomb {

/// Fold a quasi-momentum into the Brillouin zone [-pi, pi).
double bz_fold(double k);

/// q(eps) = sqrt(eps) for eps >= 0, i*sqrt(-eps) below threshold.
cplx wavenumber(double eps);

/// sin(x)/x and sinh(x)/x with series fallback near x = 0.
double sinc(double x);
double sinhc(double x);

/// Entire-function coefficients (a, b) of the fiber matrix
/// B_k = a I + b sigma_k at energy eps. Evaluated through the
/// denominator D = (eps + 1) sinc(q) - 2 i cos(q), which has no zeros
/// on the real energy axis, so both coefficients are finite everywhere.
std::pair<cplx, cplx> ab_coefficients(double eps);

/// sigma_k = [[0, e^{-ik}], [e^{ik}, 0]].
Mat2 sigma_k(double k);

/// B_k(eps) = a I + b sigma_k.
Mat2 b_matrix(double eps, double k);

/// Full secular determinant det(B_k(eps) - U). Its zero set in eps is
/// the spectrum in the fiber at quasi-momentum k.
cplx spectral_det(const BoundaryCondition& bc, double k, double eps);

/// Hill-type discriminant
///
///   G(eps) = (S(eps)/2) [eps (cos eta - m0) + cos eta + m0] + C(eps) sin eta
///
/// with S = sinc(sqrt eps), C = cos(sqrt eps) continued evenly below
/// threshold (sinh, cosh). The dispersion relation reads
/// m1 cos k + m2 sin k = G(eps), so eps belongs to the spectrum iff
/// |G(eps)| <= sqrt(m1^2 + m2^2). Depends only on eta and m0.
double band_discriminant(const BoundaryCondition& bc, double eps);

/// Real reduced spectral function
///
///   F(k, eps) = m1 cos k + m2 sin k - G(eps).
///
/// Shares its zero set with spectral_det:
/// det(B_k - U) = 2 i b(eps) e^{i eta} F(k, eps) identically, and the
/// prefactor never vanishes. All band computations run on F.
double spectral_reduced(const BoundaryCondition& bc, double k, double eps);

/// F below threshold as a function of frakq = sqrt(-eps) >= 0.
double spectral_negative(const BoundaryCondition& bc, double k, double frakq);

}  // namespace dcomb
