#pragma once

#include <complex>
#include <cmath>

namespace dcomb {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row major: [[a, b], [c, d]].
/// Value type; everything the library needs fits in closed form,
/// so no external linear-algebra dependency is pulled in.
struct Mat2 {
    cplx a{}, b{}, c{}, d{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 conjugate() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    friend Mat2 operator*(const Mat2& x, cplx s) { return s * x; }

    /// Inverse by cofactors. Caller is responsible for det != 0.
    Mat2 inverse() const {
        const cplx dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    /// Largest entrywise absolute difference from another matrix.
    double max_abs_diff(const Mat2& y) const {
        return std::max(std::max(std::abs(a - y.a), std::abs(b - y.b)),
                        std::max(std::abs(c - y.c), std::abs(d - y.d)));
    }

    /// max |(A* A - I)_ij| measuring failure of unitarity.
    double unitarity_defect() const { return (adjoint() * (*this)).max_abs_diff(identity()); }
};

}  // namespace dcomb
