#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <optional>

#include "dcomb/matrix2.hpp"

namespace dcomb {

/// Thrown when a Cayley transform is requested for a matrix with
/// eigenvalue 1 (det(I - U) numerically zero).
struct no_cayley_form : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when a coupling-space operation hits a representation that
/// does not exist there (infinite couplings, singular transfer matrix).
struct singular_representation : std::domain_error {
    using std::domain_error::domain_error;
};

/// Self-adjoint point interaction on the line, encoded by a U(2) matrix
///
///   U = e^{i eta} [[ m0 + i m3,  m2 + i m1 ],
///                  [ -m2 + i m1, m0 - i m3 ]]
///
/// acting through (I - U) Psi' = i (I + U) Psi with
/// Psi = (psi(0-), psi(0+)) and Psi' = (psi'(0-), -psi'(0+)).
///
/// The pair (eta, m) is stored canonically: eta in [0, pi), |m| = 1,
/// using the identification (eta + pi, -m) ~ (eta, m).
struct BoundaryCondition {
    double eta = 0.0;
    std::array<double, 4> m{1.0, 0.0, 0.0, 0.0};  // (m0, m1, m2, m3)
};

/// Build a canonical BoundaryCondition from any (eta, m) with m != 0.
/// m is normalized to unit length; eta is folded into [0, pi), flipping
/// the sign of m once per pi subtracted. Throws std::invalid_argument
/// for non-finite input or |m| below 1e-14.
BoundaryCondition make_boundary(double eta, const std::array<double, 4>& m);

/// The unitary matrix U for this boundary condition.
Mat2 unitary_matrix(const BoundaryCondition& bc);

/// Recover the canonical (eta, m) from a unitary matrix.
/// Requires max |(U*U - I)_ij| <= 1e-9, else std::invalid_argument.
BoundaryCondition from_matrix(const Mat2& u);

/// Kurasov 4-parameter coupling representation (jump-average form).
/// Finite couplings exist iff m1 + sin(eta) != 0; otherwise the
/// interaction sits "at infinity" in coupling space.
struct Couplings {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
    bool at_infinity = false;
};

/// (eta, m) -> couplings. Sets at_infinity (with zeroed g) when
/// |m1 + sin(eta)| <= 1e-12.
Couplings kurasov_forward(const BoundaryCondition& bc);

/// couplings -> (eta, m), inverse of kurasov_forward on its image.
/// Throws singular_representation if couplings.at_infinity, and
/// std::invalid_argument if the couplings are degenerate (both the
/// generic and the Delta = 0 branch denominators vanish).
BoundaryCondition kurasov_inverse(const Couplings& g);

/// Matrix M_g of the jump-average form Psi' = M_g <Psi> with the
/// averaged trace pair; throws singular_representation when at_infinity.
Mat2 jump_average_matrix(const Couplings& g);

/// Transfer matrix mapping (psi, psi')(0-) to (psi, psi')(0+).
/// Throws singular_representation when the couplings are at infinity or
/// the normalizing denominator (1 - i g3)^2 - g1 g4 - g2^2 is within
/// 1e-12 of zero. Entries are real for g3 = 0.
Mat2 transfer_matrix(const Couplings& g);

/// Cayley transform i (I + U)(I - U)^{-1}, the Hermitian matrix of the
/// classical mixed-boundary form. Exists iff 1 is not an eigenvalue
/// of U; throws no_cayley_form when |det(I - U)| <= 1e-12, i.e. when
/// 2 |m0 - cos(eta)| <= 1e-12.
Mat2 cayley(const BoundaryCondition& bc);

/// Whether the interaction decouples the two half-lines.
/// symmetric_robin: m = (+-1, 0, 0, 0), same Robin constant both sides.
/// asymmetric_robin: m1 = m2 = 0 with m3 != 0, different constants.
/// non_confining: anything else (the halves communicate).
enum class ConfinementClass { symmetric_robin, asymmetric_robin, non_confining };

ConfinementClass confinement_class(const BoundaryCondition& bc);

/// Catalogue of standard interactions. Factory parameters:
///   robin(eta, alpha), pseudo_periodic(alpha), imaginary_quasi_periodic(alpha),
///   delta(g1), delta_prime(g2), gauge(g3), metric(gamma);
///   dirichlet, neumann, periodic, anti_periodic, zaremba take none.
enum class NamedFamily {
    dirichlet,
    neumann,
    robin,
    periodic,
    anti_periodic,
    pseudo_periodic,
    imaginary_quasi_periodic,
    zaremba,
    delta,
    delta_prime,
    gauge,
    metric,
};

/// Factory for the named families. p1/p2 are the family parameters in
/// declaration order; unused parameters are ignored.
BoundaryCondition named(NamedFamily f, double p1 = 0.0, double p2 = 0.0);

/// Case-sensitive name lookup ("delta_prime", "pseudo_periodic", ...).
std::optional<NamedFamily> family_from_string(std::string_view name);
std::string family_name(NamedFamily f);

/// Number of parameters a family takes (0, 1 or 2).
int family_arity(NamedFamily f);

}  // namespace dcomb
