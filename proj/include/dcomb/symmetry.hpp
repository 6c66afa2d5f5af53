#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "dcomb/boundary.hpp"
#include "dcomb/spectral.hpp"

namespace dcomb {

/// Discrete part of a U(2) symmetry element: the Klein four-group
/// generated by entrywise conjugation (kappa), the adjoint (iota) and
/// transposition (tau = kappa o iota). kappa and id act multiplicatively
/// (automorphisms); iota and tau reverse products (anti-automorphisms).
enum class DiscreteTag { id, kappa, iota, tau };

/// Element of (SU(2)/Z2) x| K4 acting on boundary matrices by
/// U -> nu d(U) nu*, with nu = exp(-i (delta/2) n.sigma) and d the
/// discrete tag. Canonical form: delta in [0, pi]; axis is unit length;
/// at delta = 0 the axis is pinned to (0, 0, 1), at delta = pi its sign
/// is fixed by the first nonzero component being positive (the two SU(2)
/// lifts differ by overall sign, which acts identically).
struct SymmetryElement {
    double delta = 0.0;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    DiscreteTag discrete = DiscreteTag::id;
};

/// Canonicalizing constructor. axis need not be normalized (it is scaled
/// to unit length; zero axis only allowed together with delta = 0 mod 2pi).
SymmetryElement make_symmetry(double delta, const std::array<double, 3>& axis,
                              DiscreteTag discrete = DiscreteTag::id);

SymmetryElement identity_symmetry();

/// True for the anti-automorphism kinds (iota, tau).
bool is_anti_automorphism(const SymmetryElement& e);

/// The SU(2) representative nu = cos(delta/2) I - i sin(delta/2) n.sigma.
Mat2 inner_matrix(const SymmetryElement& e);

/// nu d(U) nu*, returned in canonical (eta, m) form.
BoundaryCondition apply_symmetry(const SymmetryElement& e, const BoundaryCondition& bc);

/// Group composition: apply_symmetry(compose(e1, e2), bc) equals
/// apply_symmetry(e1, apply_symmetry(e2, bc)). Discrete parts multiply in
/// K4; the inner part of e2 picks up an entrywise conjugation when e1's
/// discrete part involves one (kappa or tau).
SymmetryElement compose(const SymmetryElement& e1, const SymmetryElement& e2);

SymmetryElement inverse(const SymmetryElement& e);

/// Conjugation by exp(-i (delta/2) sigma_k): rotates (m1, m2, m3) by
/// delta about the in-plane axis (cos k, sin k, 0). Leaves the spectral
/// function at this same k pointwise invariant.
BoundaryCondition vertical_transform(const BoundaryCondition& bc, double delta, double k);

/// Conjugation by exp(-i (delta/2) sigma_z): rotates (m1, m2) by delta.
/// Shifts the spectral pattern: F(result, k, eps) = F(bc, k - delta, eps),
/// so the two combs are isospectral under the quasi-momentum relabeling.
BoundaryCondition oblique_transform(const BoundaryCondition& bc, double delta);

/// sigma_x U^T sigma_x, i.e. m3 -> -m3: the space-reflected comb.
BoundaryCondition mirror_transform(const BoundaryCondition& bc);

/// Quasi-momentum displacement delta(k): either a constant or samples on
/// an ascending k-grid in [-pi, pi), linearly interpolated and continued
/// 2pi-periodically.
class DisplacementProfile {
  public:
    static DisplacementProfile constant(double delta);
    /// k strictly ascending in [-pi, pi), same length as values, nonempty.
    static DisplacementProfile sampled(std::vector<double> k, std::vector<double> values);

    double operator()(double k) const;
    bool is_constant() const { return constant_; }
    double constant_value() const { return delta0_; }

    /// Whether k + delta(k) is a strictly monotone map of the circle
    /// (checked on the sample nodes, including the wrap-around step).
    bool induces_bijection() const;

  private:
    DisplacementProfile() = default;
    bool constant_ = true;
    double delta0_ = 0.0;
    std::vector<double> k_;
    std::vector<double> v_;
};

struct InvarianceReport {
    double max_abs_deviation = 0.0;
    int k_samples = 0;
    int eps_samples = 0;
    bool constant_shift = true;
    double shift_value = 0.0;  // meaningful when constant_shift
};

/// Max over a (k, eps) grid of
/// |F(bc2, k, eps) - F(bc, fold(k + delta(k)), eps)|, eps spanning
/// [-frakq_max^2, q_max^2]. The shift must induce a bijection
/// (std::invalid_argument otherwise). A deviation at rounding level
/// certifies that bc2's comb is the shift-relabeled image of bc's.
InvarianceReport check_spectral_invariance(const BoundaryCondition& bc,
                                           const BoundaryCondition& bc2,
                                           const DisplacementProfile& shift, int k_samples,
                                           int eps_samples,
                                           double q_max = 6.0 * std::numbers::pi,
                                           double frakq_max = 12.0);

/// The U(1) isospectral family: oblique_transform(bc, 2 pi j / n) for
/// j = 0..n-1. Every member's spectral function is a rigid shift of bc's.
std::vector<BoundaryCondition> oblique_orbit(const BoundaryCondition& bc, int n_samples);

/// Spectral-uniqueness verdict within the symmetry class implemented
/// here. Combs with symmetric Robin conditions are determined by their
/// spectrum; asymmetric Robin ones only up to the mirror image; all
/// others sit on a nontrivial isospectral orbit.
enum class Hearability { spectrally_unique, mirror_pair_only, not_heard };

Hearability hearability(const BoundaryCondition& bc);

const char* hearability_name(Hearability h);

/// Fourier modes of a real function sampled on the uniform grid
/// k_j = -pi + 2 pi j / N over [-pi, pi):
/// ghat_n = (1/2pi) integral e^{ikn} g(k) dk by the periodic rectangle
/// rule. Returns ghat_n for n = -n_max..n_max (index n + n_max).
/// Requires N >= 2 n_max + 1, else std::invalid_argument.
std::vector<cplx> coupling_fourier_modes(const std::vector<double>& samples, int n_max);

}  // namespace dcomb
