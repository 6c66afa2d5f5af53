#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "dcomb/boundary.hpp"
#include "dcomb/spectral.hpp"

namespace dcomb {

/// Search windows and solver knobs for the spectral zero-finder.
/// Positive energies are scanned in q = sqrt(eps) up to q_max, negative
/// ones in frakq = sqrt(-eps) up to frakq_max. Bisection runs on the
/// monotone substitution eps(t) = sign(t) t^2, so tol_eps is an upper
/// bound on the delivered relative error, not the attained one: brackets
/// collapse to floating-point resolution.
struct RootFindOptions {
    int n_k = 201;
    double q_max = 6.0 * std::numbers::pi;
    double frakq_max = 12.0;
    double scan_step = std::numbers::pi / 400.0;
    double tol_eps = 1e-12;
    double tangency_threshold = 1e-8;

    /// Throws std::invalid_argument unless all fields are positive and
    /// scan_step < pi/4.
    void validate() const;
};

/// Uniform Brillouin-zone grid k_j = -pi + 2 pi j / n_k, j = 0..n_k-1.
std::vector<double> k_grid(int n_k);

/// All zeros of spectral_reduced(bc, k, .) with eps in
/// [-frakq_max^2, q_max^2], ascending, with multiplicity: tangential
/// double roots appear as two coincident entries. A zero at eps = 0 is
/// reported (once) iff |F(bc, k, 0)| <= 1e-12 or a sign change brackets it.
std::vector<double> band_roots(const BoundaryCondition& bc, double k,
                               const RootFindOptions& opts);

/// Band structure on a k-grid. bands[n][j] is the n-th smallest root at
/// k_j, NaN where band n has no root in the search window.
struct BandStructure {
    BoundaryCondition bc;
    RootFindOptions opts;
    std::vector<double> k;
    std::vector<std::vector<double>> bands;
    /// Diagnostic: per band, max |d eps / d k| estimated from consecutive
    /// grid differences (ignoring NaN stretches).
    std::vector<double> slope_estimate;

    std::size_t band_count() const { return bands.size(); }
};

BandStructure compute_bands(const BoundaryCondition& bc, const RootFindOptions& opts = {});

struct Interval {
    double lo = 0.0, hi = 0.0;
};

struct Gap {
    double lo = 0.0, hi = 0.0, width = 0.0;
};

/// Per-band energy range [min_k, max_k], ascending. Computed exactly
/// rather than from the grid: the dispersion relation
/// m1 cos k + m2 sin k = G(eps) makes the spectrum the set
/// {eps : |G(eps)| <= R}, R = sqrt(m1^2 + m2^2), so every band endpoint
/// is a one-dimensional root of G -+ R, bisected to machine precision.
/// Adjacent touching bands share their common endpoint exactly; for a
/// confining comb (R = 0) every band is a point [eps_n, eps_n].
std::vector<Interval> band_intervals(const BandStructure& bs);

/// band_intervals merged: overlapping or touching (within 1e-9)
/// intervals coalesce; result is disjoint and ascending.
std::vector<Interval> spectrum_intervals(const BandStructure& bs);

/// Open gaps between consecutive merged spectrum intervals.
std::vector<Gap> gaps(const BandStructure& bs);

enum class ValenceTag {
    no_negative_states,
    mixed_band,
    fully_negative_band,
    gapped_negative,
    touching_zero,
    gap_closes,
};

/// Analytic classification of the lowest band by family parameter.
/// thresholds records the parameter boundaries of the family;
/// at_threshold is set when the parameter sits on one (within 1e-12),
/// in which case the tag of the adjacent closed regime is reported.
struct ValenceRegime {
    ValenceTag tag;
    bool at_threshold = false;
    std::array<double, 2> thresholds{};
};

/// Lowest-band regime of the delta comb vs coupling g1:
/// g1 > 0 no negative states; -2 < g1 < 0 band straddles 0;
/// g1 < -2 band entirely negative.
ValenceRegime valence_regime_delta(double g1);

/// Lowest-band regime of the metric comb vs parameter g4:
/// g4 <= 0 no negative states; 0 < g4 < 1/2 negative band separated
/// from 0; g4 = 1/2 the gap closes; g4 > 1/2 band touches 0.
ValenceRegime valence_regime_metric(double g4);

const char* valence_tag_name(ValenceTag tag);

}  // namespace dcomb
