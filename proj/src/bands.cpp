#include "dcomb/bands.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dcomb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroEnergyTol = 1e-12;   // |F(k,0)| cut for reporting eps = 0
constexpr double kTangencyAccept = 1e-11;  // refined |F| cut for double roots
constexpr double kMergeTol = 1e-9;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Monotone substitution covering both sides of the threshold:
// eps(t) = t^2 for t >= 0, -t^2 below. Uniform steps in t equidistribute
// the oscillations of F on the positive side and the growth scale on the
// negative side.
double eps_of_t(double t) { return t < 0.0 ? -t * t : t * t; }

struct TLine {
    const BoundaryCondition& bc;
    double k;
    double operator()(double t) const { return spectral_reduced(bc, k, eps_of_t(t)); }
};

// G(eps(t)) - shift along the t-line; shift = +-R selects a band edge
// family, shift = 0 the flat-band positions.
struct GLine {
    const BoundaryCondition& bc;
    double shift;
    double operator()(double t) const { return band_discriminant(bc, eps_of_t(t)) - shift; }
};

// Bisection run until the bracket has no representable interior point,
// which lands within a few ulp of the zero (well inside any tol_eps the
// options can express).
template <class F>
double bisect(const F& f, double ta, double tb, double fa, double fb) {
    for (int i = 0; i < 200; ++i) {
        const double tm = ta + 0.5 * (tb - ta);
        if (tm == ta || tm == tb) break;
        const double fm = f(tm);
        if (fm == 0.0) return tm;
        if ((fm < 0.0) == (fa < 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
            fb = fm;
        }
    }
    return std::abs(fa) <= std::abs(fb) ? ta : tb;
}

// Golden-section minimum of |f| on [a, b].
template <class F>
double golden_min_abs(const F& f, double a, double b, double& fmin) {
    constexpr double invphi = 0.61803398874989485;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = std::abs(f(x1));
    double f2 = std::abs(f(x2));
    for (int i = 0; i < 200 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = std::abs(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = std::abs(f(x2));
        }
    }
    double xm = 0.5 * (a + b);
    fmin = std::abs(f(xm));
    if (f1 < fmin) {
        fmin = f1;
        xm = x1;
    }
    if (f2 < fmin) {
        fmin = f2;
        xm = x2;
    }
    return xm;
}

// Stationary value of the parabola through three (x, f) samples; used to
// decide whether a non-sign-changing local minimum is worth refining.
double parabola_extremum_value(double x0, double f0, double x1, double f1, double x2, double f2) {
    const double d0 = x1 - x0, d1 = x2 - x1;
    const double s0 = (f1 - f0) / d0, s1 = (f2 - f1) / d1;
    const double curv = 2.0 * (s1 - s0) / (d0 + d1);
    if (curv == 0.0) return f1;
    const double slope = (s0 * d1 + s1 * d0) / (d0 + d1);
    const double dx = -slope / curv;
    return f1 + slope * dx + 0.5 * curv * dx * dx;
}

// Scan nodes in t with the exact origin as a shared node, extended one
// step beyond both window ends so roots sitting exactly on the edge
// (Dirichlet's q = q_max) are still bracketed. i0 receives the index of
// the forced t = 0 node.
std::vector<double> scan_nodes(const RootFindOptions& opts, std::size_t& i0) {
    const int n_neg = std::max(1, static_cast<int>(std::ceil(opts.frakq_max / opts.scan_step)));
    const int n_pos = std::max(1, static_cast<int>(std::ceil(opts.q_max / opts.scan_step)));
    const double h_neg = opts.frakq_max / n_neg;
    const double h_pos = opts.q_max / n_pos;

    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(n_neg + n_pos + 3));
    t.push_back(-opts.frakq_max - h_neg);
    for (int j = 0; j < n_neg; ++j) t.push_back(-opts.frakq_max + j * h_neg);
    t.push_back(0.0);
    i0 = t.size() - 1;
    for (int j = 1; j < n_pos; ++j) t.push_back(j * h_pos);
    t.push_back(opts.q_max);
    t.push_back(opts.q_max + h_pos);
    return t;
}

}  // namespace

void RootFindOptions::validate() const {
    const bool ok = n_k > 0 && q_max > 0.0 && frakq_max > 0.0 && scan_step > 0.0 &&
                    tol_eps > 0.0 && tangency_threshold > 0.0 && scan_step < kPi / 4.0 &&
                    std::isfinite(q_max) && std::isfinite(frakq_max) && std::isfinite(scan_step);
    if (!ok) throw std::invalid_argument("RootFindOptions: fields must be positive, scan_step < pi/4");
}

std::vector<double> k_grid(int n_k) {
    if (n_k <= 0) throw std::invalid_argument("k_grid: n_k must be positive");
    std::vector<double> ks(static_cast<std::size_t>(n_k));
    for (int j = 0; j < n_k; ++j) ks[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * j / n_k;
    return ks;
}

std::vector<double> band_roots(const BoundaryCondition& bc, double k, const RootFindOptions& opts) {
    opts.validate();
    const TLine f{bc, k};

    std::size_t i0 = 0;
    const std::vector<double> t = scan_nodes(opts, i0);
    const std::size_t n = t.size();
    std::vector<double> fv(n);
    for (std::size_t i = 0; i < n; ++i) fv[i] = f(t[i]);

    // Nodes treated as roots in their own right: exact zeros anywhere, and
    // the origin whenever |F(k, 0)| is below the threshold-state cut.
    std::vector<char> zero(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        zero[i] = (i == i0) ? std::abs(fv[i]) <= kZeroEnergyTol : fv[i] == 0.0;
    const bool eps0 = zero[i0] != 0;

    std::vector<double> roots_t;

    // Zero nodes: multiplicity from the nearest non-zero flanks.
    for (std::size_t i = 0; i < n; ++i) {
        if (!zero[i] || i == i0) continue;
        std::ptrdiff_t l = static_cast<std::ptrdiff_t>(i) - 1;
        std::size_t r = i + 1;
        while (l >= 0 && zero[static_cast<std::size_t>(l)]) --l;
        while (r < n && zero[r]) ++r;
        roots_t.push_back(t[i]);
        if (l >= 0 && r < n && (fv[static_cast<std::size_t>(l)] < 0.0) == (fv[r] < 0.0))
            roots_t.push_back(t[i]);  // touched from one side: double root
    }

    // Strict sign changes between adjacent non-zero nodes.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (zero[i] || zero[i + 1]) continue;
        if ((fv[i] < 0.0) == (fv[i + 1] < 0.0)) continue;
        roots_t.push_back(bisect(f, t[i], t[i + 1], fv[i], fv[i + 1]));
    }

    // Tangencies: a local |F| minimum with no sign change across the
    // triple. The parabola vertex filters out minima that cannot plunge
    // near zero, then golden-section decides.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (zero[i - 1] || zero[i] || zero[i + 1]) continue;
        const bool sgn = fv[i] < 0.0;
        if ((fv[i - 1] < 0.0) != sgn || (fv[i + 1] < 0.0) != sgn) continue;
        const double ai = std::abs(fv[i]);
        if (!(std::abs(fv[i - 1]) > ai && ai <= std::abs(fv[i + 1]))) continue;
        if (ai > opts.tangency_threshold) {
            const double vertex =
                parabola_extremum_value(t[i - 1], fv[i - 1], t[i], fv[i], t[i + 1], fv[i + 1]);
            if (std::abs(vertex) > 100.0 * opts.tangency_threshold) continue;
        }
        double fmin = 0.0;
        const double tm = golden_min_abs(f, t[i - 1], t[i + 1], fmin);
        if (fmin <= kTangencyAccept) {
            roots_t.push_back(tm);
            roots_t.push_back(tm);
        }
    }

    // Map to energies, filter to the closed window (machine-scale slack so
    // edge roots survive their own rounding), fold near-zero duplicates
    // into the single eps = 0 entry.
    const double eps_lo = -opts.frakq_max * opts.frakq_max;
    const double eps_hi = opts.q_max * opts.q_max;
    const double eps_mach = std::numeric_limits<double>::epsilon();
    const double slack_lo = 64.0 * eps_mach * std::max(1.0, -eps_lo);
    const double slack_hi = 64.0 * eps_mach * std::max(1.0, eps_hi);

    std::vector<double> roots;
    if (eps0) roots.push_back(0.0);
    for (const double tr : roots_t) {
        const double eps = eps_of_t(tr);
        if (eps < eps_lo - slack_lo || eps > eps_hi + slack_hi) continue;
        if (eps0 && std::abs(eps) <= kZeroEnergyTol) continue;
        roots.push_back(eps);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

BandStructure compute_bands(const BoundaryCondition& bc, const RootFindOptions& opts) {
    opts.validate();
    BandStructure bs;
    bs.bc = bc;
    bs.opts = opts;
    bs.k = k_grid(opts.n_k);

    const std::size_t nk = bs.k.size();
    std::vector<std::vector<double>> per_k(nk);
    std::size_t n_bands = 0;
    for (std::size_t j = 0; j < nk; ++j) {
        per_k[j] = band_roots(bc, bs.k[j], opts);
        n_bands = std::max(n_bands, per_k[j].size());
    }

    bs.bands.assign(n_bands, std::vector<double>(nk, kNan));
    for (std::size_t j = 0; j < nk; ++j)
        for (std::size_t b = 0; b < per_k[j].size(); ++b) bs.bands[b][j] = per_k[j][b];

    const double dk = 2.0 * kPi / opts.n_k;
    bs.slope_estimate.assign(n_bands, 0.0);
    for (std::size_t b = 0; b < n_bands; ++b) {
        double worst = 0.0;
        for (std::size_t j = 0; j + 1 < nk; ++j) {
            const double u = bs.bands[b][j], v = bs.bands[b][j + 1];
            if (std::isnan(u) || std::isnan(v)) continue;
            worst = std::max(worst, std::abs(v - u) / dk);
        }
        bs.slope_estimate[b] = worst;
    }
    return bs;
}

namespace {

constexpr double kIsolatedAccept = 1e-13;  // refined |G -+ R| cut for isolated points

// R = sqrt(m1^2 + m2^2) from whichever expression avoids cancellation.
// For unit m the two agree to a ulp, but the complementary form returns
// exactly 1 for the pseudo-periodic families (m0 = m3 = 0), which keeps
// |G| <= R a pure tangency at band touchings instead of a noise-width
// crossing pair.
double plane_amplitude(const std::array<double, 4>& m) {
    const double s = m[0] * m[0] + m[3] * m[3];
    if (s <= 0.5) return std::sqrt(1.0 - s);
    return std::hypot(m[1], m[2]);
}

struct EdgeEvents {
    std::vector<double> crossings;           // transversal roots, in t
    std::vector<std::pair<double, double>> touches;  // (t, refined |w|)
};

// Locates the roots of w(t) = G(eps(t)) - shift over the extended scan,
// split into sign-changing crossings and tangential touches. Same node
// logic as band_roots: exact zeros at nodes classify by their flanks.
EdgeEvents collect_events(const GLine& w, const RootFindOptions& opts) {
    std::size_t i0 = 0;
    const std::vector<double> t = scan_nodes(opts, i0);
    const std::size_t n = t.size();
    std::vector<double> fv(n);
    for (std::size_t i = 0; i < n; ++i) fv[i] = w(t[i]);

    EdgeEvents ev;
    for (std::size_t i = 0; i < n; ++i) {
        if (fv[i] != 0.0) continue;
        std::ptrdiff_t l = static_cast<std::ptrdiff_t>(i) - 1;
        std::size_t r = i + 1;
        while (l >= 0 && fv[static_cast<std::size_t>(l)] == 0.0) --l;
        while (r < n && fv[r] == 0.0) ++r;
        if (l >= 0 && r < n && (fv[static_cast<std::size_t>(l)] < 0.0) == (fv[r] < 0.0))
            ev.touches.emplace_back(t[i], 0.0);
        else
            ev.crossings.push_back(t[i]);
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (fv[i] == 0.0 || fv[i + 1] == 0.0) continue;
        if ((fv[i] < 0.0) == (fv[i + 1] < 0.0)) continue;
        ev.crossings.push_back(bisect(w, t[i], t[i + 1], fv[i], fv[i + 1]));
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (fv[i - 1] == 0.0 || fv[i] == 0.0 || fv[i + 1] == 0.0) continue;
        const bool sgn = fv[i] < 0.0;
        if ((fv[i - 1] < 0.0) != sgn || (fv[i + 1] < 0.0) != sgn) continue;
        const double ai = std::abs(fv[i]);
        if (!(std::abs(fv[i - 1]) > ai && ai <= std::abs(fv[i + 1]))) continue;
        if (ai > opts.tangency_threshold) {
            const double vertex =
                parabola_extremum_value(t[i - 1], fv[i - 1], t[i], fv[i], t[i + 1], fv[i + 1]);
            if (std::abs(vertex) > 100.0 * opts.tangency_threshold) continue;
        }
        double fmin = 0.0;
        const double tm = golden_min_abs(w, t[i - 1], t[i + 1], fmin);
        if (fmin <= kTangencyAccept) ev.touches.emplace_back(tm, fmin);
    }
    return ev;
}

}  // namespace

// The dispersion relation m1 cos k + m2 sin k = G(eps) makes the
// spectrum the set {eps : |G(eps)| <= R}, so band endpoints are plain
// one-dimensional roots of G -+ R: transversal crossings delimit bands
// against gaps, tangential touches split adjacent bands inside a merged
// region. This sidesteps extremizing eps_n(k) over k entirely (the band
// functions have kinks and quartically flat edges exactly where the
// edges matter most).
std::vector<Interval> band_intervals(const BandStructure& bs) {
    const BoundaryCondition& bc = bs.bc;
    const RootFindOptions& opts = bs.opts;
    const double eps_lo = -opts.frakq_max * opts.frakq_max;
    const double eps_hi = opts.q_max * opts.q_max;
    const double eps_mach = std::numeric_limits<double>::epsilon();
    const double slack_lo = 64.0 * eps_mach * std::max(1.0, -eps_lo);
    const double slack_hi = 64.0 * eps_mach * std::max(1.0, eps_hi);
    const auto in_window = [&](double eps) {
        return eps >= eps_lo - slack_lo && eps <= eps_hi + slack_hi;
    };
    const double r = plane_amplitude(bc.m);

    // Confining comb: no k-dependence, the spectrum is the zero set of G
    // itself and every band is a point.
    if (r == 0.0) {
        const EdgeEvents ev = collect_events(GLine{bc, 0.0}, opts);
        std::vector<double> roots = ev.crossings;
        for (const auto& [tt, fm] : ev.touches) roots.push_back(tt);
        std::vector<Interval> out;
        for (const double tt : roots) {
            const double eps = eps_of_t(tt);
            if (!in_window(eps)) continue;
            const double e = std::clamp(eps, eps_lo, eps_hi);
            out.push_back({e, e});
        }
        std::sort(out.begin(), out.end(),
                  [](const Interval& p, const Interval& q) { return p.lo < q.lo; });
        return out;
    }

    const EdgeEvents up = collect_events(GLine{bc, r}, opts);
    const EdgeEvents dn = collect_events(GLine{bc, -r}, opts);

    const double t_lo = -opts.frakq_max, t_hi = opts.q_max;
    std::vector<double> nodes{t_lo, t_hi};
    const auto add_node = [&](double tt) {
        if (tt > t_lo && tt < t_hi) nodes.push_back(tt);
    };
    for (const double tt : up.crossings) add_node(tt);
    for (const double tt : dn.crossings) add_node(tt);
    std::vector<std::pair<double, double>> touches = up.touches;
    touches.insert(touches.end(), dn.touches.begin(), dn.touches.end());
    for (const auto& [tt, fm] : touches) add_node(tt);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    // Between consecutive events |G| - R keeps its sign, so one interior
    // sample decides the whole segment. The slack admits segments whose
    // midpoint sits within rounding of the edge value itself.
    std::vector<char> inside(nodes.size() - 1, 0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double mid = nodes[i] + 0.5 * (nodes[i + 1] - nodes[i]);
        const double g = std::abs(band_discriminant(bc, eps_of_t(mid)));
        inside[i] = g <= r + 64.0 * eps_mach * (1.0 + r + g);
    }

    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!inside[i]) continue;
        out.push_back({std::clamp(eps_of_t(nodes[i]), eps_lo, eps_hi),
                       std::clamp(eps_of_t(nodes[i + 1]), eps_lo, eps_hi)});
    }

    // A touch flanked by gap on both sides is an isolated point of the
    // spectrum; admit it only when the refined residual is at rounding
    // level, so the shallow minimum over a genuine micro-gap does not
    // fabricate a state inside it.
    for (const auto& [tt, fm] : touches) {
        if (fm > kIsolatedAccept) continue;
        const double eps = eps_of_t(tt);
        if (!in_window(eps)) continue;
        bool adjacent_inside = false;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            if ((nodes[i] == tt || nodes[i + 1] == tt) && inside[i]) adjacent_inside = true;
        if (!adjacent_inside) {
            const double e = std::clamp(eps, eps_lo, eps_hi);
            out.push_back({e, e});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Interval& p, const Interval& q) { return p.lo < q.lo; });
    return out;
}

std::vector<Interval> spectrum_intervals(const BandStructure& bs) {
    std::vector<Interval> iv = band_intervals(bs);
    std::sort(iv.begin(), iv.end(),
              [](const Interval& p, const Interval& q) { return p.lo < q.lo; });
    std::vector<Interval> merged;
    for (const auto& s : iv) {
        if (!merged.empty() && s.lo <= merged.back().hi + kMergeTol)
            merged.back().hi = std::max(merged.back().hi, s.hi);
        else
            merged.push_back(s);
    }
    return merged;
}

std::vector<Gap> gaps(const BandStructure& bs) {
    const std::vector<Interval> merged = spectrum_intervals(bs);
    std::vector<Gap> out;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        out.push_back({merged[i].hi, merged[i + 1].lo, merged[i + 1].lo - merged[i].hi});
    return out;
}

namespace {
constexpr double kRegimeTol = 1e-12;
}

ValenceRegime valence_regime_delta(double g1) {
    if (!std::isfinite(g1)) throw std::invalid_argument("valence_regime_delta: g1 must be finite");
    ValenceRegime r{ValenceTag::no_negative_states, false, {0.0, -2.0}};
    if (std::abs(g1) <= kRegimeTol) {
        r.at_threshold = true;
        return r;
    }
    if (std::abs(g1 + 2.0) <= kRegimeTol) {
        r.tag = ValenceTag::fully_negative_band;
        r.at_threshold = true;
        return r;
    }
    if (g1 > 0.0) return r;
    r.tag = g1 > -2.0 ? ValenceTag::mixed_band : ValenceTag::fully_negative_band;
    return r;
}

ValenceRegime valence_regime_metric(double g4) {
    if (!std::isfinite(g4)) throw std::invalid_argument("valence_regime_metric: g4 must be finite");
    ValenceRegime r{ValenceTag::no_negative_states, false, {0.0, 0.5}};
    if (std::abs(g4) <= kRegimeTol) {
        r.at_threshold = true;
        return r;
    }
    if (std::abs(g4 - 0.5) <= kRegimeTol) {
        r.tag = ValenceTag::gap_closes;
        r.at_threshold = true;
        return r;
    }
    if (g4 < 0.0) return r;
    r.tag = g4 < 0.5 ? ValenceTag::gapped_negative : ValenceTag::touching_zero;
    return r;
}

const char* valence_tag_name(ValenceTag tag) {
    switch (tag) {
        case ValenceTag::no_negative_states: return "no_negative_states";
        case ValenceTag::mixed_band: return "mixed_band";
        case ValenceTag::fully_negative_band: return "fully_negative_band";
        case ValenceTag::gapped_negative: return "gapped_negative";
        case ValenceTag::touching_zero: return "touching_zero";
        case ValenceTag::gap_closes: return "gap_closes";
    }
    return "?";
}

}  // namespace dcomb
