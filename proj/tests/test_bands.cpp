#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dcomb/bands.hpp"
#include "dcomb/boundary.hpp"
#include "dcomb/spectral.hpp"

using namespace dcomb;

namespace {

constexpr double kPi = std::numbers::pi;

doctest::Approx approx(double x) { return doctest::Approx(x).epsilon(1e-12); }

int non_nan_count(const std::vector<double>& band) {
    return static_cast<int>(std::count_if(band.begin(), band.end(),
                                          [](double v) { return !std::isnan(v); }));
}

}  // namespace

TEST_SUITE_BEGIN("bands");

TEST_CASE("k_grid spans [-pi, pi) uniformly") {
    const auto k = k_grid(201);
    REQUIRE(k.size() == 201);
    CHECK(k.front() == -kPi);
    const double step = 2.0 * kPi / 201.0;
    for (std::size_t j = 1; j < k.size(); ++j)
        CHECK(std::abs(k[j] - k[j - 1] - step) <= 1e-14);
    CHECK(k.back() < kPi);

    const auto k4 = k_grid(4);
    REQUIRE(k4.size() == 4);
    CHECK(k4[0] == -kPi);
    CHECK(k4[1] == approx(-kPi / 2));
    CHECK(k4[2] == approx(0.0));
    CHECK(k4[3] == approx(kPi / 2));
}

TEST_CASE("option validation rejects degenerate settings") {
    RootFindOptions opts;
    CHECK_NOTHROW(opts.validate());

    RootFindOptions bad = opts;
    bad.n_k = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = opts;
    bad.q_max = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = opts;
    bad.scan_step = kPi / 3.0;  // too coarse to bracket adjacent roots
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = opts;
    bad.tol_eps = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = opts;
    bad.tangency_threshold = -1e-8;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("periodic comb at k = 0 has the free doubly degenerate points") {
    // eps = (2 pi n)^2, n > 0 twice (cos branches cross), plus the simple 0
    const RootFindOptions opts;
    const auto r = band_roots(named(NamedFamily::periodic), 0.0, opts);
    REQUIRE(r.size() == 7);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == approx(39.478417604357439));
    CHECK(r[3] == approx(157.91367041742976));
    CHECK(r[5] == approx(355.3057584392169));
    // tangential double roots are reported as coincident pairs
    CHECK(r[1] == r[2]);
    CHECK(r[3] == r[4]);
    CHECK(r[5] == r[6]);
    CHECK(std::is_sorted(r.begin(), r.end()));
}

TEST_CASE("dirichlet bands are flat at (n pi)^2") {
    const RootFindOptions opts;
    const auto bc = named(NamedFamily::dirichlet);
    const auto r1 = band_roots(bc, 0.7, opts);
    const auto r2 = band_roots(bc, -2.1, opts);
    REQUIRE(r1.size() == 6);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        CHECK(std::abs(r1[i] - n * n * kPi * kPi) <= 1e-10);
        // the dispersion has no k dependence at all here
        CHECK(r1[i] == r2[i]);
    }
}

TEST_CASE("attractive delta combs place the lowest Bloch point below zero") {
    const RootFindOptions opts;
    SUBCASE("g1 = -1 ground state") {
        const auto r = band_roots(named(NamedFamily::delta, -1.0), 0.0, opts);
        REQUIRE(!r.empty());
        CHECK(std::abs(r[0] - -2.38209787789084076) <= 1e-12);
    }
    SUBCASE("g1 = -3 band edges") {
        const auto r0 = band_roots(named(NamedFamily::delta, -3.0), 0.0, opts);
        const auto rpi = band_roots(named(NamedFamily::delta, -3.0), kPi, opts);
        REQUIRE(!r0.empty());
        REQUIRE(!rpi.empty());
        CHECK(std::abs(r0[0] - -10.5211832596090701) <= 1e-12);
        CHECK(std::abs(rpi[0] - -6.63412184700838502) <= 1e-12);
        CHECK(rpi[0] < 0.0);  // whole lowest band negative
    }
}

TEST_CASE("compute_bands pads short bands with NaN") {
    RootFindOptions opts;
    opts.n_k = 8;
    const auto bs = compute_bands(named(NamedFamily::delta, -1.0), opts);
    REQUIRE(bs.band_count() == 7);
    CHECK(bs.k.size() == 8);
    CHECK(bs.slope_estimate.size() == bs.band_count());
    for (const auto& band : bs.bands) CHECK(band.size() == 8);
    // the seventh band pokes into the window at a single grid point
    for (std::size_t n = 0; n + 1 < bs.band_count(); ++n)
        CHECK(non_nan_count(bs.bands[n]) == 8);
    CHECK(non_nan_count(bs.bands.back()) == 1);
    CHECK(bs.slope_estimate[0] > 0.0);
    CHECK(std::isfinite(bs.slope_estimate[0]));
}

TEST_CASE("delta(-1) band intervals") {
    const auto bs = compute_bands(named(NamedFamily::delta, -1.0));
    const auto iv = band_intervals(bs);
    REQUIRE(iv.size() == 6);
    CHECK(std::abs(iv[0].lo - -2.38209787789084076) <= 1e-12);
    CHECK(std::abs(iv[0].hi - 5.43413150584655655) <= 1e-12);
    CHECK(iv[0].lo < -1e-8);  // valence band straddles zero
    CHECK(iv[0].hi > 1e-8);
    for (std::size_t n = 0; n + 1 < iv.size(); ++n) {
        CHECK(iv[n].lo < iv[n].hi);
        CHECK(iv[n].hi < iv[n + 1].lo);
    }
}

TEST_CASE("confining robin comb collapses every band to a point") {
    const auto bs = compute_bands(named(NamedFamily::robin, kPi / 4, kPi / 3));
    const auto iv = band_intervals(bs);
    REQUIRE(iv.size() == 7);
    for (const auto& i : iv) CHECK(i.lo == i.hi);
    CHECK(std::abs(iv[0].lo - -57.695528136433232) <= 1e-9);
    CHECK(std::abs(iv[1].lo - 4.7897258393286908) <= 1e-9);
    // each point is a genuine zero of the (k-independent) spectral function
    for (const auto& i : iv)
        CHECK(std::abs(spectral_reduced(bs.bc, 0.3, i.lo)) <= 1e-9);
    CHECK(gaps(bs).size() == 6);
    CHECK(spectrum_intervals(bs).size() == 7);
}

TEST_CASE("metric comb at the critical coupling pinches but does not gap") {
    const auto bs = compute_bands(named(NamedFamily::metric, 0.5));
    const auto iv = band_intervals(bs);
    REQUIRE(iv.size() == 8);
    // the valence band, a sliver around zero, and the conduction band all
    // share endpoints exactly
    CHECK(iv[0].hi == iv[1].lo);
    CHECK(iv[1].hi == iv[2].lo);
    CHECK(std::abs(iv[0].hi) <= 1e-6);
    CHECK(iv[1].hi - iv[1].lo <= 1e-6);
    const auto g = gaps(bs);
    REQUIRE(g.size() == 5);
    CHECK(g[0].lo == approx(9.869604401089358));
    CHECK(g[0].hi == approx(31.32385784495192));
    for (const auto& gg : g) CHECK(gg.width > 1e-3);
}

TEST_CASE("metric(1) valence band reaches up to zero") {
    const auto bs = compute_bands(named(NamedFamily::metric, 1.0));
    const auto iv = band_intervals(bs);
    REQUIRE(iv.size() == 7);
    CHECK(std::abs(iv[0].lo - -2.38209787789084076) <= 1e-12);
    CHECK(std::abs(iv[0].hi) <= 1e-12);
    CHECK(std::abs(iv[1].lo - 5.43413150584655655) <= 1e-12);
    CHECK(iv[1].lo - iv[0].hi > 1e-3);
}

TEST_CASE("metric(0.4) valence band is strictly negative and gapped") {
    const auto bs = compute_bands(named(NamedFamily::metric, 0.4));
    const auto iv = band_intervals(bs);
    REQUIRE(iv.size() == 7);
    CHECK(std::abs(iv[0].lo - -7.93941708903376085) <= 1e-12);
    CHECK(std::abs(iv[0].hi - -3.15428063824010414) <= 1e-12);
    CHECK(iv[0].hi < 0.0);
    CHECK(std::abs(iv[1].lo) <= 1e-9);
    CHECK(iv[1].lo - iv[0].hi > 1e-3);
}

TEST_CASE("pseudo-periodic combs are gapless on the positive axis") {
    for (double alpha : {0.0, 1.0, kPi}) {
        const auto bs = compute_bands(named(NamedFamily::pseudo_periodic, alpha));
        const auto iv = band_intervals(bs);
        REQUIRE(iv.size() >= 2);
        for (std::size_t n = 0; n + 1 < iv.size(); ++n)
            CHECK(iv[n].hi == iv[n + 1].lo);  // consecutive bands touch exactly
        const auto sp = spectrum_intervals(bs);
        REQUIRE(sp.size() == 1);
        CHECK(std::abs(sp[0].lo) <= 1e-9);
        CHECK(std::abs(sp[0].hi - 36.0 * kPi * kPi) <= 1e-9);
        CHECK(gaps(bs).empty());
    }
}

TEST_CASE("repulsive delta comb opens gaps below 2 g1") {
    const auto bs = compute_bands(named(NamedFamily::delta, 0.5));
    const auto g = gaps(bs);
    REQUIRE(g.size() == 5);
    CHECK(g[0].lo == approx(9.8696044010893598));
    CHECK(g[0].hi == approx(11.771859163750689));
    for (const auto& gg : g) {
        CHECK(gg.width > 1e-3);
        CHECK(gg.width < 2.0);  // delta-comb gaps stay below twice the coupling
    }
}

TEST_CASE("delta-comb valence regimes vs the coupling") {
    auto vr = valence_regime_delta(1.0);
    CHECK(vr.tag == ValenceTag::no_negative_states);
    CHECK(!vr.at_threshold);
    CHECK(vr.thresholds[0] == 0.0);
    CHECK(vr.thresholds[1] == -2.0);

    vr = valence_regime_delta(0.0);
    CHECK(vr.tag == ValenceTag::no_negative_states);
    CHECK(vr.at_threshold);

    vr = valence_regime_delta(-1.0);
    CHECK(vr.tag == ValenceTag::mixed_band);
    CHECK(!vr.at_threshold);

    vr = valence_regime_delta(-2.0);
    CHECK(vr.tag == ValenceTag::fully_negative_band);
    CHECK(vr.at_threshold);

    vr = valence_regime_delta(-3.0);
    CHECK(vr.tag == ValenceTag::fully_negative_band);
    CHECK(!vr.at_threshold);
}

TEST_CASE("metric-comb valence regimes vs the coupling") {
    auto vr = valence_regime_metric(-0.5);
    CHECK(vr.tag == ValenceTag::no_negative_states);
    CHECK(!vr.at_threshold);
    CHECK(vr.thresholds[0] == 0.0);
    CHECK(vr.thresholds[1] == 0.5);

    vr = valence_regime_metric(0.0);
    CHECK(vr.tag == ValenceTag::no_negative_states);
    CHECK(vr.at_threshold);

    vr = valence_regime_metric(0.4);
    CHECK(vr.tag == ValenceTag::gapped_negative);
    CHECK(!vr.at_threshold);

    vr = valence_regime_metric(0.5);
    CHECK(vr.tag == ValenceTag::gap_closes);
    CHECK(vr.at_threshold);

    vr = valence_regime_metric(1.0);
    CHECK(vr.tag == ValenceTag::touching_zero);
    CHECK(!vr.at_threshold);
}

TEST_CASE("valence tag names are stable") {
    CHECK(std::string(valence_tag_name(ValenceTag::no_negative_states)) == "no_negative_states");
    CHECK(std::string(valence_tag_name(ValenceTag::mixed_band)) == "mixed_band");
    CHECK(std::string(valence_tag_name(ValenceTag::gap_closes)) == "gap_closes");
}

TEST_CASE("halving the scan step does not move any root") {
    RootFindOptions opts;
    RootFindOptions fine = opts;
    fine.scan_step = opts.scan_step / 2.0;
    const auto bc = named(NamedFamily::delta, -1.0);
    const auto r1 = band_roots(bc, 1.3, opts);
    const auto r2 = band_roots(bc, 1.3, fine);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(std::abs(r1[i] - r2[i]) <= 1e-12);
}

TEST_CASE("a narrower window yields a prefix of the roots") {
    RootFindOptions opts;
    RootFindOptions narrow = opts;
    narrow.q_max = 2.0 * kPi;
    const auto bc = named(NamedFamily::delta, -1.0);
    const auto full = band_roots(bc, 1.3, opts);
    const auto part = band_roots(bc, 1.3, narrow);
    REQUIRE(part.size() <= full.size());
    REQUIRE(!part.empty());
    for (std::size_t i = 0; i < part.size(); ++i)
        CHECK(std::abs(part[i] - full[i]) <= 1e-12);
    for (double r : part) CHECK(r <= 4.0 * kPi * kPi + 1e-9);
}

TEST_SUITE_END();
