#include "cli_app.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcomb/bands.hpp"
#include "dcomb/boundary.hpp"
#include "dcomb/matrix2.hpp"
#include "dcomb/spectral.hpp"
#include "dcomb/symmetry.hpp"

namespace dcomb::cli {
namespace {

using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr double kNamedTol = 1e-12;  // component tolerance for named_equivalent

const char* const kHearabilityCaveat =
    "This classification covers isospectrality induced by the boundary-condition symmetry "
    "group (inner automorphisms and the kappa/iota/tau anti-automorphisms); whether "
    "isospectral maps outside this group exist for non-Robin conditions is open, so "
    "spectrally_unique and mirror_pair_only are claims relative to that group.";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string iso_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json jcplx(const cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json jmat(const Mat2& u) {
    return ordered_json::array({ordered_json::array({jcplx(u.a), jcplx(u.b)}),
                                ordered_json::array({jcplx(u.c), jcplx(u.d)})});
}

const char* confinement_name(ConfinementClass c) {
    switch (c) {
        case ConfinementClass::symmetric_robin: return "symmetric_robin";
        case ConfinementClass::asymmetric_robin: return "asymmetric_robin";
        case ConfinementClass::non_confining: return "non_confining";
    }
    return "?";
}

bool is_angle_family(NamedFamily f) {
    return f == NamedFamily::robin || f == NamedFamily::pseudo_periodic ||
           f == NamedFamily::imaginary_quasi_periodic;
}

bool near(double a, double b) { return std::abs(a - b) <= kNamedTol; }

/// Smallest named family matching this boundary condition exactly (within
/// 1e-12 per component), or null. Parameter-free names win over their
/// parametrized parents; gauge is never reported since pseudo_periodic
/// covers its whole range.
ordered_json named_equivalent(const BoundaryCondition& bc) {
    auto make = [](NamedFamily f, std::vector<double> params) {
        ordered_json j;
        j["family"] = family_name(f);
        j["params"] = params;
        return j;
    };
    const double eta = bc.eta;
    const auto& m = bc.m;
    const bool plane = near(m[1], 0.0) && near(m[2], 0.0);  // no cos k / sin k term

    if (near(eta, 0.0) && plane && near(m[3], 0.0)) {
        if (near(m[0], 1.0)) return make(NamedFamily::dirichlet, {});
        if (near(m[0], -1.0)) return make(NamedFamily::neumann, {});
    }
    if (near(eta, kPi / 2) && near(m[0], 0.0) && near(m[2], 0.0) && near(m[3], 0.0)) {
        if (near(m[1], 1.0)) return make(NamedFamily::periodic, {});
        if (near(m[1], -1.0)) return make(NamedFamily::anti_periodic, {});
    }
    if (near(eta, kPi / 2) && near(m[0], 0.0) && near(m[1], 0.0) && near(m[2], 0.0) &&
        near(m[3], 1.0))
        return make(NamedFamily::zaremba, {});
    if (plane) return make(NamedFamily::robin, {eta, std::atan2(-m[3], m[0])});
    if (near(eta, kPi / 2) && near(m[0], 0.0) && near(m[3], 0.0))
        return make(NamedFamily::pseudo_periodic, {std::atan2(m[2], m[1])});
    if (near(eta, kPi / 2) && near(m[0], 0.0) && near(m[1], 0.0))
        return make(NamedFamily::imaginary_quasi_periodic, {std::atan2(m[2], m[3])});

    const Couplings g = kurasov_forward(bc);
    if (!g.at_infinity) {
        if (near(g.g2, 0.0) && near(g.g3, 0.0) && near(g.g4, 0.0) && !near(g.g1, 0.0))
            return make(NamedFamily::delta, {g.g1});
        if (near(g.g1, 0.0) && near(g.g3, 0.0) && near(g.g4, 0.0) && !near(g.g2, 0.0))
            return make(NamedFamily::delta_prime, {g.g2});
        if (near(g.g1, 0.0) && near(g.g2, 0.0) && near(g.g3, 0.0) && !near(g.g4, 0.0))
            return make(NamedFamily::metric, {-g.g4});
    }
    return ordered_json(nullptr);
}

struct ResolvedBc {
    BoundaryCondition bc;
    std::optional<NamedFamily> family;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// One boundary-condition spec. Exactly one of --m (optionally with --eta),
/// --g, or --named must be given; a prefix ("bc2-") distinguishes the second
/// spec of `isospec verify`.
struct BcFlags {
    std::string prefix;
    CLI::Option* eta_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* g_opt = nullptr;
    CLI::Option* named_opt = nullptr;
    CLI::Option* param_opt = nullptr;
    CLI::Option* param2_opt = nullptr;
    double eta = 0.0;
    std::vector<double> m;
    std::vector<double> g;
    std::string family;
    double p1 = 0.0;
    double p2 = 0.0;

    void attach(CLI::App& cmd, std::string pfx, const std::string& what) {
        prefix = std::move(pfx);
        const std::string p = "--" + prefix;
        eta_opt = cmd.add_option(p + "eta", eta, "eta angle of " + what + " (use with " + p + "m)");
        m_opt = cmd.add_option(p + "m", m, "m0 m1 m2 m3 direction of " + what)->expected(4);
        g_opt = cmd.add_option(p + "g", g, "Kurasov couplings g1 g2 g3 g4 of " + what)->expected(4);
        named_opt = cmd.add_option(p + "named", family,
                                   "named family of " + what +
                                       " (dirichlet, neumann, robin, periodic, anti_periodic, "
                                       "pseudo_periodic, imaginary_quasi_periodic, zaremba, "
                                       "delta, delta_prime, gauge, metric)");
        param_opt = cmd.add_option(p + "param", p1, "first family parameter");
        param2_opt = cmd.add_option(p + "param2", p2, "second family parameter (robin only)");
    }

    ResolvedBc resolve(bool degrees) const {
        const double to_rad = degrees ? kPi / 180.0 : 1.0;
        const bool has_m = m_opt->count() > 0;
        const bool has_eta = eta_opt->count() > 0;
        const bool has_g = g_opt->count() > 0;
        const bool has_named = named_opt->count() > 0;
        const int reps = ((has_m || has_eta) ? 1 : 0) + (has_g ? 1 : 0) + (has_named ? 1 : 0);
        if (reps != 1)
            throw UsageError("give exactly one boundary-condition form: --" + prefix +
                             "m (with optional --" + prefix + "eta), --" + prefix + "g, or --" +
                             prefix + "named");
        if ((param_opt->count() > 0 || param2_opt->count() > 0) && !has_named)
            throw UsageError("--" + prefix + "param/--" + prefix + "param2 need --" + prefix +
                             "named");
        ResolvedBc r;
        if (has_m || has_eta) {
            if (!has_m) throw UsageError("--" + prefix + "eta needs --" + prefix + "m");
            r.bc = make_boundary(eta * to_rad, {m[0], m[1], m[2], m[3]});
            return r;
        }
        if (has_g) {
            Couplings c;
            c.g1 = g[0];
            c.g2 = g[1];
            c.g3 = g[2];
            c.g4 = g[3];
            r.bc = kurasov_inverse(c);
            return r;
        }
        const auto fam = family_from_string(family);
        if (!fam) throw UsageError("unknown named family '" + family + "'");
        const int arity = family_arity(*fam);
        const int given = (param_opt->count() > 0 ? 1 : 0) + (param2_opt->count() > 0 ? 1 : 0);
        if (param2_opt->count() > 0 && param_opt->count() == 0)
            throw UsageError("--" + prefix + "param2 needs --" + prefix + "param");
        if (given != arity)
            throw UsageError(family_name(*fam) + " takes " + std::to_string(arity) +
                             " parameter(s), got " + std::to_string(given));
        r.family = *fam;
        r.p1 = p1;
        r.p2 = p2;
        if (degrees && is_angle_family(*fam)) {
            r.p1 *= kPi / 180.0;
            r.p2 *= kPi / 180.0;
        }
        r.bc = named(*fam, r.p1, r.p2);
        return r;
    }
};

/// Flags every subcommand shares.
struct CommonFlags {
    bool deg = false;
    bool reproducible = false;
    std::string format = "json";
    std::string out_path;

    void attach(CLI::App& cmd) {
        cmd.add_flag("--deg", deg,
                     "interpret angle-valued inputs (eta, k, shift, robin/pseudo_periodic/"
                     "imaginary_quasi_periodic params) as degrees");
        cmd.add_flag("--reproducible", reproducible, "omit the generated_at timestamp");
        cmd.add_option("--format", format, "output format (csv only for bands and spectral-fn)")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd.add_option("--out", out_path, "write the document to this file instead of stdout");
    }

    void require_json(const char* cmd_name) const {
        if (format != "json")
            throw UsageError(std::string(cmd_name) + " only supports --format json");
    }
};

ordered_json make_document(const char* command, const BoundaryCondition& bc, ordered_json payload,
                           bool reproducible) {
    ordered_json doc;
    doc["schema_version"] = "1";
    doc["command"] = command;
    if (!reproducible) doc["generated_at"] = iso_utc_now();
    doc["bc"] = ordered_json{{"eta", bc.eta}, {"m", bc.m}};
    doc["payload"] = std::move(payload);
    return doc;
}

int emit_text(const std::string& text, const CommonFlags& cf, std::string& out, std::string& err) {
    if (cf.out_path.empty()) {
        out += text;
        return 0;
    }
    std::ofstream f(cf.out_path, std::ios::binary);
    if (!f) {
        err += "cannot open output file '" + cf.out_path + "'\n";
        return 2;
    }
    f << text;
    f.close();
    if (!f) {
        err += "failed writing '" + cf.out_path + "'\n";
        return 2;
    }
    return 0;
}

int emit_doc(const ordered_json& doc, const CommonFlags& cf, std::string& out, std::string& err) {
    return emit_text(doc.dump(2) + "\n", cf, out, err);
}

ordered_json jintervals(const std::vector<Interval>& v) {
    ordered_json a = ordered_json::array();
    for (const Interval& i : v) a.push_back(ordered_json::array({i.lo, i.hi}));
    return a;
}

// --- bc ---------------------------------------------------------------

int run_bc(const ResolvedBc& r, const CommonFlags& cf, std::string& out, std::string& err) {
    cf.require_json("bc");
    const BoundaryCondition& bc = r.bc;
    ordered_json p;
    p["unitary"] = jmat(unitary_matrix(bc));
    const Couplings g = kurasov_forward(bc);
    if (g.at_infinity)
        p["couplings"] = "at infinity";
    else
        p["couplings"] = ordered_json::array({g.g1, g.g2, g.g3, g.g4});
    try {
        p["cayley"] = jmat(cayley(bc));
    } catch (const no_cayley_form&) {
        p["cayley"] = nullptr;
    }
    if (g.at_infinity) {
        p["jump_average"] = nullptr;
        p["transfer"] = nullptr;
    } else {
        p["jump_average"] = jmat(jump_average_matrix(g));
        try {
            p["transfer"] = jmat(transfer_matrix(g));
        } catch (const singular_representation&) {
            p["transfer"] = nullptr;
        }
    }
    p["confinement_class"] = confinement_name(confinement_class(bc));
    p["named_equivalent"] = named_equivalent(bc);
    return emit_doc(make_document("bc", bc, std::move(p), cf.reproducible), cf, out, err);
}

// --- bands ------------------------------------------------------------

struct BandsFlags {
    int nk = 201;
    double qmax = 6.0 * kPi;
    double frakqmax = 12.0;
    double tol = 1e-12;

    void attach(CLI::App& cmd) {
        cmd.add_option("--nk", nk, "Brillouin-zone grid points")->capture_default_str();
        cmd.add_option("--qmax", qmax, "positive spectral window: eps up to qmax^2")
            ->capture_default_str();
        cmd.add_option("--frakqmax", frakqmax, "negative spectral window: eps down to -frakqmax^2")
            ->capture_default_str();
        cmd.add_option("--tol", tol, "root refinement tolerance")->capture_default_str();
    }
};

int run_bands(const ResolvedBc& r, const BandsFlags& bf, const CommonFlags& cf, std::string& out,
              std::string& err) {
    RootFindOptions opts;
    opts.n_k = bf.nk;
    opts.q_max = bf.qmax;
    opts.frakq_max = bf.frakqmax;
    opts.tol_eps = bf.tol;
    opts.validate();
    const BandStructure bs = compute_bands(r.bc, opts);

    if (cf.format == "csv") {
        std::string csv = "k,band,eps\n";
        for (std::size_t j = 0; j < bs.k.size(); ++j)
            for (std::size_t n = 0; n < bs.bands.size(); ++n) {
                const double e = bs.bands[n][j];
                if (std::isnan(e)) continue;
                csv += fmt17(bs.k[j]);
                csv += ',';
                csv += std::to_string(n);
                csv += ',';
                csv += fmt17(e);
                csv += '\n';
            }
        return emit_text(csv, cf, out, err);
    }

    ordered_json p;
    p["k"] = bs.k;
    p["bands"] = bs.bands;
    p["intervals"] = jintervals(spectrum_intervals(bs));
    ordered_json ja = ordered_json::array();
    ordered_json jw = ordered_json::array();
    for (const Gap& gp : gaps(bs)) {
        ja.push_back(ordered_json::array({gp.lo, gp.hi}));
        jw.push_back(gp.width);
    }
    p["gaps"] = std::move(ja);
    p["gap_widths"] = std::move(jw);
    p["band_intervals"] = jintervals(band_intervals(bs));
    p["slope_estimate"] = bs.slope_estimate;
    if (r.family == NamedFamily::delta || r.family == NamedFamily::metric) {
        const ValenceRegime vr = r.family == NamedFamily::delta ? valence_regime_delta(r.p1)
                                                                : valence_regime_metric(r.p1);
        p["valence_regime"] = ordered_json{{"tag", valence_tag_name(vr.tag)},
                                           {"at_threshold", vr.at_threshold},
                                           {"thresholds", vr.thresholds}};
    }
    return emit_doc(make_document("bands", r.bc, std::move(p), cf.reproducible), cf, out, err);
}

// --- spectral-fn --------------------------------------------------------

struct SpectralFlags {
    double k = 0.0;
    double eps_min = 0.0;
    double eps_max = 0.0;
    int samples = 1001;
    double qmax = 6.0 * kPi;
    double frakqmax = 12.0;
    CLI::Option* emin_opt = nullptr;
    CLI::Option* emax_opt = nullptr;

    void attach(CLI::App& cmd) {
        cmd.add_option("--k", k, "Bloch momentum")->capture_default_str();
        emin_opt = cmd.add_option("--eps-min", eps_min, "lower end of the energy range "
                                                        "(default -frakqmax^2)");
        emax_opt = cmd.add_option("--eps-max", eps_max, "upper end of the energy range "
                                                        "(default qmax^2)");
        cmd.add_option("--samples", samples, "number of energy samples")->capture_default_str();
        cmd.add_option("--qmax", qmax, "sets the default eps-max")->capture_default_str();
        cmd.add_option("--frakqmax", frakqmax, "sets the default eps-min")->capture_default_str();
    }
};

int run_spectral_fn(const ResolvedBc& r, const SpectralFlags& sf, const CommonFlags& cf,
                    std::string& out, std::string& err) {
    const double lo = sf.emin_opt->count() > 0 ? sf.eps_min : -sf.frakqmax * sf.frakqmax;
    const double hi = sf.emax_opt->count() > 0 ? sf.eps_max : sf.qmax * sf.qmax;
    if (!(lo < hi)) throw UsageError("--eps-min must lie below --eps-max");
    if (sf.samples < 2) throw UsageError("--samples must be at least 2");
    const double k = cf.deg ? sf.k * kPi / 180.0 : sf.k;

    std::vector<double> eps(static_cast<std::size_t>(sf.samples));
    std::vector<double> f(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        eps[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(sf.samples - 1);
        f[i] = spectral_reduced(r.bc, k, eps[i]);
    }

    if (cf.format == "csv") {
        std::string csv = "eps,f\n";
        for (std::size_t i = 0; i < eps.size(); ++i) {
            csv += fmt17(eps[i]);
            csv += ',';
            csv += fmt17(f[i]);
            csv += '\n';
        }
        return emit_text(csv, cf, out, err);
    }

    ordered_json p;
    p["k"] = k;
    p["eps"] = eps;
    p["f"] = f;
    return emit_doc(make_document("spectral-fn", r.bc, std::move(p), cf.reproducible), cf, out,
                    err);
}

// --- isospec ------------------------------------------------------------

struct VerifyFlags {
    double shift = 0.0;
    std::string shift_file;
    int k_samples = 101;
    int eps_samples = 201;
    double qmax = 6.0 * kPi;
    double frakqmax = 12.0;
    double tol = 1e-9;

    void attach(CLI::App& cmd) {
        auto* s = cmd.add_option("--shift", shift,
                                 "constant momentum shift delta: expects "
                                 "F2(k) = F1(k + delta)")
                      ->capture_default_str();
        auto* sfile = cmd.add_option("--shift-file", shift_file,
                                     "CSV file of k,delta samples (radians) for a "
                                     "k-dependent shift");
        s->excludes(sfile);
        sfile->excludes(s);
        cmd.add_option("--k-samples", k_samples, "momentum grid size")->capture_default_str();
        cmd.add_option("--eps-samples", eps_samples, "energy grid size")->capture_default_str();
        cmd.add_option("--qmax", qmax, "positive energy window bound")->capture_default_str();
        cmd.add_option("--frakqmax", frakqmax, "negative energy window bound")
            ->capture_default_str();
        cmd.add_option("--tol,--invariance-tol", tol, "pass/fail deviation threshold")
            ->capture_default_str();
    }
};

std::pair<std::vector<double>, std::vector<double>> read_shift_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open shift file '" + path + "'");
    std::vector<double> ks, vs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double k = 0.0, v = 0.0;
        if (!(row >> k >> v)) {
            if (lineno == 1 && ks.empty()) continue;  // header row
            throw UsageError("malformed shift file row " + std::to_string(lineno));
        }
        std::string extra;
        if (row >> extra) throw UsageError("malformed shift file row " + std::to_string(lineno));
        ks.push_back(k);
        vs.push_back(v);
    }
    if (ks.empty()) throw UsageError("shift file '" + path + "' holds no samples");
    return {std::move(ks), std::move(vs)};
}

int run_verify(const ResolvedBc& r1, const ResolvedBc& r2, const VerifyFlags& vf,
               const CommonFlags& cf, std::string& out, std::string& err) {
    cf.require_json("isospec verify");
    if (vf.k_samples < 2 || vf.eps_samples < 2)
        throw UsageError("--k-samples and --eps-samples must be at least 2");

    DisplacementProfile prof = DisplacementProfile::constant(0.0);
    std::vector<double> file_k, file_v;
    if (!vf.shift_file.empty()) {
        std::tie(file_k, file_v) = read_shift_file(vf.shift_file);
        prof = DisplacementProfile::sampled(file_k, file_v);
    } else {
        prof = DisplacementProfile::constant(cf.deg ? vf.shift * kPi / 180.0 : vf.shift);
    }
    if (!prof.induces_bijection()) {
        err += "shift profile does not induce a bijection of the Brillouin zone\n";
        return 3;
    }

    const InvarianceReport rep = check_spectral_invariance(r1.bc, r2.bc, prof, vf.k_samples,
                                                           vf.eps_samples, vf.qmax, vf.frakqmax);
    const bool pass = rep.max_abs_deviation <= vf.tol;

    ordered_json p;
    p["max_abs_deviation"] = rep.max_abs_deviation;
    p["k_samples"] = rep.k_samples;
    p["eps_samples"] = rep.eps_samples;
    ordered_json sh;
    if (rep.constant_shift) {
        sh["kind"] = "constant";
        sh["value"] = rep.shift_value;
    } else {
        sh["kind"] = "sampled";
        sh["k"] = file_k;
        sh["delta"] = file_v;
    }
    p["shift"] = std::move(sh);
    p["bc2"] = ordered_json{{"eta", r2.bc.eta}, {"m", r2.bc.m}};
    p["tolerance"] = vf.tol;
    p["pass"] = pass;
    const int rc =
        emit_doc(make_document("isospec verify", r1.bc, std::move(p), cf.reproducible), cf, out,
                 err);
    if (rc != 0) return rc;
    return pass ? 0 : 1;
}

struct OrbitFlags {
    int count = 8;
    double qmax = 6.0 * kPi;
    double frakqmax = 12.0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--count", count, "orbit sample count")->capture_default_str();
        cmd.add_option("--qmax", qmax, "positive energy window bound")->capture_default_str();
        cmd.add_option("--frakqmax", frakqmax, "negative energy window bound")
            ->capture_default_str();
    }
};

int run_orbit(const ResolvedBc& r, const OrbitFlags& of, const CommonFlags& cf, std::string& out,
              std::string& err) {
    cf.require_json("isospec orbit");
    if (of.count < 1) throw UsageError("--count must be at least 1");
    const std::vector<BoundaryCondition> members = oblique_orbit(r.bc, of.count);
    ordered_json list = ordered_json::array();
    for (std::size_t j = 0; j < members.size(); ++j) {
        const double delta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(of.count);
        const InvarianceReport rep =
            check_spectral_invariance(r.bc, members[j], DisplacementProfile::constant(-delta),
                                      101, 201, of.qmax, of.frakqmax);
        list.push_back(ordered_json{{"delta", delta},
                                    {"eta", members[j].eta},
                                    {"m", members[j].m},
                                    {"max_abs_deviation", rep.max_abs_deviation}});
    }
    ordered_json p;
    p["count"] = of.count;
    p["members"] = std::move(list);
    return emit_doc(make_document("isospec orbit", r.bc, std::move(p), cf.reproducible), cf, out,
                    err);
}

int run_classify(const ResolvedBc& r, const CommonFlags& cf, std::string& out, std::string& err) {
    cf.require_json("isospec classify");
    const ConfinementClass c = confinement_class(r.bc);
    const char* explanation = "";
    switch (c) {
        case ConfinementClass::symmetric_robin:
            explanation =
                "Symmetric Robin conditions confine: the bands are flat and their positions pin "
                "down the boundary condition uniquely within the symmetry group.";
            break;
        case ConfinementClass::asymmetric_robin:
            explanation =
                "Asymmetric Robin conditions also confine, but the mirror image m3 -> -m3 shares "
                "the same flat bands, so the comb is heard only up to that reflection.";
            break;
        case ConfinementClass::non_confining:
            explanation =
                "Non-confining conditions admit a one-parameter family of oblique transforms that "
                "rigidly shift the dispersion in k, leaving the band structure unchanged; the "
                "spectrum cannot single out the boundary condition.";
            break;
    }
    ordered_json p;
    p["hearability"] = hearability_name(hearability(r.bc));
    p["confinement_class"] = confinement_name(c);
    p["explanation"] = explanation;
    p["caveat"] = kHearabilityCaveat;
    return emit_doc(make_document("isospec classify", r.bc, std::move(p), cf.reproducible), cf,
                    out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::string& out, std::string& err) {
    CLI::App app{"Band structures and isospectral analysis of generalized Dirac combs"};
    app.require_subcommand(1);

    CLI::App* bc_cmd =
        app.add_subcommand("bc", "Convert one boundary condition between all representations");
    BcFlags bc_spec;
    CommonFlags bc_common;
    bc_spec.attach(*bc_cmd, "", "the boundary condition");
    bc_common.attach(*bc_cmd);

    CLI::App* bands_cmd =
        app.add_subcommand("bands", "Compute the Bloch band structure over the Brillouin zone");
    BcFlags bands_spec;
    BandsFlags bands_flags;
    CommonFlags bands_common;
    bands_spec.attach(*bands_cmd, "", "the boundary condition");
    bands_flags.attach(*bands_cmd);
    bands_common.attach(*bands_cmd);

    CLI::App* sf_cmd = app.add_subcommand(
        "spectral-fn", "Sample the reduced dispersion function F(k, eps) over an energy range");
    BcFlags sf_spec;
    SpectralFlags sf_flags;
    CommonFlags sf_common;
    sf_spec.attach(*sf_cmd, "", "the boundary condition");
    sf_flags.attach(*sf_cmd);
    sf_common.attach(*sf_cmd);

    CLI::App* iso_cmd = app.add_subcommand("isospec", "Isospectrality checks and classification");
    iso_cmd->require_subcommand(1);

    CLI::App* verify_cmd = iso_cmd->add_subcommand(
        "verify", "Check two combs for spectral agreement under a momentum shift");
    BcFlags verify_spec1, verify_spec2;
    VerifyFlags verify_flags;
    CommonFlags verify_common;
    verify_spec1.attach(*verify_cmd, "", "the reference comb");
    verify_spec2.attach(*verify_cmd, "bc2-", "the comparison comb");
    verify_flags.attach(*verify_cmd);
    verify_common.attach(*verify_cmd);

    CLI::App* orbit_cmd = iso_cmd->add_subcommand(
        "orbit", "List the U(1) orbit of oblique transforms with per-member deviation");
    BcFlags orbit_spec;
    OrbitFlags orbit_flags;
    CommonFlags orbit_common;
    orbit_spec.attach(*orbit_cmd, "", "the boundary condition");
    orbit_flags.attach(*orbit_cmd);
    orbit_common.attach(*orbit_cmd);

    CLI::App* classify_cmd = iso_cmd->add_subcommand(
        "classify",
        std::string("Report whether the band structure determines the boundary condition. ") +
            kHearabilityCaveat);
    BcFlags classify_spec;
    CommonFlags classify_common;
    classify_spec.attach(*classify_cmd, "", "the boundary condition");
    classify_common.attach(*classify_cmd);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("dcomb");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const std::string& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out += app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out += app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err += std::string(e.what()) + "\n";
        return 2;
    }

    try {
        if (bc_cmd->parsed()) return run_bc(bc_spec.resolve(bc_common.deg), bc_common, out, err);
        if (bands_cmd->parsed())
            return run_bands(bands_spec.resolve(bands_common.deg), bands_flags, bands_common, out,
                             err);
        if (sf_cmd->parsed())
            return run_spectral_fn(sf_spec.resolve(sf_common.deg), sf_flags, sf_common, out, err);
        if (iso_cmd->parsed()) {
            if (verify_cmd->parsed())
                return run_verify(verify_spec1.resolve(verify_common.deg),
                                  verify_spec2.resolve(verify_common.deg), verify_flags,
                                  verify_common, out, err);
            if (orbit_cmd->parsed())
                return run_orbit(orbit_spec.resolve(orbit_common.deg), orbit_flags, orbit_common,
                                 out, err);
            if (classify_cmd->parsed())
                return run_classify(classify_spec.resolve(classify_common.deg), classify_common,
                                    out, err);
        }
    } catch (const UsageError& e) {
        err += std::string(e.what()) + "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err += std::string(e.what()) + "\n";
        return 2;
    }
    err += "no subcommand selected\n";
    return 2;
}

}  // namespace dcomb::cli
