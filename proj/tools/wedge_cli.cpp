// Command-line surface: reproducible experiments over the wedge library
// with JSON/CSV/image artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "wedge/cauchy.hpp"
#include "wedge/fields.hpp"
#include "wedge/kernel.hpp"
#include "wedge/portraits.hpp"
#include "wedge/spectra.hpp"
#include "wedge/verify.hpp"

using nlohmann::json;
using namespace wedge;

namespace {

constexpr int EXIT_USAGE = 2;
constexpr int EXIT_NUMERICAL = 3;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    double tolerance = 0.0;  // 0 = command default
    int probes = 0;
    long seed = 20260824;
};

json load_config(const Options& opt) {
    std::ifstream is(opt.config_path);
    if (!is) throw UsageError("cannot open config " + opt.config_path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    return j;
}

void write_report(const Options& opt, const std::string& name, const json& report) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string path = opt.out_dir + "/" + name;
    std::ofstream os(path);
    if (!os) throw UsageError("cannot write " + path);
    os << report.dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}

// report provenance: every artifact embeds the resolved inputs
json base_report(const Options& opt, const json& cfg, const WaveParams& p) {
    return {{"config", cfg},
            {"params", params_to_json(p)},
            {"epsilon_strip", p.epsilon_strip},
            {"seed", opt.seed}};
}

std::vector<SpectralPoint> strip_probes(const WaveParams& p, int n, long seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::uniform_real_distribution<double> re(-8.0, 8.0);
    std::uniform_real_distribution<double> im(-0.3, 0.3);
    std::vector<SpectralPoint> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({{re(rng), im(rng) * p.epsilon_strip},
                       {re(rng), im(rng) * p.epsilon_strip}});
    return pts;
}

json point_json(const SpectralPoint& a) {
    return {{a.alpha1.real(), a.alpha1.imag()}, {a.alpha2.real(), a.alpha2.imag()}};
}

int cmd_factor(const Options& opt) {
    const json cfg = load_config(opt);
    const WaveParams p = params_from_json(cfg.at("params"));
    const double tol = opt.tolerance > 0 ? opt.tolerance : 1e-6;
    const int n = opt.probes > 0 ? opt.probes : 25;
    json points = json::array();
    double worst = 0.0;
    bool converged = true;
    std::string failure;
    for (const SpectralPoint& a : strip_probes(p, n, opt.seed)) {
        try {
            const Cplx prod = K_factor(p, FactorKind::MM, a) *
                              K_factor(p, FactorKind::MP, a) *
                              K_factor(p, FactorKind::PM, a) *
                              K_factor(p, FactorKind::PP, a);
            const Cplx k = kernel_K(p, a);
            const double rel = std::abs(prod - k) / std::abs(k);
            worst = std::max(worst, rel);
            points.push_back({{"alpha", point_json(a)}, {"rel_error", rel}});
        } catch (const AccuracyError& e) {
            converged = false;
            failure = e.what();
            break;
        }
    }
    json report = base_report(opt, cfg, p);
    report["points"] = points;
    report["max_rel_error"] = worst;
    report["tolerance"] = tol;
    report["pass"] = converged && worst < tol;
    if (!converged) report["error"] = failure;
    write_report(opt, "factor_report.json", report);
    // an unattainable tolerance is a numerical failure, not a usage one
    return converged && worst < tol ? 0 : EXIT_NUMERICAL;
}

int cmd_split(const Options& opt) {
    const json cfg = load_config(opt);
    const WaveParams p = params_from_json(cfg.at("params"));
    std::vector<double> cs = {1.0, 2.0, 5.0};
    if (cfg.contains("c_values")) cs = cfg["c_values"].get<std::vector<double>>();
    const double tol = opt.tolerance > 0 ? opt.tolerance : 1e-8;
    json rows = json::array();
    double worst = 0.0;
    for (double c : cs) {
        if (!(c > 0.5)) throw UsageError("split: c values must exceed the strip");
        Function1D f;
        f.eval = [c](Cplx z) { return 1.0 / (z * z + c * c); };
        f.strip_lo = -0.5;
        f.strip_hi = 0.5;
        ContourSpec low, high;
        low.offset = -0.3;
        high.offset = 0.3;
        const Cplx alpha{0.2, 0.1};
        const Cplx plus = cauchy_integral(f, low, alpha, SplitSign::PLUS).value;
        const Cplx minus = cauchy_integral(f, high, alpha, SplitSign::MINUS).value;
        const double err = std::abs(plus + minus - f.eval(alpha));
        worst = std::max(worst, err);
        rows.push_back({{"c", c},
                        {"plus", {plus.real(), plus.imag()}},
                        {"minus", {minus.real(), minus.imag()}},
                        {"identity_error", err}});
    }
    json report = base_report(opt, cfg, p);
    report["splits"] = rows;
    report["max_identity_error"] = worst;
    report["pass"] = worst < tol;
    write_report(opt, "split_report.json", report);
    return worst < tol ? 0 : EXIT_NUMERICAL;
}

int cmd_ansatz(const Options& opt) {
    const json cfg = load_config(opt);
    const WaveParams p = params_from_json(cfg.at("params"));
    SpectralCandidate cand;
    if (cfg.contains("candidate")) cand = candidate_from_json(cfg["candidate"]);
    cand.validate(p);
    const int n = opt.probes > 0 ? opt.probes : 5;
    json rows = json::array();
    std::mt19937 rng(static_cast<unsigned>(opt.seed));
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(0.3, 1.5);
    for (int i = 0; i < n; ++i) {
        const SpectralPoint a{{re(rng), im(rng)}, {re(rng), im(rng)}};
        const Cplx base = radlow_ansatz(p, a);
        const Cplx corr = correction_term(p, cand, a);
        rows.push_back({{"alpha", point_json(a)},
                        {"radlow", {base.real(), base.imag()}},
                        {"correction", {corr.real(), corr.imag()}},
                        {"psi_pp", {(base + corr).real(), (base + corr).imag()}}});
    }
    json report = base_report(opt, cfg, p);
    report["candidate"] = candidate_to_json(cand);
    report["values"] = rows;
    write_report(opt, "ansatz_report.json", report);
    return 0;
}

int cmd_residual(const Options& opt) {
    const json cfg = load_config(opt);
    const WaveParams p = params_from_json(cfg.at("params"));
    SpectralCandidate cand;
    if (cfg.contains("candidate")) cand = candidate_from_json(cfg["candidate"]);
    cand.validate(p);
    json rows = json::array();
    double sup = 0.0;
    for (const SpectralPoint& a : compatibility_probes(p)) {
        const Cplx r = compatibility_residual(p, cand, a);
        sup = std::max(sup, std::abs(r));
        rows.push_back({{"probe", point_json(a)},
                        {"residual", {r.real(), r.imag()}}});
    }
    json report = base_report(opt, cfg, p);
    report["candidate"] = candidate_to_json(cand);
    report["residuals"] = rows;
    report["sup_norm"] = sup;
    write_report(opt, "residual_report.json", report);
    return 0;  // diagnostic command: completion is success
}

int cmd_field(const Options& opt) {
    const json cfg = load_config(opt);
    const WaveParams p = params_from_json(cfg.at("params"));
    if (!cfg.contains("grid")) throw UsageError("field: config needs a grid spec");
    const json g = cfg["grid"];
    const double h = g.at("spacing").get<double>();
    const size_t n1 = g.at("n1").get<size_t>(), n2 = g.at("n2").get<size_t>();
    if (!(h > 0.0) || n1 < 2 || n2 < 2) throw UsageError("field: bad grid spec");
    const double tol = opt.tolerance > 0 ? opt.tolerance : 1e-6;

    const std::string mode = cfg.value("contour", std::string("ABSORBING"));
    const ContourSpec c = gamma_contour(
        p, mode == "INDENTED" ? ContourMode::INDENTED : ContourMode::ABSORBING,
        cfg.value("indent_radius", 0.05));

    const std::string which = cfg.value("spectral", std::string("incident"));
    Function2D spec;
    if (which == "incident") {
        spec = [&p](const SpectralPoint& a) { return -forcing_P(p, a); };
    } else if (which == "radlow") {
        spec = [&p](const SpectralPoint& a) { return radlow_ansatz(p, a); };
    } else {
        throw UsageError("field: unknown spectral selector " + which);
    }

    const FieldGrid psi = sample_grid(
        [&](PhysicalPoint x) { return inverse_transform(spec, c, c, x, tol); },
        GridRegion::Q1, h, h, h, n1, n2);
    const FieldGrid phi = sample_grid(
        [&](PhysicalPoint x) { return incident_field(p, x); }, GridRegion::Q4, h, h,
        -3.0 * h, n1, 3);
    const FieldGrid phi2 = sample_grid(
        [&](PhysicalPoint x) { return incident_field(p, x); }, GridRegion::Q2, h,
        -3.0 * h, h, 3, n2);

    std::filesystem::create_directories(opt.out_dir);
    {
        std::ofstream os(opt.out_dir + "/psi_grid.csv");
        grid_to_csv(psi, os);
    }
    const auto [v1, d1] = continuity_check(phi, psi, WedgeFace::X1_POSITIVE);
    const auto [v2, d2] = continuity_check(phi2, psi, WedgeFace::X2_POSITIVE);
    const double hres = helmholtz_residual(psi, p.k2);
    EdgeExpansion inner_fit, outer_fit;
    const double fit_radius = cfg.value("fit_radius", h * (std::min(n1, n2) - 1.0));
    inner_fit = edge_expansion_fit(psi, fit_radius);
    const FieldGrid outer = sample_grid(
        [&](PhysicalPoint x) { return incident_field(p, x); }, GridRegion::Q3, h,
        -h * (n1 - 1.0), -h * (n2 - 1.0), n1, n2);
    outer_fit = edge_expansion_fit(outer, fit_radius);

    json report = base_report(opt, cfg, p);
    report["grid_file"] = "psi_grid.csv";
    report["continuity"] = {{"x1_face", {{"value_jump", v1}, {"normal_jump", d1}}},
                           {"x2_face", {{"value_jump", v2}, {"normal_jump", d2}}}};
    report["helmholtz_residual"] = hres;
    report["edge_interior"] = edge_to_json(inner_fit);
    report["edge_exterior"] = edge_to_json(outer_fit);
    report["edge_B_difference"] = std::abs(inner_fit.B - outer_fit.B);
    if (!c.warning.empty()) report["contour_warning"] = c.warning;
    write_report(opt, "field_report.json", report);
    return 0;
}

int cmd_portrait(const Options& opt) {
    const json cfg = load_config(opt);
    const std::string sel = cfg.at("selector").get<std::string>();
    const json w = cfg.at("window");
    const int width = cfg.value("width", 256), height = cfg.value("height", 256);
    if (width < 16 || height < 16) throw UsageError("portrait: raster too small");

    std::function<Cplx(Cplx)> f;
    WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    if (cfg.contains("params")) p = params_from_json(cfg["params"]);
    Cplx slice{0.0, 0.0};
    if (cfg.contains("slice"))
        slice = Cplx(cfg["slice"].at(0).get<double>(), cfg["slice"].at(1).get<double>());
    Cplx kval = p.k1;
    if (cfg.contains("k")) kval = Cplx(cfg["k"].at(0).get<double>(), cfg["k"].at(1).get<double>());

    if (sel == "mysqrt") f = [](Cplx z) { return mysqrt(z); };
    else if (sel == "mylog") f = [](Cplx z) { return mylog(z); };
    else if (sel == "kappa") f = [kval](Cplx z) { return kappa(kval, z); };
    else if (sel == "K") f = [p, slice](Cplx z) { return kernel_K(p, {slice, z}); };
    else if (sel == "K_minus_circ") f = [p, slice](Cplx z) { return K_minus_circ(p, {slice, z}); };
    else if (sel == "K_plus_circ") f = [p, slice](Cplx z) { return K_plus_circ(p, {z, slice}); };
    else if (sel == "log_K_minus_circ") f = [p, slice](Cplx z) { return mylog(K_minus_circ(p, {slice, z})); };
    else if (sel == "log_K_plus_circ") f = [p, slice](Cplx z) { return mylog(K_plus_circ(p, {z, slice})); };
    else if (sel == "K_pp") f = [p, slice](Cplx z) { return K_factor(p, FactorKind::PP, {slice, z}); };
    else if (sel == "K_pm") f = [p, slice](Cplx z) { return K_factor(p, FactorKind::PM, {slice, z}); };
    else if (sel == "K_mm") f = [p, slice](Cplx z) { return K_factor(p, FactorKind::MM, {slice, z}); };
    else if (sel == "K_mp") f = [p, slice](Cplx z) { return K_factor(p, FactorKind::MP, {slice, z}); };
    else if (sel == "radlow_alpha1") f = [p, slice](Cplx z) { return radlow_ansatz(p, {z, slice}); };
    else if (sel == "radlow_alpha2") f = [p, slice](Cplx z) { return radlow_ansatz(p, {slice, z}); };
    else throw UsageError("portrait: unknown selector " + sel);

    const PhaseRaster raster =
        render(f, w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>(),
               w.at(3).get<double>(), width, height);
    const std::string fmt = cfg.value("format", std::string("PPM"));
    std::filesystem::create_directories(opt.out_dir);
    const std::string file =
        opt.out_dir + "/" + sel + (fmt == "PNG" ? ".png" : ".ppm");
    write_image(raster, file, fmt == "PNG" ? ImageFormat::PNG : ImageFormat::PPM);
    std::cout << "wrote " << file << "\n";

    if (cfg.contains("discontinuity_threshold")) {
        const auto edges =
            discontinuity_detect(raster, cfg["discontinuity_threshold"].get<double>());
        json report = {{"config", cfg}, {"image", file}, {"edge_count", edges.size()}};
        write_report(opt, "portrait_report.json", report);
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    const auto results = run_verification(std::cout);
    json rows = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    }
    json report = {{"criteria", rows}, {"pass", all}};
    write_report(opt, "verify_report.json", report);
    return all ? 0 : EXIT_NUMERICAL;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiener-Hopf wedge-diffraction toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--tolerance", opt.tolerance, "tolerance override");
    app.add_option("--probes", opt.probes, "probe count override");
    app.add_option("--seed", opt.seed, "RNG seed for probe placement");

    int (*handler)(const Options&) = nullptr;
    app.add_subcommand("factor", "check the four-factor kernel reconstruction")
        ->fallthrough()->callback([&] { handler = cmd_factor; });
    app.add_subcommand("split", "demonstrate the Cauchy sum split")
        ->fallthrough()->callback([&] { handler = cmd_split; });
    app.add_subcommand("ansatz", "evaluate the spectral ansatz and correction")
        ->fallthrough()->callback([&] { handler = cmd_ansatz; });
    app.add_subcommand("residual", "evaluate the compatibility residual")
        ->fallthrough()->callback([&] { handler = cmd_residual; });
    app.add_subcommand("field", "reconstruct the physical field on a grid")
        ->fallthrough()->callback([&] { handler = cmd_field; });
    app.add_subcommand("portrait", "render a phase portrait")
        ->fallthrough()->callback([&] { handler = cmd_portrait; });
    app.add_subcommand("verify", "run the full verification suite")
        ->fallthrough()->callback([&] { handler = cmd_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        return handler(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const WedgeError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
}
