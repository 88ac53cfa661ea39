#include "cxlift/errors.hpp"
#include "cxlift/fpgroups/subgroups.hpp"
#include "cxlift/intlinalg/intmatrix.hpp"
#include "cxlift/nq2/certificate.hpp"
#include "cxlift/pathlift/pathlift.hpp"
#include "cxlift/presets/presets.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace {

using namespace cxlift;
namespace fs = std::filesystem;

struct RunConfig {
    std::string preset;
    std::string pres_path;
    std::string matrices_path;
    std::string form_path;
    std::string subgroup;
    std::string word;
    std::string svg_path;
    std::string csv_path;
    long bits = 128;
    int samples = 256;
    size_t max_cosets = 1'000'000;
    bool open_path = false;
    bool lifted = false;
    bool raw = false;
    bool serial = false;
    bool details = false;
    bool no_reduce = false;
};

// Exit codes.
constexpr int kOk = 0;
constexpr int kInconclusive = 1;
constexpr int kParse = 2;
constexpr int kNumeric = 3;

struct Group {
    fpgroups::Presentation pres;
    std::optional<presets::LatticePreset> lattice;
};

presets::LatticePreset load_lattice(const RunConfig& cfg)
{
    if (!cfg.preset.empty())
        return presets::dm_lattice(cfg.preset, cfg.bits);
    if (!cfg.pres_path.empty() && !cfg.matrices_path.empty())
        return presets::load_from_files(cfg.pres_path, cfg.matrices_path, cfg.form_path, cfg.bits);
    throw ParseError("need --preset, or --pres together with --matrices");
}

pathlift::LiftedPresentation lift(const presets::LatticePreset& p, const RunConfig& cfg)
{
    pathlift::LiftOptions opts;
    opts.path.samples_per_letter = cfg.samples;
    opts.parallel = !cfg.serial;
    auto lp = pathlift::lift_presentation(p.lift_input(), opts);
    return cfg.raw ? lp : pathlift::normalize_lift(lp);
}

// The group a subcommand acts on: the base presentation, or its lift.
Group load_group(const RunConfig& cfg)
{
    Group g;
    if (cfg.lifted) {
        g.lattice = load_lattice(cfg);
        g.pres = lift(*g.lattice, cfg).to_presentation();
        return g;
    }
    if (!cfg.preset.empty()) {
        g.lattice = presets::dm_lattice(cfg.preset, cfg.bits);
        g.pres = g.lattice->presentation;
    }
    else if (!cfg.pres_path.empty())
        g.pres = fpgroups::load_presentation(cfg.pres_path);
    else
        throw ParseError("need --preset or --pres");
    return g;
}

// A file path, or the name of a fixture shipped with the preset.
std::optional<std::vector<fpgroups::Word>> resolve_subgroup(const RunConfig& cfg,
                                                            const std::vector<std::string>& generators,
                                                            const presets::LatticePreset* lattice)
{
    if (cfg.subgroup.empty())
        return std::nullopt;
    if (fs::exists(cfg.subgroup))
        return fpgroups::load_word_list(cfg.subgroup, generators);
    if (lattice && lattice->subgroups.count(cfg.subgroup))
        return fpgroups::load_word_list(lattice->subgroups.at(cfg.subgroup), generators);
    throw ParseError("subgroup fixture '" + cfg.subgroup + "' not found");
}

nq2::CertifyOptions certify_options(const RunConfig& cfg)
{
    nq2::CertifyOptions o;
    o.enumeration.max_cosets = cfg.max_cosets;
    return o;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << content;
}

std::string path_csv(const pathlift::RelatorPath& path)
{
    std::ostringstream out;
    out << std::setprecision(17) << "s,re,im\n";
    for (const auto& p : path.samples)
        out << p.s << ',' << p.value.real() << ',' << p.value.imag() << '\n';
    return out.str();
}

// Polyline of the projected path with the unit circle, axes and markers.
std::string path_svg(const pathlift::RelatorPath& path, const std::string& title)
{
    double r = 1.1;
    for (const auto& p : path.samples)
        r = std::max(r, 1.1 * std::abs(p.value));
    const double size = 600, scale = size / (2 * r);
    auto X = [&](double x) { return (x + r) * scale; };
    auto Y = [&](double y) { return (r - y) * scale; };

    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
        << size << ' ' << size << "\">\n";
    out << "<title>" << title << "</title>\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << size << "\" y2=\"" << Y(0) << "\" stroke=\"#bbb\"/>\n";
    out << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << size << "\" stroke=\"#bbb\"/>\n";
    out << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << scale
        << "\" fill=\"none\" stroke=\"#ddd\" stroke-dasharray=\"4 4\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : path.samples)
        out << X(p.value.real()) << ',' << Y(p.value.imag()) << ' ';
    out << "\"/>\n";
    if (!path.samples.empty()) {
        const auto a = path.samples.front().value, b = path.samples.back().value;
        out << "<circle cx=\"" << X(a.real()) << "\" cy=\"" << Y(a.imag())
            << "\" r=\"6\" fill=\"#2a9d3a\"><title>start</title></circle>\n";
        out << "<rect x=\"" << X(b.real()) - 5 << "\" y=\"" << Y(b.imag()) - 5
            << "\" width=\"10\" height=\"10\" fill=\"#c0392b\"><title>end</title></rect>\n";
    }
    out << "</svg>\n";
    return out.str();
}

int cmd_lift(const RunConfig& cfg, std::ostream& out)
{
    const auto p = load_lattice(cfg);
    const auto lp = lift(p, cfg);
    out << lp.to_string() << '\n';
    if (cfg.details)
        for (size_t i = 0; i < lp.exponents.size(); ++i)
            out << "relator " << p.presentation.relator_display(i) << ": central power " << lp.central_powers[i]
                << ", winding " << lp.windings[i] << ", lifted " << lp.relator_display(i) << '\n';
    return kOk;
}

int cmd_winding(const RunConfig& cfg, std::ostream& out)
{
    const auto p = load_lattice(cfg);
    const fpgroups::Word w = fpgroups::parse_word(cfg.word, p.presentation.generators);
    const auto logs = pathlift::generator_logs(p.standard);
    const int central = static_cast<int>(p.standard.size());
    pathlift::PathOptions po;
    po.samples_per_letter = cfg.samples;

    std::optional<int> j;
    try {
        j = pathlift::central_power(w, p.scaled);
    }
    catch (const DomainError&) {
    }

    std::vector<pathlift::Letter> letters;
    if (cfg.open_path)
        letters = pathlift::path_letters(w);
    else if (j)
        letters = pathlift::path_letters(w, central, *j);
    else
        throw ParseError("word '" + cfg.word + "' is not central, so its path is open; pass --open-path");

    const auto path = pathlift::relator_path(letters, logs, po);
    std::ostringstream report;
    report << std::setprecision(12);
    if (cfg.open_path) {
        const pathlift::cd end = path.samples.empty() ? pathlift::cd(1) : path.samples.back().value;
        report << "endpoint " << end.real() << ' ' << end.imag() << '\n';
        report << "endpoint.modulus " << std::abs(end) << '\n';
        report << "endpoint.arg-over-pi " << std::arg(end) / std::numbers::pi << '\n';
        report << "turns " << pathlift::total_turns(path) << '\n';
    }
    else {
        const long r = pathlift::winding_number(path);
        report << "winding " << r << '\n';
        report << "central-power " << *j << '\n';
        report << "correction-letters " << *j << '\n';
        report << "lifted-exponent " << -(*j + 3 * r) << '\n';
    }
    report << "samples " << path.samples.size() << '\n';

    if (!cfg.csv_path.empty())
        write_file(cfg.csv_path, path_csv(path));
    if (!cfg.svg_path.empty())
        write_file(cfg.svg_path, path_svg(path, cfg.word.empty() ? "identity" : cfg.word));
    out << report.str();
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    try {
        const auto p = load_lattice(cfg);
        out << presets::verify_preset(p).to_string(p);
        return kOk;
    }
    catch (const DomainError& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kInconclusive;
    }
}

int cmd_cosets(const RunConfig& cfg, std::ostream& out)
{
    const Group g = load_group(cfg);
    const auto words = resolve_subgroup(cfg, g.pres.generators, g.lattice ? &*g.lattice : nullptr)
                           .value_or(std::vector<fpgroups::Word>{});
    fpgroups::EnumerationOptions eo;
    eo.max_cosets = cfg.max_cosets;
    const auto table = fpgroups::todd_coxeter(g.pres, words, eo);
    out << "index " << table.index() << '\n';
    out << "normal " << (table.subgroup_is_normal(words) ? "yes" : "no") << '\n';
    out << "valid " << (table.is_valid(g.pres, words) ? "yes" : "no") << '\n';
    out << "cosets.max-live " << table.max_defined << '\n';
    out << "cosets.total-defined " << table.total_defined << '\n';
    return kOk;
}

int cmd_subpres(const RunConfig& cfg, std::ostream& out)
{
    const Group g = load_group(cfg);
    const auto words = resolve_subgroup(cfg, g.pres.generators, g.lattice ? &*g.lattice : nullptr)
                           .value_or(std::vector<fpgroups::Word>{});
    fpgroups::EnumerationOptions eo;
    eo.max_cosets = cfg.max_cosets;
    const auto table = fpgroups::todd_coxeter(g.pres, words, eo);
    const auto sp = fpgroups::schreier_presentation(table, g.pres);
    out << "index " << table.index() << '\n';
    out << "schreier " << sp.presentation.generators.size() << " generators, " << sp.presentation.relators.size()
        << " relators\n";
    const auto reduced = cfg.no_reduce ? sp.presentation : fpgroups::tietze_reduce(sp.presentation);
    out << "reduced " << reduced.generators.size() << " generators, " << reduced.relators.size() << " relators\n";
    out << reduced.to_string();
    return kOk;
}

int cmd_abelian(const RunConfig& cfg, std::ostream& out)
{
    const Group g = load_group(cfg);
    const auto words = resolve_subgroup(cfg, g.pres.generators, g.lattice ? &*g.lattice : nullptr);
    if (!words) {
        const size_t n = g.pres.generators.size();
        intlinalg::IntMatrix rel(0, n);
        for (const auto& r : g.pres.relators) {
            intlinalg::IntVector row(n);
            for (size_t k = 0; k < n; ++k)
                row[k] = r.exponent_sum(static_cast<int>(k));
            rel.append_row(row);
        }
        out << intlinalg::quotient_invariants(n, rel).to_string() << '\n';
        return kOk;
    }
    const auto sq = nq2::subgroup_quotient(g.pres, words, certify_options(cfg));
    out << sq.quotient.abelianization.to_string() << '\n';
    return kOk;
}

int cmd_nq2(const RunConfig& cfg, std::ostream& out)
{
    const Group g = load_group(cfg);
    const auto words = resolve_subgroup(cfg, g.pres.generators, g.lattice ? &*g.lattice : nullptr);
    const auto sq = nq2::subgroup_quotient(g.pres, words, certify_options(cfg));
    if (words)
        out << "index " << sq.index << '\n';
    out << "abelianization " << sq.quotient.abelianization.to_string() << '\n';
    out << "derived " << sq.quotient.derived_part.to_string() << '\n';
    return kOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out)
{
    const auto p = load_lattice(cfg);
    const auto words = resolve_subgroup(cfg, p.presentation.generators, &p);
    const auto lp = lift(p, cfg);
    const auto cert = nq2::rf_certificate(lp, words, p.label, certify_options(cfg));
    out << cert.report();
    return cert.verdict == nq2::Verdict::InfiniteOrder ? kOk : kInconclusive;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lift lattices in SU(2,1) to the universal cover and certify residual finiteness"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto input = [&](CLI::App* sc, bool need_matrices) {
        sc->add_option("--preset", cfg.preset, "Preset id or weights label");
        sc->add_option("--pres", cfg.pres_path, "Presentation file")->check(CLI::ExistingFile);
        if (need_matrices) {
            sc->add_option("--matrices", cfg.matrices_path, "Generator matrix file")->check(CLI::ExistingFile);
            sc->add_option("--form", cfg.form_path, "Hermitian form file")->check(CLI::ExistingFile);
        }
        sc->add_option("--bits", cfg.bits, "Embedding precision in bits")->check(CLI::Range(53L, 1L << 16));
    };
    auto lift_knobs = [&](CLI::App* sc) {
        sc->add_option("--samples", cfg.samples, "Path samples per letter")->check(CLI::Range(4, 1 << 20));
        sc->add_flag("--serial", cfg.serial, "Compute windings without OpenMP");
    };
    auto group_knobs = [&](CLI::App* sc) {
        sc->add_option("--subgroup", cfg.subgroup, "Subgroup word file, or a preset fixture name");
        sc->add_option("--max-cosets", cfg.max_cosets, "Coset enumeration limit")->check(CLI::PositiveNumber);
    };
    auto lifted_knob = [&](CLI::App* sc) {
        sc->add_flag("--lifted", cfg.lifted, "Act on the lifted presentation (needs matrices)");
        sc->add_option("--matrices", cfg.matrices_path, "Generator matrix file")->check(CLI::ExistingFile);
        sc->add_option("--form", cfg.form_path, "Hermitian form file")->check(CLI::ExistingFile);
        lift_knobs(sc);
    };

    std::function<int(const RunConfig&, std::ostream&)> handler;
    auto sub = [&](const char* name, const char* help, int (*fn)(const RunConfig&, std::ostream&)) {
        CLI::App* sc = app.add_subcommand(name, help);
        sc->callback([&handler, fn] { handler = fn; });
        return sc;
    };

    auto* lift_cmd = sub("lift", "Print the normalized lifted presentation", cmd_lift);
    input(lift_cmd, true);
    lift_knobs(lift_cmd);
    lift_cmd->add_flag("--raw", cfg.raw, "Skip normalization");
    lift_cmd->add_flag("--details", cfg.details, "Per-relator central powers and windings");

    auto* wind_cmd = sub("winding", "Winding number of a word's path", cmd_winding);
    input(wind_cmd, true);
    lift_knobs(wind_cmd);
    wind_cmd->add_option("--word", cfg.word, "Word in the preset generators")->required();
    wind_cmd->add_flag("--open-path", cfg.open_path, "Report the endpoint instead of a winding number");
    wind_cmd->add_option("--svg", cfg.svg_path, "Write the projected path as SVG");
    wind_cmd->add_option("--csv", cfg.csv_path, "Write path samples as CSV (s,re,im)");

    auto* verify_cmd = sub("verify", "Exact checks of generators and relators", cmd_verify);
    input(verify_cmd, true);

    auto* cosets_cmd = sub("cosets", "Coset enumeration", cmd_cosets);
    input(cosets_cmd, false);
    group_knobs(cosets_cmd);
    lifted_knob(cosets_cmd);

    auto* subpres_cmd = sub("subpres", "Reduced subgroup presentation", cmd_subpres);
    input(subpres_cmd, false);
    group_knobs(subpres_cmd);
    lifted_knob(subpres_cmd);
    subpres_cmd->add_flag("--no-reduce", cfg.no_reduce, "Print the unreduced Schreier presentation");

    auto* abelian_cmd = sub("abelian", "Abelian invariants", cmd_abelian);
    input(abelian_cmd, false);
    group_knobs(abelian_cmd);
    lifted_knob(abelian_cmd);

    auto* nq2_cmd = sub("nq2", "Class-2 quotient invariants", cmd_nq2);
    input(nq2_cmd, false);
    group_knobs(nq2_cmd);
    lifted_knob(nq2_cmd);

    auto* certify_cmd = sub("certify", "Residual-finiteness certificate", cmd_certify);
    input(certify_cmd, true);
    group_knobs(certify_cmd);
    lift_knobs(certify_cmd);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    // Reports are buffered so failures leave stdout empty.
    std::ostringstream out;
    int code = kOk;
    try {
        code = handler(cfg, out);
    }
    catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
    catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kNumeric;
    }
    catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    std::cout << out.str();
    return code;
}
