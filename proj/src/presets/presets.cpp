#include "cxlift/presets/presets.hpp"

#include "cxlift/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#ifndef CXLIFT_PRESET_DIR_DEFAULT
#define CXLIFT_PRESET_DIR_DEFAULT "presets"
#endif

namespace cxlift::presets {

namespace fs = std::filesystem;
using exactnum::CycloElt;
using su21::CycloMat3;

namespace {

std::string trim(std::string_view s)
{
    if (auto h = s.find('#'); h != std::string_view::npos)
        s = s.substr(0, h);
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> content_lines(std::string_view text)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty())
            out.push_back(t);
    }
    return out;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        }
        else
            cur += c;
    }
    out.push_back(trim(cur));
    return out;
}

// "key value" with a single-token key.
std::pair<std::string, std::string> key_value(const std::string& line)
{
    const auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos)
        return {line, ""};
    return {line.substr(0, sp), trim(line.substr(sp + 1))};
}

int parse_positive(const std::string& s, const std::string& what)
{
    try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size() || v < 1)
            throw ParseError("");
        return v;
    }
    catch (const std::exception&) {
        throw ParseError("bad " + what + " '" + s + "'");
    }
}

CycloMat3 parse_rows(const std::vector<std::string>& rows, int conductor, const std::string& name)
{
    if (rows.size() != 3)
        throw ParseError("matrix '" + name + "' needs 3 rows");
    CycloMat3 m;
    for (int r = 0; r < 3; ++r) {
        const auto cells = split_commas(rows[r]);
        if (cells.size() != 3)
            throw ParseError("matrix '" + name + "' row " + std::to_string(r + 1) + " needs 3 entries");
        for (int c = 0; c < 3; ++c)
            m(r, c) = exactnum::parse_cyclo(cells[c], conductor);
    }
    return m;
}

}  // namespace

MatrixFile parse_matrix_file(std::string_view text)
{
    MatrixFile mf;
    const auto lines = content_lines(text);
    size_t i = 0;
    bool have_conductor = false;
    while (i < lines.size()) {
        const auto [key, value] = key_value(lines[i]);
        if (key == "conductor") {
            mf.conductor = parse_positive(value, "conductor");
            have_conductor = true;
            ++i;
        }
        else if (key == "form") {
            mf.form = value;
            ++i;
        }
        else if (key == "matrix") {
            if (!have_conductor)
                throw ParseError("matrix file: 'conductor' must precede matrices");
            if (value.empty())
                throw ParseError("matrix file: unnamed matrix");
            if (i + 4 > lines.size())
                throw ParseError("matrix file: matrix '" + value + "' is truncated");
            std::vector<std::string> rows(lines.begin() + static_cast<long>(i + 1),
                                          lines.begin() + static_cast<long>(i + 4));
            mf.matrices.emplace_back(value, parse_rows(rows, mf.conductor, value));
            i += 4;
        }
        else {
            throw ParseError("matrix file: unexpected line '" + lines[i] + "'");
        }
    }
    if (!have_conductor)
        throw ParseError("matrix file: missing 'conductor' header");
    return mf;
}

su21::HermitianForm parse_form_file(std::string_view text)
{
    const auto lines = content_lines(text);
    int conductor = 0;
    std::string name;
    std::vector<std::string> rows;
    for (const auto& line : lines) {
        const auto [key, value] = key_value(line);
        if (key == "conductor")
            conductor = parse_positive(value, "conductor");
        else if (key == "name")
            name = value;
        else
            rows.push_back(line);
    }
    if (conductor == 0)
        throw ParseError("form file: missing 'conductor' header");
    if (name.empty())
        throw ParseError("form file: missing 'name'");
    su21::HermitianForm f{name, parse_rows(rows, conductor, name)};
    if (!f.is_hermitian())
        throw DomainError("form '" + name + "' is not hermitian");
    if (f.signature() != std::pair<int, int>{2, 1})
        throw DomainError("form '" + name + "' does not have signature (2,1)");
    return f;
}

std::string preset_root()
{
    if (const char* env = std::getenv("CXLIFT_PRESET_DIR"); env && *env)
        return env;
    return CXLIFT_PRESET_DIR_DEFAULT;
}

std::vector<std::string> preset_ids()
{
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(preset_root(), ec))
        if (e.is_directory() && fs::exists(e.path() / "presentation.txt"))
            out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void finish_preset(LatticePreset& p, const MatrixFile& mf, const su21::HermitianForm& form, long bits)
{
    p.form = std::make_shared<const su21::HermitianForm>(form);
    if (!mf.form.empty() && mf.form != form.name)
        throw ParseError("matrix file refers to form '" + mf.form + "' but the form is '" + form.name + "'");
    for (const auto& g : p.presentation.generators) {
        auto it = std::find_if(mf.matrices.begin(), mf.matrices.end(), [&](const auto& m) { return m.first == g; });
        if (it == mf.matrices.end())
            throw ParseError("no matrix for generator '" + g + "'");
        p.native.push_back(su21::GroupMatrix::from_exact(g, it->second, p.form, bits));
    }
    for (const auto& g : p.native) {
        if (!su21::check_unitary(g))
            throw DomainError("generator '" + g.name + "' does not preserve the form");
        p.scaled.push_back(su21::scale_to_su(*g.exact));
    }
    p.conjugator = form.is_standard() ? su21::Mat3::Identity() : su21::standardizing_conjugator(form.matrix.to_numeric(bits));
    const su21::Mat3 Cinv = p.conjugator.inverse();
    for (const auto& s : p.scaled)
        p.standard.push_back(p.conjugator * s.to_numeric(bits) * Cinv);
}

}  // namespace

LatticePreset load_from_files(const std::string& presentation_path, const std::string& matrices_path,
                              const std::string& form_path, long bits)
{
    LatticePreset p;
    p.id = fs::path(presentation_path).stem().string();
    p.label = p.id;
    p.presentation = fpgroups::load_presentation(presentation_path);
    const MatrixFile mf = parse_matrix_file(fpgroups::read_text_file(matrices_path));
    su21::HermitianForm form = su21::standard_form();
    if (!form_path.empty())
        form = parse_form_file(fpgroups::read_text_file(form_path));
    else if (!mf.form.empty() && mf.form != "standard")
        throw ParseError("matrix file uses form '" + mf.form + "'; pass the form file");
    finish_preset(p, mf, form, bits);
    verify_preset(p);
    return p;
}

LatticePreset load_preset_dir(const std::string& directory, long bits)
{
    const fs::path dir(directory);
    if (!fs::is_directory(dir))
        throw ParseError("preset directory '" + directory + "' not found");
    LatticePreset p;
    p.directory = dir.string();
    p.id = dir.filename().string();
    p.label = p.id;
    p.presentation = fpgroups::load_presentation((dir / "presentation.txt").string());

    if (fs::exists(dir / "preset.txt")) {
        for (const auto& line : content_lines(fpgroups::read_text_file((dir / "preset.txt").string()))) {
            const auto [key, value] = key_value(line);
            if (key == "label")
                p.label = value;
            else if (key == "orbifold-weights") {
                std::istringstream in(value);
                if (!(in >> p.r1 >> p.r2))
                    throw ParseError("preset.txt: bad orbifold-weights");
            }
            else if (key == "central-powers") {
                if (value == "auto")
                    continue;
                std::istringstream in(value);
                std::vector<int> js;
                int j;
                while (in >> j)
                    js.push_back(j);
                if (!in.eof())
                    throw ParseError("preset.txt: bad central-powers");
                p.expected_central_powers = js;
            }
            else
                throw ParseError("preset.txt: unknown key '" + key + "'");
        }
    }

    const MatrixFile mf = parse_matrix_file(fpgroups::read_text_file((dir / "matrices.txt").string()));
    su21::HermitianForm form = parse_form_file(fpgroups::read_text_file((dir / "form.txt").string()));
    if (form.name == "standard" && !form.is_standard())
        throw DomainError("form named 'standard' differs from the anti-diagonal form");
    finish_preset(p, mf, form, bits);

    if (fs::is_directory(dir / "subgroups"))
        for (const auto& e : fs::directory_iterator(dir / "subgroups"))
            if (e.path().extension() == ".words")
                p.subgroups[e.path().stem().string()] = e.path().string();

    verify_preset(p);
    return p;
}

LatticePreset dm_lattice(const std::string& id_or_label, long bits)
{
    const fs::path root(preset_root());
    if (fs::is_directory(root / id_or_label))
        return load_preset_dir((root / id_or_label).string(), bits);
    for (const auto& id : preset_ids()) {
        const fs::path pt = root / id / "preset.txt";
        if (!fs::exists(pt))
            continue;
        for (const auto& line : content_lines(fpgroups::read_text_file(pt.string()))) {
            const auto [key, value] = key_value(line);
            if (key == "label" && value == id_or_label)
                return load_preset_dir((root / id).string(), bits);
        }
    }
    throw ParseError("unknown preset '" + id_or_label + "' (fixture root " + root.string() + ")");
}

pathlift::LiftInput LatticePreset::lift_input() const { return {presentation, scaled, standard}; }

std::vector<fpgroups::Word> LatticePreset::subgroup(const std::string& name) const
{
    auto it = subgroups.find(name);
    if (it == subgroups.end())
        throw ParseError("preset '" + id + "' has no subgroup fixture '" + name + "'");
    return fpgroups::load_word_list(it->second, presentation.generators);
}

VerifyReport verify_preset(const LatticePreset& p)
{
    VerifyReport rep;
    for (const auto& g : p.native)
        rep.unitary.push_back(su21::check_unitary(g));
    for (const auto& s : p.scaled)
        rep.determinant_one.push_back(s.det() == CycloElt::one(1));
    for (size_t i = 0; i < rep.unitary.size(); ++i)
        if (!rep.unitary[i] || !rep.determinant_one[i])
            throw DomainError("generator '" + p.native[i].name + "' fails the exact unitarity/determinant check");
    for (size_t i = 0; i < p.presentation.relators.size(); ++i) {
        try {
            rep.central_powers.push_back(pathlift::central_power(p.presentation.relators[i], p.scaled));
        }
        catch (const DomainError&) {
            throw DomainError("relator " + p.presentation.relator_display(i) + " is not central");
        }
    }
    if (p.expected_central_powers && *p.expected_central_powers != rep.central_powers) {
        rep.matches_expectation = false;
        throw DomainError("relator central powers differ from the preset's pinned values");
    }
    return rep;
}

std::string VerifyReport::to_string(const LatticePreset& p) const
{
    std::ostringstream out;
    out << "preset " << p.label << '\n';
    for (size_t i = 0; i < unitary.size(); ++i)
        out << "generator " << p.native[i].name << ": preserves form " << (unitary[i] ? "yes" : "no")
            << ", scaled determinant 1 " << (determinant_one[i] ? "yes" : "no") << '\n';
    for (size_t i = 0; i < central_powers.size(); ++i)
        out << "relator " << p.presentation.relator_display(i) << " = zhat^" << central_powers[i] << '\n';
    out << "status " << (matches_expectation ? "OK" : "MISMATCH") << '\n';
    return out.str();
}

}  // namespace cxlift::presets
