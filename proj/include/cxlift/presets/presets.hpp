#pragma once

// Built-in lattice data: presentation, exact generator matrices, hermitian
// form and subgroup fixtures, loaded from a fixture directory.

#include "cxlift/fpgroups/word.hpp"
#include "cxlift/pathlift/pathlift.hpp"
#include "cxlift/su21/matrices.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cxlift::presets {

struct MatrixFile {
    int conductor = 1;
    std::string form;
    std::vector<std::pair<std::string, su21::CycloMat3>> matrices;
};

MatrixFile parse_matrix_file(std::string_view text);
su21::HermitianForm parse_form_file(std::string_view text);

struct LatticePreset {
    std::string id;     // directory name, e.g. dm-5-4-1-1-1-6
    std::string label;  // weights label, e.g. (5,4,1,1,1)/6
    std::string directory;
    int r1 = 0, r2 = 0;

    fpgroups::Presentation presentation;
    std::shared_ptr<const su21::HermitianForm> form;
    std::vector<su21::GroupMatrix> native;  // as stored, in U(2,1) of `form`
    std::vector<su21::CycloMat3> scaled;    // determinant one, same form
    su21::Mat3 conjugator;                  // C with C* h_std C = form
    std::vector<su21::Mat3> standard;       // C * scaled * C^-1, numeric

    // Expected powers j (relator = zhat^j) from preset.txt, if pinned.
    std::optional<std::vector<int>> expected_central_powers;
    std::map<std::string, std::string> subgroups;  // name -> .words path

    pathlift::LiftInput lift_input() const;
    std::vector<fpgroups::Word> subgroup(const std::string& name) const;
};

// Fixture root: $CXLIFT_PRESET_DIR if set, else the build-time default.
std::string preset_root();
std::vector<std::string> preset_ids();

// Accepts a directory id ("dm-5-4-1-1-1-6") or a weights label ("(5,4,1,1,1)/6").
// Loading runs verify_preset and throws DomainError on any mismatch.
LatticePreset dm_lattice(const std::string& id_or_label, long bits = 128);
LatticePreset load_preset_dir(const std::string& directory, long bits = 128);

// Assembles a preset from explicit files (no preset.txt needed).
LatticePreset load_from_files(const std::string& presentation_path, const std::string& matrices_path,
                              const std::string& form_path = "", long bits = 128);

struct VerifyReport {
    std::vector<bool> unitary;             // per generator, exact
    std::vector<bool> determinant_one;     // per scaled generator, exact
    std::vector<int> central_powers;       // per relator
    bool matches_expectation = true;
    std::string to_string(const LatticePreset& p) const;
};

// Exact checks: every generator preserves the form, scaled determinants are
// one and every relator evaluates to zhat^j.  Throws DomainError on failure.
VerifyReport verify_preset(const LatticePreset& p);

}  // namespace cxlift::presets
