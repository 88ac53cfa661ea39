#pragma once

// Lifting relators to the universal cover through winding numbers of the
// homogeneous projection of piecewise one-parameter paths.

#include "cxlift/fpgroups/word.hpp"
#include "cxlift/su21/matrices.hpp"

#include <string>
#include <vector>

namespace cxlift::pathlift {

using su21::cd;
using su21::Mat3;
using su21::Vec3;

// Spectral logarithm v = sum_k i*angle_k*P_k with sum_k P_k = Id; the
// projectors are h-orthogonal idempotents and exp(s v) = sum e^{i s angle_k} P_k.
struct GeneratorLog {
    int index = -1;
    Mat3 v;
    std::vector<double> angles;
    std::vector<Mat3> projectors;

    Mat3 exp(double s) const;
};

// Traceless logarithm of an elliptic or central element of SU(2,1) with
// eigenvalue arguments in (-pi, pi]; when those arguments do not sum to zero,
// one extreme eigenvalue (or a positive rank-one piece of its eigenspace) is
// moved by 2 pi.  Throws DomainError on non-diagonalizable input.
GeneratorLog elliptic_log(const Mat3& g, double tol = 1e-10);

struct Letter {
    int log;   // index into the log table
    int sign;  // +1 or -1
};

struct PathSample {
    double s;  // global parameter in [0, 1]
    cd value;  // homogeneous projection of sigma(s) applied to the base vector
    int segment;
};

struct RelatorPath {
    std::vector<Letter> word;
    std::vector<PathSample> samples;
    size_t segments = 0;
};

struct PathOptions {
    int samples_per_letter = 256;
    int budget_per_letter = 1 << 16;
    double min_modulus = 1e-6;
};

// Letters are read left to right as a matrix product x_1 ... x_L; the path
// realizes x_L first and left-multiplies each new one-parameter segment onto
// the completed suffix product.
RelatorPath relator_path(const std::vector<Letter>& word, const std::vector<GeneratorLog>& logs,
                         const PathOptions& options = {});

// Sum of argument increments divided by 2 pi.
double total_turns(const RelatorPath& path);

// Rounded winding number of a closed path.  NumericError if the path is not
// closed (unless `allow_open`) or the turn count is more than 0.05 from an integer.
long winding_number(const RelatorPath& path, bool allow_open = false, double closure_tol = 1e-8);

struct LiftedPresentation {
    fpgroups::Presentation base;
    std::string central_name = "z";
    // Relator i reads base.relators[i] * z^exponents[i] = 1.
    std::vector<long> exponents;
    int center_order = 3;  // z^3 generates pi_1 of the group

    // Diagnostics: exact central powers j (W = zhat^j) and windings r.
    std::vector<int> central_powers;
    std::vector<long> windings;

    std::string relator_display(size_t i) const;
    std::string to_string() const;
    // Base generators plus z; lifted relators then [z, g] for every g.
    fpgroups::Presentation to_presentation() const;
};

struct LiftInput {
    fpgroups::Presentation pres;
    std::vector<su21::CycloMat3> exact;  // determinant-one generators (any form)
    std::vector<Mat3> numeric;           // the same generators in the standard form
};

struct LiftOptions {
    PathOptions path;
    bool parallel = true;
};

// Raw lift: central exponents exactly as the winding computation yields them.
LiftedPresentation lift_presentation(const LiftInput& in, const LiftOptions& options = {});

// Canonical form under g -> g z^c and z -> z^-1 (see README for the rule).
LiftedPresentation normalize_lift(const LiftedPresentation& lp);

// Exact power j with W = (zeta_3 Id)^j; DomainError if W is not such a scalar.
int central_power(const fpgroups::Word& w, const std::vector<su21::CycloMat3>& gens);

// Letters for a word, with `correction` copies of the central inverse
// (log index `central_log`) prepended so that they are traversed last.
std::vector<Letter> path_letters(const fpgroups::Word& w, int central_log = -1, int correction = 0);

// Numeric product of the generator matrices along a word.
Mat3 evaluate(const fpgroups::Word& w, const std::vector<Mat3>& gens);

// Closed-path windings of many words.  `parallel` uses OpenMP across words;
// the serial path is the reference implementation.
std::vector<long> winding_batch(const std::vector<std::vector<Letter>>& words, const std::vector<GeneratorLog>& logs,
                                const PathOptions& options, bool parallel);

// Logs of the generators followed by the central log at index numeric.size().
std::vector<GeneratorLog> generator_logs(const std::vector<Mat3>& numeric);

// The central element zeta_3 Id in numeric form.
Mat3 zhat_numeric();

}  // namespace cxlift::pathlift
