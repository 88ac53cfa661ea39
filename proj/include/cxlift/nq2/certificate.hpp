#pragma once

// Residual-finiteness certificates: a finite-index subgroup of the lifted
// group whose class-2 quotient keeps the central generator of infinite order.

#include "cxlift/fpgroups/subgroups.hpp"
#include "cxlift/nq2/nq2.hpp"
#include "cxlift/pathlift/pathlift.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cxlift::nq2 {

enum class Verdict { InfiniteOrder, Inconclusive };

struct SubgroupQuotient {
    size_t index = 1;
    bool normal = true;
    size_t schreier_generators = 0;
    size_t reduced_generators = 0;
    size_t reduced_relators = 0;
    std::vector<std::string> reduced_names;
    NQ2 quotient;
};

struct Certificate {
    std::string label;
    std::uint64_t input_hash = 0;
    bool whole_group = true;
    size_t subgroup_words = 0;

    SubgroupQuotient base;    // the subgroup of the base group
    SubgroupQuotient lifted;  // its preimage in the lifted group
    NQ2Image z_image;
    std::string z_word;  // z in the reduced subgroup generators
    long epsilon = 0;
    Verdict verdict = Verdict::Inconclusive;

    // Deterministic text report.
    std::string report() const;
};

struct CertifyOptions {
    fpgroups::EnumerationOptions enumeration;
    fpgroups::TietzeOptions tietze;
};

// Class-2 data for the subgroup generated by `words` (the whole group when
// nullopt), with `tracked` words followed into the reduced presentation.
SubgroupQuotient subgroup_quotient(const fpgroups::Presentation& pres,
                                   const std::optional<std::vector<fpgroups::Word>>& words,
                                   const CertifyOptions& options, std::vector<fpgroups::Word>* tracked = nullptr);

Certificate rf_certificate(const pathlift::LiftedPresentation& lp,
                           const std::optional<std::vector<fpgroups::Word>>& subgroup, const std::string& label = "",
                           const CertifyOptions& options = {});

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace cxlift::nq2
