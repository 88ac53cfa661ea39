#include "cxlift/nq2/certificate.hpp"

#include "cxlift/errors.hpp"

#include <cstdio>
#include <sstream>

namespace cxlift::nq2 {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

SubgroupQuotient subgroup_quotient(const fpgroups::Presentation& pres,
                                   const std::optional<std::vector<fpgroups::Word>>& words,
                                   const CertifyOptions& options, std::vector<fpgroups::Word>* tracked)
{
    SubgroupQuotient sq;
    if (!words) {
        sq.schreier_generators = pres.generators.size();
        sq.reduced_generators = pres.generators.size();
        sq.reduced_relators = pres.relators.size();
        sq.reduced_names = pres.generators;
        sq.quotient = class2_quotient(pres);
        return sq;
    }
    const fpgroups::CosetTable table = fpgroups::todd_coxeter(pres, *words, options.enumeration);
    sq.index = table.index();
    sq.normal = table.subgroup_is_normal(*words);
    const fpgroups::SchreierPresentation sp = fpgroups::schreier_presentation(table, pres);
    sq.schreier_generators = sp.presentation.generators.size();
    std::vector<fpgroups::Word> follow;
    if (tracked)
        for (const auto& w : *tracked) {
            int end = 0;
            follow.push_back(sp.rewrite(table, w, 0, &end));
            if (end != 0)
                throw DomainError("tracked word does not lie in the subgroup");
        }
    const fpgroups::Presentation reduced = fpgroups::tietze_reduce(sp.presentation, options.tietze, &follow);
    sq.reduced_generators = reduced.generators.size();
    sq.reduced_relators = reduced.relators.size();
    sq.reduced_names = reduced.generators;
    sq.quotient = class2_quotient(reduced);
    if (tracked)
        *tracked = follow;
    return sq;
}

Certificate rf_certificate(const pathlift::LiftedPresentation& lp,
                           const std::optional<std::vector<fpgroups::Word>>& subgroup, const std::string& label,
                           const CertifyOptions& options)
{
    Certificate cert;
    cert.label = label;
    const fpgroups::Presentation lifted = lp.to_presentation();
    const int z = static_cast<int>(lp.base.generators.size());

    std::string canon = lifted.to_string();
    if (subgroup) {
        canon += "subgroup\n";
        for (const auto& w : *subgroup)
            canon += w.to_string(lp.base.generators) + '\n';
    }
    cert.input_hash = fnv1a(canon);
    cert.whole_group = !subgroup.has_value();
    cert.subgroup_words = subgroup ? subgroup->size() : 0;

    cert.base = subgroup_quotient(lp.base, subgroup, options);

    std::optional<std::vector<fpgroups::Word>> pre;
    if (subgroup)
        pre = fpgroups::preimage_subgroup(*subgroup, z);
    std::vector<fpgroups::Word> tracked{fpgroups::Word::generator(z)};
    cert.lifted = subgroup_quotient(lifted, pre, options, &tracked);
    if (subgroup && cert.lifted.index != cert.base.index)
        throw DomainError("preimage index differs from the subgroup index");

    cert.z_word = tracked[0].to_string(cert.lifted.reduced_names);
    cert.z_image = cert.lifted.quotient.image(tracked[0]);
    cert.epsilon = epsilon(cert.base.quotient, cert.lifted.quotient);
    cert.verdict = cert.z_image.finite ? Verdict::Inconclusive : Verdict::InfiniteOrder;
    return cert;
}

namespace {

std::string vec_str(const IntVector& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

std::string torsion_str(const AbelianInvariants& inv)
{
    if (inv.torsion.empty())
        return "none";
    std::string s;
    for (size_t i = 0; i < inv.torsion.size(); ++i)
        s += (i ? " " : "") + inv.torsion[i].get_str();
    return s;
}

void quotient_block(std::ostringstream& out, const std::string& tag, const SubgroupQuotient& q)
{
    out << tag << ".index " << q.index << '\n';
    out << tag << ".normal " << (q.normal ? "yes" : "no") << '\n';
    out << tag << ".schreier-generators " << q.schreier_generators << '\n';
    out << tag << ".reduced-presentation " << q.reduced_generators << " generators, " << q.reduced_relators
        << " relators\n";
    out << tag << ".abelianization " << q.quotient.abelianization.to_string() << '\n';
    out << tag << ".abelianization.free-rank " << q.quotient.abelianization.free_rank << '\n';
    out << tag << ".abelianization.torsion " << torsion_str(q.quotient.abelianization) << '\n';
    out << tag << ".derived " << q.quotient.derived_part.to_string() << '\n';
    out << tag << ".derived.free-rank " << q.quotient.derived_part.free_rank << '\n';
    out << tag << ".derived.torsion " << torsion_str(q.quotient.derived_part) << '\n';
}

}  // namespace

std::string Certificate::report() const
{
    std::ostringstream out;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(input_hash));
    out << "certificate class-2-central-survival v1\n";
    if (!label.empty())
        out << "input.label " << label << '\n';
    out << "input.hash fnv1a64:" << hash << '\n';
    out << "subgroup " << (whole_group ? "whole group" : std::to_string(subgroup_words) + " generating words") << '\n';
    quotient_block(out, "base", base);
    quotient_block(out, "lifted", lifted);
    out << "z.word " << z_word << '\n';
    out << "z.image.a " << vec_str(z_image.elem.a) << '\n';
    out << "z.image.m " << vec_str(z_image.elem.m) << '\n';
    out << "z.order " << (z_image.finite ? z_image.order.get_str() : "infinite") << '\n';
    out << "epsilon " << epsilon << '\n';
    if (verdict == Verdict::InfiniteOrder) {
        out << "verdict INFINITE_ORDER\n";
        out << "conclusion z has infinite order in a class-2 nilpotent quotient of a finite-index subgroup; this "
               "certifies residual finiteness of the lifted group and of each quotient by <z^d>.\n";
    }
    else {
        out << "verdict INCONCLUSIVE\n";
        out << "conclusion z has finite order in this class-2 quotient; this does not refute residual "
               "finiteness.\n";
    }
    return out.str();
}

}  // namespace cxlift::nq2
