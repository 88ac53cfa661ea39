#include "cxlift/pathlift/pathlift.hpp"

#include "cxlift/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cxlift::pathlift {

using std::numbers::pi;
using su21::CycloMat3;

Mat3 GeneratorLog::exp(double s) const
{
    Mat3 out = Mat3::Zero();
    for (size_t k = 0; k < angles.size(); ++k)
        out += std::polar(1.0, s * angles[k]) * projectors[k];
    return out;
}

namespace {

struct Cluster {
    cd value;
    int multiplicity;
};

// Rank-one h-orthogonal projector onto a positive line inside range(P).
Mat3 positive_line_projector(const Mat3& P, int rank)
{
    const Mat3 h = su21::standard_form_numeric();
    Eigen::JacobiSVD<Mat3> svd(P, Eigen::ComputeFullU);
    const Eigen::MatrixXcd E = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXcd G = E.adjoint() * h * E;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const auto& ev = es.eigenvalues();
    const long top = rank - 1;
    if (ev(top) <= 1e-9)
        throw NumericError("eigenspace carries no positive vector for the branch shift");
    Eigen::VectorXcd y = es.eigenvectors().col(top);
    if (rank >= 2 && std::abs(ev(top) - ev(top - 1)) < 1e-9) {
        // Degenerate top eigenvalue: take the direction h-orthogonal to the
        // base vector so the choice is deterministic.
        Eigen::MatrixXcd Y(rank, 2);
        Y.col(0) = es.eigenvectors().col(top);
        Y.col(1) = es.eigenvectors().col(top - 1);
        const Eigen::Vector2cd a = Y.adjoint() * E.adjoint() * h * su21::base_vector();
        Eigen::Vector2cd c(1.0, 0.0);
        if (a.norm() > 1e-12)
            c = Eigen::Vector2cd(std::conj(a(1)), -std::conj(a(0))).normalized();
        y = Y * c;
    }
    const Vec3 w = E * y;
    const cd norm = w.adjoint() * h * w;
    return (w * (w.adjoint() * h)) / norm;
}

}  // namespace

GeneratorLog elliptic_log(const Mat3& g, double tol)
{
    Eigen::ComplexEigenSolver<Mat3> es(g, false);
    if (es.info() != Eigen::Success)
        throw NumericError("eigenvalue computation failed");
    std::vector<Cluster> clusters;
    for (int i = 0; i < 3; ++i) {
        const cd mu = es.eigenvalues()(i);
        if (std::abs(std::abs(mu) - 1.0) > 1e-7)
            throw DomainError("elliptic_log: eigenvalue off the unit circle (not elliptic)");
        bool merged = false;
        for (auto& c : clusters)
            if (std::abs(c.value - mu) < 1e-6) {
                c.value = (c.value * double(c.multiplicity) + mu) / double(c.multiplicity + 1);
                ++c.multiplicity;
                merged = true;
                break;
            }
        if (!merged)
            clusters.push_back({mu, 1});
    }
    for (auto& c : clusters)
        c.value /= std::abs(c.value);

    GeneratorLog log;
    const Mat3 I = Mat3::Identity();
    std::vector<int> mult;
    for (size_t k = 0; k < clusters.size(); ++k) {
        Mat3 P = I;
        for (size_t j = 0; j < clusters.size(); ++j)
            if (j != k)
                P = P * (g - clusters[j].value * I) / (clusters[k].value - clusters[j].value);
        if ((g * P - clusters[k].value * P).cwiseAbs().maxCoeff() > 1e-7)
            throw DomainError("elliptic_log: matrix is not diagonalizable (parabolic)");
        log.angles.push_back(std::arg(clusters[k].value));
        log.projectors.push_back(P);
        mult.push_back(clusters[k].multiplicity);
    }

    double sum = 0;
    for (size_t k = 0; k < log.angles.size(); ++k)
        sum += mult[k] * log.angles[k];
    long s = std::lround(sum / (2 * pi));
    while (s != 0) {
        // Move the extreme eigenvalue toward zero total.
        size_t pick = 0;
        for (size_t k = 1; k < log.angles.size(); ++k)
            if (s > 0 ? log.angles[k] > log.angles[pick] : log.angles[k] < log.angles[pick])
                pick = k;
        const double shift = s > 0 ? -2 * pi : 2 * pi;
        if (mult[pick] == 1) {
            log.angles[pick] += shift;
        }
        else {
            const Mat3 Q = positive_line_projector(log.projectors[pick], mult[pick]);
            log.projectors[pick] -= Q;
            --mult[pick];
            log.angles.push_back(log.angles[pick] + shift);
            log.projectors.push_back(Q);
            mult.push_back(1);
        }
        s += s > 0 ? -1 : 1;
    }

    log.v = Mat3::Zero();
    for (size_t k = 0; k < log.angles.size(); ++k)
        log.v += cd(0, log.angles[k]) * log.projectors[k];
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((log.exp(1.0) - g).cwiseAbs().maxCoeff() > tol * 100 * scale)
        throw NumericError("elliptic_log: exponential does not reproduce the input");
    return log;
}

Mat3 zhat_numeric() { return std::polar(1.0, 2 * pi / 3) * Mat3::Identity(); }

RelatorPath relator_path(const std::vector<Letter>& word, const std::vector<GeneratorLog>& logs,
                         const PathOptions& options)
{
    RelatorPath path;
    path.word = word;
    const size_t L = word.size();
    if (L == 0) {
        path.samples = {{0.0, 1.0, 0}, {1.0, 1.0, 0}};
        path.segments = 1;
        return path;
    }
    if (options.samples_per_letter < 1)
        throw DomainError("samples per letter must be positive");
    path.segments = L;
    Vec3 y = su21::base_vector();
    path.samples.push_back({0.0, y(2), 0});

    for (size_t step = 0; step < L; ++step) {
        const Letter& letter = word[L - 1 - step];
        if (letter.log < 0 || letter.log >= static_cast<int>(logs.size()))
            throw DomainError("path letter without a logarithm");
        const GeneratorLog& lg = logs[letter.log];
        const size_t m = lg.angles.size();
        std::vector<cd> coef(m);
        std::vector<double> freq(m);
        for (size_t j = 0; j < m; ++j) {
            coef[j] = (lg.projectors[j].row(2) * y)(0);
            freq[j] = letter.sign * lg.angles[j];
        }
        auto f = [&](double t) {
            cd acc = 0;
            for (size_t j = 0; j < m; ++j)
                acc += coef[j] * std::polar(1.0, freq[j] * t);
            return acc;
        };

        // Uniform grid, then bisect any step that turns by pi/2 or more.
        struct Node {
            double t;
            cd v;
        };
        std::vector<Node> nodes;
        const int n0 = options.samples_per_letter;
        for (int k = 0; k <= n0; ++k) {
            const double t = static_cast<double>(k) / n0;
            nodes.push_back({t, f(t)});
        }
        int evaluations = n0 + 1;
        std::vector<Node> out{nodes.front()};
        std::vector<Node> stack;
        for (size_t k = 1; k < nodes.size(); ++k) {
            stack.push_back(nodes[k]);
            while (!stack.empty()) {
                const Node& a = out.back();
                const Node b = stack.back();
                if (std::abs(b.v) < options.min_modulus)
                    throw NumericError("homogeneous projection nearly vanishes along the path");
                if (std::abs(std::arg(b.v / a.v)) < pi / 2) {
                    out.push_back(b);
                    stack.pop_back();
                    continue;
                }
                if (++evaluations > options.budget_per_letter)
                    throw NumericError("path refinement exceeded its budget");
                const double tm = 0.5 * (a.t + b.t);
                stack.push_back({tm, f(tm)});
            }
        }
        for (size_t k = 1; k < out.size(); ++k)
            path.samples.push_back({(static_cast<double>(step) + out[k].t) / static_cast<double>(L), out[k].v,
                                    static_cast<int>(step)});

        Vec3 next = Vec3::Zero();
        for (size_t j = 0; j < m; ++j)
            next += std::polar(1.0, freq[j]) * (lg.projectors[j] * y);
        y = next;
    }
    return path;
}

double total_turns(const RelatorPath& path)
{
    double acc = 0;
    for (size_t k = 1; k < path.samples.size(); ++k)
        acc += std::arg(path.samples[k].value / path.samples[k - 1].value);
    return acc / (2 * pi);
}

long winding_number(const RelatorPath& path, bool allow_open, double closure_tol)
{
    if (path.samples.empty())
        return 0;
    const cd first = path.samples.front().value, last = path.samples.back().value;
    if (!allow_open && std::abs(last - first) > closure_tol)
        throw NumericError("path is not closed (endpoint gap " + std::to_string(std::abs(last - first)) + ")");
    const double turns = total_turns(path);
    const double r = std::round(turns);
    if (std::abs(turns - r) > 0.05)
        throw NumericError("winding number is ambiguous (" + std::to_string(turns) + " turns)");
    return static_cast<long>(r);
}

std::vector<Letter> path_letters(const fpgroups::Word& w, int central_log, int correction)
{
    std::vector<Letter> out;
    for (int k = 0; k < correction; ++k)
        out.push_back({central_log, -1});
    for (int k = 0; k < -correction; ++k)
        out.push_back({central_log, 1});
    for (int l : w.letters())
        out.push_back({std::abs(l) - 1, l > 0 ? 1 : -1});
    return out;
}

Mat3 evaluate(const fpgroups::Word& w, const std::vector<Mat3>& gens)
{
    Mat3 m = Mat3::Identity();
    for (int l : w.letters()) {
        const Mat3& g = gens.at(std::abs(l) - 1);
        m = m * (l > 0 ? g : g.inverse());
    }
    return m;
}

int central_power(const fpgroups::Word& w, const std::vector<CycloMat3>& gens)
{
    std::vector<CycloMat3> inv;
    inv.reserve(gens.size());
    for (const auto& g : gens)
        inv.push_back(g.inverse());
    int conductor = 3;
    for (const auto& g : gens)
        conductor = std::lcm(conductor, g.conductor());
    CycloMat3 m = CycloMat3::identity(conductor);
    for (const auto& s : w.syllables()) {
        if (s.gen >= static_cast<int>(gens.size()))
            throw DomainError("relator references a generator without a matrix");
        m = m * (s.exp > 0 ? gens[s.gen] : inv[s.gen]).power(std::labs(s.exp));
    }
    const auto scalar = m.as_scalar();
    if (scalar) {
        for (int j = 0; j < 3; ++j)
            if (*scalar == exactnum::CycloElt::zeta(3, j))
                return j;
    }
    throw DomainError("relator does not evaluate to a power of zeta_3 * Id");
}

std::vector<long> winding_batch(const std::vector<std::vector<Letter>>& words, const std::vector<GeneratorLog>& logs,
                                const PathOptions& options, bool parallel)
{
    std::vector<long> out(words.size(), 0);
    if (!parallel) {
        for (size_t i = 0; i < words.size(); ++i)
            out[i] = winding_number(relator_path(words[i], logs, options));
        return out;
    }
    // Exceptions may not cross the parallel region; collect the first one.
    std::vector<std::string> errors(words.size());
    const long n = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = winding_number(relator_path(words[i], logs, options));
        }
        catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw NumericError(e);
    return out;
}

std::vector<GeneratorLog> generator_logs(const std::vector<Mat3>& numeric)
{
    std::vector<GeneratorLog> logs;
    for (size_t i = 0; i < numeric.size(); ++i) {
        logs.push_back(elliptic_log(numeric[i]));
        logs.back().index = static_cast<int>(i);
    }
    logs.push_back(elliptic_log(zhat_numeric()));
    logs.back().index = static_cast<int>(numeric.size());
    return logs;
}

LiftedPresentation lift_presentation(const LiftInput& in, const LiftOptions& options)
{
    const size_t n = in.pres.generators.size();
    if (in.exact.size() != n || in.numeric.size() != n)
        throw DomainError("one matrix per generator is required");
    for (const auto& g : in.exact)
        if (g.det() != exactnum::CycloElt::one(1))
            throw DomainError("lift needs determinant-one generators");

    const std::vector<GeneratorLog> logs = generator_logs(in.numeric);
    const int central = static_cast<int>(n);

    LiftedPresentation lp;
    lp.base = in.pres;
    std::vector<std::vector<Letter>> words;
    for (const auto& r : in.pres.relators) {
        const int j = central_power(r, in.exact);
        lp.central_powers.push_back(j);
        words.push_back(path_letters(r, central, j));
    }
    lp.windings = winding_batch(words, logs, options.path, options.parallel);
    for (size_t i = 0; i < lp.windings.size(); ++i)
        lp.exponents.push_back(-(lp.central_powers[i] + 3 * lp.windings[i]));
    return lp;
}

namespace {

void normalize_generators(LiftedPresentation& lp)
{
    const auto& rels = lp.base.relators;
    for (int g = 0; g < static_cast<int>(lp.base.generators.size()); ++g) {
        size_t i = 0;
        while (i < rels.size() && !(rels[i].syllables().size() == 1 && rels[i].syllables()[0].gen == g))
            ++i;
        if (i == rels.size())
            continue;
        const long m = rels[i].syllables()[0].exp;
        const long e = lp.exponents[i];
        // e - c*m closest to zero; ties go to the nonnegative remainder.
        const long c0 = static_cast<long>(std::floor(static_cast<double>(e) / static_cast<double>(m)));
        long best_c = c0;
        for (long c : {c0 - 1, c0, c0 + 1}) {
            const long r = e - c * m, rb = e - best_c * m;
            if (std::labs(r) < std::labs(rb) || (std::labs(r) == std::labs(rb) && r >= 0 && rb < 0))
                best_c = c;
        }
        if (best_c == 0)
            continue;
        for (size_t k = 0; k < rels.size(); ++k)
            lp.exponents[k] -= best_c * rels[k].exponent_sum(g);
    }
}

}  // namespace

LiftedPresentation normalize_lift(const LiftedPresentation& lp)
{
    LiftedPresentation out = lp;
    normalize_generators(out);
    for (long e : out.exponents) {
        if (e == 0)
            continue;
        if (e < 0)
            for (auto& x : out.exponents)
                x = -x;
        break;
    }
    normalize_generators(out);
    return out;
}

std::string LiftedPresentation::relator_display(size_t i) const
{
    std::string s = base.relator_display(i);
    const long e = exponents.at(i);
    if (e == 1)
        s += "*" + central_name;
    else if (e != 0)
        s += "*" + central_name + "^" + std::to_string(e);
    return s;
}

std::string LiftedPresentation::to_string() const
{
    std::ostringstream out;
    out << "< ";
    for (const auto& g : base.generators)
        out << g << ", ";
    out << central_name << " | ";
    for (size_t i = 0; i < exponents.size(); ++i)
        out << relator_display(i) << ", ";
    out << central_name << " central >";
    return out.str();
}

fpgroups::Presentation LiftedPresentation::to_presentation() const
{
    fpgroups::Presentation p;
    p.generators = base.generators;
    p.generators.push_back(central_name);
    const int z = static_cast<int>(base.generators.size());
    for (size_t i = 0; i < base.relators.size(); ++i) {
        p.relators.push_back(base.relators[i] * fpgroups::Word::generator(z, exponents[i]));
        p.relator_text.push_back(relator_display(i));
    }
    for (int g = 0; g < z; ++g) {
        p.relators.push_back(fpgroups::commutator(fpgroups::Word::generator(z), fpgroups::Word::generator(g)));
        p.relator_text.push_back("[" + central_name + "," + base.generators[g] + "]");
    }
    return p;
}

}  // namespace cxlift::pathlift
