#include "cxlift/fpgroups/word.hpp"

#include "cxlift/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cxlift::fpgroups {

Word::Word(std::vector<Syllable> syllables)
{
    for (const auto& s : syllables)
        push(s.gen, s.exp);
}

Word Word::generator(int g, long e)
{
    Word w;
    w.push(g, e);
    return w;
}

Word Word::from_letters(const std::vector<int>& letters)
{
    Word w;
    for (int l : letters) {
        if (l == 0)
            throw DomainError("letter 0 is not a generator");
        w.push(std::abs(l) - 1, l > 0 ? 1 : -1);
    }
    return w;
}

void Word::push(int g, long e)
{
    if (e == 0)
        return;
    if (!syl_.empty() && syl_.back().gen == g) {
        syl_.back().exp += e;
        if (syl_.back().exp == 0)
            syl_.pop_back();
        return;
    }
    syl_.push_back({g, e});
}

std::vector<int> Word::letters() const
{
    std::vector<int> out;
    out.reserve(length());
    for (const auto& s : syl_) {
        const int l = s.exp > 0 ? s.gen + 1 : -(s.gen + 1);
        for (long k = 0; k < std::labs(s.exp); ++k)
            out.push_back(l);
    }
    return out;
}

size_t Word::length() const
{
    size_t n = 0;
    for (const auto& s : syl_)
        n += static_cast<size_t>(std::labs(s.exp));
    return n;
}

Word Word::inverse() const
{
    Word w;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
        w.syl_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::power(long k) const
{
    if (k < 0)
        return inverse().power(-k);
    // Repeated squaring keeps long powers cheap.
    Word result, base = *this;
    while (k > 0) {
        if (k & 1)
            result *= base;
        k >>= 1;
        if (k)
            base *= base;
    }
    return result;
}

long Word::exponent_sum(int g) const
{
    long t = 0;
    for (const auto& s : syl_)
        if (s.gen == g)
            t += s.exp;
    return t;
}

int Word::max_generator() const
{
    int m = -1;
    for (const auto& s : syl_)
        m = std::max(m, s.gen);
    return m;
}

Word Word::cyclic_reduce() const
{
    std::vector<Syllable> s = syl_;
    size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo].gen == s[hi - 1].gen) {
        const long e = s[lo].exp + s[hi - 1].exp;
        if (e == 0) {
            ++lo;
            --hi;
            continue;
        }
        s[lo].exp = e;
        --hi;
        break;
    }
    return Word(std::vector<Syllable>(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi)));
}

Word operator*(const Word& a, const Word& b)
{
    Word w = a;
    for (const auto& s : b.syl_)
        w.push(s.gen, s.exp);
    return w;
}

std::string Word::to_string(const std::vector<std::string>& names) const
{
    if (syl_.empty())
        return "1";
    std::string out;
    for (size_t i = 0; i < syl_.size(); ++i) {
        if (i)
            out += '*';
        const auto& s = syl_[i];
        out += s.gen < static_cast<int>(names.size()) ? names[s.gen] : "x" + std::to_string(s.gen);
        if (s.exp != 1)
            out += "^" + std::to_string(s.exp);
    }
    return out;
}

Word braid_relator(int a, int b, int m)
{
    if (m < 2)
        throw DomainError("braid relation needs length at least 2");
    std::vector<Syllable> lhs, rhs;
    for (int k = 0; k < m; ++k) {
        lhs.push_back({k % 2 == 0 ? a : b, 1});
        rhs.push_back({k % 2 == 0 ? b : a, 1});
    }
    return Word(lhs) * Word(rhs).inverse();
}

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

int Presentation::generator_index(std::string_view name) const
{
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name)
            return static_cast<int>(i);
    return -1;
}

std::string Presentation::relator_display(size_t i) const
{
    if (i < relator_text.size() && !relator_text[i].empty())
        return relator_text[i];
    return relators.at(i).to_string(generators);
}

std::string Presentation::to_string() const
{
    std::ostringstream out;
    out << "generators:";
    for (const auto& g : generators)
        out << ' ' << g;
    out << '\n';
    for (size_t i = 0; i < relators.size(); ++i)
        out << relator_display(i) << '\n';
    return out.str();
}

namespace {

class WordParser {
public:
    WordParser(std::string_view s, const std::vector<std::string>& gens) : s_(s), gens_(gens) {}

    Word parse_all()
    {
        Word w = parse_product();
        skip_ws();
        if (!at_end())
            fail("unexpected character '" + std::string(1, peek()) + "'");
        return w;
    }

private:
    Word parse_product()
    {
        Word w;
        skip_ws();
        while (!at_end() && peek() != ')' && peek() != ',' && peek() != ']') {
            w *= parse_factor();
            skip_ws();
            if (peek() == '*') {
                get();
                skip_ws();
                if (at_end() || peek() == ')' || peek() == ',' || peek() == ']')
                    fail("dangling '*'");
            }
        }
        return w;
    }

    Word parse_factor()
    {
        skip_ws();
        Word base;
        const char c = peek();
        if (c == '(') {
            get();
            base = parse_product();
            expect(')');
        }
        else if (c == '[') {
            get();
            Word x = parse_product();
            expect(',');
            Word y = parse_product();
            expect(']');
            base = commutator(x, y);
        }
        else if (c == '1' && !is_ident_char(peek(1))) {
            get();
        }
        else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = ident();
            skip_ws();
            if (peek() == '(' && is_braid_name(name) && gens_index(name) < 0) {
                const int m = std::stoi(name.substr(2));
                get();
                Word a = parse_product();
                expect(',');
                Word b = parse_product();
                expect(')');
                base = braid_word(a, b, m);
            }
            else {
                const int g = gens_index(name);
                if (g < 0)
                    fail("unknown generator '" + name + "'");
                base = Word::generator(g);
            }
        }
        else {
            fail(at_end() ? "unexpected end of word" : "unexpected character '" + std::string(1, c) + "'");
        }
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            long sign = 1;
            if (peek() == '-') {
                get();
                sign = -1;
            }
            else if (peek() == '+') {
                get();
            }
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent");
            long k = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                k = k * 10 + (get() - '0');
                if (k > 100'000'000)
                    fail("exponent too large");
            }
            base = base.power(sign * k);
        }
        return base;
    }

    static Word braid_word(const Word& a, const Word& b, int m)
    {
        if (m < 2)
            throw ParseError("braid relation needs length at least 2");
        Word lhs, rhs;
        for (int k = 0; k < m; ++k) {
            lhs *= (k % 2 == 0 ? a : b);
            rhs *= (k % 2 == 0 ? b : a);
        }
        return lhs * rhs.inverse();
    }

    static bool is_braid_name(const std::string& n)
    {
        return n.size() > 2 && n.compare(0, 2, "br") == 0 &&
               std::all_of(n.begin() + 2, n.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    }

    int gens_index(const std::string& n) const
    {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i] == n)
                return static_cast<int>(i);
        return -1;
    }

    static bool is_ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

    std::string ident()
    {
        const size_t start = pos_;
        while (!at_end() && is_ident_char(peek()))
            get();
        return std::string(s_.substr(start, pos_ - start));
    }

    void expect(char ch)
    {
        skip_ws();
        if (peek() != ch)
            fail(std::string("expected '") + ch + "'");
        get();
    }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek(size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
    char get() { return at_end() ? '\0' : s_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("word '" + std::string(s_) + "': " + what + " at column " + std::to_string(pos_ + 1));
    }

    std::string_view s_;
    const std::vector<std::string>& gens_;
    size_t pos_ = 0;
};

std::string strip(std::string_view line)
{
    if (auto h = line.find('#'); h != std::string_view::npos)
        line = line.substr(0, h);
    size_t a = 0, b = line.size();
    while (a < b && std::isspace(static_cast<unsigned char>(line[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1])))
        --b;
    return std::string(line.substr(a, b - a));
}

std::vector<std::string> lines_of(std::string_view text)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line))
        out.push_back(line);
    return out;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& generators)
{
    return WordParser(text, generators).parse_all();
}

Presentation parse_presentation(std::string_view text)
{
    Presentation p;
    bool have_gens = false;
    int lineno = 0;
    for (const auto& raw : lines_of(text)) {
        ++lineno;
        const std::string line = strip(raw);
        if (line.empty())
            continue;
        if (line.rfind("generators:", 0) == 0) {
            if (have_gens)
                throw ParseError("line " + std::to_string(lineno) + ": duplicate generators line");
            std::istringstream in(line.substr(11));
            std::string g;
            while (in >> g) {
                if (!(std::isalpha(static_cast<unsigned char>(g[0])) || g[0] == '_') ||
                    !std::all_of(g.begin(), g.end(),
                                 [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
                    throw ParseError("line " + std::to_string(lineno) + ": bad generator name '" + g + "'");
                if (p.generator_index(g) >= 0)
                    throw ParseError("line " + std::to_string(lineno) + ": repeated generator '" + g + "'");
                p.generators.push_back(g);
            }
            have_gens = true;
            continue;
        }
        if (!have_gens)
            throw ParseError("line " + std::to_string(lineno) + ": relator before 'generators:' line");
        try {
            p.relators.push_back(parse_word(line, p.generators));
        }
        catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        p.relator_text.push_back(line);
    }
    if (!have_gens)
        throw ParseError("presentation lacks a 'generators:' line");
    return p;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_text_file(path)); }

std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& generators)
{
    std::vector<Word> out;
    int lineno = 0;
    for (const auto& raw : lines_of(text)) {
        ++lineno;
        const std::string line = strip(raw);
        if (line.empty())
            continue;
        try {
            out.push_back(parse_word(line, generators));
        }
        catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Word> load_word_list(const std::string& path, const std::vector<std::string>& generators)
{
    return parse_word_list(read_text_file(path), generators);
}

}  // namespace cxlift::fpgroups
