#pragma once

// Words in free groups and finite presentations.

#include <string>
#include <string_view>
#include <vector>

namespace cxlift::fpgroups {

struct Syllable {
    int gen;
    long exp;  // nonzero
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Freely reduced word stored as syllables g^e with adjacent generators distinct.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Syllable> syllables);  // reduces
    static Word generator(int g, long e = 1);
    // Letters encoded as +(g+1) / -(g+1).
    static Word from_letters(const std::vector<int>& letters);

    const std::vector<Syllable>& syllables() const { return syl_; }
    std::vector<int> letters() const;
    bool empty() const { return syl_.empty(); }
    size_t length() const;  // sum of |exp|

    Word inverse() const;
    Word power(long k) const;
    long exponent_sum(int g) const;
    int max_generator() const;  // -1 for the empty word

    // Cyclically reduced conjugate.
    Word cyclic_reduce() const;

    friend Word operator*(const Word& a, const Word& b);
    Word& operator*=(const Word& b) { return *this = *this * b; }
    friend bool operator==(const Word&, const Word&) = default;
    friend bool operator<(const Word& a, const Word& b) { return a.letters() < b.letters(); }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void push(int g, long e);
    std::vector<Syllable> syl_;
};

// ab... (m letters) * (ba... (m letters))^-1.
Word braid_relator(int a, int b, int m);
// x^-1 y^-1 x y
Word commutator(const Word& x, const Word& y);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    // Source text of each relator as written (for display); may be empty.
    std::vector<std::string> relator_text;

    int generator_index(std::string_view name) const;  // -1 if absent
    std::string relator_display(size_t i) const;
    std::string to_string() const;
};

// Word grammar: products of factors separated by '*' or whitespace, where a
// factor is `name`, `name^k`, `(word)^k`, `brM(word,word)`, `[word,word]`
// (x^-1 y^-1 x y) or `1`.  Unknown names raise ParseError.
Word parse_word(std::string_view text, const std::vector<std::string>& generators);

// `generators: a b c` line, then one relator per line, `#` comments.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

// One word per nonblank, non-comment line.
std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& generators);
std::vector<Word> load_word_list(const std::string& path, const std::vector<std::string>& generators);

std::string read_text_file(const std::string& path);  // ParseError when missing

}  // namespace cxlift::fpgroups
