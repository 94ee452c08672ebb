#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hypquot/graph.hpp"

namespace hypquot {

/// Word reduction and equality for the supported group presentations.
/// Letters: generators a..d, inverses as capitals A..D. For z2z3 the
/// generator a is its own inverse and B stands for b^{-1} (= b^2).
class WordProblem {
public:
    static std::unique_ptr<WordProblem> make(const GroupSpec& spec);
    virtual ~WordProblem() = default;

    /// Expansion alphabet for ball generation (inverse-closed).
    const std::vector<char>& generators() const { return generators_; }

    /// True when reduce() yields a canonical form (equality = string equality).
    virtual bool has_canonical_form() const = 0;
    virtual std::string reduce(const std::string& word) const = 0;
    virtual bool equal(const std::string& a, const std::string& b) const;

    const std::string& letters() const { return letters_; }

    bool valid_word(const std::string& word) const;
    /// Normalizes user input: maps "e" to the empty word, checks letters.
    std::string parse_word(const std::string& text) const;

    static char inverse_letter(char c);
    static std::string inverse_word(const std::string& word);
    static std::string free_reduce(const std::string& word);

protected:
    std::vector<char> generators_;
    std::string letters_; // letters accepted in user-supplied words
};

} // namespace hypquot
