#include "hypquot/words.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace hypquot {

char WordProblem::inverse_letter(char c) {
    return static_cast<char>(std::isupper(static_cast<unsigned char>(c))
                                 ? std::tolower(static_cast<unsigned char>(c))
                                 : std::toupper(static_cast<unsigned char>(c)));
}

std::string WordProblem::inverse_word(const std::string& word) {
    std::string out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
}

std::string WordProblem::free_reduce(const std::string& word) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) {
        if (!out.empty() && out.back() == inverse_letter(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

bool WordProblem::equal(const std::string& a, const std::string& b) const {
    return reduce(a) == reduce(b);
}

bool WordProblem::valid_word(const std::string& word) const {
    for (char c : word)
        if (letters_.find(c) == std::string::npos) return false;
    return true;
}

std::string WordProblem::parse_word(const std::string& text) const {
    if (text.empty() || text == "e") return "";
    if (!valid_word(text))
        fail(ErrorKind::format, "word '" + text + "' uses letters outside the group alphabet '" +
                                    letters_ + "'");
    return text;
}

namespace {

class FreeWords final : public WordProblem {
public:
    explicit FreeWords(int rank) {
        for (int i = 0; i < rank; ++i) {
            generators_.push_back(static_cast<char>('a' + i));
            generators_.push_back(static_cast<char>('A' + i));
        }
        letters_.assign(generators_.begin(), generators_.end());
    }
    bool has_canonical_form() const override { return true; }
    std::string reduce(const std::string& word) const override { return free_reduce(word); }
};

// Z^2 with commuting generators a, b: canonical form a^m b^n.
class GridWords final : public WordProblem {
public:
    GridWords() {
        generators_ = {'a', 'A', 'b', 'B'};
        letters_ = "aAbB";
    }
    bool has_canonical_form() const override { return true; }
    std::string reduce(const std::string& word) const override {
        long na = 0, nb = 0;
        for (char c : word) {
            if (c == 'a') ++na;
            else if (c == 'A') --na;
            else if (c == 'b') ++nb;
            else --nb;
        }
        std::string out;
        out.append(static_cast<std::size_t>(na < 0 ? -na : na), na < 0 ? 'A' : 'a');
        out.append(static_cast<std::size_t>(nb < 0 ? -nb : nb), nb < 0 ? 'B' : 'b');
        return out;
    }
};

// Z/2 * Z/3 with a^2 = 1, b^3 = 1 and B = b^{-1}. The rewriting rules
// aa -> e, bB -> e, Bb -> e, bb -> B, BB -> b are confluent and length
// nonincreasing, so the normal form is also a geodesic word.
class Z2Z3Words final : public WordProblem {
public:
    Z2Z3Words() {
        generators_ = {'a', 'b', 'B'};
        letters_ = "aAbB";
    }
    bool has_canonical_form() const override { return true; }
    std::string reduce(const std::string& word) const override {
        std::string out;
        out.reserve(word.size());
        for (char raw : word) {
            char c = raw == 'A' ? 'a' : raw;
            for (;;) {
                if (out.empty()) {
                    out.push_back(c);
                    break;
                }
                const char t = out.back();
                if (t == 'a' && c == 'a') {
                    out.pop_back();
                    break;
                }
                if ((t == 'b' && c == 'B') || (t == 'B' && c == 'b')) {
                    out.pop_back();
                    break;
                }
                if (t == 'b' && c == 'b') {
                    out.pop_back();
                    c = 'B';
                    continue;
                }
                if (t == 'B' && c == 'B') {
                    out.pop_back();
                    c = 'b';
                    continue;
                }
                out.push_back(c);
                break;
            }
        }
        return out;
    }
};

// Genus-2 surface group <a,b,c,d | [a,b][c,d]>. The relator has length 8 and
// all pieces have length 1, so greedy Dehn reduction decides the word problem:
// any subword matching more than half of a cyclic conjugate of the relator or
// its inverse is replaced by the inverse of the complement.
class SurfaceWords final : public WordProblem {
public:
    SurfaceWords() {
        generators_ = {'a', 'b', 'c', 'd', 'A', 'B', 'C', 'D'};
        letters_ = "abcdABCD";
        const std::string relator = "abABcdCD";
        const std::string inv = inverse_word(relator);
        for (std::size_t i = 0; i < relator.size(); ++i) {
            rotations_.push_back(relator.substr(i) + relator.substr(0, i));
            rotations_.push_back(inv.substr(i) + inv.substr(0, i));
        }
    }

    bool has_canonical_form() const override { return false; }

    std::string reduce(const std::string& word) const override {
        std::string w = free_reduce(word);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t len = 8; len >= 5 && !changed; --len) {
                if (w.size() < len) continue;
                for (std::size_t i = 0; i + len <= w.size() && !changed; ++i) {
                    for (const std::string& rot : rotations_) {
                        if (w.compare(i, len, rot, 0, len) != 0) continue;
                        const std::string tail = rot.substr(len);
                        w = free_reduce(w.substr(0, i) + inverse_word(tail) + w.substr(i + len));
                        changed = true;
                        break;
                    }
                }
            }
        }
        return w;
    }

    bool equal(const std::string& a, const std::string& b) const override {
        std::string w = free_reduce(a + inverse_word(b));
        if (w.empty()) return true;
        // No nontrivial relation is shorter than the relator itself.
        if (w.size() < 8) return false;
        return reduce(w).empty();
    }

private:
    std::vector<std::string> rotations_;
};

} // namespace

std::unique_ptr<WordProblem> WordProblem::make(const GroupSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case GroupSpec::Kind::free_group: return std::make_unique<FreeWords>(spec.rank);
    case GroupSpec::Kind::grid2d: return std::make_unique<GridWords>();
    case GroupSpec::Kind::z2z3: return std::make_unique<Z2Z3Words>();
    case GroupSpec::Kind::surface_genus2: return std::make_unique<SurfaceWords>();
    }
    fail(ErrorKind::domain, "unknown group kind");
}

} // namespace hypquot
