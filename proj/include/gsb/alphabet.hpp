#ifndef GSB_ALPHABET_HPP
#define GSB_ALPHABET_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsb/errors.hpp"

namespace gsb {

using LetterId = std::uint32_t;

/// Role a letter plays in the mixed alphabets used by extension systems.
/// Plain presentations use Y for every generator.
enum class LetterClass : std::uint8_t {
    A,    // coefficient-group letter (element of A \ {1})
    Y,    // generator of the base group B
    H,    // element of the HNN base group H \ {1}
    T,    // the stable letter t
    Tinv, // its inverse t^-1
};

struct Letter {
    std::string name;
    LetterClass cls;
};

class Word;

/// A classed, ordered alphabet. Letter ids are dense and follow declaration
/// order; that order doubles as the default ranking. Identity elements of
/// groups are never letters.
class Alphabet : public std::enable_shared_from_this<Alphabet> {
public:
    static std::shared_ptr<Alphabet> create() { return std::shared_ptr<Alphabet>(new Alphabet()); }

    LetterId add(const std::string& name, LetterClass cls);

    std::size_t size() const { return letters_.size(); }
    const Letter& letter(LetterId id) const { return letters_.at(id); }
    LetterId id(const std::string& name) const;
    std::optional<LetterId> try_id(const std::string& name) const;

    /// Word from whitespace-separated letter names; "1" alone is the empty word.
    Word word(const std::string& spaced) const;
    Word word(std::initializer_list<const char*> names) const;
    Word word_from_ids(std::vector<LetterId> ids) const;
    Word empty_word() const;

    std::vector<LetterId> letters_of_class(LetterClass cls) const;

private:
    Alphabet() = default;
    std::vector<Letter> letters_;
    std::map<std::string, LetterId> index_;
};

/// A word of the free monoid X*: a flat sequence of letter ids plus a handle
/// on its alphabet. The empty word is the identity.
class Word {
public:
    Word() = default;
    Word(std::shared_ptr<const Alphabet> alpha, std::vector<LetterId> ids);

    const std::vector<LetterId>& ids() const { return ids_; }
    std::size_t deg() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    LetterId operator[](std::size_t i) const { return ids_[i]; }
    const std::shared_ptr<const Alphabet>& alphabet() const { return alpha_; }

    Word subword(std::size_t pos, std::size_t len) const;
    Word prefix(std::size_t len) const { return subword(0, len); }
    Word suffix(std::size_t len) const { return subword(ids_.size() - len, len); }

    /// Positions where `pattern` occurs as a subword, left to right.
    std::vector<std::size_t> occurrences(const Word& pattern) const;
    /// First occurrence at or after `from`, or nullopt.
    std::optional<std::size_t> find(const Word& pattern, std::size_t from = 0) const;
    bool contains(const Word& pattern) const { return find(pattern).has_value(); }

    std::string str() const; // space-joined names, "1" when empty

    bool operator==(const Word& o) const { return ids_ == o.ids_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

private:
    std::shared_ptr<const Alphabet> alpha_;
    std::vector<LetterId> ids_;
};

/// Concatenation; deg(uv) = deg(u) + deg(v). Throws on alphabet mismatch.
Word concat(const Word& u, const Word& v);

void require_same_alphabet(const Word& u, const Word& v);

/// Storage order used by containers: by length, then letter ids. This is a
/// bookkeeping order, independent of any OrderSpec semantics.
struct WordCanonicalLess {
    bool operator()(const Word& u, const Word& v) const {
        if (u.deg() != v.deg()) return u.deg() < v.deg();
        return u.ids() < v.ids();
    }
};

} // namespace gsb

#endif
