#include "gsb/alphabet.hpp"

#include <sstream>

namespace gsb {

LetterId Alphabet::add(const std::string& name, LetterClass cls) {
    if (name.empty() || name == "1")
        throw input_error("'" + name + "' cannot be a letter name");
    if (index_.count(name))
        throw input_error("duplicate letter name '" + name + "'");
    LetterId id = static_cast<LetterId>(letters_.size());
    letters_.push_back({name, cls});
    index_[name] = id;
    return id;
}

LetterId Alphabet::id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw input_error("unknown letter '" + name + "'");
    return it->second;
}

std::optional<LetterId> Alphabet::try_id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Word Alphabet::word(const std::string& spaced) const {
    std::istringstream is(spaced);
    std::vector<LetterId> ids;
    std::string tok;
    while (is >> tok) {
        if (tok == "1") continue; // the identity contributes the empty factor
        ids.push_back(id(tok));
    }
    return Word(shared_from_this(), std::move(ids));
}

Word Alphabet::word(std::initializer_list<const char*> names) const {
    std::vector<LetterId> ids;
    for (const char* n : names) {
        if (std::string(n) == "1") continue;
        ids.push_back(id(n));
    }
    return Word(shared_from_this(), std::move(ids));
}

Word Alphabet::word_from_ids(std::vector<LetterId> ids) const {
    for (LetterId i : ids)
        if (i >= letters_.size()) throw input_error("letter id out of range");
    return Word(shared_from_this(), std::move(ids));
}

Word Alphabet::empty_word() const { return Word(shared_from_this(), {}); }

std::vector<LetterId> Alphabet::letters_of_class(LetterClass cls) const {
    std::vector<LetterId> out;
    for (LetterId i = 0; i < letters_.size(); ++i)
        if (letters_[i].cls == cls) out.push_back(i);
    return out;
}

Word::Word(std::shared_ptr<const Alphabet> alpha, std::vector<LetterId> ids)
    : alpha_(std::move(alpha)), ids_(std::move(ids)) {
    for (LetterId i : ids_)
        if (!alpha_ || i >= alpha_->size()) throw input_error("letter id out of range");
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    if (pos + len > ids_.size()) throw input_error("subword out of range");
    return Word(alpha_, std::vector<LetterId>(ids_.begin() + pos, ids_.begin() + pos + len));
}

std::vector<std::size_t> Word::occurrences(const Word& pattern) const {
    std::vector<std::size_t> out;
    if (pattern.deg() == 0 || pattern.deg() > deg()) return out;
    for (std::size_t p = 0; p + pattern.deg() <= deg(); ++p) {
        bool hit = true;
        for (std::size_t k = 0; k < pattern.deg(); ++k)
            if (ids_[p + k] != pattern.ids_[k]) { hit = false; break; }
        if (hit) out.push_back(p);
    }
    return out;
}

std::optional<std::size_t> Word::find(const Word& pattern, std::size_t from) const {
    if (pattern.deg() == 0 || pattern.deg() > deg()) return std::nullopt;
    for (std::size_t p = from; p + pattern.deg() <= deg(); ++p) {
        bool hit = true;
        for (std::size_t k = 0; k < pattern.deg(); ++k)
            if (ids_[p + k] != pattern.ids_[k]) { hit = false; break; }
        if (hit) return p;
    }
    return std::nullopt;
}

std::string Word::str() const {
    if (ids_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (i) out += ' ';
        out += alpha_->letter(ids_[i]).name;
    }
    return out;
}

void require_same_alphabet(const Word& u, const Word& v) {
    // Empty default-constructed words are compatible with anything.
    if (!u.alphabet() || !v.alphabet()) return;
    if (u.alphabet() != v.alphabet()) throw input_error("alphabet mismatch");
}

Word concat(const Word& u, const Word& v) {
    require_same_alphabet(u, v);
    std::vector<LetterId> ids = u.ids();
    ids.insert(ids.end(), v.ids().begin(), v.ids().end());
    auto alpha = u.alphabet() ? u.alphabet() : v.alphabet();
    return Word(alpha, std::move(ids));
}

} // namespace gsb
