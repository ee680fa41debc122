#include "gsb/order.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace gsb {

namespace {

LetterClass cls_of(const Alphabet& a, LetterId id) { return a.letter(id).cls; }

std::strong_ordering lex_blocks(const std::vector<std::vector<LetterId>>& xs,
                                const std::vector<std::vector<LetterId>>& ys,
                                const std::vector<int>& rank) {
    // deg-lex on each aligned block
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
        const auto& x = xs[i];
        const auto& y = ys[i];
        if (x.size() != y.size()) return x.size() <=> y.size();
        for (std::size_t j = 0; j < x.size(); ++j)
            if (rank[x[j]] != rank[y[j]]) return rank[x[j]] <=> rank[y[j]];
    }
    return xs.size() <=> ys.size();
}

} // namespace

TowerWeight tower_weight(const Word& w) {
    const Alphabet& a = *w.alphabet();
    TowerWeight tw;
    tw.es.emplace_back();
    for (LetterId id : w.ids()) {
        switch (cls_of(a, id)) {
        case LetterClass::A:
            tw.es.back().push_back(id);
            break;
        case LetterClass::Y:
            tw.ys.push_back(id);
            tw.es.emplace_back();
            ++tw.t;
            break;
        default:
            throw input_error("letter outside the tower order's domain: " + a.letter(id).name);
        }
    }
    return tw;
}

HnnOrderData make_hnn_order_data(const std::shared_ptr<const Alphabet>& alpha,
                                 std::shared_ptr<const FiniteGroup> h,
                                 SubgroupWithCosets c, SubgroupWithCosets d, PartialIso phi) {
    HnnOrderData data{std::move(h), std::move(c), std::move(d), std::move(phi), {}, {}, 0, 0};
    data.abs_rank.resize(data.H->size());
    for (int e = 0; e < data.H->size(); ++e) data.abs_rank[e] = e;

    data.element_of_letter.assign(alpha->size(), -1);
    std::vector<bool> seen(data.H->size(), false);
    bool have_t = false, have_tinv = false;
    for (LetterId id = 0; id < alpha->size(); ++id) {
        const Letter& l = alpha->letter(id);
        switch (l.cls) {
        case LetterClass::H: {
            int e = data.H->element(l.name);
            if (e == 0 || seen[e]) throw input_error("bad H-letter '" + l.name + "'");
            seen[e] = true;
            data.element_of_letter[id] = e;
            break;
        }
        case LetterClass::T:
            if (have_t) throw input_error("duplicate t letter");
            data.t = id;
            have_t = true;
            break;
        case LetterClass::Tinv:
            if (have_tinv) throw input_error("duplicate t^-1 letter");
            data.tinv = id;
            have_tinv = true;
            break;
        default:
            break;
        }
    }
    for (int e = 1; e < data.H->size(); ++e)
        if (!seen[e]) throw input_error("missing letter for H element " + data.H->name(e));
    if (!have_t || !have_tinv) throw input_error("HNN alphabet needs t and t^-1");
    return data;
}

HnnWeight hnn_weight(const Word& w, const HnnOrderData& data) {
    (void)data; // the splitting itself only needs the letter classes
    const Alphabet& a = *w.alphabet();
    HnnWeight hw;
    hw.segments.emplace_back();
    hw.segments.back().es.emplace_back();
    for (LetterId id : w.ids()) {
        switch (cls_of(a, id)) {
        case LetterClass::A:
            hw.segments.back().es.back().push_back(id);
            break;
        case LetterClass::H:
            hw.segments.back().hs.push_back(id);
            hw.segments.back().es.emplace_back();
            ++hw.segments.back().n;
            break;
        case LetterClass::T:
        case LetterClass::Tinv:
            hw.eps.push_back(cls_of(a, id) == LetterClass::T ? +1 : -1);
            ++hw.k;
            hw.segments.emplace_back();
            hw.segments.back().es.emplace_back();
            break;
        default:
            throw input_error("letter outside the HNN order's domain: " + a.letter(id).name);
        }
    }
    return hw;
}

OrderSpec OrderSpec::deglex(std::shared_ptr<const Alphabet> alpha,
                            std::optional<std::vector<LetterId>> ranking) {
    OrderSpec o(Kind::DegLex, std::move(alpha));
    o.rank_.assign(o.alpha_->size(), 0);
    if (ranking) {
        if (ranking->size() != o.alpha_->size())
            throw input_error("ranking must list every letter");
        std::vector<bool> seen(o.alpha_->size(), false);
        for (std::size_t r = 0; r < ranking->size(); ++r) {
            LetterId id = (*ranking)[r];
            if (id >= o.alpha_->size() || seen[id]) throw input_error("bad ranking");
            seen[id] = true;
            o.rank_[id] = static_cast<int>(r);
        }
    } else {
        for (std::size_t i = 0; i < o.alpha_->size(); ++i) o.rank_[i] = static_cast<int>(i);
    }
    return o;
}

OrderSpec OrderSpec::tower(std::shared_ptr<const Alphabet> alpha) {
    OrderSpec o(Kind::Tower, std::move(alpha));
    // rank within each class, by declaration order
    o.rank_.assign(o.alpha_->size(), 0);
    int ra = 0, ry = 0;
    for (LetterId i = 0; i < o.alpha_->size(); ++i) {
        switch (o.alpha_->letter(i).cls) {
        case LetterClass::A: o.rank_[i] = ra++; break;
        case LetterClass::Y: o.rank_[i] = ry++; break;
        default: throw input_error("tower order wants an A/Y alphabet");
        }
    }
    return o;
}

OrderSpec OrderSpec::hnn(std::shared_ptr<const Alphabet> alpha, HnnOrderData data) {
    OrderSpec o(Kind::Hnn, std::move(alpha));
    o.rank_.assign(o.alpha_->size(), 0);
    int ra = 0;
    for (LetterId i = 0; i < o.alpha_->size(); ++i)
        if (o.alpha_->letter(i).cls == LetterClass::A) o.rank_[i] = ra++;
    o.hnn_ = std::make_shared<HnnOrderData>(std::move(data));
    return o;
}

const HnnOrderData& OrderSpec::hnn_data() const {
    if (!hnn_) throw input_error("not an HNN order");
    return *hnn_;
}

std::strong_ordering OrderSpec::compare(const Word& u, const Word& v) const {
    require_same_alphabet(u, v);
    switch (kind_) {
    case Kind::DegLex: return compare_deglex(u, v);
    case Kind::Tower: return compare_tower(u, v);
    case Kind::Hnn: return compare_hnn(u, v);
    }
    throw std::logic_error("unreachable");
}

std::strong_ordering OrderSpec::compare_deglex(const Word& u, const Word& v) const {
    if (u.deg() != v.deg()) return u.deg() <=> v.deg();
    for (std::size_t i = 0; i < u.deg(); ++i)
        if (rank_[u[i]] != rank_[v[i]]) return rank_[u[i]] <=> rank_[v[i]];
    return std::strong_ordering::equal;
}

std::strong_ordering OrderSpec::compare_tower(const Word& u, const Word& v) const {
    TowerWeight wu = tower_weight(u), wv = tower_weight(v);
    if (wu.t != wv.t) return wu.t <=> wv.t;
    for (std::size_t i = 0; i < wu.t; ++i)
        if (rank_[wu.ys[i]] != rank_[wv.ys[i]]) return rank_[wu.ys[i]] <=> rank_[wv.ys[i]];
    return lex_blocks(wu.es, wv.es, rank_);
}

namespace {

// modes for comparing H elements inside a segment
enum class HMode { Abs, C, D };

std::strong_ordering cmp_h_element(const HnnOrderData& d, int h1, int h2, HMode mode) {
    if (mode == HMode::Abs) return d.abs_rank[h1] <=> d.abs_rank[h2];
    const SubgroupWithCosets& sub = (mode == HMode::C) ? d.C : d.D;
    auto [r1, c1] = coset_decompose(h1, sub);
    auto [r2, c2] = coset_decompose(h2, sub);
    if (r1 != r2) return sub.rep_position(r1) <=> sub.rep_position(r2);
    return d.abs_rank[c1] <=> d.abs_rank[c2];
}

} // namespace

std::strong_ordering OrderSpec::compare_hnn(const Word& u, const Word& v) const {
    const HnnOrderData& d = *hnn_;
    HnnWeight wu = hnn_weight(u, d), wv = hnn_weight(v, d);
    if (wu.k != wv.k) return wu.k <=> wv.k;
    for (std::size_t i = 0; i < wu.k; ++i)
        if (wu.eps[i] != wv.eps[i]) return wu.eps[i] <=> wv.eps[i]; // t (+1) above t^-1 (-1)

    auto cmp_segment = [&](const HnnSegment& s1, const HnnSegment& s2, HMode mode) {
        if (s1.n != s2.n) return s1.n <=> s2.n;
        for (std::size_t j = 0; j < s1.n; ++j) {
            HMode m = (j + 1 == s1.n) ? mode : HMode::Abs; // only the last H-letter uses C/D
            int h1 = d.element_of_letter[s1.hs[j]];
            int h2 = d.element_of_letter[s2.hs[j]];
            if (auto c = cmp_h_element(d, h1, h2, m); c != 0) return c;
        }
        return lex_blocks(s1.es, s2.es, rank_);
    };

    for (std::size_t i = 0; i < wu.k; ++i) {
        HMode mode = wu.eps[i] == +1 ? HMode::C : HMode::D;
        if (auto c = cmp_segment(wu.segments[i], wv.segments[i], mode); c != 0) return c;
    }
    return cmp_segment(wu.segments[wu.k], wv.segments[wu.k], HMode::Abs);
}

std::pair<Word, Scalar> leading(const Polynomial& f, const OrderSpec& ord) {
    if (f.is_zero()) throw input_error("zero polynomial has no leading word");
    const Word* best = nullptr;
    for (const auto& [w, c] : f.terms()) {
        (void)c;
        if (!best || ord.greater(w, *best)) best = &w;
    }
    return {*best, f.coeff(*best)};
}

Polynomial make_monic(const Polynomial& f, const OrderSpec& ord) {
    auto [w, c] = leading(f, ord);
    (void)w;
    Polynomial g = f;
    g *= Scalar(1) / c;
    return g;
}

namespace {

Word random_word(const Alphabet& alpha, std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<LetterId> pick(0, static_cast<LetterId>(alpha.size() - 1));
    std::vector<LetterId> ids(len(rng));
    for (auto& id : ids) id = pick(rng);
    return alpha.shared_from_this()->word_from_ids(std::move(ids));
}

std::vector<Word> all_words_up_to(const std::shared_ptr<const Alphabet>& alpha, std::size_t max_len) {
    std::vector<Word> out{alpha->empty_word()};
    std::size_t level_begin = 0;
    for (std::size_t l = 1; l <= max_len; ++l) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (LetterId id = 0; id < alpha->size(); ++id) {
                auto ids = out[i].ids();
                ids.push_back(id);
                out.push_back(alpha->word_from_ids(std::move(ids)));
            }
        level_begin = level_end;
    }
    return out;
}

} // namespace

MonomialReport certify_monomial(const OrderSpec& ord, std::size_t trials, std::uint64_t seed) {
    MonomialReport rep;
    const auto alpha = ord.alphabet();
    std::mt19937_64 rng(seed);

    auto note = [&](const std::string& msg) {
        if (rep.witness.empty()) rep.witness = msg;
    };

    auto check_pair = [&](const Word& u, const Word& v) {
        auto uv = ord.compare(u, v);
        auto vu = ord.compare(v, u);
        if ((uv == 0) != (u == v)) {
            rep.total_ok = false;
            note("Equal verdict disagrees with word equality: " + u.str() + " vs " + v.str());
        }
        if ((uv < 0 && vu <= 0) || (uv > 0 && vu >= 0)) {
            rep.total_ok = false;
            note("antisymmetry failure: " + u.str() + " vs " + v.str());
        }
    };

    auto check_compat = [&](const Word& u, const Word& v, const Word& w1, const Word& w2) {
        if (ord.compare(u, v) <= 0) return;
        Word lu = concat(concat(w1, u), w2);
        Word lv = concat(concat(w1, v), w2);
        if (ord.compare(lu, lv) <= 0) {
            rep.compatible = false;
            if (!rep.compat_witness) {
                rep.compat_witness = {u, v, w1, w2};
                note("compatibility failure: " + u.str() + " > " + v.str() + " but [" + w1.str() +
                     "].u.[" + w2.str() + "] is not above [" + w1.str() + "].v.[" + w2.str() + "]");
            }
        }
    };

    // exhaustive sweep over short words
    auto short_words = all_words_up_to(alpha, alpha->size() <= 4 ? 3 : 2);
    auto ctx_words = all_words_up_to(alpha, 1);
    for (const auto& u : short_words) {
        if (!u.empty() && ord.compare(alpha->empty_word(), u) >= 0) {
            rep.well_founded_ok = false;
            note("empty word not minimal against " + u.str());
        }
        for (const auto& v : short_words) {
            check_pair(u, v);
            if (ord.compare(u, v) > 0)
                for (const auto& w1 : ctx_words)
                    for (const auto& w2 : ctx_words) check_compat(u, v, w1, w2);
        }
    }

    // randomized trials on longer words
    for (std::size_t i = 0; i < trials; ++i) {
        Word u = random_word(*alpha, rng, 6);
        Word v = random_word(*alpha, rng, 6);
        Word w = random_word(*alpha, rng, 6);
        check_pair(u, v);
        // transitivity
        if (ord.compare(u, v) >= 0 && ord.compare(v, w) >= 0 && ord.compare(u, w) < 0) {
            rep.transitive_ok = false;
            note("transitivity failure: " + u.str() + " / " + v.str() + " / " + w.str());
        }
        Word w1 = random_word(*alpha, rng, 3);
        Word w2 = random_word(*alpha, rng, 3);
        if (ord.compare(u, v) > 0) check_compat(u, v, w1, w2);
        else if (ord.compare(v, u) > 0) check_compat(v, u, w1, w2);
        ++rep.trials;
    }
    return rep;
}

} // namespace gsb
