#include "gsb/engine.hpp"

#include <algorithm>
#include <sstream>

namespace gsb {

RewriteSystem::RewriteSystem(OrderSpec ord, std::vector<Polynomial> rules) : ord_(std::move(ord)) {
    for (const auto& p : rules) add_rule(p);
    status_ = Status::candidate;
}

RewriteSystem RewriteSystem::from_rules_unchecked(OrderSpec ord, std::vector<Rule> rules) {
    RewriteSystem s(std::move(ord));
    s.rules_ = std::move(rules);
    return s;
}

void RewriteSystem::add_rule(const Polynomial& p) {
    if (p.is_zero()) throw input_error("the zero polynomial cannot be a rule");
    Polynomial monic = make_monic(p, ord_);
    Word lead = leading(monic, ord_).first;
    rules_.push_back(Rule{std::move(monic), std::move(lead)});
    status_ = Status::candidate;
    minimal_ = false;
}

std::string Composition::describe(const RewriteSystem& s) const {
    std::ostringstream os;
    os << (kind == Kind::intersection ? "intersection" : "inclusion") << " (" << f << "," << g
       << ") at w = " << w.str();
    (void)s;
    return os.str();
}

std::vector<Composition> find_compositions(const RewriteSystem& s) {
    std::vector<Composition> out;
    const auto& rules = s.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& fi = rules[i].lead;
            const Word& gj = rules[j].lead;
            // intersection: a nonempty proper suffix of lead(f) equals a
            // nonempty proper prefix of lead(g); contexts a, b nonempty and
            // deg(f) + deg(g) > deg(w) holds exactly when the overlap does.
            if (fi.deg() >= 2 && gj.deg() >= 2) {
                for (std::size_t o = std::min(fi.deg(), gj.deg()) - 1; o >= 1; --o) {
                    bool match = true;
                    for (std::size_t k = 0; k < o; ++k)
                        if (fi[fi.deg() - o + k] != gj[k]) { match = false; break; }
                    if (!match) continue;
                    Word a = fi.prefix(fi.deg() - o);
                    Word b = gj.suffix(gj.deg() - o);
                    Word w = concat(fi, b);
                    Polynomial value = poly_mul_context(s.alphabet()->empty_word(), rules[i].poly, b) -
                                       poly_mul_context(a, rules[j].poly, s.alphabet()->empty_word());
                    out.push_back({Composition::Kind::intersection, i, j, std::move(w), std::move(a),
                                   std::move(b), std::move(value)});
                }
            }
            // inclusion: lead(g) occurs inside lead(f); the degenerate
            // lead(f) = lead(g) case is meaningful only for distinct rules.
            if (i != j) {
                for (std::size_t p : fi.occurrences(gj)) {
                    Word a = fi.prefix(p);
                    Word b = fi.suffix(fi.deg() - p - gj.deg());
                    Polynomial value = rules[i].poly - poly_mul_context(a, rules[j].poly, b);
                    out.push_back({Composition::Kind::inclusion, i, j, fi, std::move(a), std::move(b),
                                   std::move(value)});
                }
            }
        }
    }
    return out;
}

namespace {

struct Redex {
    std::size_t pos;
    std::size_t rule;
};

// leftmost position, lowest rule index there
std::optional<Redex> first_redex(const Word& w, const std::vector<Rule>& rules) {
    for (std::size_t p = 0; p < w.deg(); ++p)
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Word& lead = rules[r].lead;
            if (lead.deg() == 0 || p + lead.deg() > w.deg()) continue;
            bool hit = true;
            for (std::size_t k = 0; k < lead.deg(); ++k)
                if (w[p + k] != lead[k]) { hit = false; break; }
            if (hit) return Redex{p, r};
        }
    return std::nullopt;
}

} // namespace

ReductionTrace reduce(const Polynomial& f, const RewriteSystem& s, std::size_t step_limit) {
    ReductionTrace tr;
    tr.input = f;
    Polynomial cur = f;
    const auto& ord = s.order();
    for (std::size_t step = 0;; ++step) {
        // ord-greatest reducible term
        const Word* target = nullptr;
        std::optional<Redex> redex;
        for (const auto& [w, c] : cur.terms()) {
            (void)c;
            if (target && !ord.greater(w, *target)) continue;
            if (auto r = first_redex(w, s.rules())) {
                target = &w;
                redex = r;
            }
        }
        if (!target) break;
        if (step >= step_limit) {
            tr.hit_step_limit = true;
            break;
        }
        const Rule& rule = s.rules()[redex->rule];
        Word left = target->prefix(redex->pos);
        Word right = target->suffix(target->deg() - redex->pos - rule.lead.deg());
        Scalar alpha = cur.coeff(*target);
        cur -= poly_mul_context(left, rule.poly, right) * alpha;
        tr.steps.push_back({redex->rule, std::move(left), std::move(right), std::move(alpha)});
    }
    tr.remainder = std::move(cur);
    return tr;
}

Polynomial reduce_random(const Polynomial& f, const RewriteSystem& s, std::mt19937_64& rng,
                         std::size_t step_limit) {
    Polynomial cur = f;
    for (std::size_t step = 0; step < step_limit; ++step) {
        struct Hit {
            Word term;
            std::size_t pos, rule;
        };
        std::vector<Hit> hits;
        for (const auto& [w, c] : cur.terms()) {
            (void)c;
            for (std::size_t p = 0; p < w.deg(); ++p)
                for (std::size_t r = 0; r < s.rules().size(); ++r) {
                    const Word& lead = s.rules()[r].lead;
                    if (lead.deg() == 0 || p + lead.deg() > w.deg()) continue;
                    bool hit = true;
                    for (std::size_t k = 0; k < lead.deg(); ++k)
                        if (w[p + k] != lead[k]) { hit = false; break; }
                    if (hit) hits.push_back({w, p, r});
                }
        }
        if (hits.empty()) return cur;
        const Hit& h = hits[std::uniform_int_distribution<std::size_t>(0, hits.size() - 1)(rng)];
        const Rule& rule = s.rules()[h.rule];
        Word left = h.term.prefix(h.pos);
        Word right = h.term.suffix(h.term.deg() - h.pos - rule.lead.deg());
        cur -= poly_mul_context(left, rule.poly, right) * cur.coeff(h.term);
    }
    throw limit_error("randomized reduction exceeded its step limit");
}

TrivialityResult is_trivial(const Composition& c, const RewriteSystem& s, std::size_t step_limit) {
    ReductionTrace tr = reduce(c.value, s, step_limit);
    if (tr.hit_step_limit) throw limit_error("reduction step limit exceeded");
    bool triv = tr.remainder.is_zero();
    return {triv, std::move(tr)};
}

std::vector<std::size_t> certify(RewriteSystem& s) {
    std::vector<std::size_t> bad;
    auto comps = find_compositions(s);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!is_trivial(comps[i], s).trivial) bad.push_back(i);
    s.set_status(bad.empty() ? RewriteSystem::Status::certified_gsb
                             : RewriteSystem::Status::certified_failed);
    return bad;
}

CompletionResult shirshov_complete(const RewriteSystem& s, const CompletionLimits& limits) {
    RewriteSystem work = s;
    CompletionResult res{work, CompletionResult::Status::complete, 0, 0, ""};

    auto over_degree = [&](const Composition& c) { return c.w.deg() > limits.max_degree; };

    // Process rounds of compositions against the current system until a full
    // pass finds everything trivial. Rules added mid-round change reduction
    // paths, so a final clean pass is what certifies.
    while (true) {
        bool added = false;
        auto comps = find_compositions(work);
        for (const auto& c : comps) {
            if (over_degree(c)) {
                ++res.pruned_by_degree;
                continue;
            }
            if (++res.compositions_processed > limits.max_steps) {
                res.status = CompletionResult::Status::hit_limit;
                res.limit_reason = "composition budget exhausted";
                res.basis = std::move(work);
                return res;
            }
            ReductionTrace tr = reduce(c.value, work);
            if (tr.hit_step_limit) {
                res.status = CompletionResult::Status::hit_limit;
                res.limit_reason = "reduction step limit";
                res.basis = std::move(work);
                return res;
            }
            if (tr.remainder.is_zero()) continue;
            if (work.size() + 1 > limits.max_rules) {
                res.status = CompletionResult::Status::hit_limit;
                res.limit_reason = "rule budget exhausted";
                res.basis = std::move(work);
                return res;
            }
            work.add_rule(tr.remainder);
            added = true;
        }
        if (!added) break;
    }
    work.set_status(RewriteSystem::Status::certified_gsb);
    res.basis = minimalize(work);
    return res;
}

RewriteSystem minimalize(const RewriteSystem& s) {
    if (s.status() != RewriteSystem::Status::certified_gsb)
        throw input_error("minimalize needs a certified basis");
    std::vector<Rule> rules = s.rules();

    // drop rules whose lead contains another surviving lead
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            for (std::size_t j = 0; j < rules.size(); ++j) {
                if (i == j) continue;
                if (rules[i].lead.contains(rules[j].lead)) {
                    std::vector<Rule> rest;
                    for (std::size_t k = 0; k < rules.size(); ++k)
                        if (k != i) rest.push_back(rules[k]);
                    RewriteSystem reduced = RewriteSystem::from_rules_unchecked(s.order(), rest);
                    ReductionTrace tr = reduce(rules[i].poly, reduced);
                    rules = std::move(rest);
                    if (!tr.remainder.is_zero()) {
                        // cannot happen for a certified basis over a monomial
                        // order, but keep the ideal intact if it does
                        RewriteSystem tmp = RewriteSystem::from_rules_unchecked(s.order(), rules);
                        tmp.add_rule(tr.remainder);
                        rules = tmp.rules();
                    }
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }

    // reduce tails
    RewriteSystem all = RewriteSystem::from_rules_unchecked(s.order(), rules);
    std::vector<Rule> out;
    for (const auto& r : rules) {
        Polynomial tail = r.poly - Polynomial::monomial(r.lead, Scalar(1));
        Polynomial nf = reduce(tail, all).remainder;
        Polynomial p = Polynomial::monomial(r.lead, Scalar(1)) + nf;
        out.push_back(Rule{std::move(p), r.lead});
    }
    RewriteSystem result = RewriteSystem::from_rules_unchecked(s.order(), std::move(out));
    result.set_status(RewriteSystem::Status::certified_gsb);
    result.set_minimal(true);
    return result;
}

std::vector<Word> irr_enumerate(const RewriteSystem& s, std::size_t max_len) {
    const auto alpha = s.alphabet();
    std::vector<Word> out{alpha->empty_word()};
    std::vector<Word> level{alpha->empty_word()};
    for (std::size_t l = 1; l <= max_len && !level.empty(); ++l) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (LetterId id = 0; id < alpha->size(); ++id) {
                auto ids = w.ids();
                ids.push_back(id);
                Word cand = alpha->word_from_ids(std::move(ids));
                // the prefix is already irreducible, so only suffixes ending
                // at the new letter need checking
                bool ok = true;
                for (const auto& r : s.rules()) {
                    std::size_t d = r.lead.deg();
                    if (d == 0 || d > cand.deg()) continue;
                    bool hit = true;
                    for (std::size_t k = 0; k < d; ++k)
                        if (cand[cand.deg() - d + k] != r.lead[k]) { hit = false; break; }
                    if (hit) { ok = false; break; }
                }
                if (ok) next.push_back(std::move(cand));
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

namespace {

Word random_context(const Alphabet& alpha, std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<LetterId> pick(0, static_cast<LetterId>(alpha.size() - 1));
    std::vector<LetterId> ids(len(rng));
    for (auto& id : ids) id = pick(rng);
    return alpha.shared_from_this()->word_from_ids(std::move(ids));
}

} // namespace

ConditionCheckReport check_condition_I(const RewriteSystem& s, std::size_t samples,
                                       std::size_t max_ctx_len, std::uint64_t seed) {
    ConditionCheckReport rep;
    std::mt19937_64 rng(seed);
    const auto alpha = s.alphabet();
    for (std::size_t r = 0; r < s.rules().size(); ++r) {
        const Rule& rule = s.rules()[r];
        for (std::size_t i = 0; i <= samples; ++i) {
            Word a = i == 0 ? alpha->empty_word() : random_context(*alpha, rng, max_ctx_len);
            Word b = i == 0 ? alpha->empty_word() : random_context(*alpha, rng, max_ctx_len);
            Polynomial p = poly_mul_context(a, rule.poly, b);
            Word lw = leading(p, s.order()).first;
            ++rep.trials;
            if (lw != concat(concat(a, rule.lead), b)) {
                rep.pass = false;
                rep.failing.push_back(r);
                rep.witnesses.push_back("rule " + std::to_string(r) + ": leading(a.s.b) = " + lw.str() +
                                        " with a = " + a.str() + ", b = " + b.str());
                break;
            }
        }
    }
    return rep;
}

ConditionCheckReport check_condition_II(const RewriteSystem& s, std::size_t samples,
                                        std::size_t max_ctx_len, std::uint64_t seed) {
    ConditionCheckReport rep;
    std::mt19937_64 rng(seed);
    const auto alpha = s.alphabet();
    auto comps = find_compositions(s);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Composition& comp = comps[ci];
        ReductionTrace tr = reduce(comp.value, s);
        if (tr.hit_step_limit || !tr.remainder.is_zero()) {
            rep.pass = false;
            rep.failing.push_back(ci);
            rep.witnesses.push_back(comp.describe(s) + ": nontrivial, remainder " +
                                    tr.remainder.str());
            continue;
        }
        bool failed = false;
        for (const auto& st : tr.steps) {
            Word p = concat(concat(st.left, s.rules()[st.rule].lead), st.right);
            for (std::size_t i = 0; i <= samples && !failed; ++i) {
                Word c = i == 0 ? alpha->empty_word() : random_context(*alpha, rng, max_ctx_len);
                Word d = i == 0 ? alpha->empty_word() : random_context(*alpha, rng, max_ctx_len);
                ++rep.trials;
                if (s.order().compare(concat(concat(c, p), d), concat(concat(c, comp.w), d)) >= 0) {
                    rep.pass = false;
                    rep.failing.push_back(ci);
                    rep.witnesses.push_back(comp.describe(s) + ": presentation word " + p.str() +
                                            " not below w inside c = " + c.str() + ", d = " + d.str());
                    failed = true;
                }
            }
            if (failed) break;
        }
    }
    return rep;
}

} // namespace gsb
