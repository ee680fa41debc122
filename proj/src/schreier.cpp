#include "gsb/schreier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gsb {

RewriteSystem presentation_system(const BPresentation& b) {
    std::vector<Polynomial> polys;
    for (const auto& r : b.relations)
        polys.push_back(Polynomial::monomial(r.lhs) - Polynomial::monomial(r.rhs));
    return RewriteSystem(b.order, std::move(polys));
}

void validate_minimal_gsb(const BPresentation& b) {
    for (const auto& r : b.relations)
        if (b.order.compare(r.lhs, r.rhs) <= 0)
            throw input_error("relation not oriented: " + r.lhs.str() + " -> " + r.rhs.str());
    for (std::size_t i = 0; i < b.relations.size(); ++i)
        for (std::size_t j = 0; j < b.relations.size(); ++j) {
            if (i == j) continue;
            if (b.relations[i].lhs.contains(b.relations[j].lhs))
                throw input_error("presentation is not minimal: leading word '" +
                                  b.relations[j].lhs.str() + "' occurs inside '" +
                                  b.relations[i].lhs.str() + "'");
        }
    RewriteSystem sys = presentation_system(b);
    if (!certify(sys).empty())
        throw input_error("presentation relations are not a Groebner-Shirshov basis");
}

bool factor_forced(const Relation& r) {
    return r.lhs.deg() == 2 && r.rhs.empty() && r.lhs[0] != r.lhs[1];
}

BPresentation table_presentation(const FiniteGroup& b) {
    auto alpha = Alphabet::create();
    for (int i = 1; i < b.size(); ++i) alpha->add(b.name(i), LetterClass::Y);
    std::vector<Relation> rels;
    for (int i = 1; i < b.size(); ++i)
        for (int j = 1; j < b.size(); ++j) {
            Word lhs = alpha->word_from_ids({static_cast<LetterId>(i - 1), static_cast<LetterId>(j - 1)});
            int p = b.mul(i, j);
            Word rhs = p == 0 ? alpha->empty_word()
                              : alpha->word_from_ids({static_cast<LetterId>(p - 1)});
            rels.push_back({std::move(lhs), std::move(rhs)});
        }
    OrderSpec ord = OrderSpec::deglex(alpha);
    return BPresentation{alpha, std::move(rels), std::move(ord)};
}

ExtensionSpec::ExtensionSpec(std::shared_ptr<const FiniteGroup> a, BPresentation b,
                             std::vector<Automorphism> action, std::vector<int> factor)
    : a_(std::move(a)), b_(std::move(b)), action_(std::move(action)), factor_(std::move(factor)) {
    validate_minimal_gsb(b_);
    if (action_.size() != b_.alphabet->size())
        throw input_error("need one automorphism per generator of B");
    for (const auto& psi : action_)
        if (!is_automorphism(*a_, psi.img)) throw input_error("action image is not an automorphism");
    if (factor_.size() != b_.relations.size())
        throw input_error("need one factor value per relation");
    for (std::size_t r = 0; r < factor_.size(); ++r) {
        if (factor_[r] < 0 || factor_[r] >= a_->size()) throw input_error("factor value out of range");
        if (factor_forced(b_.relations[r]) && factor_[r] != 0)
            throw input_error("factor value on an inverse relation must be 1: " +
                              b_.relations[r].lhs.str());
    }

    auto alpha = Alphabet::create();
    a_letter_of_element_.assign(a_->size(), 0);
    for (int e = 1; e < a_->size(); ++e)
        a_letter_of_element_[e] = alpha->add(a_->name(e), LetterClass::A);
    ext_letter_of_y_.clear();
    for (LetterId y = 0; y < b_.alphabet->size(); ++y)
        ext_letter_of_y_.push_back(alpha->add(b_.alphabet->letter(y).name, LetterClass::Y));
    ext_alpha_ = alpha;
    element_of_letter_.assign(ext_alpha_->size(), -1);
    for (int e = 1; e < a_->size(); ++e) element_of_letter_[a_letter_of_element_[e]] = e;
    y_of_ext_letter_.assign(ext_alpha_->size(), -1);
    for (LetterId y = 0; y < ext_letter_of_y_.size(); ++y)
        y_of_ext_letter_[ext_letter_of_y_[y]] = static_cast<int>(y);
}

LetterId ExtensionSpec::a_letter(int element) const {
    if (element <= 0 || element >= a_->size()) throw input_error("not a non-identity element");
    return a_letter_of_element_[element];
}

int ExtensionSpec::element_of_letter(LetterId id) const { return element_of_letter_.at(id); }
LetterId ExtensionSpec::ext_of_y(LetterId y) const { return ext_letter_of_y_.at(y); }
int ExtensionSpec::y_of_ext(LetterId id) const { return y_of_ext_letter_.at(id); }

int ExtensionSpec::action_on_word(int a, const Word& u) const {
    int cur = a;
    const bool combined = u.alphabet() == ext_alpha_;
    for (LetterId id : u.ids()) {
        int y;
        if (combined) {
            y = y_of_ext(id);
            if (y < 0) throw input_error("action superscript contains a non-Y letter");
        } else {
            y = static_cast<int>(id);
        }
        cur = action_[y].apply(cur);
    }
    return cur;
}

namespace {

// word in the combined alphabet for an A element (empty for the identity)
Word a_word(const ExtensionSpec& spec, int element) {
    if (element == 0) return spec.ext_alphabet()->empty_word();
    return spec.ext_alphabet()->word_from_ids({spec.a_letter(element)});
}

Word lift_y_word(const ExtensionSpec& spec, const Word& u) {
    std::vector<LetterId> ids;
    for (LetterId id : u.ids()) ids.push_back(spec.ext_of_y(id));
    return spec.ext_alphabet()->word_from_ids(std::move(ids));
}

} // namespace

RewriteSystem build_extension_system(const ExtensionSpec& spec) {
    const FiniteGroup& A = spec.A();
    std::vector<Polynomial> polys;
    const auto alpha = spec.ext_alphabet();

    // a a' = [aa']
    for (int x = 1; x < A.size(); ++x)
        for (int y = 1; y < A.size(); ++y) {
            Word lhs = alpha->word_from_ids({spec.a_letter(x), spec.a_letter(y)});
            polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(a_word(spec, A.mul(x, y))));
        }
    // v = h_v (v)
    for (std::size_t r = 0; r < spec.B().relations.size(); ++r) {
        const Relation& rel = spec.B().relations[r];
        Word lhs = lift_y_word(spec, rel.lhs);
        Word rhs = concat(lift_y_word(spec, rel.rhs), a_word(spec, spec.factor()[r]));
        polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(rhs));
    }
    // a y = y a^y
    for (int x = 1; x < A.size(); ++x)
        for (LetterId y = 0; y < spec.B().alphabet->size(); ++y) {
            Word lhs = alpha->word_from_ids({spec.a_letter(x), spec.ext_of_y(y)});
            int img = spec.action()[y].apply(x);
            Word rhs = concat(alpha->word_from_ids({spec.ext_of_y(y)}), a_word(spec, img));
            polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(rhs));
        }

    return RewriteSystem(OrderSpec::tower(alpha), std::move(polys));
}

ActionConditionTable check_action_condition(const ExtensionSpec& spec) {
    ActionConditionTable out;
    const FiniteGroup& A = spec.A();
    for (std::size_t r = 0; r < spec.B().relations.size(); ++r) {
        const Relation& rel = spec.B().relations[r];
        for (int a = 0; a < A.size(); ++a) {
            int lhs = A.mul(spec.factor()[r], spec.action_on_word(a, rel.lhs));
            int rhs = A.mul(spec.action_on_word(a, rel.rhs), spec.factor()[r]);
            bool ok = lhs == rhs;
            out.entries.push_back({static_cast<int>(r), a, lhs, rhs, ok});
            if (!ok) out.pass = false;
        }
    }
    return out;
}

namespace {

// When a nonzero remainder splits as z xi - z zeta with a common Y-prefix z
// and A-letter tails, render the concrete xi vs zeta pair.
std::string extract_xi_zeta(const ExtensionSpec& spec, const Polynomial& rem) {
    if (rem.term_count() != 2) return "";
    std::vector<std::pair<Word, Word>> parts; // (y-prefix, a-tail)
    for (const auto& [w, c] : rem.terms()) {
        (void)c;
        std::size_t cut = w.deg();
        while (cut > 0 && spec.element_of_letter(w[cut - 1]) >= 0) --cut;
        parts.emplace_back(w.prefix(cut), w.suffix(w.deg() - cut));
    }
    if (parts[0].first != parts[1].first) return "";
    return "factor condition: " + parts[0].second.str() + " vs " + parts[1].second.str() +
           " after " + parts[0].first.str();
}

} // namespace

ConditionReport check_extension(const ExtensionSpec& spec) {
    ConditionReport rep;
    rep.action = check_action_condition(spec);
    if (!rep.action.pass) {
        for (const auto& e : rep.action.entries)
            if (!e.ok && rep.first_witness.empty()) {
                const Relation& rel = spec.B().relations[e.relation];
                rep.first_witness = "action condition fails at relation " + rel.lhs.str() +
                                    " with a = " + spec.A().name(e.a) + ": " + spec.A().name(e.lhs) +
                                    " != " + spec.A().name(e.rhs);
            }
    }

    RewriteSystem sys = build_extension_system(spec);
    auto comps = find_compositions(sys);
    bool comp_pass = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto [trivial, trace] = is_trivial(comps[i], sys);
        CompositionEntry e{i, comps[i].w.str(), trivial, "", ""};
        if (!trivial) {
            comp_pass = false;
            e.remainder = trace.remainder.str();
            e.xi_zeta = extract_xi_zeta(spec, trace.remainder);
            if (rep.first_witness.empty())
                rep.first_witness = "composition at w = " + comps[i].w.str() + " is nontrivial: " +
                                    (e.xi_zeta.empty() ? e.remainder : e.xi_zeta);
        }
        rep.compositions.push_back(std::move(e));
    }
    rep.pass = rep.action.pass && comp_pass;
    return rep;
}

ExtensionGroupResult extension_group(const ExtensionSpec& spec, std::size_t guard) {
    RewriteSystem bsys = presentation_system(spec.B());
    // Irr(R) in full: grow by length until a level is empty
    std::vector<Word> irr{spec.B().alphabet->empty_word()};
    for (std::size_t len = 1;; ++len) {
        auto upto = irr_enumerate(bsys, len);
        if (upto.size() == irr.size()) break; // no word of this length
        irr = std::move(upto);
        if (irr.size() > guard) throw limit_error("B is too large (Irr(R) guard exceeded)");
    }

    const int na = spec.A().size();
    const int nb = static_cast<int>(irr.size());
    if (nb * na > 64)
        throw limit_error("extension group too large for exhaustive validation");

    RewriteSystem ext = build_extension_system(spec);
    std::map<std::vector<LetterId>, int> b_index;
    for (int i = 0; i < nb; ++i) b_index[lift_y_word(spec, irr[i]).ids()] = i;

    auto normal_form = [&](const Word& w) {
        ReductionTrace tr = reduce(Polynomial::monomial(w), ext);
        if (tr.remainder.term_count() != 1 || tr.remainder.terms().begin()->second != 1)
            throw input_error("extension system did not reduce a word to a single normal form");
        return tr.remainder.terms().begin()->first;
    };

    auto parse_nf = [&](const Word& w) {
        std::size_t cut = w.deg();
        while (cut > 0 && spec.element_of_letter(w[cut - 1]) >= 0) --cut;
        if (w.deg() - cut > 1) throw input_error("normal form with more than one A letter");
        int a = w.deg() == cut ? 0 : spec.element_of_letter(w[cut]);
        auto it = b_index.find(w.prefix(cut).ids());
        if (it == b_index.end()) throw input_error("normal form outside Irr(R) x A");
        return std::pair<int, int>(it->second, a);
    };

    std::vector<std::string> names(nb * na);
    for (int b = 0; b < nb; ++b)
        for (int a = 0; a < na; ++a) {
            Word w = concat(lift_y_word(spec, irr[b]), a_word(spec, a));
            names[b * na + a] = w.empty() ? "1" : w.str();
        }

    std::vector<std::vector<int>> table(nb * na, std::vector<int>(nb * na));
    for (int i = 0; i < nb * na; ++i)
        for (int j = 0; j < nb * na; ++j) {
            Word wi = concat(lift_y_word(spec, irr[i / na]), a_word(spec, i % na));
            Word wj = concat(lift_y_word(spec, irr[j / na]), a_word(spec, j % na));
            auto [b, a] = parse_nf(normal_form(concat(wi, wj)));
            table[i][j] = b * na + a;
        }

    return ExtensionGroupResult{FiniteGroup(std::move(names), std::move(table)), irr, na};
}

bool a_copy_is_normal(const ExtensionGroupResult& g) {
    const FiniteGroup& G = g.group;
    std::set<int> acopy;
    for (int a = 0; a < g.a_size; ++a) acopy.insert(g.element(0, a));
    for (int x = 0; x < G.size(); ++x)
        for (int s : acopy)
            if (!acopy.count(G.mul(G.mul(x, s), G.inv(x)))) return false;
    return true;
}

FiniteGroup quotient_by_a(const ExtensionGroupResult& g) {
    const int nb = static_cast<int>(g.b_words.size());
    std::vector<std::string> names;
    for (int b = 0; b < nb; ++b) names.push_back(g.b_words[b].empty() ? "1" : g.b_words[b].str());
    std::vector<std::vector<int>> table(nb, std::vector<int>(nb));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            table[i][j] = g.b_part(g.group.mul(g.element(i, 0), g.element(j, 0)));
    return FiniteGroup(std::move(names), std::move(table));
}

// --- symbolic derivation ---

namespace {

struct SymToken {
    bool is_factor;
    LetterId y = 0;               // when !is_factor
    std::size_t rel = 0;          // when is_factor
    std::vector<LetterId> sup;    // accumulated superscript word over Y
    bool operator==(const SymToken&) const = default;
};
using SymWord = std::vector<SymToken>;

SymWord sym_of_word(const Word& w) {
    SymWord out;
    for (LetterId id : w.ids()) out.push_back(SymToken{false, id, 0, {}});
    return out;
}

// leftmost reduction mirroring the extension system: relation rewrites on
// Y-letter spans, factor letters commute right while collecting superscripts
bool sym_step(SymWord& w, const BPresentation& b, const std::vector<bool>& has_factor) {
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (!w[p].is_factor) {
            for (std::size_t r = 0; r < b.relations.size(); ++r) {
                const Word& lhs = b.relations[r].lhs;
                if (p + lhs.deg() > w.size()) continue;
                bool hit = true;
                for (std::size_t k = 0; k < lhs.deg(); ++k)
                    if (w[p + k].is_factor || w[p + k].y != lhs[k]) { hit = false; break; }
                if (!hit) continue;
                SymWord repl;
                for (LetterId id : b.relations[r].rhs.ids()) repl.push_back(SymToken{false, id, 0, {}});
                if (has_factor[r]) repl.push_back(SymToken{true, 0, r, {}});
                w.erase(w.begin() + p, w.begin() + p + lhs.deg());
                w.insert(w.begin() + p, repl.begin(), repl.end());
                return true;
            }
        } else if (p + 1 < w.size() && !w[p + 1].is_factor) {
            SymToken f = w[p];
            f.sup.push_back(w[p + 1].y);
            w[p] = w[p + 1];
            w[p + 1] = std::move(f);
            return true;
        }
    }
    return false;
}

// plain word rewriting by R, used to put superscripts into R-normal form
std::vector<LetterId> y_normal_form(std::vector<LetterId> w, const BPresentation& b, bool* changed) {
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t p = 0; p < w.size() && !again; ++p)
            for (const auto& rel : b.relations) {
                if (p + rel.lhs.deg() > w.size()) continue;
                bool hit = true;
                for (std::size_t k = 0; k < rel.lhs.deg(); ++k)
                    if (w[p + k] != rel.lhs[k]) { hit = false; break; }
                if (!hit) continue;
                std::vector<LetterId> nw(w.begin(), w.begin() + p);
                nw.insert(nw.end(), rel.rhs.ids().begin(), rel.rhs.ids().end());
                nw.insert(nw.end(), w.begin() + p + rel.lhs.deg(), w.end());
                w = std::move(nw);
                if (changed) *changed = true;
                again = true;
                break;
            }
    }
    return w;
}

std::string render_y_word(const BPresentation& b, const std::vector<LetterId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ' ';
        out += b.alphabet->letter(ids[i]).name;
    }
    return out;
}

std::string render_sup(const BPresentation& b, const std::vector<LetterId>& sup) {
    if (sup.empty()) return "";
    if (sup.size() == 1) return "^" + render_y_word(b, sup);
    return "^{" + render_y_word(b, sup) + "}";
}

std::vector<FactorToken> tokens_of(const BPresentation& b, const SymWord& factors,
                                   bool* sup_reduced) {
    std::vector<FactorToken> out;
    for (const auto& f : factors) {
        auto sup = y_normal_form(f.sup, b, sup_reduced);
        out.push_back({f.rel, b.alphabet->word_from_ids(std::move(sup))});
    }
    return out;
}

std::string render_factor_side(const BPresentation& b, const std::vector<FactorToken>& factors) {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ' ';
        out += "(" + b.relations[factors[i].relation].lhs.str() + ")" +
               render_sup(b, factors[i].sup.ids());
    }
    return out;
}

std::string canonical_equation(std::string l, std::string r) {
    if (r < l) std::swap(l, r);
    return l + " = " + r;
}

} // namespace

std::vector<std::string> DerivedConditions::all_canonical() const {
    std::vector<std::string> out;
    for (const auto& e : equations) out.push_back(e.canonical);
    out.insert(out.end(), action_equations.begin(), action_equations.end());
    std::sort(out.begin(), out.end());
    return out;
}

DerivedConditions derive_conditions(const BPresentation& b) {
    validate_minimal_gsb(b);
    DerivedConditions out;
    out.note = "leftmost reduction; superscripts in R-normal form";

    std::vector<bool> has_factor;
    for (const auto& r : b.relations) has_factor.push_back(!factor_forced(r));

    bool sup_reduced = false;
    RewriteSystem sys = presentation_system(b);
    auto comps = find_compositions(sys);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Composition& c = comps[ci];
        // positive monomial d h_{v2} (v2) with d = c.a; negative h_{v1} (v1) c.b
        SymWord pos = sym_of_word(concat(c.a, b.relations[c.g].rhs));
        if (has_factor[c.g]) pos.push_back(SymToken{true, 0, c.g, {}});
        SymWord neg = sym_of_word(b.relations[c.f].rhs);
        if (has_factor[c.f]) neg.push_back(SymToken{true, 0, c.f, {}});
        for (LetterId id : c.b.ids()) neg.push_back(SymToken{false, id, 0, {}});

        std::size_t fuel = 100000;
        while (sym_step(pos, b, has_factor) && --fuel) {}
        while (sym_step(neg, b, has_factor) && --fuel) {}
        if (!fuel) throw limit_error("symbolic reduction did not terminate");

        auto split = [&](const SymWord& w, std::vector<LetterId>& z, SymWord& fs) {
            for (const auto& tok : w) {
                if (tok.is_factor) fs.push_back(tok);
                else if (fs.empty()) z.push_back(tok.y);
                else return false; // a Y letter after a factor: shape failure
            }
            return true;
        };
        std::vector<LetterId> zp, zn;
        SymWord fp, fn;
        if (!split(pos, zp, fp) || !split(neg, zn, fn) || zp != zn) {
            out.shape_ok = false;
            out.note += "; composition at w = " + c.w.str() + " did not reach the z(xi - zeta) shape";
            continue;
        }
        auto xi_tok = tokens_of(b, fp, &sup_reduced);
        auto zeta_tok = tokens_of(b, fn, &sup_reduced);
        std::string xi = render_factor_side(b, xi_tok);
        std::string zeta = render_factor_side(b, zeta_tok);
        if (xi == zeta) continue; // identically satisfied
        out.equations.push_back({ci, c.w.str(), xi, zeta, canonical_equation(xi, zeta),
                                 std::move(xi_tok), std::move(zeta_tok)});
    }

    // the (v) a^v = a^{h_v} (v) family, verbatim
    for (std::size_t r = 0; r < b.relations.size(); ++r) {
        const Relation& rel = b.relations[r];
        auto a_pow = [&](const Word& w) {
            if (w.empty()) return std::string("a");
            std::vector<LetterId> ids = w.ids();
            return "a" + render_sup(b, ids);
        };
        std::string fac = "(" + rel.lhs.str() + ")";
        std::string lhs, rhs;
        if (has_factor[r]) {
            lhs = fac + " " + a_pow(rel.lhs);
            rhs = a_pow(rel.rhs) + " " + fac;
        } else {
            lhs = a_pow(rel.lhs);
            rhs = a_pow(rel.rhs);
        }
        out.action_equations.push_back(canonical_equation(lhs, rhs));
    }
    if (sup_reduced) out.note += "; some superscripts were reducible and were normalized";
    return out;
}

bool specialize_conditions(const DerivedConditions& dc, const ExtensionSpec& spec) {
    const FiniteGroup& A = spec.A();
    auto eval_side = [&](const std::vector<FactorToken>& toks) {
        int v = 0;
        for (const auto& t : toks)
            v = A.mul(v, spec.action_on_word(spec.factor()[t.relation], t.sup));
        return v;
    };
    for (const auto& eq : dc.equations)
        if (eval_side(eq.xi_tokens) != eval_side(eq.zeta_tokens)) return false;
    return check_action_condition(spec).pass;
}

std::vector<EnumeratedExtension> enumerate_extensions(std::shared_ptr<const FiniteGroup> a,
                                                      const BPresentation& b,
                                                      unsigned long long guard,
                                                      bool with_fingerprints) {
    validate_minimal_gsb(b);
    const auto auts = automorphism_group(*a);
    const std::size_t ny = b.alphabet->size();

    std::vector<std::size_t> free_rel;
    for (std::size_t r = 0; r < b.relations.size(); ++r)
        if (!factor_forced(b.relations[r])) free_rel.push_back(r);

    {
        long double space = 1;
        for (std::size_t i = 0; i < ny; ++i) space *= auts.size();
        for (std::size_t i = 0; i < free_rel.size(); ++i) space *= a->size();
        if (space > static_cast<long double>(guard))
            throw limit_error("extension enumeration space exceeds guard");
    }

    std::vector<std::size_t> act_idx(ny, 0);
    std::vector<int> val(free_rel.size(), 0);
    std::vector<EnumeratedExtension> out;

    while (true) {
        std::vector<Automorphism> action;
        for (std::size_t y = 0; y < ny; ++y) action.push_back(auts[act_idx[y]]);
        std::vector<int> factor(b.relations.size(), 0);
        for (std::size_t i = 0; i < free_rel.size(); ++i) factor[free_rel[i]] = val[i];

        ExtensionSpec spec(a, b, action, factor);
        if (check_extension(spec).pass) {
            EnumeratedExtension e;
            for (const auto& psi : action) e.params.action.push_back(psi.img);
            e.params.factors = factor;
            if (with_fingerprints) e.fp = fingerprint(extension_group(spec).group);
            out.push_back(std::move(e));
        }

        std::size_t k = 0;
        for (; k < val.size(); ++k) {
            if (++val[k] < a->size()) break;
            val[k] = 0;
        }
        if (k < val.size()) continue;
        std::size_t j = 0;
        for (; j < ny; ++j) {
            if (++act_idx[j] < auts.size()) break;
            act_idx[j] = 0;
        }
        if (j == ny) break;
    }
    std::sort(out.begin(), out.end(),
              [](const EnumeratedExtension& x, const EnumeratedExtension& y) {
                  return x.params < y.params;
              });
    return out;
}

} // namespace gsb
