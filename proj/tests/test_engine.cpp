#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gsb/engine.hpp"

using namespace gsb;

namespace {

std::shared_ptr<Alphabet> x_alphabet() {
    auto a = Alphabet::create();
    a->add("x", LetterClass::Y);
    return a;
}

std::shared_ptr<Alphabet> xy_alphabet() {
    auto a = Alphabet::create();
    a->add("x", LetterClass::Y);
    a->add("y", LetterClass::Y);
    return a;
}

Polynomial rel(const std::shared_ptr<Alphabet>& a, const char* lhs, const char* rhs) {
    return Polynomial::monomial(a->word(lhs)) - Polynomial::monomial(a->word(rhs));
}

// S3 as <x, y | x^2 = 1, y^2 = 1, xyx = yxy>, deg-lex x < y
RewriteSystem s3_system() {
    auto a = xy_alphabet();
    return RewriteSystem(OrderSpec::deglex(a),
                         {rel(a, "x x", "1"), rel(a, "y y", "1"), rel(a, "x y x", "y x y")});
}

// the Z4-as-extension system over {a (A-letter), x (Y-letter)} with the
// tower order: a a = 1, x x = a, a x = x a
RewriteSystem z4_extension_system() {
    auto al = Alphabet::create();
    al->add("a", LetterClass::A);
    al->add("x", LetterClass::Y);
    return RewriteSystem(OrderSpec::tower(al),
                         {rel(al, "a a", "1"), rel(al, "x x", "a"), rel(al, "a x", "x a")});
}

// test-side oracle: every w covering both leads, found by brute subword scan
std::set<std::string> overlap_words_oracle(const RewriteSystem& s) {
    std::set<std::string> out;
    for (const auto& ri : s.rules())
        for (const auto& rj : s.rules()) {
            const auto& f = ri.lead;
            const auto& g = rj.lead;
            // all words w of length < deg f + deg g obtained by overlaying g
            // at every shift against f, keeping consistent letters
            for (std::size_t shift = 1; shift + 1 <= f.deg(); ++shift) {
                if (shift + g.deg() <= f.deg()) continue; // inclusion, not overlap
                bool ok = true;
                std::vector<LetterId> w(f.ids());
                for (std::size_t k = 0; k < g.deg(); ++k) {
                    std::size_t p = shift + k;
                    if (p < f.deg()) {
                        if (f[p] != g[k]) { ok = false; break; }
                    } else {
                        w.push_back(g[k]);
                    }
                }
                if (ok) out.insert(s.alphabet()->word_from_ids(std::move(w)).str());
            }
        }
    return out;
}

} // namespace

TEST_CASE("find_compositions: x^3 - 1 self-overlaps at x^4 and x^5") {
    auto a = x_alphabet();
    RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x x", "1")});
    auto comps = find_compositions(s);
    REQUIRE(comps.size() == 2);
    std::set<std::string> ws;
    for (const auto& c : comps) {
        CHECK(c.kind == Composition::Kind::intersection);
        ws.insert(c.w.str());
    }
    CHECK(ws == std::set<std::string>{"x x x x", "x x x x x"});
}

TEST_CASE("find_compositions: the cyclic extension contains (x^2 - a, x^2 - a) at x^3") {
    RewriteSystem s = z4_extension_system();
    auto comps = find_compositions(s);
    bool found = false;
    for (const auto& c : comps)
        if (c.f == 1 && c.g == 1 && c.w.str() == "x x x") found = true;
    CHECK(found);
}

TEST_CASE("find_compositions: yx - xy has no self-overlap") {
    auto a = xy_alphabet();
    RewriteSystem s(OrderSpec::deglex(a), {rel(a, "y x", "x y")});
    CHECK(find_compositions(s).empty());
}

TEST_CASE("find_compositions agrees with a brute-force overlap scan") {
    std::mt19937_64 rng(17);
    auto a = xy_alphabet();
    OrderSpec ord = OrderSpec::deglex(a);
    for (int round = 0; round < 40; ++round) {
        // random small systems with distinct leads of length >= 2
        std::set<std::string> leads;
        std::vector<Polynomial> polys;
        for (int r = 0; r < 3; ++r) {
            std::vector<LetterId> ids(2 + rng() % 2);
            for (auto& id : ids) id = rng() % 2;
            Word w = a->word_from_ids(std::move(ids));
            if (!leads.insert(w.str()).second) continue;
            polys.push_back(Polynomial::monomial(w) - Polynomial::monomial(a->empty_word()));
        }
        RewriteSystem s(ord, polys);
        std::set<std::string> got;
        for (const auto& c : find_compositions(s))
            if (c.kind == Composition::Kind::intersection) got.insert(c.w.str());
        CHECK(got == overlap_words_oracle(s));
    }
}

TEST_CASE("reduce: single rewrite x^3 -> 1") {
    auto a = x_alphabet();
    RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x x", "1")});
    ReductionTrace tr = reduce(Polynomial::monomial(a->word("x x x")), s);
    CHECK(tr.remainder == Polynomial::monomial(a->empty_word()));
    CHECK(tr.steps.size() == 1);
}

TEST_CASE("reduce: a x -> x a in the Z4 extension system") {
    RewriteSystem s = z4_extension_system();
    const auto a = s.alphabet();
    ReductionTrace tr = reduce(Polynomial::monomial(a->word("a x")), s);
    CHECK(tr.remainder == Polynomial::monomial(a->word("x a")));
}

TEST_CASE("reduce: x^4 -> 1 via x^2 = a, a a = 1") {
    RewriteSystem s = z4_extension_system();
    const auto a = s.alphabet();
    ReductionTrace tr = reduce(Polynomial::monomial(a->word("x x x x")), s);
    CHECK(tr.remainder == Polynomial::monomial(a->empty_word()));
}

TEST_CASE("reduction traces replay") {
    RewriteSystem s = s3_system();
    const auto a = s.alphabet();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<LetterId> ids(rng() % 7);
        for (auto& id : ids) id = rng() % 2;
        Polynomial f = Polynomial::monomial(a->word_from_ids(std::move(ids)),
                                            Scalar(1 + static_cast<int>(rng() % 3)));
        ReductionTrace tr = reduce(f, s);
        Polynomial replay = tr.input;
        for (const auto& st : tr.steps)
            replay -= poly_mul_context(st.left, s.rules()[st.rule].poly, st.right) * st.coeff;
        CHECK(replay == tr.remainder);
        // remainder is irreducible
        for (const auto& [w, c] : tr.remainder.terms()) {
            (void)c;
            for (const auto& r : s.rules()) CHECK(!w.contains(r.lead));
        }
    }
}

TEST_CASE("is_trivial on the cyclic-extension compositions") {
    SUBCASE("value already zero") {
        auto a = x_alphabet();
        RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x x", "1")});
        auto comps = find_compositions(s);
        for (const auto& c : comps) CHECK(is_trivial(c, s).trivial);
    }
    SUBCASE("psi = id: trivial") {
        RewriteSystem s = z4_extension_system();
        for (const auto& c : find_compositions(s)) CHECK(is_trivial(c, s).trivial);
    }
    SUBCASE("psi not fixing a0: nontrivial with remainder x(a0 - a0^x)") {
        // A = Z3 = {1, a, a2}, B = <x | x^2>, a0 = a, psi = inversion
        auto al = Alphabet::create();
        al->add("a", LetterClass::A);
        al->add("a2", LetterClass::A);
        al->add("x", LetterClass::Y);
        RewriteSystem s(OrderSpec::tower(al),
                        {rel(al, "a a", "a2"), rel(al, "a a2", "1"), rel(al, "a2 a", "1"),
                         rel(al, "a2 a2", "a"), rel(al, "x x", "a"), rel(al, "a x", "x a2"),
                         rel(al, "a2 x", "x a")});
        auto comps = find_compositions(s);
        bool found_nontrivial = false;
        for (const auto& c : comps) {
            auto [triv, trace] = is_trivial(c, s);
            if (!triv && c.w == al->word("x x x")) {
                found_nontrivial = true;
                CHECK(trace.remainder ==
                      Polynomial::monomial(al->word("x a")) -
                          Polynomial::monomial(al->word("x a2")));
            }
        }
        CHECK(found_nontrivial);
    }
}

TEST_CASE("shirshov_complete leaves complete systems alone") {
    SUBCASE("x^3 - 1") {
        auto a = x_alphabet();
        RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x x", "1")});
        CompletionResult r = shirshov_complete(s);
        CHECK(r.status == CompletionResult::Status::complete);
        CHECK(r.basis.size() == 1);
    }
    SUBCASE("S3") {
        CompletionResult r = shirshov_complete(s3_system());
        CHECK(r.status == CompletionResult::Status::complete);
        CHECK(r.basis.size() == 3);
        auto irr = irr_enumerate(r.basis, 6);
        CHECK(irr.size() == 6);
    }
}

TEST_CASE("completion closes up an incomplete system") {
    // <x, y | yx = xy, y^2 = 1, x^2 = 1> stated without the commuted forms
    auto a = xy_alphabet();
    RewriteSystem s(OrderSpec::deglex(a),
                    {rel(a, "y x", "x y"), rel(a, "y y", "1"), rel(a, "x x", "1")});
    CompletionResult r = shirshov_complete(s);
    CHECK(r.status == CompletionResult::Status::complete);
    CHECK(irr_enumerate(r.basis, 4).size() == 4); // Klein four group
}

TEST_CASE("completion reports limits rather than diverging") {
    auto a = xy_alphabet();
    RewriteSystem s(OrderSpec::deglex(a),
                    {rel(a, "y x", "x y"), rel(a, "y y", "1"), rel(a, "x x", "1")});
    CompletionLimits tight;
    tight.max_steps = 1;
    CompletionResult r = shirshov_complete(s, tight);
    CHECK(r.status == CompletionResult::Status::hit_limit);
    CHECK(!r.limit_reason.empty());
}

TEST_CASE("minimalize") {
    auto a = x_alphabet();
    SUBCASE("x^3 - x is absorbed by x^2 - 1") {
        RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x", "1"), rel(a, "x x x", "x")});
        s.set_status(RewriteSystem::Status::certified_gsb);
        RewriteSystem m = minimalize(s);
        REQUIRE(m.size() == 1);
        CHECK(m.rules()[0].lead == a->word("x x"));
        CHECK(m.minimal());
    }
    SUBCASE("idempotent on minimal systems") {
        RewriteSystem s = s3_system();
        REQUIRE(certify(s).empty());
        RewriteSystem m = minimalize(s);
        CHECK(m.size() == 3);
        RewriteSystem m2 = minimalize(m);
        CHECK(m2.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(m.rules()[i].poly == m2.rules()[i].poly);
    }
    SUBCASE("x^2 y - y reduces away under x^2 - 1") {
        auto b = xy_alphabet();
        RewriteSystem s(OrderSpec::deglex(b), {rel(b, "x x", "1"), rel(b, "x x y", "y")});
        s.set_status(RewriteSystem::Status::certified_gsb);
        RewriteSystem m = minimalize(s);
        REQUIRE(m.size() == 1);
        CHECK(m.rules()[0].lead == b->word("x x"));
    }
}

TEST_CASE("irr_enumerate") {
    SUBCASE("Z4 extension: exactly 1, a, x, x a") {
        RewriteSystem s = z4_extension_system();
        auto irr = irr_enumerate(s, 3);
        REQUIRE(irr.size() == 4);
        CHECK(irr[0].str() == "1");
        CHECK(irr[1].str() == "a");
        CHECK(irr[2].str() == "x");
        CHECK(irr[3].str() == "x a");
    }
    SUBCASE("x^3 = 1 up to length 5") {
        auto a = x_alphabet();
        RewriteSystem s(OrderSpec::deglex(a), {rel(a, "x x x", "1")});
        auto irr = irr_enumerate(s, 5);
        REQUIRE(irr.size() == 3);
        CHECK(irr[2].str() == "x x");
    }
    SUBCASE("empty system excludes nothing") {
        auto a = x_alphabet();
        RewriteSystem s = RewriteSystem::from_rules_unchecked(OrderSpec::deglex(a), {});
        auto irr = irr_enumerate(s, 2);
        CHECK(irr.size() == 3);
    }
}

TEST_CASE("reduction under a monomial order never needs the step guard") {
    RewriteSystem s = s3_system();
    const auto a = s.alphabet();
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        std::vector<LetterId> ids(rng() % 9);
        for (auto& id : ids) id = rng() % 2;
        ReductionTrace tr = reduce(Polynomial::monomial(a->word_from_ids(std::move(ids))), s, 4096);
        CHECK(!tr.hit_step_limit);
    }
}

TEST_CASE("certified bases have strategy-independent normal forms") {
    std::vector<RewriteSystem> bases;
    bases.push_back(s3_system());
    bases.push_back(z4_extension_system());
    std::mt19937_64 rng(31);
    for (auto& s : bases) {
        REQUIRE(certify(s).empty());
        const auto a = s.alphabet();
        for (int i = 0; i < 100; ++i) {
            Polynomial f(a);
            int terms = 1 + static_cast<int>(rng() % 2);
            for (int t = 0; t < terms; ++t) {
                std::vector<LetterId> ids(rng() % 8);
                for (auto& id : ids) id = rng() % a->size();
                f.add_term(a->word_from_ids(std::move(ids)), Scalar(1 + static_cast<int>(rng() % 3)));
            }
            if (f.is_zero()) continue;
            Polynomial nf = reduce(f, s).remainder;
            for (int strat = 0; strat < 10; ++strat) CHECK(reduce_random(f, s, rng) == nf);
        }
    }
}

TEST_CASE("completion is idempotent") {
    CompletionResult r1 = shirshov_complete(s3_system());
    CompletionResult r2 = shirshov_complete(r1.basis);
    REQUIRE(r1.basis.size() == r2.basis.size());
    for (std::size_t i = 0; i < r1.basis.size(); ++i)
        CHECK(r1.basis.rules()[i].poly == r2.basis.rules()[i].poly);
}

TEST_CASE("membership oracle: ideal members reduce to zero with reducible leads") {
    RewriteSystem s = s3_system();
    const auto a = s.alphabet();
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        Polynomial f(a);
        int parts = 1 + rng() % 3;
        for (int p = 0; p < parts; ++p) {
            std::vector<LetterId> lids(rng() % 3), rids(rng() % 3);
            for (auto& id : lids) id = rng() % 2;
            for (auto& id : rids) id = rng() % 2;
            const Polynomial& rule = s.rules()[rng() % s.size()].poly;
            f += poly_mul_context(a->word_from_ids(std::move(lids)), rule,
                                  a->word_from_ids(std::move(rids))) *
                 Scalar(1 + static_cast<int>(rng() % 3));
        }
        if (f.is_zero()) continue;
        CHECK(reduce(f, s).remainder.is_zero());
        Word lw = leading(f, s.order()).first;
        bool covered = false;
        for (const auto& r : s.rules())
            if (lw.contains(r.lead)) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("condition (I): monomial systems pass, corrupted leads are caught") {
    RewriteSystem s = s3_system();
    CHECK(check_condition_I(s, 50, 3).pass);

    // deliberately cache the wrong leading word (the true lead is y x y)
    auto a = s.alphabet();
    std::vector<Rule> bad;
    Polynomial p = Polynomial::monomial(a->word("x y x")) - Polynomial::monomial(a->word("y x y"));
    bad.push_back(Rule{p, a->word("x y x")});
    RewriteSystem corrupted = RewriteSystem::from_rules_unchecked(s.order(), std::move(bad));
    ConditionCheckReport rep = check_condition_I(corrupted, 10, 2);
    CHECK(!rep.pass);
    CHECK(!rep.witnesses.empty());
}

TEST_CASE("condition (II) passes for certified monomial systems") {
    RewriteSystem s = s3_system();
    ConditionCheckReport rep = check_condition_II(s, 30, 3);
    CHECK(rep.pass);
}

TEST_CASE("the step guard flags non-terminating reduction setups") {
    // a rule whose cached lead is the smaller side loops; only the guard stops it
    auto a = x_alphabet();
    OrderSpec ord = OrderSpec::deglex(a);
    Polynomial p = Polynomial::monomial(a->word("x")) - Polynomial::monomial(a->word("x x"));
    RewriteSystem s = RewriteSystem::from_rules_unchecked(ord, {Rule{p, a->word("x")}});
    ReductionTrace tr = reduce(Polynomial::monomial(a->word("x")), s, 50);
    CHECK(tr.hit_step_limit);

    Composition c{Composition::Kind::inclusion, 0, 0, a->word("x"), a->empty_word(),
                  a->empty_word(), Polynomial::monomial(a->word("x"))};
    CHECK_THROWS_AS(is_trivial(c, s, 50), limit_error);
}

TEST_CASE("the free-abelian relations complete to themselves") {
    auto alpha = Alphabet::create();
    for (int i = 1; i <= 3; ++i) {
        alpha->add("x" + std::to_string(i) + "^-1", LetterClass::Y);
        alpha->add("x" + std::to_string(i), LetterClass::Y);
    }
    auto name = [&](int i, int s) { return "x" + std::to_string(i) + (s > 0 ? "" : "^-1"); };
    std::vector<Polynomial> polys;
    auto word2 = [&](const std::string& u, const std::string& v) {
        return alpha->word({u.c_str(), v.c_str()});
    };
    for (int p = 3; p >= 1; --p)
        for (int q = 1; q < p; ++q)
            for (int e : {+1, -1})
                for (int d : {+1, -1})
                    polys.push_back(Polynomial::monomial(word2(name(p, e), name(q, d))) -
                                    Polynomial::monomial(word2(name(q, d), name(p, e))));
    for (int q = 1; q <= 3; ++q)
        for (int e : {+1, -1})
            polys.push_back(Polynomial::monomial(word2(name(q, e), name(q, -e))) -
                            Polynomial::monomial(alpha->empty_word()));
    RewriteSystem s(OrderSpec::deglex(alpha), std::move(polys));
    std::size_t before = s.size();
    CompletionResult r = shirshov_complete(s);
    CHECK(r.status == CompletionResult::Status::complete);
    CHECK(r.basis.size() == before);
}
