#include "gsb/hnn.hpp"

#include <algorithm>
#include <sstream>

namespace gsb {

namespace {

std::shared_ptr<Alphabet> hnn_base_alphabet(const FiniteGroup& h) {
    auto alpha = Alphabet::create();
    for (int e = 1; e < h.size(); ++e) alpha->add(h.name(e), LetterClass::H);
    alpha->add("t", LetterClass::T);
    alpha->add("t^-1", LetterClass::Tinv);
    return alpha;
}

} // namespace

HnnPresentation hnn_presentation(const HnnSpec& spec) {
    const FiniteGroup& h = *spec.H;
    auto alpha = hnn_base_alphabet(h);
    auto letter_of = [&](int e) { return alpha->id(h.name(e)); };
    LetterId t = alpha->id("t"), tinv = alpha->id("t^-1");

    auto one = alpha->empty_word();
    auto h_word = [&](int e) {
        return e == 0 ? one : alpha->word_from_ids({letter_of(e)});
    };

    std::vector<Polynomial> polys;
    // h h' = [hh']
    for (int x = 1; x < h.size(); ++x)
        for (int y = 1; y < h.size(); ++y) {
            Word lhs = alpha->word_from_ids({letter_of(x), letter_of(y)});
            polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(h_word(h.mul(x, y))));
        }
    // h t = h_C t phi(c_h); identity rewrites (c_h = 1) are dropped
    for (int x = 1; x < h.size(); ++x) {
        auto [hc, ch] = coset_decompose(x, spec.C);
        if (ch == 0) continue;
        Word lhs = concat(h_word(x), alpha->word_from_ids({t}));
        Word rhs = concat(concat(h_word(hc), alpha->word_from_ids({t})), h_word(spec.phi.apply(ch)));
        polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(rhs));
    }
    // h t^-1 = h_D t^-1 phi^-1(d_h)
    for (int x = 1; x < h.size(); ++x) {
        auto [hd, dh] = coset_decompose(x, spec.D);
        if (dh == 0) continue;
        Word lhs = concat(h_word(x), alpha->word_from_ids({tinv}));
        Word rhs = concat(concat(h_word(hd), alpha->word_from_ids({tinv})),
                          h_word(spec.phi.apply_inverse(dh)));
        polys.push_back(Polynomial::monomial(lhs) - Polynomial::monomial(rhs));
    }
    // t^e t^-e = 1
    polys.push_back(Polynomial::monomial(alpha->word_from_ids({t, tinv})) -
                    Polynomial::monomial(one));
    polys.push_back(Polynomial::monomial(alpha->word_from_ids({tinv, t})) -
                    Polynomial::monomial(one));

    HnnOrderData data = make_hnn_order_data(alpha, spec.H, spec.C, spec.D, spec.phi);
    OrderSpec ord = OrderSpec::hnn(alpha, std::move(data));
    return HnnPresentation{alpha, RewriteSystem(std::move(ord), std::move(polys))};
}

HnnExtensionSpec::HnnExtensionSpec(HnnSpec base, std::shared_ptr<const FiniteGroup> a,
                                   std::vector<Automorphism> action_h, Automorphism action_t,
                                   Automorphism action_tinv,
                                   std::vector<std::vector<int>> factor_hh,
                                   std::vector<int> factor_ht, std::vector<int> factor_htinv)
    : base_(std::move(base)), a_(std::move(a)), action_h_(std::move(action_h)),
      action_t_(std::move(action_t)), action_tinv_(std::move(action_tinv)),
      factor_hh_(std::move(factor_hh)), factor_ht_(std::move(factor_ht)),
      factor_htinv_(std::move(factor_htinv)) {
    const FiniteGroup& h = *base_.H;
    const int nh = h.size(), na = a_->size();
    if (static_cast<int>(action_h_.size()) != nh)
        throw input_error("need one automorphism per H element");
    for (int x = 1; x < nh; ++x)
        if (!is_automorphism(*a_, action_h_[x].img))
            throw input_error("H action image is not an automorphism");
    if (!is_automorphism(*a_, action_t_.img) || !is_automorphism(*a_, action_tinv_.img))
        throw input_error("t action image is not an automorphism");
    if (static_cast<int>(factor_hh_.size()) != nh) throw input_error("factor matrix must be |H| x |H|");
    for (const auto& row : factor_hh_)
        if (static_cast<int>(row.size()) != nh) throw input_error("factor matrix must be |H| x |H|");
    if (static_cast<int>(factor_ht_.size()) != nh || static_cast<int>(factor_htinv_.size()) != nh)
        throw input_error("need one (h,t^e) factor per H element");
    for (int x = 1; x < nh; ++x) {
        for (int y = 1; y < nh; ++y) {
            if (factor_hh_[x][y] < 0 || factor_hh_[x][y] >= na)
                throw input_error("factor value out of range");
            if (factor_slot_forced(h, x, y) && factor_hh_[x][y] != 0)
                throw input_error("factor (h,h') must be 1 when h' = h^-1 and h' != h");
        }
        if (factor_ht_[x] < 0 || factor_ht_[x] >= na || factor_htinv_[x] < 0 ||
            factor_htinv_[x] >= na)
            throw input_error("factor value out of range");
    }

    auto alpha = Alphabet::create();
    a_letter_of_element_.assign(na, 0);
    for (int e = 1; e < na; ++e) a_letter_of_element_[e] = alpha->add(a_->name(e), LetterClass::A);
    h_letter_of_element_.assign(nh, 0);
    for (int e = 1; e < nh; ++e) h_letter_of_element_[e] = alpha->add(h.name(e), LetterClass::H);
    t_ = alpha->add("t", LetterClass::T);
    tinv_ = alpha->add("t^-1", LetterClass::Tinv);
    alpha_ = alpha;
    element_of_a_letter_.assign(alpha_->size(), -1);
    for (int e = 1; e < na; ++e) element_of_a_letter_[a_letter_of_element_[e]] = e;
    order_data_ = make_hnn_order_data(alpha_, base_.H, base_.C, base_.D, base_.phi);
}

LetterId HnnExtensionSpec::a_letter(int element) const {
    if (element <= 0 || element >= a_->size()) throw input_error("not a non-identity A element");
    return a_letter_of_element_[element];
}

LetterId HnnExtensionSpec::h_letter(int element) const {
    if (element <= 0 || element >= H().size()) throw input_error("not a non-identity H element");
    return h_letter_of_element_[element];
}

namespace {

Word a_word(const HnnExtensionSpec& e, int elem) {
    return elem == 0 ? e.alphabet()->empty_word() : e.alphabet()->word_from_ids({e.a_letter(elem)});
}

Word h_word(const HnnExtensionSpec& e, int elem) {
    return elem == 0 ? e.alphabet()->empty_word() : e.alphabet()->word_from_ids({e.h_letter(elem)});
}

} // namespace

RewriteSystem build_hnn_extension_system(const HnnExtensionSpec& e) {
    const FiniteGroup& H = e.H();
    const FiniteGroup& A = e.A();
    const auto alpha = e.alphabet();
    Word t = alpha->word_from_ids({e.t_letter()});
    Word ti = alpha->word_from_ids({e.tinv_letter()});

    std::vector<Polynomial> polys;
    auto push = [&](const Word& lhs, const Word& rhs) {
        Polynomial p = Polynomial::monomial(lhs) - Polynomial::monomial(rhs);
        if (!p.is_zero()) polys.push_back(std::move(p));
    };

    // (3.1) a a' = [aa']
    for (int x = 1; x < A.size(); ++x)
        for (int y = 1; y < A.size(); ++y)
            push(concat(a_word(e, x), a_word(e, y)), a_word(e, A.mul(x, y)));
    // (3.2) a y = y a^y for y in H1 u {t, t^-1}
    for (int x = 1; x < A.size(); ++x) {
        for (int hh = 1; hh < H.size(); ++hh)
            push(concat(a_word(e, x), h_word(e, hh)), concat(h_word(e, hh), a_word(e, e.act_h(x, hh))));
        push(concat(a_word(e, x), t), concat(t, a_word(e, e.act_t(x))));
        push(concat(a_word(e, x), ti), concat(ti, a_word(e, e.act_tinv(x))));
    }
    // (3.3) h h' = [hh'] (h,h')
    for (int x = 1; x < H.size(); ++x)
        for (int y = 1; y < H.size(); ++y)
            push(concat(h_word(e, x), h_word(e, y)),
                 concat(h_word(e, H.mul(x, y)), a_word(e, e.f_hh(x, y))));
    // (3.4) h t = h_C t phi(c_h) (h,t)
    for (int x = 1; x < H.size(); ++x) {
        auto [hc, ch] = coset_decompose(x, e.base().C);
        Word rhs = concat(concat(concat(h_word(e, hc), t), h_word(e, e.base().phi.apply(ch))),
                          a_word(e, e.f_ht(x)));
        push(concat(h_word(e, x), t), rhs);
    }
    // (3.5) h t^-1 = h_D t^-1 phi^-1(d_h) (h,t^-1)
    for (int x = 1; x < H.size(); ++x) {
        auto [hd, dh] = coset_decompose(x, e.base().D);
        Word rhs = concat(concat(concat(h_word(e, hd), ti), h_word(e, e.base().phi.apply_inverse(dh))),
                          a_word(e, e.f_htinv(x)));
        push(concat(h_word(e, x), ti), rhs);
    }
    // (3.6) t^e t^-e = 1, never decorated
    push(concat(t, ti), alpha->empty_word());
    push(concat(ti, t), alpha->empty_word());

    return RewriteSystem(OrderSpec::hnn(alpha, e.order_data()), std::move(polys));
}

HConditionReport check_h_conditions(const HnnExtensionSpec& e) {
    HConditionReport rep;
    const FiniteGroup& H = e.H();
    const FiniteGroup& A = e.A();

    auto fail = [&](int idx, const std::string& msg) {
        rep.ok[idx - 1] = false;
        rep.witnesses.push_back("(h" + std::to_string(idx) + ") " + msg);
    };
    auto decC = [&](int x) { return coset_decompose(x, e.base().C); };
    auto decD = [&](int x) { return coset_decompose(x, e.base().D); };

    for (int h = 1; h < H.size(); ++h) {
        for (int hp = 1; hp < H.size(); ++hp) {
            // (h1)
            for (int hpp = 1; hpp < H.size(); ++hpp) {
                int lhs = A.mul(e.f_hh(h, H.mul(hp, hpp)), e.f_hh(hp, hpp));
                int rhs = A.mul(e.f_hh(H.mul(h, hp), hpp), e.act_h(e.f_hh(h, hp), hpp));
                if (lhs != rhs)
                    fail(1, "h=" + H.name(h) + " h'=" + H.name(hp) + " h''=" + H.name(hpp));
            }
            // (h2)
            {
                auto [hpc, chp] = decC(hp);
                int g = H.mul(h, hpc);
                int lhs = A.mul(e.f_ht(H.mul(h, hp)), e.act_t(e.f_hh(h, hp)));
                int rhs = A.mul(e.act_h(e.f_ht(g), e.base().phi.apply(chp)), e.f_ht(hp));
                if (lhs != rhs) fail(2, "h=" + H.name(h) + " h'=" + H.name(hp));
            }
            // (h3)
            {
                auto [hpd, dhp] = decD(hp);
                int g = H.mul(h, hpd);
                int lhs = A.mul(e.f_htinv(H.mul(h, hp)), e.act_tinv(e.f_hh(h, hp)));
                int rhs =
                    A.mul(e.act_h(e.f_htinv(g), e.base().phi.apply_inverse(dhp)), e.f_htinv(hp));
                if (lhs != rhs) fail(3, "h=" + H.name(h) + " h'=" + H.name(hp));
            }
            // (h6)
            for (int a = 0; a < A.size(); ++a) {
                int lhs = A.mul(e.act_h(e.act_h(a, h), hp), e.f_hh(h, hp));
                int rhs = A.mul(e.f_hh(h, hp), e.act_h(a, H.mul(h, hp)));
                if (lhs != rhs)
                    fail(6, "a=" + A.name(a) + " h=" + H.name(h) + " h'=" + H.name(hp));
            }
        }
        // (h4)
        {
            auto [hc, ch] = decC(h);
            (void)hc;
            int lhs = A.mul(e.f_htinv(e.base().phi.apply(ch)), e.act_tinv(e.f_ht(h)));
            if (lhs != 0) fail(4, "h=" + H.name(h) + " gives " + A.name(lhs));
        }
        // (h5)
        {
            auto [hd, dh] = decD(h);
            (void)hd;
            int lhs = A.mul(e.f_ht(e.base().phi.apply_inverse(dh)), e.act_t(e.f_htinv(h)));
            if (lhs != 0) fail(5, "h=" + H.name(h) + " gives " + A.name(lhs));
        }
        // (h7), (h8)
        for (int a = 0; a < A.size(); ++a) {
            {
                auto [hc, ch] = decC(h);
                int x = e.act_h(a, hc);
                x = e.act_t(x);
                x = e.act_h(x, e.base().phi.apply(ch));
                int lhs = A.mul(x, e.f_ht(h));
                int rhs = A.mul(e.f_ht(h), e.act_t(e.act_h(a, h)));
                if (lhs != rhs) fail(7, "a=" + A.name(a) + " h=" + H.name(h));
            }
            {
                auto [hd, dh] = decD(h);
                int x = e.act_h(a, hd);
                x = e.act_tinv(x);
                x = e.act_h(x, e.base().phi.apply_inverse(dh));
                int lhs = A.mul(x, e.f_htinv(h));
                int rhs = A.mul(e.f_htinv(h), e.act_tinv(e.act_h(a, h)));
                if (lhs != rhs) fail(8, "a=" + A.name(a) + " h=" + H.name(h));
            }
        }
    }
    // (h9)
    for (int a = 0; a < A.size(); ++a) {
        if (e.act_tinv(e.act_t(a)) != a) fail(9, "a=" + A.name(a) + " under t t^-1");
        if (e.act_t(e.act_tinv(a)) != a) fail(9, "a=" + A.name(a) + " under t^-1 t");
    }
    return rep;
}

HnnVerdict check_extension_hnn(const HnnExtensionSpec& espec, const HnnSampling& sampling) {
    HnnVerdict v;
    v.h = check_h_conditions(espec);
    RewriteSystem sys = build_hnn_extension_system(espec);
    v.cond_i = check_condition_I(sys, sampling.samples, sampling.max_ctx_len, sampling.seed);
    v.cond_ii = check_condition_II(sys, sampling.samples, sampling.max_ctx_len, sampling.seed);
    v.pass = v.h.all_pass() && v.cond_i.pass && v.cond_ii.pass;
    return v;
}

DirectProductZModel::DirectProductZModel(FiniteGroup fin,
                                         std::map<LetterId, std::pair<int, int>> images)
    : fin_(std::move(fin)), img_(std::move(images)) {}

std::string DirectProductZModel::eval(const Word& w) const {
    int f = 0, n = 0;
    for (LetterId id : w.ids()) {
        auto it = img_.find(id);
        if (it == img_.end()) throw input_error("letter without model image");
        f = fin_.mul(f, it->second.first);
        n += it->second.second;
    }
    return fin_.name(f) + "|t^" + std::to_string(n);
}

FreeProductZModel::FreeProductZModel(std::shared_ptr<const FiniteGroup> h,
                                     std::map<LetterId, std::pair<int, int>> images)
    : h_(std::move(h)), img_(std::move(images)) {}

std::string FreeProductZModel::eval(const Word& w) const {
    // reduced alternating sequence of H-elements and t-powers
    std::vector<std::pair<char, int>> seq;
    auto push_h = [&](int elem) {
        if (!seq.empty() && seq.back().first == 'h') {
            seq.back().second = h_->mul(seq.back().second, elem);
            if (seq.back().second == 0) seq.pop_back();
        } else if (elem != 0) {
            seq.push_back({'h', elem});
        }
    };
    auto push_t = [&](int power) {
        if (!seq.empty() && seq.back().first == 't') {
            seq.back().second += power;
            if (seq.back().second == 0) seq.pop_back();
        } else if (power != 0) {
            seq.push_back({'t', power});
        }
    };
    for (LetterId id : w.ids()) {
        auto it = img_.find(id);
        if (it == img_.end()) throw input_error("letter without model image");
        if (it->second.second == 0) push_h(it->second.first);
        else push_t(it->second.second);
    }
    std::ostringstream os;
    for (const auto& [k, v] : seq)
        os << (k == 'h' ? h_->name(v) : "t^" + std::to_string(v)) << ".";
    std::string s = os.str();
    return s.empty() ? "1" : s;
}

DirectProductZModel make_direct_model(const HnnExtensionSpec& e) {
    FiniteGroup fin = direct_product(e.A(), e.H());
    const int nh = e.H().size();
    std::map<LetterId, std::pair<int, int>> img;
    for (int a = 1; a < e.A().size(); ++a) img[e.a_letter(a)] = {a * nh, 0};
    for (int h = 1; h < nh; ++h) img[e.h_letter(h)] = {h, 0};
    img[e.t_letter()] = {0, 1};
    img[e.tinv_letter()] = {0, -1};
    return DirectProductZModel(std::move(fin), std::move(img));
}

FreeProductZModel make_free_model(const HnnExtensionSpec& e) {
    if (e.A().size() != 1)
        throw input_error("the free-product model needs a trivial coefficient group");
    std::map<LetterId, std::pair<int, int>> img;
    for (int h = 1; h < e.H().size(); ++h) img[e.h_letter(h)] = {h, 0};
    img[e.t_letter()] = {0, 1};
    img[e.tinv_letter()] = {0, -1};
    return FreeProductZModel(e.base().H, std::move(img));
}

NormalFormReport hnn_normal_forms(const HnnExtensionSpec& espec, std::size_t max_len,
                                  const ModelGroup& model) {
    RewriteSystem sys = build_hnn_extension_system(espec);
    NormalFormReport rep;
    rep.words = irr_enumerate(sys, max_len);
    std::map<std::string, const Word*> seen;
    for (const auto& w : rep.words) {
        std::string key = model.eval(w);
        auto [it, fresh] = seen.emplace(key, &w);
        if (!fresh) {
            rep.injective = false;
            rep.collision = it->second->str() + " and " + w.str() + " evaluate to " + key;
            break;
        }
    }
    return rep;
}

} // namespace gsb
