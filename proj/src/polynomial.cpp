#include "gsb/polynomial.hpp"

namespace gsb {

Polynomial Polynomial::monomial(const Word& w, const Scalar& c) {
    Polynomial f(w.alphabet());
    f.add_term(w, c);
    return f;
}

Scalar Polynomial::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Word& w, const Scalar& c) {
    if (c == 0) return;
    if (!alpha_) alpha_ = w.alphabet();
    else if (w.alphabet() && w.alphabet() != alpha_) throw input_error("alphabet mismatch");
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
    if (alpha_ && g.alpha_ && alpha_ != g.alpha_) throw input_error("alphabet mismatch");
    if (!alpha_) alpha_ = g.alpha_;
    for (const auto& [w, c] : g.terms_) add_term(w, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
    if (alpha_ && g.alpha_ && alpha_ != g.alpha_) throw input_error("alphabet mismatch");
    if (!alpha_) alpha_ = g.alpha_;
    for (const auto& [w, c] : g.terms_) add_term(w, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [w, k] : terms_) k *= c;
    return *this;
}

Polynomial operator+(Polynomial f, const Polynomial& g) { f += g; return f; }
Polynomial operator-(Polynomial f, const Polynomial& g) { f -= g; return f; }
Polynomial operator*(Polynomial f, const Scalar& c) { f *= c; return f; }

Polynomial poly_mul_context(const Word& a, const Polynomial& s, const Word& b) {
    Polynomial out(s.alphabet());
    for (const auto& [w, c] : s.terms())
        out.add_term(concat(concat(a, w), b), c);
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Scalar& c = it->second;
        if (out.empty()) {
            if (c == -1) out += "- ";
            else if (c != 1) out += to_string(c) + " ";
        } else {
            out += c > 0 ? " + " : " - ";
            Scalar ab = abs(c);
            if (ab != 1) out += to_string(ab) + " ";
        }
        out += it->first.str();
    }
    return out;
}

} // namespace gsb
