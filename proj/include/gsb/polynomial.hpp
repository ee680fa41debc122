#ifndef GSB_POLYNOMIAL_HPP
#define GSB_POLYNOMIAL_HPP

#include <map>
#include <memory>
#include <string>

#include "gsb/alphabet.hpp"
#include "gsb/scalar.hpp"

namespace gsb {

/// An element of the free associative algebra k<X>: a finite formal sum of
/// words with exact rational coefficients. Zero coefficients are never
/// stored. Terms are kept in a canonical storage order so iteration is
/// deterministic; which term is "leading" is decided separately by an
/// OrderSpec (see order.hpp).
class Polynomial {
public:
    using TermMap = std::map<Word, Scalar, WordCanonicalLess>;

    Polynomial() = default;
    explicit Polynomial(std::shared_ptr<const Alphabet> alpha) : alpha_(std::move(alpha)) {}

    static Polynomial monomial(const Word& w, const Scalar& c = 1);
    static Polynomial zero(std::shared_ptr<const Alphabet> alpha) { return Polynomial(std::move(alpha)); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    const std::shared_ptr<const Alphabet>& alphabet() const { return alpha_; }

    Scalar coeff(const Word& w) const;
    void add_term(const Word& w, const Scalar& c); // purges the term if it cancels to 0

    Polynomial& operator+=(const Polynomial& g);
    Polynomial& operator-=(const Polynomial& g);
    Polynomial& operator*=(const Scalar& c);

    std::string str() const; // deterministic, descending storage order

    bool operator==(const Polynomial& g) const { return terms_ == g.terms_; }
    bool operator!=(const Polynomial& g) const { return !(*this == g); }

private:
    std::shared_ptr<const Alphabet> alpha_;
    TermMap terms_;
};

Polynomial operator+(Polynomial f, const Polynomial& g);
Polynomial operator-(Polynomial f, const Polynomial& g);
Polynomial operator*(Polynomial f, const Scalar& c);

inline Polynomial poly_add(const Polynomial& f, const Polynomial& g) { return f + g; }

/// a * s * b: every term word w of s becomes a.w.b, coefficients unchanged.
Polynomial poly_mul_context(const Word& a, const Polynomial& s, const Word& b);

} // namespace gsb

#endif
