#ifndef GSB_ORDER_HPP
#define GSB_ORDER_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsb/alphabet.hpp"
#include "gsb/group.hpp"
#include "gsb/polynomial.hpp"

namespace gsb {

/// Decomposition of a word over an A/Y alphabet as e_1 y_1 ... e_t y_t e_{t+1}
/// with e_l in A1* and y_l in Y. Reassembling reproduces the word.
struct TowerWeight {
    std::size_t t = 0;
    std::vector<LetterId> ys;                 // y_1 .. y_t
    std::vector<std::vector<LetterId>> es;    // e_1 .. e_{t+1}
};

TowerWeight tower_weight(const Word& w);

/// Everything the three-step HNN order needs about H: the subgroups C and D
/// with their transversals (the I/J rankings are the rep list orders), the
/// absolute ranking of H (identity strictly minimal), and which letters
/// stand for which elements.
struct HnnOrderData {
    std::shared_ptr<const FiniteGroup> H;
    SubgroupWithCosets C;
    SubgroupWithCosets D;
    PartialIso phi;
    std::vector<int> abs_rank;          // per H element; abs_rank[identity] minimal
    std::vector<int> element_of_letter; // per letter id: H element, or -1
    LetterId t = 0;
    LetterId tinv = 0;
};

/// Builds the letter <-> element tables from an alphabet whose H-class letter
/// names match H's element names and which carries exactly one T and one
/// Tinv letter. The absolute ranking defaults to element declaration order.
HnnOrderData make_hnn_order_data(const std::shared_ptr<const Alphabet>& alpha,
                                 std::shared_ptr<const FiniteGroup> h,
                                 SubgroupWithCosets c, SubgroupWithCosets d, PartialIso phi);

/// One (A1 u H1)* block of an HNN-weight: e_1 h_1 ... e_n h_n e_{n+1}.
struct HnnSegment {
    std::size_t n = 0;
    std::vector<LetterId> hs;
    std::vector<std::vector<LetterId>> es; // n+1 blocks
};

/// The t-splitting u = u_1 t^{e_1} ... u_k t^{e_k} u_{k+1} with per-segment
/// weights. Segment i is compared by the C-order when eps_i = +1, the
/// D-order when eps_i = -1, and the final segment by the absolute order.
struct HnnWeight {
    std::size_t k = 0;
    std::vector<int> eps;            // +1 for t, -1 for t^-1
    std::vector<HnnSegment> segments; // k+1
};

HnnWeight hnn_weight(const Word& w, const HnnOrderData& data);

/// A total order on words, exposed through one comparison contract.
/// DegLex and Tower are monomial by construction; the HNN order is not
/// (certify_monomial finds a witness).
class OrderSpec {
public:
    enum class Kind { DegLex, Tower, Hnn };

    /// Degree, then letter rank (default: declaration order).
    static OrderSpec deglex(std::shared_ptr<const Alphabet> alpha,
                            std::optional<std::vector<LetterId>> ranking = std::nullopt);
    /// The tower order on (A1 u Y)*. A-letters and Y-letters are ranked by
    /// declaration order within their class unless rankings are supplied.
    static OrderSpec tower(std::shared_ptr<const Alphabet> alpha);
    static OrderSpec hnn(std::shared_ptr<const Alphabet> alpha, HnnOrderData data);

    Kind kind() const { return kind_; }
    bool monomial_certified() const { return kind_ != Kind::Hnn; }
    const std::shared_ptr<const Alphabet>& alphabet() const { return alpha_; }
    const HnnOrderData& hnn_data() const;

    std::strong_ordering compare(const Word& u, const Word& v) const;
    bool less(const Word& u, const Word& v) const { return compare(u, v) < 0; }
    bool greater(const Word& u, const Word& v) const { return compare(u, v) > 0; }

    int letter_rank(LetterId id) const { return rank_.at(id); }

private:
    OrderSpec(Kind k, std::shared_ptr<const Alphabet> a) : kind_(k), alpha_(std::move(a)) {}

    std::strong_ordering compare_deglex(const Word& u, const Word& v) const;
    std::strong_ordering compare_tower(const Word& u, const Word& v) const;
    std::strong_ordering compare_hnn(const Word& u, const Word& v) const;

    Kind kind_;
    std::shared_ptr<const Alphabet> alpha_;
    std::vector<int> rank_; // per letter: rank within its role
    std::shared_ptr<const HnnOrderData> hnn_;
};

/// The ord-greatest word of f with its coefficient. Throws on f = 0.
std::pair<Word, Scalar> leading(const Polynomial& f, const OrderSpec& ord);

/// f divided by its leading coefficient.
Polynomial make_monic(const Polynomial& f, const OrderSpec& ord);

/// Evidence report from randomized plus small-exhaustive order checking.
/// A pass is evidence, not proof.
struct MonomialReport {
    bool total_ok = true;        // irreflexive, antisymmetric, total
    bool transitive_ok = true;
    bool well_founded_ok = true; // empty word strictly minimal on samples
    bool compatible = true;      // u > v implies w1 u w2 > w1 v w2
    std::size_t trials = 0;
    std::string witness;         // first failure, human-readable
    // witness words for a compatibility failure
    std::optional<std::array<Word, 4>> compat_witness; // u, v, w1, w2

    bool pass() const { return total_ok && transitive_ok && well_founded_ok && compatible; }
};

/// Randomized trials plus an exhaustive sweep over short words. For DegLex
/// and Tower this passes; for the HNN order the compatibility search is
/// expected to find a counterexample and record it.
MonomialReport certify_monomial(const OrderSpec& ord, std::size_t trials, std::uint64_t seed = 0xC0FFEE);

} // namespace gsb

#endif
