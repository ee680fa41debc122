#ifndef GSB_ENGINE_HPP
#define GSB_ENGINE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gsb/order.hpp"
#include "gsb/polynomial.hpp"

namespace gsb {

/// A monic rewrite rule: poly with cached leading word. Read poly as the
/// relation lead = lead - poly.
struct Rule {
    Polynomial poly;
    Word lead;
};

/// A set of monic polynomials with a word order: a candidate or certified
/// Groebner-Shirshov basis. Immutable while being checked.
class RewriteSystem {
public:
    enum class Status { candidate, certified_gsb, certified_failed };

    RewriteSystem(OrderSpec ord, std::vector<Polynomial> rules);
    /// Test hook: install rules with explicitly cached leading words, which
    /// may deliberately disagree with the order.
    static RewriteSystem from_rules_unchecked(OrderSpec ord, std::vector<Rule> rules);

    const OrderSpec& order() const { return ord_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::shared_ptr<const Alphabet>& alphabet() const { return ord_.alphabet(); }
    std::size_t size() const { return rules_.size(); }

    void add_rule(const Polynomial& p); // normalizes to monic, resets status

    Status status() const { return status_; }
    void set_status(Status s) { status_ = s; }
    bool minimal() const { return minimal_; }
    void set_minimal(bool m) { minimal_ = m; }

private:
    RewriteSystem(OrderSpec ord) : ord_(std::move(ord)) {}
    OrderSpec ord_;
    std::vector<Rule> rules_;
    Status status_ = Status::candidate;
    bool minimal_ = false;
};

/// A critical-pair polynomial. Intersection: w = lead(f).b = a.lead(g) with
/// the overlap nonempty and a, b nonempty; value = f.b - a.g. Inclusion:
/// w = lead(f) = a.lead(g).b; value = f - a.g.b.
struct Composition {
    enum class Kind { intersection, inclusion };
    Kind kind;
    std::size_t f, g; // rule indices (f == g allowed for self-overlaps)
    Word w, a, b;
    Polynomial value;

    std::string describe(const RewriteSystem& s) const;
};

/// All compositions among leading words, self-overlaps included, in a fixed
/// order: (f, g) pairs rule-index major, intersections before inclusions,
/// then by position of the overlap.
std::vector<Composition> find_compositions(const RewriteSystem& s);

struct ReductionStep {
    std::size_t rule;
    Word left, right;
    Scalar coeff; // f := f - coeff * left . rule . right
};

/// Replayable record of one reduction. The rewritten occurrences
/// left.lead(rule).right are exactly the presentation words needed by
/// condition (II) checking.
struct ReductionTrace {
    Polynomial input;
    std::vector<ReductionStep> steps;
    Polynomial remainder;
    bool hit_step_limit = false;
};

/// Rewrites f until no term contains a leading word of s. Strategy, fixed
/// for reproducibility: rewrite the ord-greatest reducible term, at its
/// leftmost reducible position, with the lowest-index rule matching there.
/// The step guard exists for non-monomial orders; under a monomial order
/// every step strictly decreases the rewritten term.
ReductionTrace reduce(const Polynomial& f, const RewriteSystem& s, std::size_t step_limit = 100000);

/// Same contract, but every step picks a uniformly random (term, position,
/// rule) redex. Used to exercise confluence of certified bases.
Polynomial reduce_random(const Polynomial& f, const RewriteSystem& s, std::mt19937_64& rng,
                         std::size_t step_limit = 100000);

struct TrivialityResult {
    bool trivial;
    ReductionTrace trace;
};

/// Reduce-to-zero test. Under a monomial-certified order a zero remainder
/// decides triviality mod (S, w). Throws limit_error on step-limit.
TrivialityResult is_trivial(const Composition& c, const RewriteSystem& s,
                            std::size_t step_limit = 100000);

/// Runs is_trivial over every composition and stamps the system's status.
/// Returns indices of nontrivial compositions (empty iff certified).
std::vector<std::size_t> certify(RewriteSystem& s);

struct CompletionLimits {
    std::size_t max_rules = 256;
    std::size_t max_degree = 24;  // prune compositions with deg(w) above this
    std::size_t max_steps = 20000; // compositions processed
};

struct CompletionResult {
    RewriteSystem basis;
    enum class Status { complete, hit_limit } status;
    std::size_t compositions_processed = 0;
    std::size_t pruned_by_degree = 0; // nonzero pruning can hide divergence
    std::string limit_reason;
};

/// The Shirshov algorithm: adjoin monic normal forms of nontrivial
/// compositions until none remain or a limit trips. On completion the
/// result is interreduced and certified.
CompletionResult shirshov_complete(const RewriteSystem& s, const CompletionLimits& limits = {});

/// Drops rules whose leading word contains another rule's leading word and
/// reduces every tail; afterwards the leading words form an antichain under
/// the subword relation. Requires a certified basis.
RewriteSystem minimalize(const RewriteSystem& s);

/// All words of length <= max_len avoiding every leading word as a subword,
/// by length then letter rank.
std::vector<Word> irr_enumerate(const RewriteSystem& s, std::size_t max_len);

struct ConditionCheckReport {
    bool pass = true;
    std::size_t trials = 0;
    std::vector<std::string> witnesses;
    std::vector<std::size_t> failing; // rule indices (I) or composition indices (II)
};

/// Condition (I) of the generalized Composition-Diamond lemma: for sampled
/// contexts a, b and every rule s, leading(a.s.b) = a.lead(s).b. The empty
/// context is always included.
ConditionCheckReport check_condition_I(const RewriteSystem& s, std::size_t samples,
                                       std::size_t max_ctx_len, std::uint64_t seed = 0xC0FFEE);

/// Condition (II): every composition reduces to zero, and each rewritten
/// occurrence p = a_i.lead(t_i).b_i stays below w inside sampled contexts:
/// c.p.d < c.w.d. A nonzero remainder fails outright. Passing is sampled
/// evidence, not proof.
ConditionCheckReport check_condition_II(const RewriteSystem& s, std::size_t samples,
                                        std::size_t max_ctx_len, std::uint64_t seed = 0xC0FFEE);

} // namespace gsb

#endif
