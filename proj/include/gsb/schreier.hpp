#ifndef GSB_SCHREIER_HPP
#define GSB_SCHREIER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsb/engine.hpp"
#include "gsb/group.hpp"
#include "gsb/order.hpp"

namespace gsb {

/// A relation lhs = rhs of a semigroup presentation, identified with the
/// polynomial lhs - rhs.
struct Relation {
    Word lhs;
    Word rhs;
};

/// A presentation of the base group B: generators Y, relations R, and a
/// deg-lex order on Y*. The schreier operations require R to be a minimal
/// Groebner-Shirshov basis (leading words an antichain under the subword
/// relation).
struct BPresentation {
    std::shared_ptr<const Alphabet> alphabet; // every letter classed Y
    std::vector<Relation> relations;
    OrderSpec order;
};

/// lhs - rhs polynomials of the presentation, as a rewrite system.
RewriteSystem presentation_system(const BPresentation& b);

/// Certifies R as a minimal GSB (orientation, antichain, all compositions
/// trivial). Throws input_error with a reason when it is not.
void validate_minimal_gsb(const BPresentation& b);

/// The factor value of relation v is pinned to 1 exactly when v = y y' with
/// distinct letters y != y' and empty right-hand side: a section can always
/// be normalized across a mutually inverse pair, never across an involution.
bool factor_forced(const Relation& r);

/// The presentation { b b' = [bb'] : b, b' in B1 } over the deg-lex order,
/// relations in row-major order. A Latin square always makes this a minimal
/// GSB.
BPresentation table_presentation(const FiniteGroup& b);

/// The data of Theorem-style extension checking: finite A, presented B, an
/// action Y -> Aut(A) and a factor set Omega -> A. Validated and immutable.
class ExtensionSpec {
public:
    ExtensionSpec(std::shared_ptr<const FiniteGroup> a, BPresentation b,
                  std::vector<Automorphism> action, std::vector<int> factor);

    const FiniteGroup& A() const { return *a_; }
    const std::shared_ptr<const FiniteGroup>& A_ptr() const { return a_; }
    const BPresentation& B() const { return b_; }
    const std::vector<Automorphism>& action() const { return action_; }
    const std::vector<int>& factor() const { return factor_; }

    // combined alphabet A1 (in element order) followed by Y
    const std::shared_ptr<const Alphabet>& ext_alphabet() const { return ext_alpha_; }
    LetterId a_letter(int element) const;        // element != identity
    int element_of_letter(LetterId id) const;    // -1 for Y letters
    LetterId ext_of_y(LetterId y_letter) const;  // B-alphabet id -> combined id
    int y_of_ext(LetterId id) const;             // -1 for A letters

    /// Left-to-right composition of the per-letter automorphisms along u.
    /// u may be over the B alphabet or the combined alphabet (Y letters only).
    int action_on_word(int a, const Word& u) const;

private:
    std::shared_ptr<const FiniteGroup> a_;
    BPresentation b_;
    std::vector<Automorphism> action_;
    std::vector<int> factor_;
    std::shared_ptr<const Alphabet> ext_alpha_;
    std::vector<LetterId> a_letter_of_element_;
    std::vector<int> element_of_letter_;
    std::vector<LetterId> ext_letter_of_y_;
    std::vector<int> y_of_ext_letter_;
};

/// The three relation families { aa' = [aa'], v = h_v (v), a y = y a^y }
/// over the tower order. Leading words are aa', v, ay respectively.
RewriteSystem build_extension_system(const ExtensionSpec& spec);

struct ActionConditionEntry {
    int relation;
    int a;
    int lhs, rhs; // (v) a^v  vs  a^{h_v} (v), evaluated in A
    bool ok;
};

struct ActionConditionTable {
    std::vector<ActionConditionEntry> entries;
    bool pass = true;
};

/// (v) a^v = a^{h_v} (v) for every relation and every a in A.
ActionConditionTable check_action_condition(const ExtensionSpec& spec);

struct CompositionEntry {
    std::size_t index;
    std::string ambiguity;
    bool trivial;
    std::string remainder; // empty when trivial
    std::string xi_zeta;   // concrete xi vs zeta when the remainder has that shape
};

struct ConditionReport {
    ActionConditionTable action;
    std::vector<CompositionEntry> compositions;
    bool pass = false;
    std::string first_witness;
};

/// Full extension check: the action conditions plus triviality of every
/// composition of the extension system. Passing certifies the system as a
/// GSB and the extension as a Schreier extension of A by B.
ConditionReport check_extension(const ExtensionSpec& spec);

/// The extension group on normal forms b.a (b in Irr(R), a in A), built by
/// concatenate-and-reduce multiplication. Requires check_extension to pass
/// and B finite.
struct ExtensionGroupResult {
    FiniteGroup group;
    std::vector<Word> b_words; // Irr(R), index order; element id = b_idx * |A| + a
    int a_size;

    int element(int b_idx, int a) const { return b_idx * a_size + a; }
    int a_part(int id) const { return id % a_size; }
    int b_part(int id) const { return id / a_size; }
};

ExtensionGroupResult extension_group(const ExtensionSpec& spec, std::size_t guard = 4096);

/// The embedded copy of A is { (1, a) }; exhaustive conjugation check.
bool a_copy_is_normal(const ExtensionGroupResult& g);
/// Quotient by the embedded A, elements indexed by the b-words.
FiniteGroup quotient_by_a(const ExtensionGroupResult& g);

/// --- symbolic derivation of extension conditions ---

/// One derived equation xi = zeta attached to a composition of R. Sides are
/// rendered words in formal factor letters "(v)" with action superscripts;
/// `canonical` has the two sides sorted for order-insensitive comparison.
/// The token lists carry the same data structurally: (relation index,
/// superscript word over Y), so the equation can be specialized at concrete
/// (action, factor set) values.
struct FactorToken {
    std::size_t relation;
    Word sup;
};

struct SymbolicEquation {
    std::size_t comp_index;
    std::string ambiguity;
    std::string xi, zeta;
    std::string canonical;
    std::vector<FactorToken> xi_tokens, zeta_tokens;
};

struct DerivedConditions {
    std::vector<SymbolicEquation> equations;   // identically-satisfied ones omitted
    std::vector<std::string> action_equations; // canonical "(v) a^{v} = a^{h_v} (v)" family
    bool shape_ok = true;
    std::string note; // reduction strategy and any superscript normalization

    std::vector<std::string> all_canonical() const;
};

/// Evaluates every derived equation (and the action family) at the concrete
/// values of a spec; true iff all hold in A.
bool specialize_conditions(const DerivedConditions& dc, const ExtensionSpec& spec);

/// Runs the extension-system reduction over formal factor letters: factor
/// values become atomic letters that commute past Y-letters while
/// accumulating action superscripts. Each composition of R yields the shape
/// z (xi - zeta); the xi = zeta equations plus the verbatim action family
/// are the extension conditions of A by B. Fixed leftmost reduction.
DerivedConditions derive_conditions(const BPresentation& b);

/// All (action, factor set) parameter points whose check_extension passes.
/// Factor values on forced slots are pinned to the identity and excluded
/// from the scan. For a table presentation the result is comparable slot by
/// slot with brute_force_extensions.
struct EnumeratedExtension {
    ExtensionParams params;
    Fingerprint fp; // of the extension group (size 0 when not computed)
};

std::vector<EnumeratedExtension> enumerate_extensions(std::shared_ptr<const FiniteGroup> a,
                                                      const BPresentation& b,
                                                      unsigned long long guard = 50'000'000ULL,
                                                      bool with_fingerprints = true);

} // namespace gsb

#endif
