#ifndef GSB_GROUP_HPP
#define GSB_GROUP_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gsb/errors.hpp"

namespace gsb {

/// A finite group given by its Cayley table. Element 0 is the identity.
/// The table is fully validated at construction (Latin square, identity,
/// inverses, associativity), which bounds usable sizes to |G| <= 64.
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table);

    int size() const { return static_cast<int>(names_.size()); }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    const std::string& name(int a) const { return names_.at(a); }
    int element(const std::string& name) const;

    bool is_abelian() const;
    int element_order(int a) const;
    std::vector<int> order_profile() const; // sorted element orders
    int center_size() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
};

FiniteGroup make_trivial_group();
FiniteGroup make_cyclic(int n, const std::string& gen = "a");
FiniteGroup make_klein4();
/// Dihedral group of order 2n (n >= 3); make_dihedral(3) is S3.
FiniteGroup make_dihedral(int n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Structural fingerprint used in place of full isomorphism testing at
/// enumeration scale.
struct Fingerprint {
    int size = 0;
    std::vector<int> order_profile;
    bool abelian = false;
    int center = 0;
    bool operator==(const Fingerprint&) const = default;
    std::string str() const;
};
Fingerprint fingerprint(const FiniteGroup& g);

/// Exact isomorphism test by pruned backtracking; guarded to |G| <= 8.
bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h);

/// A bijection of the element set; validated to preserve the table and fix
/// the identity.
struct Automorphism {
    std::vector<int> img;
    int apply(int a) const { return img.at(a); }
    bool operator==(const Automorphism&) const = default;
};

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& perm);
Automorphism make_automorphism(const FiniteGroup& g, const std::vector<int>& perm);
Automorphism identity_automorphism(const FiniteGroup& g);
/// f then g (left-to-right), matching how words act: a^{uv} = (a^u)^v.
Automorphism compose_lr(const Automorphism& f, const Automorphism& g);
/// All automorphisms, by exhaustive permutation filtering; guarded to |G| <= 8.
/// Deterministic order (lexicographic image vectors).
std::vector<Automorphism> automorphism_group(const FiniteGroup& g);

/// A subgroup together with a chosen left-coset transversal: every g factors
/// uniquely as g = rep * member. The rep list order is the index order (the
/// I/J rankings of the HNN order). The identity's coset has rep = identity.
struct SubgroupWithCosets {
    std::shared_ptr<const FiniteGroup> parent;
    std::vector<int> members; // sorted element ids, includes identity
    std::vector<int> reps;    // one per coset, in declared index order

    SubgroupWithCosets() = default; // empty placeholder; real data via the validating ctor
    SubgroupWithCosets(std::shared_ptr<const FiniteGroup> parent_,
                       std::vector<int> members_, std::vector<int> reps_);

    bool contains(int g) const;
    int rep_position(int rep) const; // position in reps, throws if absent
};

/// g = rep * member with member in the subgroup; unique by construction.
std::pair<int, int> coset_decompose(int g, const SubgroupWithCosets& sub);

/// An isomorphism between two subgroups of the same parent (the phi of an
/// HNN extension).
struct PartialIso {
    std::map<int, int> map; // domain: C members, range: D members

    int apply(int c) const;
    int apply_inverse(int d) const;
};

PartialIso make_partial_iso(const SubgroupWithCosets& c, const SubgroupWithCosets& d,
                            const std::map<int, int>& images);

/// One point of the extension parameter space: an action B1 -> Aut(A) (full
/// image vectors) and a factor set over B1 x B1 (row-major, forced slots
/// stored as the identity). Shared by the brute-force oracle and by
/// enumerate_extensions so result sets compare exactly.
struct ExtensionParams {
    std::vector<std::vector<int>> action;
    std::vector<int> factors;
    auto operator<=>(const ExtensionParams&) const = default;
};

/// Slots of the B1 x B1 factor matrix that are pinned to 1: mutually inverse
/// pairs of *distinct* elements. An involution pair (b, b) with b^2 = 1 stays
/// free; no choice of section can normalize it away.
bool factor_slot_forced(const FiniteGroup& b, int x, int y);

/// Exhaustive scan of (action, factor set) candidates satisfying both
/// classical extension conditions: for all b, b', b'' in B and a in A,
///   (b,b') a^{bb'} = a^{[bb']} (b,b')   and
///   (b,b'b'')(b',b'') = (bb',b'')(b,b')^{b''}.
/// Used as the oracle against schreier::enumerate_extensions.
std::vector<ExtensionParams> brute_force_extensions(const FiniteGroup& a, const FiniteGroup& b,
                                                    unsigned long long guard = 50'000'000ULL);

} // namespace gsb

#endif
