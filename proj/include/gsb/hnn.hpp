#ifndef GSB_HNN_HPP
#define GSB_HNN_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gsb/engine.hpp"
#include "gsb/group.hpp"
#include "gsb/order.hpp"

namespace gsb {

/// The HNN datum: subgroups C, D of a finite H with an isomorphism phi and
/// chosen transversals (their list orders are the I/J rankings).
struct HnnSpec {
    std::shared_ptr<const FiniteGroup> H;
    SubgroupWithCosets C;
    SubgroupWithCosets D;
    PartialIso phi;
};

/// The base group B = <H, t ; t^-1 c t = phi(c)> presented over H1 u {t, t^-1}
/// with the three-step order:
///   h h' = [hh'], h t = h_C t phi(c_h), h t^-1 = h_D t^-1 phi^-1(d_h),
///   t^e t^-e = 1.
/// Rules that degenerate to identity rewrites (c_h = 1 resp. d_h = 1) are
/// omitted.
struct HnnPresentation {
    std::shared_ptr<const Alphabet> alphabet;
    RewriteSystem system;
};

HnnPresentation hnn_presentation(const HnnSpec& spec);

/// Extension data on top of an HnnSpec: the coefficient group A, an action
/// of H1 u {t, t^-1} by automorphisms, and factor values (h,h') and (h,t^e)
/// with (h,h') = 1 pinned for distinct mutually inverse pairs.
class HnnExtensionSpec {
public:
    HnnExtensionSpec(HnnSpec base, std::shared_ptr<const FiniteGroup> a,
                     std::vector<Automorphism> action_h, // indexed by H element; [0] ignored
                     Automorphism action_t, Automorphism action_tinv,
                     std::vector<std::vector<int>> factor_hh, // |H| x |H|; row/col 0 ignored
                     std::vector<int> factor_ht, std::vector<int> factor_htinv);

    const HnnSpec& base() const { return base_; }
    const FiniteGroup& H() const { return *base_.H; }
    const FiniteGroup& A() const { return *a_; }
    const std::shared_ptr<const FiniteGroup>& A_ptr() const { return a_; }

    int act_h(int a, int h) const { return h == 0 ? a : action_h_[h].apply(a); }
    int act_t(int a) const { return action_t_.apply(a); }
    int act_tinv(int a) const { return action_tinv_.apply(a); }
    /// factor (h, h') with the identity convention (x, 1) = (1, x) = 1
    int f_hh(int h, int hp) const { return (h == 0 || hp == 0) ? 0 : factor_hh_[h][hp]; }
    int f_ht(int h) const { return h == 0 ? 0 : factor_ht_[h]; }
    int f_htinv(int h) const { return h == 0 ? 0 : factor_htinv_[h]; }

    // combined alphabet: A1, then H1, then t, t^-1
    const std::shared_ptr<const Alphabet>& alphabet() const { return alpha_; }
    const HnnOrderData& order_data() const { return order_data_; }
    LetterId a_letter(int element) const;
    LetterId h_letter(int element) const;
    LetterId t_letter() const { return t_; }
    LetterId tinv_letter() const { return tinv_; }
    int a_element_of(LetterId id) const { return element_of_a_letter_.at(id); }

private:
    HnnSpec base_;
    std::shared_ptr<const FiniteGroup> a_;
    std::vector<Automorphism> action_h_;
    Automorphism action_t_, action_tinv_;
    std::vector<std::vector<int>> factor_hh_;
    std::vector<int> factor_ht_, factor_htinv_;

    std::shared_ptr<const Alphabet> alpha_;
    std::vector<LetterId> a_letter_of_element_, h_letter_of_element_;
    std::vector<int> element_of_a_letter_;
    LetterId t_ = 0, tinv_ = 0;
    HnnOrderData order_data_;
};

/// Relation families (3.1)-(3.6) with factor decorations, monic under the
/// three-step order; identically-zero relations are dropped.
RewriteSystem build_hnn_extension_system(const HnnExtensionSpec& espec);

/// The nine extension identities, evaluated exhaustively in A:
///  h1  (h,h'h'')(h',h'') = (hh',h'')(h,h')^{h''}
///  h2  (hh',t)(h,h')^t = (hh'_C,t)^{phi(c_h')}(h',t)
///  h3  (hh',t^-1)(h,h')^{t^-1} = (hh'_D,t^-1)^{phi^-1(d_h')}(h',t^-1)
///  h4  (phi(c_h),t^-1)(h,t)^{t^-1} = 1
///  h5  (phi^-1(d_h),t)(h,t^-1)^t = 1
///  h6  a^{hh'}(h,h') = (h,h')a^{[hh']}
///  h7  a^{h_C t phi(c_h)}(h,t) = (h,t)a^{ht}
///  h8  a^{h_D t^-1 phi^-1(d_h)}(h,t^-1) = (h,t^-1)a^{ht^-1}
///  h9  a^{t^e t^-e} = a
struct HConditionReport {
    std::array<bool, 9> ok{true, true, true, true, true, true, true, true, true};
    std::vector<std::string> witnesses;
    bool all_pass() const {
        for (bool b : ok)
            if (!b) return false;
        return true;
    }
};

HConditionReport check_h_conditions(const HnnExtensionSpec& espec);

struct HnnSampling {
    std::size_t samples = 500;
    std::size_t max_ctx_len = 4;
    std::uint64_t seed = 0xC0FFEE;
};

/// Both routes: the exact (h1)-(h9) evaluation and the sampled generalized
/// Composition-Diamond conditions (I)/(II) on the built system. The verdict
/// is their conjunction; the h-route is exact, the (I)/(II) route is
/// evidence on sampled contexts.
struct HnnVerdict {
    HConditionReport h;
    ConditionCheckReport cond_i;
    ConditionCheckReport cond_ii;
    bool pass = false;
};

HnnVerdict check_extension_hnn(const HnnExtensionSpec& espec, const HnnSampling& sampling = {});

/// A concrete group the normal forms are evaluated in; eval returns a
/// canonical string for the image of a word.
class ModelGroup {
public:
    virtual ~ModelGroup() = default;
    virtual std::string eval(const Word& w) const = 0;
};

/// (finite group) x Z with per-letter images (element, t-shift).
class DirectProductZModel : public ModelGroup {
public:
    DirectProductZModel(FiniteGroup fin, std::map<LetterId, std::pair<int, int>> images);
    std::string eval(const Word& w) const override;

private:
    FiniteGroup fin_;
    std::map<LetterId, std::pair<int, int>> img_;
};

/// The free product H * <t> on reduced alternating sequences.
class FreeProductZModel : public ModelGroup {
public:
    FreeProductZModel(std::shared_ptr<const FiniteGroup> h,
                      std::map<LetterId, std::pair<int, int>> images); // (element, 0) or (0, +-1)
    std::string eval(const Word& w) const override;

private:
    std::shared_ptr<const FiniteGroup> h_;
    std::map<LetterId, std::pair<int, int>> img_;
};

/// The natural model (A x H) x Z of the trivial-data extension.
DirectProductZModel make_direct_model(const HnnExtensionSpec& espec);
/// The free-product model H * Z (useful when C = D = {1} and A is trivial).
FreeProductZModel make_free_model(const HnnExtensionSpec& espec);

struct NormalFormReport {
    std::vector<Word> words;
    bool injective = true;
    std::string collision; // first colliding pair, if any
};

/// Irr of the extension system up to max_len, with every word evaluated in
/// the model; a collision signals a certification gap. Call after
/// check_extension_hnn passes.
NormalFormReport hnn_normal_forms(const HnnExtensionSpec& espec, std::size_t max_len,
                                  const ModelGroup& model);

} // namespace gsb

#endif
