#include "gsb/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gsb {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const int n = static_cast<int>(names_.size());
    if (n == 0) throw input_error("group needs at least the identity element");
    if (n > 64) throw input_error("group too large (|G| <= 64)");
    {
        std::set<std::string> seen(names_.begin(), names_.end());
        if (static_cast<int>(seen.size()) != n) throw input_error("duplicate element names");
    }
    if (static_cast<int>(table_.size()) != n) throw input_error("table must have |G| rows");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw input_error("table must have |G| columns");
        for (int v : row)
            if (v < 0 || v >= n) throw input_error("table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw input_error("element 0 must be the identity");
    // Latin square
    for (int a = 0; a < n; ++a) {
        std::vector<bool> row(n, false), col(n, false);
        for (int b = 0; b < n; ++b) {
            if (row[table_[a][b]]) throw input_error("table row is not a permutation");
            row[table_[a][b]] = true;
            if (col[table_[b][a]]) throw input_error("table column is not a permutation");
            col[table_[b][a]] = true;
        }
    }
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0) { inv_[a] = b; break; }
    for (int a = 0; a < n; ++a) {
        if (inv_[a] < 0 || table_[inv_[a]][a] != 0)
            throw input_error("element without two-sided inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw input_error("table is not associative");
}

int FiniteGroup::element(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    throw input_error("unknown group element '" + name + "'");
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int FiniteGroup::element_order(int a) const {
    int x = a, k = 1;
    while (x != 0) { x = mul(x, a); ++k; }
    return k;
}

std::vector<int> FiniteGroup::order_profile() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a) out.push_back(element_order(a));
    std::sort(out.begin(), out.end());
    return out;
}

int FiniteGroup::center_size() const {
    int c = 0;
    for (int a = 0; a < size(); ++a) {
        bool central = true;
        for (int b = 0; b < size(); ++b)
            if (mul(a, b) != mul(b, a)) { central = false; break; }
        if (central) ++c;
    }
    return c;
}

FiniteGroup make_trivial_group() { return FiniteGroup({"1"}, {{0}}); }

FiniteGroup make_cyclic(int n, const std::string& gen) {
    if (n < 1) throw input_error("cyclic order must be positive");
    std::vector<std::string> names{"1"};
    for (int i = 1; i < n; ++i)
        names.push_back(i == 1 ? gen : gen + std::to_string(i));
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup make_klein4() {
    // 1, a, b, c with every non-identity element an involution and ab = c.
    auto x = [](int p, int q) {
        if (p == 0) return q;
        if (q == 0) return p;
        if (p == q) return 0;
        return 6 - p - q;
    };
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) table[p][q] = x(p, q);
    return FiniteGroup({"1", "a", "b", "c"}, std::move(table));
}

FiniteGroup make_dihedral(int n) {
    if (n < 3) throw input_error("dihedral order parameter must be >= 3");
    // elements r^i s^j, 0 <= i < n, j in {0,1}; index = i + n*j
    auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * j; };
    std::vector<std::string> names;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < n; ++i) {
            std::string nm = "1";
            if (i == 1) nm = "r";
            else if (i > 1) nm = "r" + std::to_string(i);
            if (j) nm = (i == 0) ? "s" : nm + "s";
            names.push_back(nm);
        }
    const int m = 2 * n;
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
            // r^i1 s^j1 r^i2 s^j2 = r^{i1 + i2*(-1)^{j1}} s^{j1+j2}
            int i = j1 ? i1 - i2 : i1 + i2;
            table[a][b] = idx(i, (j1 + j2) % 2);
        }
    return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int n = g.size(), m = h.size();
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == 0 && b == 0) names.push_back("1");
            else names.push_back("(" + g.name(a) + "," + h.name(b) + ")");
        }
    std::vector<std::vector<int>> table(n * m, std::vector<int>(n * m));
    for (int a = 0; a < n * m; ++a)
        for (int b = 0; b < n * m; ++b)
            table[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
    return FiniteGroup(std::move(names), std::move(table));
}

std::string Fingerprint::str() const {
    std::ostringstream os;
    os << "order " << size << ", " << (abelian ? "abelian" : "nonabelian") << ", center " << center
       << ", orders [";
    for (std::size_t i = 0; i < order_profile.size(); ++i)
        os << (i ? " " : "") << order_profile[i];
    os << "]";
    return os.str();
}

Fingerprint fingerprint(const FiniteGroup& g) {
    return Fingerprint{g.size(), g.order_profile(), g.is_abelian(), g.center_size()};
}

namespace {

bool iso_backtrack(const FiniteGroup& g, const FiniteGroup& h, std::vector<int>& img, int next) {
    const int n = g.size();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (std::find(img.begin(), img.begin() + next, cand) != img.begin() + next) continue;
        if (g.element_order(next) != h.element_order(cand)) continue;
        img[next] = cand;
        bool ok = true;
        for (int b = 0; b <= next && ok; ++b) {
            int p = g.mul(next, b), q = g.mul(b, next);
            if (p <= next && img[p] != h.mul(cand, img[b])) ok = false;
            if (q <= next && img[q] != h.mul(img[b], cand)) ok = false;
        }
        if (ok && iso_backtrack(g, h, img, next + 1)) return true;
    }
    img[next] = -1;
    return false;
}

} // namespace

bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.size() != h.size()) return false;
    if (g.size() > 8) throw limit_error("isomorphism testing guarded to |G| <= 8");
    if (fingerprint(g) != fingerprint(h)) return false;
    std::vector<int> img(g.size(), -1);
    img[0] = 0;
    return iso_backtrack(g, h, img, 1);
}

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& perm) {
    const int n = g.size();
    if (static_cast<int>(perm.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = true;
    }
    if (perm[0] != 0) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (perm[g.mul(a, b)] != g.mul(perm[a], perm[b])) return false;
    return true;
}

Automorphism make_automorphism(const FiniteGroup& g, const std::vector<int>& perm) {
    if (!is_automorphism(g, perm)) throw input_error("map is not an automorphism");
    return Automorphism{perm};
}

Automorphism identity_automorphism(const FiniteGroup& g) {
    std::vector<int> img(g.size());
    std::iota(img.begin(), img.end(), 0);
    return Automorphism{std::move(img)};
}

Automorphism compose_lr(const Automorphism& f, const Automorphism& g) {
    std::vector<int> img(f.img.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.img[f.img[i]];
    return Automorphism{std::move(img)};
}

std::vector<Automorphism> automorphism_group(const FiniteGroup& g) {
    if (g.size() > 8)
        throw limit_error("automorphism enumeration guarded to |G| <= 8");
    std::vector<int> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Automorphism> out;
    // identity stays fixed; permute the rest
    std::sort(perm.begin() + 1, perm.end());
    do {
        if (is_automorphism(g, perm)) out.push_back(Automorphism{perm});
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return out;
}

SubgroupWithCosets::SubgroupWithCosets(std::shared_ptr<const FiniteGroup> parent_,
                                       std::vector<int> members_, std::vector<int> reps_)
    : parent(std::move(parent_)), members(std::move(members_)), reps(std::move(reps_)) {
    const FiniteGroup& g = *parent;
    std::sort(members.begin(), members.end());
    if (members.empty() || members[0] != 0) throw input_error("subgroup must contain the identity");
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw input_error("duplicate subgroup members");
    for (int a : members) {
        if (a < 0 || a >= g.size()) throw input_error("subgroup member out of range");
        if (!contains(g.inv(a))) throw input_error("subgroup not closed under inverse");
        for (int b : members)
            if (!contains(g.mul(a, b))) throw input_error("subgroup not closed under product");
    }
    // reps must hit each left coset rep*C exactly once, identity coset by 1
    if (members.size() * reps.size() != static_cast<std::size_t>(g.size()))
        throw input_error("coset representative count does not match index");
    std::vector<bool> covered(g.size(), false);
    for (int r : reps) {
        if (r < 0 || r >= g.size()) throw input_error("coset representative out of range");
        for (int c : members) {
            int x = g.mul(r, c);
            if (covered[x]) throw input_error("coset representatives overlap");
            covered[x] = true;
        }
        if (contains(r) && r != 0)
            throw input_error("the identity's coset must be represented by the identity");
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end())
        throw input_error("coset representatives do not cover the group");
}

bool SubgroupWithCosets::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

int SubgroupWithCosets::rep_position(int rep) const {
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == rep) return static_cast<int>(i);
    throw input_error("not a coset representative");
}

std::pair<int, int> coset_decompose(int g, const SubgroupWithCosets& sub) {
    const FiniteGroup& parent = *sub.parent;
    for (int r : sub.reps) {
        int c = parent.mul(parent.inv(r), g);
        if (sub.contains(c)) return {r, c};
    }
    throw input_error("inconsistent coset data");
}

int PartialIso::apply(int c) const {
    auto it = map.find(c);
    if (it == map.end()) throw input_error("element outside the isomorphism's domain");
    return it->second;
}

int PartialIso::apply_inverse(int d) const {
    for (const auto& [c, dd] : map)
        if (dd == d) return c;
    throw input_error("element outside the isomorphism's range");
}

PartialIso make_partial_iso(const SubgroupWithCosets& c, const SubgroupWithCosets& d,
                            const std::map<int, int>& images) {
    if (c.parent != d.parent) throw input_error("subgroups of different parents");
    const FiniteGroup& g = *c.parent;
    if (c.members.size() != d.members.size())
        throw input_error("subgroups of different order cannot be isomorphic");
    PartialIso phi{images};
    phi.map[0] = 0;
    std::set<int> range;
    for (int x : c.members) {
        auto it = phi.map.find(x);
        if (it == phi.map.end()) throw input_error("isomorphism undefined on a member");
        if (!d.contains(it->second)) throw input_error("isomorphism image outside target subgroup");
        range.insert(it->second);
    }
    if (phi.map.size() != c.members.size()) throw input_error("isomorphism defined outside its domain");
    if (range.size() != d.members.size()) throw input_error("isomorphism is not onto");
    for (int x : c.members)
        for (int y : c.members)
            if (phi.apply(g.mul(x, y)) != g.mul(phi.apply(x), phi.apply(y)))
                throw input_error("map does not preserve products");
    return phi;
}

bool factor_slot_forced(const FiniteGroup& b, int x, int y) {
    return x != y && b.mul(x, y) == 0;
}

std::vector<ExtensionParams> brute_force_extensions(const FiniteGroup& a, const FiniteGroup& b,
                                                    unsigned long long guard) {
    const int na = a.size(), nb = b.size();
    const auto auts = automorphism_group(a);
    const int nauts = static_cast<int>(auts.size());
    const int nb1 = nb - 1;

    std::vector<std::pair<int, int>> free_slots;
    for (int x = 1; x < nb; ++x)
        for (int y = 1; y < nb; ++y)
            if (!factor_slot_forced(b, x, y)) free_slots.emplace_back(x, y);

    // search-space guard
    {
        long double space = 1;
        for (int i = 0; i < nb1; ++i) space *= nauts;
        for (std::size_t i = 0; i < free_slots.size(); ++i) space *= na;
        if (space > static_cast<long double>(guard))
            throw limit_error("brute-force extension search space exceeds guard");
    }

    std::vector<int> act_idx(nb1, 0);           // per B1 element: index into auts
    std::vector<int> slot_val(free_slots.size(), 0);

    std::vector<std::vector<int>> factor(nb, std::vector<int>(nb, 0));
    std::vector<ExtensionParams> out;

    auto act = [&](int elem_a, int elem_b) {
        return elem_b == 0 ? elem_a : auts[act_idx[elem_b - 1]].apply(elem_a);
    };

    auto check = [&]() {
        for (int x = 1; x < nb; ++x)
            for (int y = 1; y < nb; ++y) {
                int f = factor[x][y];
                // (b,b') a^{bb'} = a^{[bb']} (b,b')
                for (int e = 0; e < na; ++e)
                    if (a.mul(f, act(act(e, x), y)) != a.mul(act(e, b.mul(x, y)), f)) return false;
            }
        for (int x = 0; x < nb; ++x)
            for (int y = 0; y < nb; ++y)
                for (int z = 0; z < nb; ++z) {
                    // (b, b'b'')(b',b'') = (bb',b'')(b,b')^{b''}
                    int lhs = a.mul(factor[x][b.mul(y, z)], factor[y][z]);
                    int rhs = a.mul(factor[b.mul(x, y)][z], act(factor[x][y], z));
                    if (lhs != rhs) return false;
                }
        return true;
    };

    auto emit = [&]() {
        ExtensionParams p;
        for (int x = 1; x < nb; ++x) p.action.push_back(auts[act_idx[x - 1]].img);
        for (int x = 1; x < nb; ++x)
            for (int y = 1; y < nb; ++y) p.factors.push_back(factor[x][y]);
        out.push_back(std::move(p));
    };

    // odometer over actions x factor values
    while (true) {
        for (std::size_t i = 0; i < free_slots.size(); ++i)
            factor[free_slots[i].first][free_slots[i].second] = slot_val[i];
        if (check()) emit();

        std::size_t k = 0;
        for (; k < slot_val.size(); ++k) {
            if (++slot_val[k] < na) break;
            slot_val[k] = 0;
        }
        if (k < slot_val.size()) continue;
        int j = 0;
        for (; j < nb1; ++j) {
            if (++act_idx[j] < nauts) break;
            act_idx[j] = 0;
        }
        if (j == nb1) break;
    }

    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gsb
