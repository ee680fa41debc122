#include "gsb/io.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gsb {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

const std::string* Stanza::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

const std::string& Stanza::get(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw input_error("[" + kind + (name.empty() ? "" : " " + name) + "] is missing '" +
                                  key + ":'",
                              line);
    return *v;
}

std::vector<std::string> Stanza::values(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key) out.push_back(v);
    return out;
}

InputDocument InputDocument::parse(std::istream& in) {
    InputDocument doc;
    std::string raw;
    long line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto h = s.find('#'); h != std::string::npos) s = s.substr(0, h);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw input_error("unterminated stanza header", line);
            auto inner = split_ws(s.substr(1, s.size() - 2));
            if (inner.empty() || inner.size() > 2)
                throw input_error("stanza header wants '[kind]' or '[kind name]'", line);
            Stanza st;
            st.kind = inner[0];
            if (inner.size() == 2) st.name = inner[1];
            st.line = line;
            doc.stanzas.push_back(std::move(st));
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw input_error("expected 'key: value'", line);
        if (doc.stanzas.empty()) throw input_error("entry outside any stanza", line);
        std::string key = trim(s.substr(0, colon));
        std::string val = trim(s.substr(colon + 1));
        if (key.empty()) throw input_error("empty key", line);
        doc.stanzas.back().entries.emplace_back(key, val);
    }
    return doc;
}

InputDocument InputDocument::parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
}

InputDocument InputDocument::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return parse(in);
}

std::string InputDocument::serialize() const {
    std::ostringstream os;
    for (const auto& s : stanzas) {
        os << "[" << s.kind;
        if (!s.name.empty()) os << " " << s.name;
        os << "]\n";
        for (const auto& [k, v] : s.entries) os << k << ": " << v << "\n";
        os << "\n";
    }
    return os.str();
}

const Stanza* InputDocument::find(const std::string& kind, const std::string& name) const {
    for (const auto& s : stanzas)
        if (s.kind == kind && (name.empty() || s.name == name)) return &s;
    return nullptr;
}

const Stanza& InputDocument::require(const std::string& kind, const std::string& name) const {
    const Stanza* s = find(kind, name);
    if (!s) throw input_error("missing [" + kind + (name.empty() ? "" : " " + name) + "] stanza");
    return *s;
}

std::shared_ptr<FiniteGroup> build_group(const Stanza& s) {
    auto names = split_ws(s.get("elements"));
    if (names.empty()) throw input_error("group needs elements", s.line);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (index.count(names[i])) throw input_error("duplicate element " + names[i], s.line);
        index[names[i]] = static_cast<int>(i);
    }
    std::string table_text = s.get("table");
    std::vector<std::vector<int>> table;
    std::istringstream rows(table_text);
    std::string row;
    while (std::getline(rows, row, '/')) {
        std::vector<int> r;
        for (const auto& tok : split_ws(row)) {
            auto it = index.find(tok);
            if (it == index.end()) throw input_error("unknown element '" + tok + "' in table", s.line);
            r.push_back(it->second);
        }
        table.push_back(std::move(r));
    }
    try {
        return std::make_shared<FiniteGroup>(names, table);
    } catch (const input_error& e) {
        throw input_error(std::string("invalid group: ") + e.what(), s.line);
    }
}

BPresentation build_presentation(const InputDocument& doc, const Stanza& s) {
    auto gens = split_ws(s.get("generators"));
    auto alpha = Alphabet::create();
    for (const auto& g : gens) alpha->add(g, LetterClass::Y);

    std::optional<std::vector<LetterId>> ranking;
    const std::string* order_line = s.find("order");
    if (!order_line)
        if (const Stanza* o = doc.find("order")) order_line = o->find("letters");
    if (order_line) {
        std::vector<LetterId> r;
        for (const auto& tok : split_ws(*order_line)) r.push_back(alpha->id(tok));
        if (r.size() != alpha->size()) throw input_error("order must rank every generator", s.line);
        ranking = std::move(r);
    }
    OrderSpec ord = OrderSpec::deglex(alpha, ranking);

    std::vector<Relation> rels;
    for (const auto& text : s.values("rel")) {
        auto arrow = text.find("->");
        if (arrow == std::string::npos)
            throw input_error("relation wants 'lhs -> rhs': " + text, s.line);
        Word lhs = alpha->word(text.substr(0, arrow));
        Word rhs = alpha->word(text.substr(arrow + 2));
        auto cmp = ord.compare(lhs, rhs);
        if (cmp == 0) throw input_error("relation is trivial: " + text, s.line);
        if (cmp < 0) std::swap(lhs, rhs); // orient along the order
        rels.push_back({std::move(lhs), std::move(rhs)});
    }
    if (rels.empty()) throw input_error("presentation has no relations", s.line);
    return BPresentation{alpha, std::move(rels), std::move(ord)};
}

namespace {

Automorphism parse_automorphism(const FiniteGroup& a, const std::string& text, long line) {
    auto toks = split_ws(text);
    if (toks.size() == 1 && toks[0] == "id") return identity_automorphism(a);
    std::vector<int> img(a.size(), -1);
    img[0] = 0;
    for (const auto& t : toks) {
        auto arrow = t.find("->");
        if (arrow == std::string::npos) throw input_error("action wants 'el->el' pairs or 'id'", line);
        int from = a.element(t.substr(0, arrow));
        int to = a.element(t.substr(arrow + 2));
        if (from == 0) {
            if (to != 0) throw input_error("the identity must map to itself", line);
            continue;
        }
        if (img[from] != -1) throw input_error("duplicate action entry for " + t, line);
        img[from] = to;
    }
    for (int i = 1; i < a.size(); ++i)
        if (img[i] == -1) throw input_error("action does not map element " + a.name(i), line);
    try {
        return make_automorphism(a, img);
    } catch (const input_error& e) {
        throw input_error(e.what(), line);
    }
}

} // namespace

ExtensionSpec build_extension_spec(const InputDocument& doc) {
    auto a = build_group(doc.require("group"));
    BPresentation b = build_presentation(doc, doc.require("presentation"));

    std::vector<Automorphism> action(b.alphabet->size(), identity_automorphism(*a));
    if (const Stanza* act = doc.find("action")) {
        for (const auto& [key, val] : act->entries) {
            auto id = b.alphabet->try_id(key);
            if (!id) throw input_error("action for unknown generator '" + key + "'", act->line);
            action[*id] = parse_automorphism(*a, val, act->line);
        }
    }

    std::vector<int> factor(b.relations.size(), 0);
    if (const Stanza* fs = doc.find("factorset")) {
        for (const auto& [key, val] : fs->entries) {
            Word lhs = b.alphabet->word(key);
            bool found = false;
            for (std::size_t r = 0; r < b.relations.size(); ++r)
                if (b.relations[r].lhs == lhs) {
                    factor[r] = a->element(val);
                    found = true;
                    break;
                }
            if (!found)
                throw input_error("factor for unknown relation '" + key + "'", fs->line);
        }
    }
    return ExtensionSpec(a, std::move(b), std::move(action), std::move(factor));
}

std::pair<HnnExtensionSpec, std::string> build_hnn_extension_spec(const InputDocument& doc) {
    const Stanza& hs = doc.require("hnn");
    auto a = build_group(doc.require("group", hs.get("A")));
    auto h = build_group(doc.require("group", hs.get("H")));

    auto members_of = [&](const std::string& key) {
        std::vector<int> m;
        for (const auto& tok : split_ws(hs.get(key))) m.push_back(h->element(tok));
        return m;
    };
    SubgroupWithCosets c(h, members_of("C"), members_of("repsC"));
    SubgroupWithCosets d(h, members_of("D"), members_of("repsD"));

    std::map<int, int> phi_map;
    for (const auto& tok : split_ws(hs.get("phi"))) {
        auto arrow = tok.find("->");
        if (arrow == std::string::npos) throw input_error("phi wants 'el->el' pairs", hs.line);
        phi_map[h->element(tok.substr(0, arrow))] = h->element(tok.substr(arrow + 2));
    }
    PartialIso phi = make_partial_iso(c, d, phi_map);

    std::vector<Automorphism> action_h(h->size(), identity_automorphism(*a));
    Automorphism action_t = identity_automorphism(*a), action_tinv = identity_automorphism(*a);
    if (const Stanza* act = doc.find("action")) {
        for (const auto& [key, val] : act->entries) {
            if (key == "t") action_t = parse_automorphism(*a, val, act->line);
            else if (key == "t^-1") action_tinv = parse_automorphism(*a, val, act->line);
            else action_h[h->element(key)] = parse_automorphism(*a, val, act->line);
        }
    }

    const int nh = h->size();
    std::vector<std::vector<int>> f_hh(nh, std::vector<int>(nh, 0));
    std::vector<int> f_ht(nh, 0), f_hti(nh, 0);
    if (const Stanza* fs = doc.find("factorset")) {
        for (const auto& [key, val] : fs->entries) {
            auto toks = split_ws(key);
            if (toks.size() != 2) throw input_error("factor key wants two letters: " + key, fs->line);
            int x = h->element(toks[0]);
            int v = a->element(val);
            if (toks[1] == "t") f_ht[x] = v;
            else if (toks[1] == "t^-1") f_hti[x] = v;
            else f_hh[x][h->element(toks[1])] = v;
        }
    }
    std::string model = "direct";
    if (const std::string* m = hs.find("model")) model = *m;
    if (model != "direct" && model != "free")
        throw input_error("model must be 'direct' or 'free'", hs.line);

    HnnSpec base{h, std::move(c), std::move(d), std::move(phi)};
    return {HnnExtensionSpec(std::move(base), a, std::move(action_h), std::move(action_t),
                             std::move(action_tinv), std::move(f_hh), std::move(f_ht),
                             std::move(f_hti)),
            model};
}

CliLimits parse_limits(const InputDocument& doc) {
    CliLimits lim;
    if (const Stanza* s = doc.find("limits")) {
        auto num = [&](const char* key, auto& slot) {
            if (const std::string* v = s->find(key)) slot = std::stoull(*v);
        };
        num("max-rules", lim.completion.max_rules);
        num("max-degree", lim.completion.max_degree);
        num("max-steps", lim.completion.max_steps);
        num("samples", lim.samples);
        num("max-ctx-len", lim.max_ctx_len);
        num("max-len", lim.max_len);
        num("guard", lim.guard);
    }
    return lim;
}

void Report::print(std::ostream& os) const {
    for (const auto& l : lines) os << l << "\n";
}

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json base_json(const std::string& task) {
    return nlohmann::json{{"schema", "v1"}, {"task", task}};
}

void finish(Report& rep, Clock::time_point t0) {
    rep.data["verdict"] = rep.verdict;
    rep.data["exit_code"] = rep.exit_code;
    rep.data["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string rule_text(const RewriteSystem& sys, const Rule& r) {
    Polynomial rhs = Polynomial::monomial(r.lead) - r.poly;
    (void)sys;
    return r.lead.str() + " -> " + (rhs.is_zero() ? "0" : rhs.str());
}

} // namespace

Report cmd_complete(const InputDocument& doc, const CliLimits& limits) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "complete";
    rep.data = base_json(rep.task);

    BPresentation b = build_presentation(doc, doc.require("presentation"));
    RewriteSystem sys = presentation_system(b);
    CompletionResult res = shirshov_complete(sys, limits.completion);

    rep.lines.push_back("rules after completion: " + std::to_string(res.basis.size()));
    for (const auto& r : res.basis.rules()) rep.lines.push_back("  " + rule_text(res.basis, r));
    rep.lines.push_back("compositions processed: " + std::to_string(res.compositions_processed));
    if (res.pruned_by_degree)
        rep.lines.push_back("warning: " + std::to_string(res.pruned_by_degree) +
                            " compositions pruned by max-degree (may hide divergence)");
    auto irr = irr_enumerate(res.basis, limits.max_len);
    rep.lines.push_back("irreducible words up to length " + std::to_string(limits.max_len) + ": " +
                        std::to_string(irr.size()));

    rep.data["rules"] = nlohmann::json::array();
    for (const auto& r : res.basis.rules()) rep.data["rules"].push_back(rule_text(res.basis, r));
    rep.data["compositions_processed"] = res.compositions_processed;
    rep.data["pruned_by_degree"] = res.pruned_by_degree;
    rep.data["irr_count"] = irr.size();

    if (res.status == CompletionResult::Status::complete) {
        rep.verdict = "complete";
        rep.exit_code = kExitPass;
    } else {
        rep.verdict = "hit_limit: " + res.limit_reason;
        rep.exit_code = kExitLimit;
    }
    rep.lines.insert(rep.lines.begin(), "status: " + rep.verdict);
    finish(rep, t0);
    return rep;
}

Report cmd_nf(const InputDocument& doc, const std::string& word_text) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "nf";
    rep.data = base_json(rep.task);

    BPresentation b = build_presentation(doc, doc.require("presentation"));
    RewriteSystem sys = presentation_system(b);
    Word w = b.alphabet->word(word_text);
    ReductionTrace tr = reduce(Polynomial::monomial(w), sys);
    if (tr.hit_step_limit) {
        rep.verdict = "hit_limit: reduction steps";
        rep.exit_code = kExitLimit;
    } else {
        rep.verdict = "ok";
        rep.exit_code = kExitPass;
    }
    rep.lines.push_back("input: " + w.str());
    rep.lines.push_back("normal form: " + tr.remainder.str());
    rep.lines.push_back("steps: " + std::to_string(tr.steps.size()));
    rep.data["input"] = w.str();
    rep.data["normal_form"] = tr.remainder.str();
    rep.data["steps"] = tr.steps.size();
    finish(rep, t0);
    return rep;
}

Report cmd_irr(const InputDocument& doc, const CliLimits& limits) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "irr";
    rep.data = base_json(rep.task);

    BPresentation b = build_presentation(doc, doc.require("presentation"));
    RewriteSystem sys = presentation_system(b);
    auto irr = irr_enumerate(sys, limits.max_len);
    rep.lines.push_back("irreducible words up to length " + std::to_string(limits.max_len) + ": " +
                        std::to_string(irr.size()));
    rep.data["normal_forms"] = nlohmann::json::array();
    for (const auto& w : irr) {
        rep.lines.push_back("  " + w.str());
        rep.data["normal_forms"].push_back(w.str());
    }
    rep.verdict = "ok";
    rep.exit_code = kExitPass;
    finish(rep, t0);
    return rep;
}

Report cmd_check_schreier(const InputDocument& doc, std::uint64_t seed) {
    auto t0 = Clock::now();
    (void)seed; // the schreier checks are exact
    Report rep;
    rep.task = "check-schreier";
    rep.data = base_json(rep.task);

    ExtensionSpec spec = build_extension_spec(doc);
    ConditionReport cr = check_extension(spec);

    rep.data["witnesses"] = nlohmann::json::array();
    std::size_t action_fail = 0;
    for (const auto& e : cr.action.entries)
        if (!e.ok) ++action_fail;
    rep.lines.push_back("action conditions: " + std::string(cr.action.pass ? "pass" : "fail") +
                        (action_fail ? " (" + std::to_string(action_fail) + " failing entries)" : ""));
    std::size_t comp_fail = 0;
    for (const auto& e : cr.compositions)
        if (!e.trivial) ++comp_fail;
    rep.lines.push_back("compositions: " + std::to_string(cr.compositions.size()) + " checked, " +
                        std::to_string(comp_fail) + " nontrivial");
    if (!cr.first_witness.empty()) {
        rep.lines.push_back("witness: " + cr.first_witness);
        rep.data["witnesses"].push_back(cr.first_witness);
    }

    if (cr.pass) {
        ExtensionGroupResult g = extension_group(spec);
        Fingerprint fp = fingerprint(g.group);
        rep.lines.push_back("extension group: " + fp.str());
        rep.lines.push_back("table:");
        for (int i = 0; i < g.group.size(); ++i) {
            std::string row = "  ";
            for (int j = 0; j < g.group.size(); ++j)
                row += (j ? " | " : "") + g.group.name(g.group.mul(i, j));
            rep.lines.push_back(row);
        }
        rep.data["group_order"] = g.group.size();
        rep.data["fingerprint"] = fp.str();
    }

    rep.verdict = cr.pass ? "pass" : "fail";
    rep.exit_code = cr.pass ? kExitPass : kExitFail;
    rep.lines.insert(rep.lines.begin(), "verdict: " + rep.verdict);
    finish(rep, t0);
    return rep;
}

Report cmd_derive(const InputDocument& doc) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "derive";
    rep.data = base_json(rep.task);

    BPresentation b = build_presentation(doc, doc.require("presentation"));
    DerivedConditions dc = derive_conditions(b);

    rep.lines.push_back("note: " + dc.note);
    rep.lines.push_back("factor conditions:");
    rep.data["equations"] = nlohmann::json::array();
    for (const auto& e : dc.equations) {
        rep.lines.push_back("  [w = " + e.ambiguity + "]  " + e.xi + " = " + e.zeta);
        rep.data["equations"].push_back(e.canonical);
    }
    rep.lines.push_back("action conditions:");
    rep.data["action_equations"] = nlohmann::json::array();
    for (const auto& e : dc.action_equations) {
        rep.lines.push_back("  " + e);
        rep.data["action_equations"].push_back(e);
    }
    if (!dc.shape_ok) {
        rep.verdict = "shape_failure";
        rep.exit_code = kExitFail;
        rep.lines.insert(rep.lines.begin(), "verdict: shape failure — " + dc.note);
    } else {
        rep.verdict = "ok";
        rep.exit_code = kExitPass;
    }
    finish(rep, t0);
    return rep;
}

Report cmd_enumerate(const InputDocument& doc, bool cross_check, const CliLimits& limits,
                     bool inject_fault) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "enumerate";
    rep.data = base_json(rep.task);

    const Stanza& en = doc.require("enumerate");
    auto a = build_group(doc.require("group", en.get("A")));
    const std::string bname = en.get("B");

    std::shared_ptr<FiniteGroup> b_group;
    BPresentation b = [&]() {
        if (const Stanza* gs = doc.find("group", bname)) {
            b_group = build_group(*gs);
            return table_presentation(*b_group);
        }
        const Stanza* ps = doc.find("presentation", bname);
        if (!ps) throw input_error("no [group " + bname + "] or [presentation " + bname + "]");
        return build_presentation(doc, *ps);
    }();

    auto results = enumerate_extensions(a, b, limits.guard, true);
    if (inject_fault && !results.empty()) results.pop_back();

    rep.lines.push_back("valid (action, factor set) pairs: " + std::to_string(results.size()));
    rep.data["count"] = results.size();
    rep.data["rows"] = nlohmann::json::array();
    for (const auto& r : results) {
        std::ostringstream os;
        os << "action [";
        for (std::size_t y = 0; y < r.params.action.size(); ++y) {
            if (y) os << "; ";
            for (std::size_t i = 0; i < r.params.action[y].size(); ++i)
                os << (i ? " " : "") << a->name(r.params.action[y][i]);
        }
        os << "] factors [";
        for (std::size_t i = 0; i < r.params.factors.size(); ++i)
            os << (i ? " " : "") << a->name(r.params.factors[i]);
        os << "] -> " << r.fp.str();
        rep.lines.push_back("  " + os.str());
        rep.data["rows"].push_back(os.str());
    }

    rep.verdict = "ok";
    rep.exit_code = kExitPass;
    if (cross_check) {
        if (!b_group) throw input_error("cross-check needs B as a group (table presentation)");
        auto oracle = brute_force_extensions(*a, *b_group, limits.guard);
        std::vector<ExtensionParams> mine;
        for (const auto& r : results) mine.push_back(r.params);
        std::sort(mine.begin(), mine.end());
        bool equal = mine == oracle;
        rep.lines.push_back(std::string("oracle cross-check: ") + (equal ? "match" : "MISMATCH") +
                            " (oracle count " + std::to_string(oracle.size()) + ")");
        rep.data["oracle_count"] = oracle.size();
        rep.data["oracle_match"] = equal;
        if (!equal) {
            rep.verdict = "oracle_mismatch";
            rep.exit_code = kExitFail;
        }
    }
    rep.lines.insert(rep.lines.begin(), "verdict: " + rep.verdict);
    finish(rep, t0);
    return rep;
}

Report cmd_check_hnn(const InputDocument& doc, const CliLimits& limits, std::uint64_t seed) {
    auto t0 = Clock::now();
    Report rep;
    rep.task = "check-hnn";
    rep.data = base_json(rep.task);

    auto [espec, model_kind] = build_hnn_extension_spec(doc);
    HnnSampling sampling{limits.samples, limits.max_ctx_len, seed};
    HnnVerdict v = check_extension_hnn(espec, sampling);

    rep.data["witnesses"] = nlohmann::json::array();
    for (int i = 0; i < 9; ++i)
        rep.lines.push_back("(h" + std::to_string(i + 1) + "): " + (v.h.ok[i] ? "pass" : "fail"));
    for (const auto& w : v.h.witnesses) {
        rep.lines.push_back("  witness " + w);
        rep.data["witnesses"].push_back(w);
    }
    rep.lines.push_back("condition (I): " + std::string(v.cond_i.pass ? "pass" : "fail") + " on " +
                        std::to_string(v.cond_i.trials) + " sampled contexts");
    rep.lines.push_back("condition (II): " + std::string(v.cond_ii.pass ? "pass" : "fail") + " on " +
                        std::to_string(v.cond_ii.trials) + " sampled contexts");
    for (const auto& w : v.cond_i.witnesses) {
        rep.lines.push_back("  witness " + w);
        rep.data["witnesses"].push_back(w);
    }
    for (const auto& w : v.cond_ii.witnesses) {
        rep.lines.push_back("  witness " + w);
        rep.data["witnesses"].push_back(w);
    }
    rep.data["h_conditions_pass"] = v.h.all_pass();
    rep.data["condition_I_pass"] = v.cond_i.pass;
    rep.data["condition_II_pass"] = v.cond_ii.pass;

    if (v.pass) {
        std::unique_ptr<ModelGroup> model;
        if (model_kind == "free") model = std::make_unique<FreeProductZModel>(make_free_model(espec));
        else model = std::make_unique<DirectProductZModel>(make_direct_model(espec));
        NormalFormReport nf = hnn_normal_forms(espec, limits.max_len, *model);
        rep.lines.push_back("normal forms up to length " + std::to_string(limits.max_len) + ": " +
                            std::to_string(nf.words.size()) + ", model evaluation " +
                            (nf.injective ? "injective" : "COLLIDES: " + nf.collision));
        rep.data["normal_forms"] = nf.words.size();
        rep.data["model_injective"] = nf.injective;
        if (!nf.injective) v.pass = false;
    }

    rep.verdict = v.pass ? "pass" : "fail";
    rep.exit_code = v.pass ? kExitPass : kExitFail;
    rep.lines.insert(rep.lines.begin(), "verdict: " + rep.verdict);
    finish(rep, t0);
    return rep;
}

} // namespace gsb
