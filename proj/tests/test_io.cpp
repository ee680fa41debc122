#include <doctest.h>

#include <filesystem>

#include "gsb/io.hpp"

using namespace gsb;

namespace {

std::string fix(const std::string& name) {
    return std::string(GSB_FIXTURE_DIR) + "/" + name;
}

std::vector<std::string> shipped_fixtures() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(GSB_FIXTURE_DIR))
        if (e.path().extension() == ".gsb" && e.path().filename() != "malformed.gsb")
            out.push_back(e.path().string());
    return out;
}

} // namespace

TEST_CASE("parse -> serialize -> parse is the identity on all shipped fixtures") {
    for (const auto& path : shipped_fixtures()) {
        CAPTURE(path);
        InputDocument doc = InputDocument::parse_file(path);
        InputDocument again = InputDocument::parse_string(doc.serialize());
        CHECK(doc == again);
    }
}

TEST_CASE("malformed input reports the offending line") {
    try {
        InputDocument::parse_file(fix("malformed.gsb"));
        FAIL("expected a parse error");
    } catch (const input_error& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("group and presentation builders") {
    InputDocument doc = InputDocument::parse_file(fix("s3_extension.gsb"));
    auto a = build_group(doc.require("group"));
    CHECK(a->size() == 3);
    CHECK(a->element("a2") == 2);
    BPresentation b = build_presentation(doc, doc.require("presentation"));
    CHECK(b.alphabet->size() == 1);
    CHECK(b.relations.size() == 1);

    // relations are auto-oriented along the order
    InputDocument flipped = InputDocument::parse_string(
        "[presentation B]\ngenerators: x\nrel: 1 -> x x\n");
    BPresentation b2 = build_presentation(flipped, flipped.require("presentation"));
    CHECK(b2.relations[0].lhs == b2.alphabet->word("x x"));
    InputDocument trivial = InputDocument::parse_string(
        "[presentation B]\ngenerators: x\nrel: x -> x\n");
    CHECK_THROWS_AS(build_presentation(trivial, trivial.require("presentation")),
                    input_error); // trivial relation rejected at build
}

TEST_CASE("cmd_check_schreier on the shipped extension fixtures") {
    SUBCASE("Z4: pass, table printed") {
        InputDocument doc = InputDocument::parse_file(fix("z4_extension.gsb"));
        Report r = cmd_check_schreier(doc, 1);
        CHECK(r.exit_code == kExitPass);
        CHECK(r.verdict == "pass");
        CHECK(r.data["group_order"] == 4);
        bool has_table = false;
        for (const auto& l : r.lines)
            if (l == "table:") has_table = true;
        CHECK(has_table);
    }
    SUBCASE("S3: pass with a nonabelian fingerprint") {
        InputDocument doc = InputDocument::parse_file(fix("s3_extension.gsb"));
        Report r = cmd_check_schreier(doc, 1);
        CHECK(r.exit_code == kExitPass);
        CHECK(std::string(r.data["fingerprint"]).find("nonabelian") != std::string::npos);
    }
    SUBCASE("inversion with a0 = a: fail with the factor-condition witness") {
        InputDocument doc = InputDocument::parse_file(fix("cyclic_fail.gsb"));
        Report r = cmd_check_schreier(doc, 1);
        CHECK(r.exit_code == kExitFail);
        REQUIRE(!r.data["witnesses"].empty());
        std::string w = r.data["witnesses"][0];
        CHECK(w.find("factor condition") != std::string::npos);
    }
}

TEST_CASE("cmd_complete and cmd_irr") {
    InputDocument doc = InputDocument::parse_file(fix("s3_presentation.gsb"));
    CliLimits limits;
    limits.max_len = 6;
    Report r = cmd_complete(doc, limits);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.verdict == "complete");
    CHECK(r.data["irr_count"] == 6);

    InputDocument x3 = InputDocument::parse_file(fix("x3_presentation.gsb"));
    Report r2 = cmd_complete(x3, limits);
    CHECK(r2.data["rules"].size() == 1); // unchanged

    Report r3 = cmd_irr(x3, limits);
    CHECK(r3.data["normal_forms"].size() == 3);
}

TEST_CASE("cmd_complete respects the limits stanza") {
    InputDocument doc = InputDocument::parse_file(fix("limits_tiny.gsb"));
    Report r = cmd_complete(doc, parse_limits(doc));
    CHECK(r.exit_code == kExitLimit);
}

TEST_CASE("cmd_nf reduces words") {
    InputDocument doc = InputDocument::parse_file(fix("x3_presentation.gsb"));
    Report r = cmd_nf(doc, "x x x x");
    CHECK(r.exit_code == kExitPass);
    CHECK(r.data["normal_form"] == "x");
}

TEST_CASE("cmd_derive emits the cyclic conditions") {
    InputDocument doc = InputDocument::parse_file(fix("cyclic_derive.gsb"));
    Report r = cmd_derive(doc);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.data["equations"].size() == 1);
    CHECK(r.data["action_equations"].size() == 1);

    InputDocument fa = InputDocument::parse_file(fix("free_abelian_derive.gsb"));
    Report r2 = cmd_derive(fa);
    CHECK(r2.exit_code == kExitPass);
    CHECK(r2.data["equations"].size() == 32);
    CHECK(r2.data["action_equations"].size() == 18);

    InputDocument tb = InputDocument::parse_file(fix("table_b_derive.gsb"));
    Report r3 = cmd_derive(tb);
    CHECK(r3.exit_code == kExitPass);
    CHECK(r3.data["action_equations"].size() == 4);
}

TEST_CASE("cmd_enumerate with the oracle cross-check") {
    CliLimits limits;
    SUBCASE("Z2 by Z2: two rows") {
        InputDocument doc = InputDocument::parse_file(fix("enumerate_z2_z2.gsb"));
        Report r = cmd_enumerate(doc, true, limits);
        CHECK(r.exit_code == kExitPass);
        CHECK(r.data["count"] == 2);
        CHECK(r.data["oracle_match"] == true);
    }
    SUBCASE("Z3 by Z2: four rows, 3 abelian + 1 nonabelian") {
        InputDocument doc = InputDocument::parse_file(fix("enumerate_z3_z2.gsb"));
        Report r = cmd_enumerate(doc, true, limits);
        CHECK(r.exit_code == kExitPass);
        CHECK(r.data["count"] == 4);
        int nonabelian = 0;
        for (const auto& row : r.data["rows"])
            if (std::string(row).find("nonabelian") != std::string::npos) ++nonabelian;
        CHECK(nonabelian == 1);
    }
    SUBCASE("the injected fault trips the cross-check") {
        InputDocument doc = InputDocument::parse_file(fix("enumerate_z2_z2.gsb"));
        Report r = cmd_enumerate(doc, true, limits, true);
        CHECK(r.exit_code == kExitFail);
        CHECK(r.verdict == "oracle_mismatch");
    }
}

TEST_CASE("cmd_check_hnn on the shipped especs") {
    CliLimits limits;
    limits.samples = 60;
    limits.max_len = 6;
    SUBCASE("trivial espec: pass with injective normal forms") {
        InputDocument doc = InputDocument::parse_file(fix("hnn_trivial.gsb"));
        Report r = cmd_check_hnn(doc, limits, 9);
        CHECK(r.exit_code == kExitPass);
        CHECK(r.data["model_injective"] == true);
    }
    SUBCASE("(h4) violation: fail naming h4") {
        InputDocument doc = InputDocument::parse_file(fix("hnn_h4_violation.gsb"));
        Report r = cmd_check_hnn(doc, limits, 9);
        CHECK(r.exit_code == kExitFail);
        bool h4 = false;
        for (const auto& w : r.data["witnesses"])
            if (std::string(w).find("(h4)") != std::string::npos) h4 = true;
        CHECK(h4);
    }
    SUBCASE("repaired factor set: pass") {
        InputDocument doc = InputDocument::parse_file(fix("hnn_h4_fixed.gsb"));
        Report r = cmd_check_hnn(doc, limits, 9);
        CHECK(r.exit_code == kExitPass);
    }
}

TEST_CASE("reports are deterministic and their machine form round-trips") {
    InputDocument doc = InputDocument::parse_file(fix("z4_extension.gsb"));
    Report r1 = cmd_check_schreier(doc, 7);
    Report r2 = cmd_check_schreier(doc, 7);
    CHECK(r1.lines == r2.lines);
    nlohmann::json reparsed = nlohmann::json::parse(r1.data.dump());
    CHECK(reparsed == r1.data);
}

TEST_CASE("custom deg-lex rankings orient relations") {
    // with y ranked below x, the commutation rule flips direction
    InputDocument inline_order = InputDocument::parse_string(
        "[presentation B]\ngenerators: x y\norder: y x\nrel: x y -> y x\n");
    BPresentation b1 = build_presentation(inline_order, inline_order.require("presentation"));
    CHECK(b1.relations[0].lhs == b1.alphabet->word("x y"));

    InputDocument standalone = InputDocument::parse_string(
        "[presentation B]\ngenerators: x y\nrel: x y -> y x\n\n[order]\nletters: x y\n");
    BPresentation b2 = build_presentation(standalone, standalone.require("presentation"));
    CHECK(b2.relations[0].lhs == b2.alphabet->word("y x"));

    InputDocument incomplete = InputDocument::parse_string(
        "[presentation B]\ngenerators: x y\norder: x\nrel: x y -> y x\n");
    CHECK_THROWS_AS(build_presentation(incomplete, incomplete.require("presentation")),
                    input_error);
}
