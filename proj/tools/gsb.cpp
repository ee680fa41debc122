// Command-line front end: parse an input file, run one task, print the
// report, and write the machine-readable record when asked.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gsb/io.hpp"

namespace {

int run(const gsb::Report& rep, const std::string& json_path) {
    rep.print(std::cout);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return gsb::kExitInput;
        }
        out << rep.data.dump(2) << "\n";
    }
    return rep.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groebner-Shirshov basis engine for group extensions"};
    app.require_subcommand(1);

    std::string file, json_path, word_text;
    std::uint64_t seed = 0xC0FFEE;
    bool cross_check = false, inject_fault = false;
    std::size_t max_len_flag = 0, samples_flag = 0, max_ctx_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "input file")->required();
        sub->add_option("--json", json_path, "write the machine-readable report here");
    };

    CLI::App* complete = app.add_subcommand("complete", "run Shirshov completion on a presentation");
    add_common(complete);
    complete->add_option("--max-len", max_len_flag, "irreducible-word listing length");

    CLI::App* nf = app.add_subcommand("nf", "normal form of a word");
    add_common(nf);
    nf->add_option("--word", word_text, "word to reduce")->required();

    CLI::App* irr = app.add_subcommand("irr", "list irreducible words");
    add_common(irr);
    irr->add_option("--max-len", max_len_flag, "maximum word length");

    CLI::App* chs = app.add_subcommand("check-schreier", "check the extension conditions");
    add_common(chs);
    chs->add_option("--seed", seed, "sampling seed");

    CLI::App* der = app.add_subcommand("derive", "derive symbolic extension conditions");
    add_common(der);

    CLI::App* en = app.add_subcommand("enumerate", "enumerate all extensions of A by B");
    add_common(en);
    en->add_flag("--cross-check", cross_check, "compare against the brute-force oracle");
    en->add_flag("--inject-fault", inject_fault, "drop one row first (negative control)");

    CLI::App* hnn = app.add_subcommand("check-hnn", "check the HNN extension conditions");
    add_common(hnn);
    hnn->add_option("--seed", seed, "sampling seed");
    hnn->add_option("--samples", samples_flag, "contexts sampled per composition");
    hnn->add_option("--max-ctx", max_ctx_flag, "maximum sampled context length");
    hnn->add_option("--max-len", max_len_flag, "normal-form listing length");

    CLI11_PARSE(app, argc, argv);

    try {
        gsb::InputDocument doc = gsb::InputDocument::parse_file(file);
        gsb::CliLimits limits = gsb::parse_limits(doc);
        if (max_len_flag) limits.max_len = max_len_flag;
        if (samples_flag) limits.samples = samples_flag;
        if (max_ctx_flag) limits.max_ctx_len = max_ctx_flag;

        if (app.got_subcommand(complete)) return run(gsb::cmd_complete(doc, limits), json_path);
        if (app.got_subcommand(nf)) return run(gsb::cmd_nf(doc, word_text), json_path);
        if (app.got_subcommand(irr)) return run(gsb::cmd_irr(doc, limits), json_path);
        if (app.got_subcommand(chs)) return run(gsb::cmd_check_schreier(doc, seed), json_path);
        if (app.got_subcommand(der)) return run(gsb::cmd_derive(doc), json_path);
        if (app.got_subcommand(en))
            return run(gsb::cmd_enumerate(doc, cross_check, limits, inject_fault), json_path);
        if (app.got_subcommand(hnn)) return run(gsb::cmd_check_hnn(doc, limits, seed), json_path);
        std::cerr << "error: no task\n";
        return gsb::kExitInput;
    } catch (const gsb::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return gsb::kExitInput;
    } catch (const gsb::limit_error& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return gsb::kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gsb::kExitInput;
    }
}
