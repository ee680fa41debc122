#ifndef GSB_IO_HPP
#define GSB_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsb/engine.hpp"
#include "gsb/group.hpp"
#include "gsb/hnn.hpp"
#include "gsb/schreier.hpp"

namespace gsb {

/// Exit code contract of every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;  // checked and failed, witness reported
inline constexpr int kExitInput = 2; // parse or validation error
inline constexpr int kExitLimit = 3; // a guard or budget tripped

/// One "[kind name]" block of the input format with its ordered entries.
/// Words are whitespace-separated letter names and "1" alone is the empty
/// word; group tables separate rows with "/".
struct Stanza {
    std::string kind;
    std::string name; // may be empty
    long line = -1;
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string* find(const std::string& key) const;
    const std::string& get(const std::string& key) const; // throws input_error
    std::vector<std::string> values(const std::string& key) const;

    bool operator==(const Stanza& o) const {
        return kind == o.kind && name == o.name && entries == o.entries;
    }
};

struct InputDocument {
    std::vector<Stanza> stanzas;

    static InputDocument parse(std::istream& in);
    static InputDocument parse_string(const std::string& text);
    static InputDocument parse_file(const std::string& path);
    std::string serialize() const;

    const Stanza* find(const std::string& kind, const std::string& name = "") const;
    const Stanza& require(const std::string& kind, const std::string& name = "") const;

    bool operator==(const InputDocument& o) const { return stanzas == o.stanzas; }
};

std::shared_ptr<FiniteGroup> build_group(const Stanza& s);
BPresentation build_presentation(const InputDocument& doc, const Stanza& s);
ExtensionSpec build_extension_spec(const InputDocument& doc);
/// Also returns the chosen model kind ("direct" or "free").
std::pair<HnnExtensionSpec, std::string> build_hnn_extension_spec(const InputDocument& doc);

struct CliLimits {
    CompletionLimits completion;
    std::size_t samples = 500;
    std::size_t max_ctx_len = 4;
    std::size_t max_len = 6;
    unsigned long long guard = 50'000'000ULL;
};

CliLimits parse_limits(const InputDocument& doc);

/// Rendered outcome of one command: human-readable lines plus the
/// machine-readable record (schema v1).
struct Report {
    std::string task;
    std::string verdict;
    int exit_code = kExitPass;
    std::vector<std::string> lines;
    nlohmann::json data;

    void print(std::ostream& os) const;
};

Report cmd_complete(const InputDocument& doc, const CliLimits& limits);
Report cmd_nf(const InputDocument& doc, const std::string& word_text);
Report cmd_irr(const InputDocument& doc, const CliLimits& limits);
Report cmd_check_schreier(const InputDocument& doc, std::uint64_t seed);
Report cmd_derive(const InputDocument& doc);
/// cross_check reruns the scan through the brute-force oracle and demands
/// set equality; inject_fault deliberately drops one row first (negative
/// control for the cross-check machinery).
Report cmd_enumerate(const InputDocument& doc, bool cross_check, const CliLimits& limits,
                     bool inject_fault = false);
Report cmd_check_hnn(const InputDocument& doc, const CliLimits& limits, std::uint64_t seed);

} // namespace gsb

#endif
