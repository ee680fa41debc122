#ifndef GSB_ERRORS_HPP
#define GSB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gsb {

/// Malformed or inconsistent input (bad stanza, invalid table, unmapped letter, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg, long line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// A configured resource guard tripped (step limit, search-space guard, ...).
class limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gsb

#endif
