#pragma once

#include <stdexcept>
#include <string>

namespace treedd {

// Input files that do not conform to one of the text formats.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Violated operation preconditions (unknown variable, vtree mismatch, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace treedd
