#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwlab {

/// malformed instance text; carries the 1-based line of the offending token
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// well-formed text describing an instance that breaks a type invariant
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// operation applied outside its stated domain (wrong variant, bad arguments)
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// enumeration-based routine refused the input: the search space exceeds its guard
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rwlab
