#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qssy {

// Size or shape disagreement between operands.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation called on an object whose state forbids it (e.g. stepping after breakdown).
class state_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Iterative procedure failed to converge or produced unusable values.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace qssy
