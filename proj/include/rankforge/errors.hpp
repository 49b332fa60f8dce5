#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankforge {

// Raised for inputs that violate an operation's precondition. The CLI maps
// this to exit status 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : DomainError(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace rankforge
