#pragma once

#include <stdexcept>
#include <string>

namespace wtree {

// Syntax error in bracket text or the poly expression grammar.  `position` is
// the 1-based byte offset of the offending character in the input.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Precondition violation: unknown vertex, operation at the root, non-simple
// input to mon/blowup, malformed dual graph, and so on.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal cross-check failed (e.g. a blowup chart that does not match its
// advanced tree).  These are never swallowed: if one fires, the engine has a
// bug and the caller must see it.
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wtree
