#pragma once

#include <stdexcept>
#include <string>

#include "mgc/ast.hpp"

namespace mgc {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(std::string msg, int line_, int col_)
        : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
};

// Parses clingo-style MGC source: `:-` rules, `,` conjunction, `not`,
// `{a}` choice heads, `#count{X : L} >= t` (the bare `count` spelling is
// accepted too), `%` line comments.
Program parse_program(const std::string& text);

// Convenience single-rule parse for tests.
Rule parse_rule(const std::string& text);

}  // namespace mgc
