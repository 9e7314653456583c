#ifndef LPOSAT_TPDB_HPP
#define LPOSAT_TPDB_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "lposat/term.hpp"

namespace lposat {

/// Raised on any malformed input. `line`/`column` are 1-based and refer to
/// the position where the problem was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column);

    int line;
    int column;
};

/// Raised for files that declare a THEORY or STRATEGY section. These are
/// well-formed but outside the supported fragment, so callers (batch mode)
/// can count them separately from genuine syntax errors.
class UnsupportedSection : public ParseError {
public:
    UnsupportedSection(std::string section, int line, int column);

    std::string section;
};

/// Parses a TRS in the TPDB "old" textual format: an optional (VAR x y ...)
/// block followed by (RULES l -> r ...). Identifiers consist of
/// alphanumerics and + - * / ' _ ; terms are written in prefix notation,
/// nullary symbols bare. Arities are fixed by the first occurrence of each
/// symbol and checked everywhere else.
Trs parse_trs(std::string_view text);

} // namespace lposat

#endif
