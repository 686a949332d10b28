#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "tst/tst.hpp"

namespace tst {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Parses a single term. Omitted guards read as true, omitted resets as
/// empty, omitted continuations as 1. Also rejects mixed-polarity choices,
/// duplicate actions and unguarded/unbound recursion (the validate checks),
/// so a successful parse yields a valid term.
TstPtr parse_tst(const std::string& text);

GuardPtr parse_guard(const std::string& text);

struct TstFile {
  std::map<std::string, TstPtr> definitions;
  TstPtr main;  // last definition, or the bare term
};

/// `.tst` file contents: `#` comments, blank lines, `NAME = <tst>`
/// definitions (one per line), or one bare term spanning the rest.
TstFile parse_tst_file(const std::string& text);

/// Canonical concrete syntax; parse_tst(render_tst(p)) is structurally p.
std::string render_tst(const TstPtr& p);

}  // namespace tst
