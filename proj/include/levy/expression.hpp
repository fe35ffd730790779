#pragma once

#include <string>

#include "levy/model.hpp"

namespace levy {

/// Compile a density expression over the variable r into an evaluable
/// closure. Grammar: + - * / ^ with parentheses, numbers, r, and the
/// functions exp, log, pow, abs, min, max. Throws SpecParseError with the
/// byte offset of the first offending character.
RealFn compile_expression(const std::string& text);

/// Caret diagnostic for a SpecParseError position within `text`.
std::string caret_diagnostic(const std::string& text, long position);

} // namespace levy
