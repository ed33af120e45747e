#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "expander/metrics.hpp"

namespace expander {

/// Reals in every table and report: 9 significant digits, "%g" style.
std::string format_real(double x);

/// "num/den", or "" when absent.
std::string format_rational(const std::optional<Rational>& r);

/// Integer girth, or "unbounded".
std::string format_girth(const Girth& g);

/// FNV-1a 64 of the bytes, as 16 lowercase hex digits.
std::string fingerprint_hex(std::string_view bytes);

}  // namespace expander
