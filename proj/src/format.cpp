#include "expander/format.hpp"

#include <fmt/format.h>

namespace expander {

std::string format_real(double x) {
  // -0 prints as "-0" otherwise, which breaks byte comparisons across runs.
  if (x == 0.0) x = 0.0;
  return fmt::format("{:.9g}", x);
}

std::string format_rational(const std::optional<Rational>& r) {
  if (!r) return "";
  return std::to_string(r->numerator()) + "/" + std::to_string(r->denominator());
}

std::string format_girth(const Girth& g) { return g ? std::to_string(*g) : "unbounded"; }

std::string fingerprint_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace expander
