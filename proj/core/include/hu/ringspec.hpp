#pragma once

#include <string>

#include "hu/formring.hpp"

namespace hu {

// Ring-spec text format, one declaration per line:
//   ring zmod 4 | ring quad 3 0 1 | ring prodswap 2
//   lambda <index>
//   Lambda {0,2} | Lambda max | Lambda min
// Blank lines and '#' comments are ignored. Parse problems raise
// SpecParseError with position; the assembled form ring is validated and
// raises ValidationError naming the violated axiom.
FormRingPtr parse_ring_spec(const std::string& text);

FormRingPtr load_ring_spec_file(const std::string& path);

}  // namespace hu
