#pragma once

#include <stdexcept>
#include <string>

#include "ri/norms.hpp"

namespace ri {

// Parse error with the exact character position of the offending token.
struct NormSpecError : std::runtime_error {
    NormSpecError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

// Mini-language:
//   Lp:<p>                      p a number or "inf"
//   LZ:<p>,<q>[,<beta>[,<gamma>]]
//   Lambda:<profile>            e.g. Lambda:power(0.5)
//   mI:<profile>   MI:<profile>
//   weakL1
//   Z:<norm>@<profile>          e.g. Z:Lp:2@power(0.5)
NormFunctional parse_norm_spec(const std::string& spec);

}  // namespace ri
