#pragma once

#include <string>

#include "ri/step_function.hpp"

namespace ri {

// Shortest representation that round-trips the double exactly.
std::string format_double(double x);

// Step-function CSV: header `breakpoint,value`, one row per piece giving the
// RIGHT endpoint of the piece and its value; the final row has breakpoint 1.
// Round-trips bit-exactly.
std::string to_csv(const StepFunction& f);
StepFunction step_from_csv(const std::string& text);

StepFunction load_step_csv(const std::string& path);
void save_step_csv(const StepFunction& f, const std::string& path);

}  // namespace ri
