#pragma once

#include <string>
#include <vector>

namespace searchmkt {

// %.12g with a C-locale decimal point; NaN renders as an empty cell
std::string csv_num(double x);

std::string csv_int(long long x);

// Rows must match the header arity. Cells containing a comma, quote, or
// newline are quoted; everything else is written verbatim with \n endings.
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

// Writes through a temporary file in the same directory and renames it into
// place, so readers never observe a half-written table.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace searchmkt
