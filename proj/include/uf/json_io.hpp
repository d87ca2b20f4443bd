#pragma once

#include <string>

namespace uf {

// Decimal rendering with 17 significant digits; round-trips binary64 exactly.
std::string format_double(double x);

// "[x,y]"
std::string format_point(double x, double y);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace uf
