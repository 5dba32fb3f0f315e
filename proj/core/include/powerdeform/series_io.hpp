#pragma once

#include <filesystem>
#include <iosfwd>

#include "powerdeform/series.hpp"

namespace powerdeform {

// Text format: one coefficient per line as "re im", line n holds z^n,
// lines starting with '#' are comments. Values use the shortest
// round-trip decimal so write/read is bit-exact.

void write_series(std::ostream& out, const Series& f);
void write_series(const std::filesystem::path& path, const Series& f);

Series read_series(std::istream& in);
Series read_series(const std::filesystem::path& path);

}  // namespace powerdeform
