#include "powerdeform/series_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace powerdeform {

void write_series(std::ostream& out, const Series& f) {
  out << "# order " << f.order() << "\n";
  for (Complex c : f.coeffs()) {
    out << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
  }
}

void write_series(const std::filesystem::path& path, const Series& f) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  write_series(out, f);
  if (!out) {
    throw Error("failed writing series to '" + path.string() + "'");
  }
}

Series read_series(std::istream& in) {
  std::vector<Complex> coeffs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos) {
      throw Error("line " + std::to_string(line_no) + ": expected \"re im\"");
    }
    try {
      coeffs.emplace_back(parse_double(std::string_view(line).substr(0, space)),
                          parse_double(std::string_view(line).substr(space + 1)));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (coeffs.empty()) {
    throw Error("series file has no coefficients");
  }
  return Series(std::move(coeffs));
}

Series read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open series file '" + path.string() + "'");
  }
  try {
    return read_series(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace powerdeform
