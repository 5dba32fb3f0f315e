#include "powerdeform/complex.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace powerdeform {

void require_finite(Complex z, std::string_view what) {
  if (!is_finite(z)) {
    throw Error(std::string(what) + " must be finite");
  }
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw Error("invalid number '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw Error("number '" + std::string(text) + "' is not finite");
  }
  return value;
}

Complex parse_complex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) {
    throw Error("empty complex number");
  }
  if (text.back() != 'i') {
    return {parse_double(text), 0.0};
  }
  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string_view::npos) {
    return {0.0, imag_part(body)};
  }
  return {parse_double(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) {
    return format_double(z.real());
  }
  std::string out;
  if (z.real() != 0.0) {
    out = format_double(z.real());
    if (!std::signbit(z.imag())) out += '+';
  }
  out += format_double(z.imag());
  out += 'i';
  return out;
}

}  // namespace powerdeform
