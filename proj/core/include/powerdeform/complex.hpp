#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace powerdeform {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Throws Error naming `what` when `z` has a NaN or infinite component.
void require_finite(Complex z, std::string_view what);

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" without consulting the locale.
Complex parse_complex(std::string_view text);

/// Inverse of parse_complex; uses the shortest round-trip decimal form.
std::string format_complex(Complex z);

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

/// Locale-independent strict double parse of the whole of `text`.
double parse_double(std::string_view text);

}  // namespace powerdeform
