#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powerdeform/complex.hpp"

namespace powerdeform {

enum class VerdictState {
  unknown,
  certified_univalent,
  certified_nonunivalent,
};

std::string_view to_string(VerdictState state);

struct Witness {
  std::vector<Complex> points;
  double value = 0.0;
  double margin = 0.0;
  std::string note;
};

struct Verdict {
  VerdictState state = VerdictState::unknown;
  std::string test_id = "none";
  std::optional<Witness> witness;

  static Verdict unknown(std::string test_id) { return {VerdictState::unknown, std::move(test_id), {}}; }
  static Verdict univalent(std::string test_id, Witness w) {
    return {VerdictState::certified_univalent, std::move(test_id), std::move(w)};
  }
  static Verdict nonunivalent(std::string test_id, Witness w) {
    return {VerdictState::certified_nonunivalent, std::move(test_id), std::move(w)};
  }

  bool is_univalent() const { return state == VerdictState::certified_univalent; }
  bool is_nonunivalent() const { return state == VerdictState::certified_nonunivalent; }
  bool is_unknown() const { return state == VerdictState::unknown; }
};

/// A sufficient test and a necessary test disagreed on the same input.
class ConflictError : public Error {
 public:
  using Error::Error;
};

/// Merges two verdicts for the same (f, c); the first certified one wins and
/// opposite certifications raise ConflictError.
Verdict merge(const Verdict& a, const Verdict& b);

}  // namespace powerdeform
