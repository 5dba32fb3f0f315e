#include "powerdeform/verdict.hpp"

namespace powerdeform {

std::string_view to_string(VerdictState state) {
  switch (state) {
    case VerdictState::certified_univalent:
      return "certified-univalent";
    case VerdictState::certified_nonunivalent:
      return "certified-nonunivalent";
    case VerdictState::unknown:
    default:
      return "unknown";
  }
}

Verdict merge(const Verdict& a, const Verdict& b) {
  if (a.is_unknown()) return b.is_unknown() ? a : b;
  if (b.is_unknown() || a.state == b.state) return a;
  throw ConflictError("conflicting verdicts: " + a.test_id + " says " +
                      std::string(to_string(a.state)) + ", " + b.test_id + " says " +
                      std::string(to_string(b.state)));
}

}  // namespace powerdeform
