#include "ivhs/torelli.hpp"

namespace ivhs {

std::string to_string(Domain d) { return d == Domain::full ? "full" : "adjoint"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::injective_mod_trivial:
      return "injective-mod-trivial";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(PeriodRoute r) { return r == PeriodRoute::jacobian ? "jacobian" : "cayley"; }

Domain parse_domain(const std::string& s) {
  if (s == "full") return Domain::full;
  if (s == "adjoint") return Domain::adjoint;
  throw ConfigError("unknown domain '" + s + "' (expected full or adjoint)");
}

}  // namespace ivhs
