#include "ivhs/singularities.hpp"

namespace ivhs {

std::string to_string(SingularityType t) {
  switch (t) {
    case SingularityType::A1:
      return "A1";
    case SingularityType::A2:
      return "A2";
    case SingularityType::user:
      return "user";
  }
  return "?";
}

SingularityType parse_singularity_type(const std::string& s) {
  if (s == "A1") return SingularityType::A1;
  if (s == "A2") return SingularityType::A2;
  if (s == "user") return SingularityType::user;
  throw ConfigError("unknown singularity type '" + s + "' (expected A1, A2 or user)");
}

std::int64_t arithmetic_genus(const DegreeData& data) {
  if (const auto* plane = std::get_if<PlaneCurveDegree>(&data)) {
    const std::int64_t d = plane->d;
    return (d - 1) * (d - 2) / 2;
  }
  const auto& ci = std::get<CompleteIntersectionType>(data);
  const std::int64_t d1 = ci.d1, d2 = ci.d2;
  return d1 * d2 * (d1 + d2 - 4) / 2 + 1;
}

std::int64_t geometric_genus(const DegreeData& data, const std::vector<std::uint32_t>& deltas) {
  std::int64_t g = arithmetic_genus(data);
  for (auto d : deltas) g -= d;
  if (g < 0) throw GenusNegative("delta invariants exceed the arithmetic genus (g = " + std::to_string(g) + ")");
  return g;
}

}  // namespace ivhs
