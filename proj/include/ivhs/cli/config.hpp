#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivhs/field.hpp"
#include "ivhs/jacobian.hpp"
#include "json.hpp"
#include "ivhs/poly.hpp"
#include "ivhs/singularities.hpp"
#include "ivhs/torelli.hpp"

namespace ivhs::cli {

// A polynomial as written in a config: rational coefficients, arbitrary
// (not necessarily homogeneous) exponent vectors.
struct ParsedTerm {
  mpq_class coefficient;
  std::vector<std::uint32_t> exponents;
};
using ParsedPoly = std::vector<ParsedTerm>;

// Grammar: [sign] term (('+'|'-') term)*, term = [c ['*']] x<i>[^e] ...,
// c an integer or p/q. Variables x0..x{n_vars-1}.
ParsedPoly parse_polynomial(const std::string& text, std::size_t n_vars);

template <class Field>
HomogeneousPoly<Field> to_homogeneous(const ParsedPoly& parsed, const Field& f, std::size_t n_vars,
                                      std::uint32_t degree, const std::string& text) {
  HomogeneousPoly<Field> p(f, n_vars, degree);
  for (const auto& t : parsed) {
    Monomial m(t.exponents);
    if (m.degree() != degree)
      throw DegreeError("term `" + m.to_string() + "` of `" + text + "` has degree " + std::to_string(m.degree()) +
                        ", declared degree is " + std::to_string(degree));
    p.add_term(m, f.from_rational(t.coefficient));
  }
  return p;
}

// The same text read as a differential operator: x_i stands for d/dx_i.
template <class Field>
JetFunctional<Field> to_jet(const ParsedPoly& parsed, const Field& f) {
  JetFunctional<Field> jet;
  for (const auto& t : parsed) jet.terms.emplace_back(f.from_rational(t.coefficient), t.exponents);
  return jet;
}

enum class Command { hilbert, slp, socle, genus, ideal_sections, torelli };
enum class OutputFormat { json, text };

std::string to_string(Command c);
Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);

struct EquationSpec {
  std::uint32_t degree = 0;
  std::optional<std::string> text;  // absent for random equations
  ParsedPoly parsed;
};

struct PointSpec {
  std::vector<mpq_class> coords;
  SingularityType type = SingularityType::A1;
  std::optional<std::uint32_t> delta, tjurina;
  std::vector<std::string> conditions, adjoint_conditions;
  std::vector<ParsedPoly> parsed_conditions, parsed_adjoint_conditions;
};

struct CommandOptions {
  std::optional<std::uint32_t> up_to;  // hilbert
  std::optional<std::uint32_t> k_max;  // socle
  std::size_t trials = 3;              // slp
  std::vector<std::string> forms;      // slp: explicit Lefschetz candidates
  std::optional<std::uint32_t> degree; // ideal-sections
  std::string flavor = "adjoint";      // ideal-sections: points | adjoint | equisingular
  std::optional<std::size_t> deg_z;    // ideal-sections
  Domain domain = Domain::full;        // torelli
};

struct RunConfig {
  FieldSpec field;
  std::size_t ambient = 2;
  std::vector<EquationSpec> system;
  std::vector<PointSpec> singular_points;
  Command command = Command::hilbert;
  CommandOptions options;
  std::vector<std::string> assumptions;
  std::uint64_t seed = 0;
  OutputFormat output = OutputFormat::json;

  std::size_t n_vars() const { return ambient + 1; }
  // Normalized echo of everything that influences the result.
  nlohmann::json canonical() const;
};

// Validates a JSON config document. Throws ConfigError (unknown keys, bad
// values) or DegreeError (a term off the declared degree).
RunConfig parse_config(const std::string& text);

}  // namespace ivhs::cli
