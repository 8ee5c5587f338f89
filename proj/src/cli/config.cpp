#include "ivhs/cli/config.hpp"

#include <cctype>
#include <set>

namespace ivhs::cli {

namespace {

using nlohmann::json;

class PolyLexer {
 public:
  PolyLexer(const std::string& text, std::size_t n_vars) : text_(text), n_vars_(n_vars) {}

  ParsedPoly parse() {
    ParsedPoly out;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      ParsedTerm t = term();
      if (sign < 0) t.coefficient = -t.coefficient;
      out.push_back(std::move(t));
      skip_space();
    }
    return out;
  }

 private:
  ParsedTerm term() {
    ParsedTerm t{1, std::vector<std::uint32_t>(n_vars_, 0)};
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coefficient = number();
      skip_space();
      if (peek() == '/') {
        ++pos_;
        skip_space();
        mpq_class den = number();
        if (den == 0) fail("zero denominator");
        t.coefficient /= den;
        skip_space();
      }
      any = true;
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (peek() != 'x') fail("expected a variable after '*'");
      }
    }
    while (peek() == 'x') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("variable needs an index, as in x0");
      mpz_class index = number().get_num();
      if (index >= n_vars_) fail("variable index out of range (ambient has x0..x" + std::to_string(n_vars_ - 1) + ")");
      std::uint32_t e = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
        mpz_class v = number().get_num();
        if (v > 1000) fail("exponent too large");
        e = static_cast<std::uint32_t>(v.get_ui());
        skip_space();
      }
      t.exponents[index.get_ui()] += e;
      any = true;
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (peek() != 'x') fail("expected a variable after '*'");
      }
    }
    if (!any) fail("expected a coefficient or a variable");
    return t;
  }

  mpq_class number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpq_class(mpz_class(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse polynomial `" + text_ + "` at offset " + std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  std::size_t n_vars_;
  std::size_t pos_ = 0;
};

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) throw ConfigError("unknown key `" + key + "` in " + where);
}

template <class T>
T get_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ConfigError("`" + key + "` must be a non-negative integer");
  return static_cast<T>(v.get<std::uint64_t>());
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("`" + key + "` must be a string");
  return v.get<std::string>();
}

FieldSpec parse_field(const json& v) {
  if (v.is_object()) {
    reject_unknown(v, {"prime"}, "field");
    if (!v.contains("prime")) throw ConfigError("field object needs a `prime` entry");
    return FieldSpec::prime(get_unsigned<std::uint64_t>(v["prime"], "field.prime"));
  }
  const std::string s = get_string(v, "field");
  if (s == "QQ" || s == "rationals") return FieldSpec::rationals();
  auto prime_from = [&](const std::string& digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 12)
      throw ConfigError("bad prime in field `" + s + "`");
    return FieldSpec::prime(std::stoull(digits));
  };
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') return prime_from(s.substr(3, s.size() - 4));
  if (s.rfind("prime:", 0) == 0) return prime_from(s.substr(6));
  throw ConfigError("unknown field `" + s + "` (use QQ or GF(p))");
}

mpq_class parse_coordinate(const json& v) {
  if (v.is_number_integer()) return mpq_class(mpz_class(std::to_string(v.get<std::int64_t>())));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos)
      throw ConfigError("bad coordinate `" + s + "`");
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ConfigError("bad coordinate `" + s + "`");
    q.canonicalize();
    return q;
  }
  throw ConfigError("coordinates must be integers or rational strings like \"1/2\"");
}

std::vector<std::string> string_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("`" + key + "` must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, key));
  return out;
}

EquationSpec parse_equation(const json& v, std::size_t n_vars, std::size_t index) {
  const std::string where = "system[" + std::to_string(index) + "]";
  if (!v.is_object()) throw ConfigError(where + " must be an object with `degree` and `poly`");
  reject_unknown(v, {"degree", "poly", "random"}, where);
  if (!v.contains("degree")) throw ConfigError(where + " needs a `degree`");
  EquationSpec eq;
  eq.degree = get_unsigned<std::uint32_t>(v["degree"], where + ".degree");
  if (eq.degree < 2) throw DegreeError(where + ": defining forms need degree at least 2");
  const bool random = v.contains("random") && v["random"].is_boolean() && v["random"].get<bool>();
  if (v.contains("random") && !v["random"].is_boolean()) throw ConfigError(where + ".random must be a boolean");
  if (random == v.contains("poly")) throw ConfigError(where + " needs exactly one of `poly` or `random: true`");
  if (!random) {
    eq.text = get_string(v["poly"], where + ".poly");
    eq.parsed = parse_polynomial(*eq.text, n_vars);
    for (const auto& t : eq.parsed) {
      Monomial m(t.exponents);
      if (m.degree() != eq.degree)
        throw DegreeError("term `" + m.to_string() + "` of `" + *eq.text + "` has degree " +
                          std::to_string(m.degree()) + ", declared degree is " + std::to_string(eq.degree));
    }
  }
  return eq;
}

PointSpec parse_point(const json& v, std::size_t n_vars, std::size_t index) {
  const std::string where = "singular_points[" + std::to_string(index) + "]";
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  reject_unknown(v, {"coords", "type", "delta", "tjurina", "conditions", "adjoint_conditions"}, where);
  if (!v.contains("coords") || !v["coords"].is_array()) throw ConfigError(where + " needs a `coords` list");
  PointSpec p;
  for (const auto& c : v["coords"]) p.coords.push_back(parse_coordinate(c));
  if (p.coords.size() != n_vars)
    throw ConfigError(where + ".coords has " + std::to_string(p.coords.size()) + " entries, expected " +
                      std::to_string(n_vars));
  bool nonzero = false;
  for (const auto& c : p.coords) nonzero = nonzero || c != 0;
  if (!nonzero) throw ConfigError(where + ".coords is the zero vector");
  if (v.contains("type")) {
    try {
      p.type = parse_singularity_type(get_string(v["type"], where + ".type"));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ".type: " + e.what());
    }
  }
  if (v.contains("delta")) p.delta = get_unsigned<std::uint32_t>(v["delta"], where + ".delta");
  if (v.contains("tjurina")) p.tjurina = get_unsigned<std::uint32_t>(v["tjurina"], where + ".tjurina");
  if (v.contains("conditions")) p.conditions = string_list(v["conditions"], where + ".conditions");
  if (v.contains("adjoint_conditions"))
    p.adjoint_conditions = string_list(v["adjoint_conditions"], where + ".adjoint_conditions");
  for (const auto& c : p.conditions) p.parsed_conditions.push_back(parse_polynomial(c, n_vars));
  for (const auto& c : p.adjoint_conditions) p.parsed_adjoint_conditions.push_back(parse_polynomial(c, n_vars));
  if (p.type == SingularityType::user && (!p.delta || !p.tjurina))
    throw ConfigError(where + ": user singularities need `delta` and `tjurina`");
  if (p.type != SingularityType::user && (p.delta || p.tjurina || !p.conditions.empty() || !p.adjoint_conditions.empty()))
    throw ConfigError(where + ": invariants and condition blocks are only accepted for type `user`");
  return p;
}

CommandOptions parse_options(const json& v) {
  if (!v.is_object()) throw ConfigError("`options` must be an object");
  reject_unknown(v, {"up_to", "k_max", "trials", "forms", "degree", "flavor", "deg_z", "domain"}, "options");
  CommandOptions o;
  if (v.contains("up_to")) o.up_to = get_unsigned<std::uint32_t>(v["up_to"], "options.up_to");
  if (v.contains("k_max")) o.k_max = get_unsigned<std::uint32_t>(v["k_max"], "options.k_max");
  if (v.contains("trials")) o.trials = get_unsigned<std::size_t>(v["trials"], "options.trials");
  if (v.contains("forms")) o.forms = string_list(v["forms"], "options.forms");
  if (v.contains("degree")) o.degree = get_unsigned<std::uint32_t>(v["degree"], "options.degree");
  if (v.contains("flavor")) {
    o.flavor = get_string(v["flavor"], "options.flavor");
    if (o.flavor != "points" && o.flavor != "adjoint" && o.flavor != "equisingular")
      throw ConfigError("options.flavor must be points, adjoint or equisingular");
  }
  if (v.contains("deg_z")) o.deg_z = get_unsigned<std::size_t>(v["deg_z"], "options.deg_z");
  if (v.contains("domain")) o.domain = parse_domain(get_string(v["domain"], "options.domain"));
  return o;
}

json point_json(const PointSpec& p) {
  json coords = json::array();
  for (const auto& c : p.coords) coords.push_back(c.get_str());
  json out = {{"coords", coords}, {"type", to_string(p.type)}};
  if (p.delta) out["delta"] = *p.delta;
  if (p.tjurina) out["tjurina"] = *p.tjurina;
  if (!p.conditions.empty()) out["conditions"] = p.conditions;
  if (!p.adjoint_conditions.empty()) out["adjoint_conditions"] = p.adjoint_conditions;
  return out;
}

}  // namespace

ParsedPoly parse_polynomial(const std::string& text, std::size_t n_vars) { return PolyLexer(text, n_vars).parse(); }

std::string to_string(Command c) {
  switch (c) {
    case Command::hilbert: return "hilbert";
    case Command::slp: return "slp";
    case Command::socle: return "socle";
    case Command::genus: return "genus";
    case Command::ideal_sections: return "ideal-sections";
    case Command::torelli: return "torelli";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (auto c : {Command::hilbert, Command::slp, Command::socle, Command::genus, Command::ideal_sections,
                 Command::torelli})
    if (to_string(c) == s) return c;
  throw ConfigError("unknown command `" + s + "` (expected hilbert, slp, socle, genus, ideal-sections or torelli)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "text") return OutputFormat::text;
  throw ConfigError("unknown output format `" + s + "` (expected json or text)");
}

nlohmann::json RunConfig::canonical() const {
  json sys = json::array();
  for (const auto& eq : system) {
    json e = {{"degree", eq.degree}};
    if (eq.text)
      e["poly"] = *eq.text;
    else
      e["random"] = true;
    sys.push_back(e);
  }
  json pts = json::array();
  for (const auto& p : singular_points) pts.push_back(point_json(p));
  json opts = json::object();
  if (options.up_to) opts["up_to"] = *options.up_to;
  if (options.k_max) opts["k_max"] = *options.k_max;
  opts["trials"] = options.trials;
  opts["forms"] = options.forms;
  if (options.degree) opts["degree"] = *options.degree;
  opts["flavor"] = options.flavor;
  if (options.deg_z) opts["deg_z"] = *options.deg_z;
  opts["domain"] = to_string(options.domain);
  return {{"field", field.name()},
          {"ambient", ambient},
          {"system", sys},
          {"singular_points", pts},
          {"command", to_string(command)},
          {"options", opts},
          {"assumptions", assumptions},
          {"seed", seed}};
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"field", "ambient", "system", "singular_points", "command", "options", "assumptions", "seed",
                  "output", "description"},
                 "config");
  RunConfig cfg;
  if (doc.contains("field")) cfg.field = parse_field(doc["field"]);
  if (doc.contains("ambient")) {
    cfg.ambient = get_unsigned<std::size_t>(doc["ambient"], "ambient");
    if (cfg.ambient < 2) throw ConfigError("`ambient` must be at least 2");
  }
  if (doc.contains("system")) {
    if (!doc["system"].is_array()) throw ConfigError("`system` must be a list of equations");
    for (std::size_t i = 0; i < doc["system"].size(); ++i)
      cfg.system.push_back(parse_equation(doc["system"][i], cfg.n_vars(), i));
  }
  if (doc.contains("singular_points")) {
    if (!doc["singular_points"].is_array()) throw ConfigError("`singular_points` must be a list");
    for (std::size_t i = 0; i < doc["singular_points"].size(); ++i)
      cfg.singular_points.push_back(parse_point(doc["singular_points"][i], cfg.n_vars(), i));
  }
  if (doc.contains("command")) cfg.command = parse_command(get_string(doc["command"], "command"));
  if (doc.contains("options")) cfg.options = parse_options(doc["options"]);
  if (doc.contains("assumptions")) cfg.assumptions = string_list(doc["assumptions"], "assumptions");
  if (doc.contains("seed")) cfg.seed = get_unsigned<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("output")) cfg.output = parse_format(get_string(doc["output"], "output"));
  if (doc.contains("description")) get_string(doc["description"], "description");
  return cfg;
}

}  // namespace ivhs::cli
