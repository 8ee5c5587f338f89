#include "ivhs/cli/run.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "ivhs/jacobian.hpp"
#include "ivhs/singularities.hpp"
#include "ivhs/torelli.hpp"

namespace ivhs::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::size_t kRandomAttempts = 16;

template <class Field>
struct Instance {
  Field field;
  std::size_t n_vars = 0;
  std::vector<HomogeneousPoly<Field>> forms;
  std::vector<SingularPoint<Field>> points;

  bool has_system() const { return !forms.empty(); }
  PolySystem<Field> system(Command c) const {
    if (forms.empty()) throw ConfigError("command `" + to_string(c) + "` needs a non-empty `system`");
    return PolySystem<Field>(forms);
  }
  std::vector<Vector<Field>> coords() const {
    std::vector<Vector<Field>> out;
    for (const auto& p : points) out.push_back(p.coords);
    return out;
  }
};

template <class Field>
Instance<Field> build_instance(const RunConfig& cfg, const Field& f, std::uint64_t seed) {
  Instance<Field> inst{f, cfg.n_vars(), {}, {}};
  for (const auto& spec : cfg.singular_points) {
    Vector<Field> coords;
    for (const auto& c : spec.coords) coords.push_back(f.from_rational(c));
    auto pt = make_singular_point(f, std::move(coords), spec.type, spec.delta, spec.tjurina);
    for (const auto& c : spec.parsed_conditions) pt.conditions.push_back(to_jet(c, f));
    for (const auto& c : spec.parsed_adjoint_conditions) pt.adjoint_conditions.push_back(to_jet(c, f));
    inst.points.push_back(std::move(pt));
  }

  std::mt19937_64 rng(seed);
  const bool single = cfg.system.size() == 1;
  for (const auto& eq : cfg.system) {
    if (eq.text) {
      inst.forms.push_back(to_homogeneous(eq.parsed, f, inst.n_vars, eq.degree, *eq.text));
      continue;
    }
    if (inst.points.empty()) {
      inst.forms.push_back(random_form(f, inst.n_vars, eq.degree, rng));
      continue;
    }
    if (!single)
      throw ConfigError("random equations with prescribed singular points are only supported for a single form");
    for (const auto& p : inst.points)
      if (p.type != SingularityType::A1)
        throw ConfigError("random equations can only be made singular with nodes (type A1)");
    for (std::size_t attempt = 0;; ++attempt) {
      auto form = random_singular_form(f, inst.n_vars, eq.degree, inst.coords(), rng);
      bool ok = !form.is_zero();
      for (const auto& p : inst.points) ok = ok && verify_singular(form, p.coords, p.type).consistent;
      if (ok) {
        inst.forms.push_back(std::move(form));
        break;
      }
      if (attempt + 1 == kRandomAttempts)
        throw InternalInconsistency("no random form with ordinary nodes at the given points after " +
                                    std::to_string(kRandomAttempts) + " draws");
    }
  }
  return inst;
}

template <class Field>
ojson poly_list(const std::vector<HomogeneousPoly<Field>>& polys) {
  ojson out = ojson::array();
  for (const auto& p : polys) out.push_back(to_string(p));
  return out;
}

template <class Field>
ojson subspace_basis(const Field& f, const GradedSubspace<Field>& s) {
  MonomialIndex index(s.n_vars, s.degree);
  ojson out = ojson::array();
  for (std::size_t c = 0; c < s.dimension(); ++c) out.push_back(to_string(from_coordinates(f, index, s.basis.column(c))));
  return out;
}

template <class Field>
void verify_points(const Instance<Field>& inst, const PolySystem<Field>& system) {
  for (const auto& p : inst.points) {
    if (system.size() == 1) {
      auto check = verify_singular(system.form(0), p.coords, p.type);
      if (!check.consistent)
        throw MissingConditions("point claimed " + to_string(p.type) + " has Hessian rank " +
                                std::to_string(check.hessian_rank));
    } else {
      verify_on_system(system, p.coords);
    }
  }
}

template <class Field>
std::optional<DegreeData> degree_data(const PolySystem<Field>& system) {
  const auto d = system.degrees();
  if (system.size() == 1 && system.n_vars() == 3) return PlaneCurveDegree{d[0]};
  if (system.size() == 2 && system.n_vars() == 4) return CompleteIntersectionType{d[0], d[1]};
  return std::nullopt;
}

template <class Field>
ojson run_hilbert(const RunConfig& cfg, const Instance<Field>& inst) {
  JacobianModel<Field> model(inst.system(cfg.command));
  const std::uint32_t up_to = cfg.options.up_to.value_or(model.artinian_scan_bound());
  const auto h = model.hilbert_function(up_to);
  return {{"up_to", up_to}, {"scan_bound", model.artinian_scan_bound()}, {"hilbert", h},
          {"zero_at_up_to", h.back() == 0}};
}

template <class Field>
ojson run_socle(const RunConfig& cfg, const Instance<Field>& inst) {
  JacobianModel<Field> model(inst.system(cfg.command));
  const std::uint32_t k_max = cfg.options.k_max.value_or(model.artinian_scan_bound());
  const auto rep = model.socle_report(k_max);
  ojson pairing = ojson::object();
  for (const auto& [a, ok] : rep.pairing_perfect) pairing[std::to_string(a)] = ok;
  ojson sigma = rep.sigma_observed ? ojson(*rep.sigma_observed) : ojson(nullptr);
  ojson out = {{"k_max", k_max},
               {"hilbert", rep.hilbert},
               {"artinian_within_bound", rep.artinian_within_bound},
               {"sigma_observed", sigma},
               {"symmetric", rep.symmetric},
               {"top_dimension", rep.top_dimension},
               {"gorenstein_shaped", rep.gorenstein_shaped},
               {"pairing_perfect", pairing},
               {"formula_sigma", rep.formula_sigma},
               {"formula_discrepancy", rep.formula_discrepancy}};
  ojson flags = ojson::array();
  if (!rep.artinian_within_bound) flags.push_back("NotArtinianWithinBound");
  if (rep.sigma_observed && !rep.gorenstein_shaped) flags.push_back("NotGorensteinShaped");
  if (rep.formula_discrepancy) flags.push_back("FormulaSigmaDiscrepancy");
  out["flags"] = flags;
  return out;
}

template <class Field>
ojson run_slp(const RunConfig& cfg, const Instance<Field>& inst) {
  JacobianModel<Field> model(inst.system(cfg.command));
  SlpReport<Field> rep;
  if (cfg.options.forms.empty()) {
    rep = model.slp_check(cfg.options.trials, cfg.seed);
  } else {
    std::vector<HomogeneousPoly<Field>> forms;
    for (const auto& text : cfg.options.forms)
      forms.push_back(to_homogeneous(parse_polynomial(text, inst.n_vars), inst.field, inst.n_vars, 1, text));
    rep = model.slp_check_forms(forms);
  }
  ojson trials = ojson::array();
  for (const auto& t : rep.trials) {
    ojson checks = ojson::array();
    for (const auto& c : t.checks)
      checks.push_back({{"source", c.source}, {"power", c.power}, {"rank", c.rank}, {"expected", c.expected}});
    trials.push_back({{"form", to_string(t.form)},
                      {"pass", t.pass},
                      {"failures", t.failures.size()},
                      {"checks", checks}});
  }
  ojson sigma = rep.sigma ? ojson(*rep.sigma) : ojson(nullptr);
  return {{"pass", rep.pass}, {"artinian", rep.artinian}, {"sigma", sigma}, {"warnings", rep.warnings},
          {"trials", trials}};
}

template <class Field>
ojson run_genus(const RunConfig& cfg, const Instance<Field>& inst) {
  const auto system = inst.system(cfg.command);
  const auto data = degree_data(system);
  if (!data) throw ConfigError("genus is available for plane curves and complete intersections of two surfaces in P3");
  verify_points(inst, system);
  std::vector<std::uint32_t> deltas;
  for (const auto& p : inst.points) deltas.push_back(p.delta);
  const std::string kind = std::holds_alternative<PlaneCurveDegree>(*data) ? "plane curve" : "complete intersection";
  const std::int64_t pa = arithmetic_genus(*data);
  const std::int64_t g = geometric_genus(*data, deltas);
  return {{"curve", kind}, {"degrees", system.degrees()}, {"arithmetic_genus", pa}, {"deltas", deltas},
          {"geometric_genus", g}};
}

template <class Field>
ojson run_ideal_sections(const RunConfig& cfg, const Instance<Field>& inst) {
  const auto& opt = cfg.options;
  const Field& f = inst.field;
  ConditionMatrix<Field> cond;
  std::uint32_t k = 0;
  std::size_t deg_z = 0;
  std::optional<std::int64_t> genus;
  if (opt.flavor == "points") {
    if (!opt.degree) throw ConfigError("ideal-sections with flavor `points` needs options.degree");
    if (inst.points.empty()) throw ConfigError("ideal-sections needs `singular_points`");
    k = *opt.degree;
    cond = point_conditions(f, inst.n_vars, inst.coords(), k);
    deg_z = inst.points.size();
  } else {
    const auto system = inst.system(cfg.command);
    if (opt.flavor == "adjoint") {
      const std::int64_t a = static_cast<std::int64_t>(system.degree_sum()) - static_cast<std::int64_t>(system.n_vars());
      if (!opt.degree && a < 0) throw DegreeError("adjoint degree sum(d_i) - N - 1 = " + std::to_string(a) + " is negative");
      k = opt.degree.value_or(static_cast<std::uint32_t>(a));
      cond = adjoint_conditions(system, inst.points, k);
      deg_z = cond.row_count();
      if (auto data = degree_data(system)) {
        try {
          genus = geometric_genus(*data, inst.points);
        } catch (const GenusNegative&) {
        }
      }
    } else {
      if (system.size() != 1) throw ConfigError("flavor `equisingular` is available for a single form");
      k = opt.degree.value_or(system.form(0).degree());
      cond = equisingular_conditions(system.form(0), inst.points, k);
      for (const auto& p : inst.points) deg_z += p.tjurina;
    }
  }
  if (opt.deg_z) deg_z = *opt.deg_z;
  const auto sections = sections_of_ideal(cond, k);
  ojson out = {{"flavor", opt.flavor},
               {"degree", k},
               {"ambient_dimension", binomial(k + inst.n_vars - 1, inst.n_vars - 1)},
               {"conditions", cond.row_count()},
               {"rank", rank(cond.rows)},
               {"dimension", sections.dimension()},
               {"deg_z", deg_z},
               {"h1_defect", h1_defect(cond, k, deg_z)},
               {"basis", subspace_basis(f, sections)}};
  if (genus) out["geometric_genus"] = *genus;
  return out;
}

std::string moduli_line(std::size_t def, std::size_t trivial, std::optional<std::int64_t> genus) {
  std::ostringstream s;
  s << def << " - " << trivial << " = " << static_cast<std::int64_t>(def) - static_cast<std::int64_t>(trivial);
  if (genus) s << "; 3g-3 = " << 3 * *genus - 3 << " (g = " << *genus << ")";
  return s.str();
}

template <class Field>
ojson run_torelli(const RunConfig& cfg, const Instance<Field>& inst) {
  const auto system = inst.system(cfg.command);
  const auto rep = torelli_verdict(system, inst.points, cfg.options.domain, cfg.assumptions);
  ojson witness = nullptr;
  if (rep.witness) witness = poly_list(*rep.witness);
  ojson h1 = rep.h1_defect ? ojson(*rep.h1_defect) : ojson(nullptr);
  ojson genus = rep.genus ? ojson(*rep.genus) : ojson(nullptr);
  ojson domains = ojson::object();
  if (rep.source_degree >= 0) {
    const auto a = static_cast<std::uint32_t>(rep.source_degree);
    domains["full"] = binomial(a + system.n_vars() - 1, system.n_vars() - 1);
    try {
      domains["adjoint"] = sections_of_ideal(adjoint_conditions(system, inst.points, a), a).dimension();
    } catch (const MissingConditions&) {
      domains["adjoint"] = nullptr;
    }
  }
  return {{"verdict", to_string(rep.verdict)},
          {"reason", rep.reason},
          {"domain", to_string(rep.domain_used)},
          {"route", to_string(rep.route)},
          {"dim_def", rep.dim_def},
          {"dim_trivial", rep.dim_trivial},
          {"dim_kernel", rep.dim_kernel},
          {"kernel_in_trivial", rep.kernel_in_trivial},
          {"trivial_in_kernel", rep.trivial_in_kernel},
          {"unexplained_kernel", rep.unexplained_kernel()},
          {"moduli_count", rep.moduli_count()},
          {"moduli_line", moduli_line(rep.dim_def, rep.dim_trivial, rep.genus)},
          {"genus", genus},
          {"source_degree", rep.source_degree},
          {"target_degree", rep.target_degree},
          {"domain_dim", rep.domain_dim},
          {"test_form_spaces", domains},
          {"target_dim", rep.target_dim},
          {"deg_z", rep.deg_z},
          {"h1_defect", h1},
          {"h1_vanishing", rep.h1_defect ? ojson(*rep.h1_defect == 0) : ojson(nullptr)},
          {"witness", witness}};
}

template <class Field>
ojson execute(const RunConfig& cfg, const Field& f, std::uint64_t seed, ojson& system_echo) {
  const auto inst = build_instance(cfg, f, seed);
  system_echo = ojson::array();
  for (std::size_t i = 0; i < inst.forms.size(); ++i) {
    ojson e = {{"degree", cfg.system[i].degree}, {"poly", to_string(inst.forms[i])}};
    if (!cfg.system[i].text) e["random"] = true;
    system_echo.push_back(e);
  }
  switch (cfg.command) {
    case Command::hilbert: return run_hilbert(cfg, inst);
    case Command::socle: return run_socle(cfg, inst);
    case Command::slp: return run_slp(cfg, inst);
    case Command::genus: return run_genus(cfg, inst);
    case Command::ideal_sections: return run_ideal_sections(cfg, inst);
    case Command::torelli: return run_torelli(cfg, inst);
  }
  throw ConfigError("unhandled command");
}

ojson execute_spec(const RunConfig& cfg, const FieldSpec& spec, std::uint64_t seed, ojson& echo) {
  if (spec.kind == FieldKind::rationals) return execute(cfg, RationalField{}, seed, echo);
  return execute(cfg, PrimeField(spec.characteristic), seed, echo);
}

bool has_random_equation(const RunConfig& cfg) {
  for (const auto& eq : cfg.system)
    if (!eq.text) return true;
  return false;
}

// A violated verdict over a prime field is recomputed over the rationals, and
// for random instances also with the next two seeds. The reported verdict is
// violated only if every recomputation agrees.
void reverify(const RunConfig& cfg, ojson& result) {
  if (cfg.command != Command::torelli || cfg.field.kind != FieldKind::prime) return;
  if (result["verdict"] != to_string(Verdict::violated)) return;
  std::vector<std::pair<FieldSpec, std::uint64_t>> reruns{{FieldSpec::rationals(), cfg.seed}};
  if (has_random_equation(cfg)) {
    reruns.emplace_back(cfg.field, cfg.seed + 1);
    reruns.emplace_back(cfg.field, cfg.seed + 2);
  }
  ojson log = ojson::array();
  bool confirmed = true;
  std::string rescue;
  for (const auto& [spec, seed] : reruns) {
    ojson echo;
    ojson entry = {{"field", spec.name()}, {"seed", seed}};
    try {
      ojson r = execute_spec(cfg, spec, seed, echo);
      entry["verdict"] = r["verdict"];
      entry["dim_kernel"] = r["dim_kernel"];
      if (r["verdict"] != to_string(Verdict::violated)) {
        confirmed = false;
        if (rescue.empty()) rescue = r["verdict"].get<std::string>();
      }
    } catch (const Error& e) {
      entry["verdict"] = nullptr;
      entry["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    }
    log.push_back(entry);
  }
  result["instance_verdict"] = result["verdict"];
  result["reverification"] = log;
  if (!confirmed) result["verdict"] = rescue;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ojson conventions() {
  return {{"monomial_order", "graded lex, x0 < x1 < ... (degree first, then the exponent of the last variable)"},
          {"singular_scheme", "Tjurina ideal: A1 evaluation; A2 evaluation plus the derivative along the tangent cone"},
          {"kernel_test", "kernel contained in span(vector-field tuples, ideal-change tuples)"}};
}

ojson base_body(const RunConfig& cfg) {
  const auto canon = cfg.canonical();
  ojson body;
  body["tool_version"] = kToolVersion;
  body["command"] = to_string(cfg.command);
  body["input_hash"] = input_hash(cfg);
  body["seed"] = cfg.seed;
  body["field"] = cfg.field.name();
  body["ambient"] = cfg.ambient;
  body["system"] = ojson::parse(canon["system"].dump());
  body["singular_points"] = ojson::parse(canon["singular_points"].dump());
  body["options"] = ojson::parse(canon["options"].dump());
  body["assumptions"] = cfg.assumptions;
  body["conventions"] = conventions();
  body["result"] = nullptr;
  body["error"] = nullptr;
  body["cached"] = false;
  return body;
}

std::string scalar_text(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const std::string& prefix, const ojson& v, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    if (v.empty()) rows.emplace_back(prefix, "{}");
    for (const auto& [k, sub] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, sub, rows);
    return;
  }
  if (v.is_array()) {
    bool scalars = true;
    for (const auto& e : v) scalars = scalars && !e.is_structured();
    if (scalars) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
      rows.emplace_back(prefix, s + "]");
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) flatten(prefix + "[" + std::to_string(i) + "]", v[i], rows);
    return;
  }
  rows.emplace_back(prefix, scalar_text(v));
}

constexpr std::size_t kKeyWidth = 40;

std::string table_row(const std::string& key, const std::string& value) {
  std::string k = key;
  if (k.size() < kKeyWidth) k.append(kKeyWidth - k.size(), ' ');
  return k + " " + value;
}

}  // namespace

std::string Report::verdict() const {
  if (has_error()) return "error";
  if (!body.contains("result") || !body["result"].is_object()) return "none";
  const auto& r = body["result"];
  if (r.contains("verdict")) return r["verdict"].get<std::string>();
  if (r.contains("pass")) return r["pass"].get<bool>() ? "pass" : "fail";
  return "none";
}

int Report::exit_code() const {
  if (has_error()) {
    const auto kind = body["error"]["kind"].get<std::string>();
    return kind == "ConfigError" || kind == "DegreeError" ? 1 : 2;
  }
  return verdict() == to_string(Verdict::violated) ? 3 : 0;
}

std::string input_hash(const RunConfig& cfg) {
  nlohmann::json keyed = cfg.canonical();
  keyed["tool_version"] = kToolVersion;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(keyed.dump())));
  return buf;
}

Report run(const RunConfig& cfg) {
  Report rep{base_body(cfg)};
  try {
    ojson echo;
    ojson result = execute_spec(cfg, cfg.field, cfg.seed, echo);
    reverify(cfg, result);
    rep.body["system"] = echo;
    rep.body["result"] = result;
  } catch (const Error& e) {
    rep.body["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    rep.body["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
  }
  return rep;
}

Report run_cached(const RunConfig& cfg, const CacheSettings& cache) {
  if (!cache.enabled) return run(cfg);
  namespace fs = std::filesystem;
  const fs::path file = cache.dir / (input_hash(cfg) + ".json");
  if (std::ifstream in{file}) {
    try {
      Report hit{ojson::parse(in)};
      hit.body["cached"] = true;
      return hit;
    } catch (const nlohmann::json::exception&) {
    }
  }
  Report fresh = run(cfg);
  if (fresh.has_error()) return fresh;
  std::error_code ec;
  fs::create_directories(cache.dir, ec);
  if (ec) return fresh;
  const fs::path tmp = file.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
    if (!out) return fresh;
    out << fresh.body.dump(2) << "\n";
    if (!out) {
      fs::remove(tmp, ec);
      return fresh;
    }
  }
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
  return fresh;
}

std::filesystem::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("IVHS_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "ivhs";
  return std::filesystem::temp_directory_path() / "ivhs-cache";
}

std::string verdict_line(const Report& report) { return table_row("verdict", report.verdict()); }

std::string emit(const Report& report, OutputFormat format) {
  if (format == OutputFormat::json) return report.body.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten("", report.body, rows);
  std::string out = verdict_line(report) + "\n";
  for (const auto& [k, v] : rows) out += table_row(k, v) + "\n";
  return out;
}

Report error_report(const std::string& command, const Error& e) {
  ojson body;
  body["tool_version"] = kToolVersion;
  body["command"] = command;
  body["result"] = nullptr;
  body["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  body["cached"] = false;
  return {body};
}

}  // namespace ivhs::cli
