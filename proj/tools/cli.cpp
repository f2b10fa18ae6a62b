#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "phaseop/matrix_io.hpp"
#include "phaseop/ml_expansion.hpp"

namespace phaseop::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ConfigError(field + ": '" + text + "' is not a number");
  }
  return v;
}

unsigned long parse_count(const std::string& text, const std::string& field) {
  unsigned long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ConfigError(field + ": '" + text + "' is not a non-negative integer");
  }
  return v;
}

cplx parse_cplx(const std::string& text, const std::string& field) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_double(parts[0], field), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0], field), parse_double(parts[1], field)};
  throw ConfigError(field + ": expected 're' or 're,im', got '" + text + "'");
}

std::optional<std::size_t> parse_auto_count(const std::string& text, const std::string& field) {
  if (text == "auto") return std::nullopt;
  return parse_count(text, field);
}

// JSON readers: field-named errors, no silent coercion.
std::size_t json_count(const json& j, const std::string& field) {
  const bool ok = j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
  if (!ok) throw ConfigError(field + ": expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

double json_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number, got " + j.dump());
  return j.get<double>();
}

cplx json_cplx(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(field + ": expected a number or [re, im], got " + j.dump());
}

std::optional<std::size_t> json_auto_count(const json& j, const std::string& field) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "auto")) return std::nullopt;
  return json_count(j, field);
}

template <class F>
auto json_list(const json& j, const std::string& field, F&& item) {
  if (!j.is_array()) throw ConfigError(field + ": expected a list, got " + j.dump());
  std::vector<decltype(item(j, field))> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

Precision precision_of(const RunConfig& c) { return Precision(c.precision_bits); }

MLParams ml_params(const RunConfig& c, unsigned p) {
  try {
    return c.h ? make_ml_params(p, *c.h) : auto_ml_params(p);
  } catch (const ConstraintViolation& e) {
    throw ConfigError(e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

json read_json_file(const fs::path& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + what + " " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + " " + path.string() + ": " + e.what());
  }
}

PolynomialSequence f_sequence(const RunConfig& c) {
  if (c.coeffs.empty()) throw ConfigError("f-of-a needs coefficients (--coeff re,im repeated, or --coeffs FILE)");
  return monomial_sequence(c.coeffs, c.z0, precision_of(c));
}

struct RawFlags {
  std::string config, p, dim, pad, z0, variant, precision_bits, radius, quad_nodes, p_grid, out, h, coeffs_file;
  std::vector<std::string> alphas, phis, tolerances, coeffs;
};

void add_common(CLI::App* sub, RawFlags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--p", f.p, "expansion order p >= 1");
  sub->add_option("--dim", f.dim, "target dimension D");
  sub->add_option("--pad", f.pad, "padding rows/columns or 'auto'");
  sub->add_option("--z0", f.z0, "expansion center re,im (f-of-a, quadrature)");
  sub->add_option("--variant", f.variant, "full | ln7-literal");
  sub->add_option("--precision-bits", f.precision_bits, "significand bits >= 53");
  sub->add_option("--radius", f.radius, "quadrature contour radius");
  sub->add_option("--quad-nodes", f.quad_nodes, "quadrature node count or 'auto'");
  sub->add_option("--alpha", f.alphas, "coherent amplitude re,im (repeatable)");
  sub->add_option("--phi", f.phis, "phase in (-pi, pi) (repeatable)");
  sub->add_option("--p-grid", f.p_grid, "comma-separated list of p");
  sub->add_option("--tolerance", f.tolerances, "check=value override (repeatable)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--h", f.h, "force the star-expansion h");
  sub->add_option("--coeff", f.coeffs, "f-of-a coefficient re,im about z0 (repeatable, k = 0, 1, ...)");
  sub->add_option("--coeffs", f.coeffs_file, "coefficient JSON with z0 and C");
}

RunConfig resolve(const RawFlags& f) {
  RunConfig c;
  if (!f.config.empty()) c = config_from_json(read_json_file(f.config, "config"));
  if (!f.p.empty()) c.p = static_cast<unsigned>(parse_count(f.p, "p"));
  if (!f.dim.empty()) c.dim = parse_count(f.dim, "dim");
  if (!f.pad.empty()) c.pad = parse_auto_count(f.pad, "pad");
  if (!f.coeffs_file.empty()) {
    const json doc = read_json_file(f.coeffs_file, "coefficient file");
    if (!doc.is_object() || !doc.contains("C")) throw ConfigError("coefficient file needs a 'C' list");
    c.coeffs = json_list(doc["C"], "C", json_cplx);
    if (doc.contains("z0")) c.z0 = json_cplx(doc["z0"], "z0");
  }
  if (!f.z0.empty()) c.z0 = parse_cplx(f.z0, "z0");
  if (!f.variant.empty()) {
    try {
      c.variant = parse_variant(f.variant);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (!f.precision_bits.empty()) c.precision_bits = static_cast<mp::Bits>(parse_count(f.precision_bits, "precision_bits"));
  if (!f.radius.empty()) c.radius = parse_double(f.radius, "radius");
  if (!f.quad_nodes.empty()) c.quad_nodes = parse_auto_count(f.quad_nodes, "quad_nodes");
  if (!f.alphas.empty()) {
    c.alphas.clear();
    for (const auto& a : f.alphas) c.alphas.push_back(parse_cplx(a, "alpha"));
  }
  if (!f.phis.empty()) {
    c.phis.clear();
    for (const auto& p : f.phis) c.phis.push_back(parse_double(p, "phi"));
  }
  if (!f.p_grid.empty()) {
    c.p_grid.clear();
    for (const auto& p : split(f.p_grid, ',')) c.p_grid.push_back(static_cast<unsigned>(parse_count(p, "p_grid")));
  }
  for (const auto& t : f.tolerances) {
    const auto eq = t.rfind('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("tolerance: expected name=value, got '" + t + "'");
    c.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1), "tolerance " + t.substr(0, eq));
  }
  if (!f.out.empty()) c.output_dir = f.out;
  if (!f.h.empty()) c.h = parse_double(f.h, "h");
  if (!f.coeffs.empty()) {
    c.coeffs.clear();
    for (const auto& k : f.coeffs) c.coeffs.push_back(parse_cplx(k, "coeff"));
  }
  validate(c);
  return c;
}

void log_line(std::ostream& log, const std::string& s) { log << "phaseop: " << s << "\n"; }

}  // namespace

void validate(const RunConfig& c) {
  if (c.p < 1) throw ConfigError("p must be at least 1");
  if (c.dim < 1) throw ConfigError("dim must be at least 1");
  if (c.precision_bits < 53) throw ConfigError("precision_bits must be at least 53");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) throw ConfigError("radius must be a positive finite number");
  if (c.quad_nodes && *c.quad_nodes < 2) throw ConfigError("quad_nodes must be at least 2");
  if (!std::isfinite(std::abs(c.z0))) throw ConfigError("z0 must be finite");
  for (unsigned q : c.p_grid)
    if (q < 1) throw ConfigError("p_grid entries must be at least 1");
  for (cplx a : c.alphas)
    if (!std::isfinite(std::abs(a))) throw ConfigError("alphas must be finite");
  for (double phi : c.phis)
    if (!std::isfinite(phi)) throw ConfigError("phis must be finite");
  for (const auto& [name, tol] : c.tolerances)
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("tolerance " + name + " must be finite and >= 0");
  if (c.h && (!(*c.h > 0.0) || !std::isfinite(*c.h))) throw ConfigError("h must be positive");
  if (c.h) (void)ml_params(c, c.p);
}

RunConfig config_from_json(const json& doc, RunConfig c) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"p",      "dim",      "pad",       "z0",         "variant",
                                           "precision_bits", "radius", "quad_nodes", "alphas", "phis",
                                           "p_grid", "tolerances", "output_dir", "h",          "coeffs"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  if (doc.contains("p")) c.p = static_cast<unsigned>(json_count(doc["p"], "p"));
  if (doc.contains("dim")) c.dim = json_count(doc["dim"], "dim");
  if (doc.contains("pad")) c.pad = json_auto_count(doc["pad"], "pad");
  if (doc.contains("z0")) c.z0 = json_cplx(doc["z0"], "z0");
  if (doc.contains("variant")) {
    if (!doc["variant"].is_string()) throw ConfigError("variant: expected a string");
    try {
      c.variant = parse_variant(doc["variant"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (doc.contains("precision_bits"))
    c.precision_bits = static_cast<mp::Bits>(json_count(doc["precision_bits"], "precision_bits"));
  if (doc.contains("radius")) c.radius = json_real(doc["radius"], "radius");
  if (doc.contains("quad_nodes")) c.quad_nodes = json_auto_count(doc["quad_nodes"], "quad_nodes");
  if (doc.contains("alphas")) c.alphas = json_list(doc["alphas"], "alphas", json_cplx);
  if (doc.contains("phis")) c.phis = json_list(doc["phis"], "phis", json_real);
  if (doc.contains("p_grid")) {
    c.p_grid.clear();
    for (std::size_t q : json_list(doc["p_grid"], "p_grid", json_count)) c.p_grid.push_back(static_cast<unsigned>(q));
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances: expected an object of name: value");
    c.tolerances.clear();
    for (const auto& [name, v] : t.items()) c.tolerances[name] = json_real(v, "tolerances." + name);
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir: expected a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("h")) {
    if (doc["h"].is_null()) {
      c.h.reset();
    } else {
      c.h = json_real(doc["h"], "h");
    }
  }
  if (doc.contains("coeffs")) c.coeffs = json_list(doc["coeffs"], "coeffs", json_cplx);
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["p"] = c.p;
  j["dim"] = c.dim;
  j["pad"] = c.pad ? json(*c.pad) : json("auto");
  j["z0"] = cplx_json(c.z0);
  j["variant"] = to_string(c.variant);
  j["precision_bits"] = c.precision_bits;
  j["radius"] = c.radius;
  j["quad_nodes"] = c.quad_nodes ? json(*c.quad_nodes) : json("auto");
  j["alphas"] = json::array();
  for (cplx a : c.alphas) j["alphas"].push_back(cplx_json(a));
  j["phis"] = c.phis;
  j["p_grid"] = c.p_grid;
  j["tolerances"] = c.tolerances;
  j["output_dir"] = c.output_dir.string();
  j["h"] = c.h ? json(*c.h) : json(nullptr);
  j["coeffs"] = json::array();
  for (cplx k : c.coeffs) j["coeffs"].push_back(cplx_json(k));
  return j;
}

CheckContext check_context(const RunConfig& c) {
  CheckContext ctx;
  ctx.pad = c.pad;
  ctx.variant = c.variant;
  ctx.precision = precision_of(c);
  ctx.h = c.h;
  return ctx;
}

SuiteConfig suite_config(const RunConfig& c, Profile profile) {
  SuiteConfig s;
  s.profile = profile;
  s.p = c.p;
  s.dim = c.dim;
  s.ctx = check_context(c);
  s.z0 = c.z0;
  s.radius = c.radius;
  s.quad_nodes = c.quad_nodes;
  s.alphas = c.alphas;
  s.phis = c.phis;
  s.p_grid = c.p_grid;
  s.tolerances = c.tolerances;
  return s;
}

std::string ml_coeffs_document(const RunConfig& c) {
  const MLParams params = ml_params(c, c.p);
  const PolynomialSequence seq = ml_coefficients(params, precision_of(c));
  return coefficients_to_json(seq, params).dump(2) + "\n";
}

fs::path cmd_ml_coeffs(const RunConfig& c, std::ostream& log) {
  const fs::path path = c.output_dir / "ml_coeffs.json";
  write_file(path, ml_coeffs_document(c));
  log_line(log, "wrote " + path.string());
  return path;
}

fs::path cmd_build(const RunConfig& c, const std::string& target, std::ostream& log) {
  const BuildSpec spec{c.dim, c.pad, c.variant, precision_of(c)};
  PolynomialSequence seq;
  if (target == "ln-a" || target == "phase-op") {
    if (target == "phase-op" && c.dim > max_double_y_dim()) {
      throw RangeError("phase-op: dimension " + std::to_string(c.dim) + " exceeds the Y range limit " +
                           std::to_string(max_double_y_dim()) + " at double output",
                       c.dim);
    }
    seq = ml_coefficients(ml_params(c, c.p), spec.precision);
  } else if (target == "f-of-a") {
    seq = f_sequence(c);
  } else {
    throw ConfigError("unknown build target '" + target + "' (expected ln-a, phase-op or f-of-a)");
  }
  const BuildPlan plan = plan_build(seq, spec);
  std::ostringstream msg;
  msg << "build target=" << target << " dim=" << plan.dim << " pad=" << plan.pad << " variant=" << to_string(c.variant)
      << " precision=" << plan.requested_bits << " working_bits=" << plan.working_bits;
  log_line(log, msg.str());

  MpFockOperator op = build_function_operator(seq, spec);
  if (target == "phase-op") op = phase_from_ln_a(op);
  const fs::path path = c.output_dir / (target + ".matrix");
  write_file(path, format_matrix(to_double(op)));
  log_line(log, "wrote " + path.string());
  return path;
}

fs::path cmd_verify(const RunConfig& c, Profile profile, std::ostream& log, bool& all_passed) {
  const VerificationReport report = run_suite(suite_config(c, profile));
  const fs::path path = c.output_dir / "report.json";
  write_file(path, to_json(report).dump(2) + "\n");
  for (const auto& r : report.checks) {
    if (r.asserted && !r.passed) {
      log_line(log, "FAIL " + r.name + " residual=" + format_double(r.residual) +
                        " tolerance=" + format_double(r.tolerance) + (r.note.empty() ? "" : " (" + r.note + ")"));
    }
  }
  std::ostringstream msg;
  msg << "verify profile=" << to_string(profile) << " checks=" << report.checks.size()
      << " asserted=" << report.asserted_count() << " failures=" << report.failure_count();
  log_line(log, msg.str());
  log_line(log, "wrote " + path.string());
  all_passed = report.all_passed();
  return path;
}

std::string converge_csv(const RunConfig& c) {
  if (c.p_grid.empty()) throw ConfigError("converge needs a non-empty p_grid");
  const CheckContext ctx = check_context(c);
  const Precision prec = precision_of(c);
  if (coherent_tail_mass(c.dim, 2.0) > kCoherentTailGate) {
    throw ConfigError("converge: dim " + std::to_string(c.dim) + " is not tail-safe for alpha = 2");
  }
  const std::set<unsigned> grid(c.p_grid.begin(), c.p_grid.end());
  std::ostringstream csv;
  csv << "p,h,scalar_err_z2,scalar_err_z05,eigen_residual_alpha2,phase_residual_pi_over_2\n";
  for (unsigned q : grid) {
    const MLParams params = ml_params(c, q);
    const PolynomialSequence seq = ml_coefficients(params, prec);
    auto scalar_err = [&](double z) {
      const mp::Complex zz(cplx(z), prec.bits());
      return mp::abs(scalar_partial_sum(seq, zz) - mp::log(zz)).to_double();
    };
    const double eig = ln_eigen_residual(q, c.dim, 2.0, ctx);
    const double phase = check_phase_eigenstate(q, c.dim, std::numbers::pi / 2, ctx)[1].residual;
    csv << q << ',' << format_double(params.h) << ',' << format_double(scalar_err(2.0)) << ','
        << format_double(scalar_err(0.5)) << ',' << format_double(eig) << ',' << format_double(phase) << '\n';
  }
  return csv.str();
}

fs::path cmd_converge(const RunConfig& c, std::ostream& log) {
  const fs::path path = c.output_dir / "converge.csv";
  write_file(path, converge_csv(c));
  log_line(log, "wrote " + path.string());
  return path;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and verify ln(a) and the phase operator on truncated Fock spaces", "phaseop"};
  app.require_subcommand(1, 1);
  // --h is the star-expansion parameter, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");

  RawFlags ml_flags, build_flags, verify_flags, converge_flags;
  CLI::App* ml = app.add_subcommand("ml-coeffs", "write star-expansion coefficients as JSON");
  add_common(ml, ml_flags);
  CLI::App* build = app.add_subcommand("build", "write an operator matrix file");
  add_common(build, build_flags);
  std::string target;
  build->add_option("--target", target, "ln-a | phase-op | f-of-a")
      ->required()
      ->check(CLI::IsMember({"ln-a", "phase-op", "f-of-a"}));
  CLI::App* verify = app.add_subcommand("verify", "run the identity checks and write report.json");
  add_common(verify, verify_flags);
  std::string profile = "fast";
  verify->add_option("--profile", profile, "fast | all")->check(CLI::IsMember({"fast", "all"}));
  CLI::App* converge = app.add_subcommand("converge", "write the convergence table as CSV");
  add_common(converge, converge_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (ml->parsed()) {
      out << cmd_ml_coeffs(resolve(ml_flags), err).string() << "\n";
    } else if (build->parsed()) {
      out << cmd_build(resolve(build_flags), target, err).string() << "\n";
    } else if (verify->parsed()) {
      bool passed = false;
      out << cmd_verify(resolve(verify_flags), parse_profile(profile), err, passed).string() << "\n";
      return passed ? kOk : kChecksFailed;
    } else if (converge->parsed()) {
      out << cmd_converge(resolve(converge_flags), err).string() << "\n";
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "phaseop: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "phaseop: io error: " << e.what() << "\n";
    return kIoError;
  } catch (const RangeError& e) {
    err << "phaseop: range error at dimension " << e.dimension() << ": " << e.what() << "\n";
    return kRangeError;
  } catch (const std::invalid_argument& e) {
    err << "phaseop: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "phaseop: domain error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "phaseop: error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace phaseop::cli
