#pragma once

// Command-line front end. run_cli() takes the arguments without the program
// name and returns the process exit code:
//   0 success, 1 verification failure, 2 usage / parse / domain error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracsh/fracsh.hpp"
#include "fracsh/report.hpp"

namespace fracsh::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

inline constexpr const char* output_dir_env = "FRACSH_OUTPUT_DIR";

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct HarmonicArgs {
  std::string l;
  std::string m;
  std::string form = "cos";
};

inline void add_harmonic_options(CLI::App* cmd, HarmonicArgs& a) {
  cmd->add_option("--l", a.l, "degree as p/q")->required();
  cmd->add_option("--m", a.m, "order as p/q (default: +l, or -l for complex_minus; 0 for integer l)");
  cmd->add_option("--form", a.form, "complex_plus | complex_minus | cos | sin")->capture_default_str();
}

inline HarmonicSpec make_spec(const HarmonicArgs& a) {
  const Rational l = Rational::parse(a.l);
  const Form form = parse_form(a.form);
  if (l < 0) throw DomainError("l must be non-negative");
  if (!a.m.empty()) return HarmonicSpec(l, Rational::parse(a.m), form);
  if (l.is_integer()) return HarmonicSpec(l, 0, form);
  return HarmonicSpec::fractional(l, form);
}

inline std::string slug(const HarmonicSpec& spec) {
  std::string s = "l" + spec.degree().to_string() + "_" + std::string(to_string(spec.form()));
  std::replace(s.begin(), s.end(), '/', '-');
  return s;
}

inline std::filesystem::path output_path(const std::string& requested, const std::string& stem, const std::string& ext) {
  if (!requested.empty()) return requested;
  const char* dir = std::getenv(output_dir_env);
  return std::filesystem::path(dir && *dir ? dir : ".") / (stem + "." + ext);
}

inline std::pair<double, double> parse_fraction_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range must look like a:b, got '" + text + "'");
  auto read = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError("bad range bound '" + part + "'");
    }
    if (used != part.size()) throw ParseError("bad range bound '" + part + "'");
    return v;
  };
  const double a = read(text.substr(0, colon));
  const double b = read(text.substr(colon + 1));
  if (!(a >= 0 && b <= 1 && a < b)) throw DomainError("range must satisfy 0 <= a < b <= 1");
  return {a, b};
}

inline std::vector<Rational> parse_fraction_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw ParseError("empty fraction list");
  return out;
}

inline std::string join(const std::vector<Rational>& values, const char* sep = " ") {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? sep : "") + values[k].to_string();
  return s;
}

// Reads key=value lines and appends "--key value" for every key not already
// given on the command line. Unknown keys are rejected.
inline void apply_config(CLI::App& app, std::vector<std::string>& args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return;
  if (std::next(it) == args.end()) throw ParseError("--config needs a file name");
  const std::string file = *std::next(it);
  args.erase(it, std::next(it, 2));

  CLI::App* target = nullptr;
  for (const auto& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    target = app.get_subcommand_no_throw(a);
    if (target != nullptr) break;
  }
  if (target == nullptr) throw ParseError("--config requires a subcommand");

  std::ifstream in(file);
  if (!in) throw ParseError("cannot read config file '" + file + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(file + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const CLI::Option* opt = target->get_option_no_throw(flag);
    if (opt == nullptr || key == "help") throw ParseError(file + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;  // command line wins
    if (opt->get_items_expected_max() == 0) {
      if (value == "true" || value == "1") args.push_back(flag);
      else if (value != "false" && value != "0") throw ParseError(file + ": flag '" + key + "' takes true/false");
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
}

}  // namespace detail

inline int cmd_eval(const detail::HarmonicArgs& a, double theta, double phi, bool as_json, std::ostream& out) {
  const HarmonicSpec spec = detail::make_spec(a);
  const Harmonic h(spec);
  const auto y = eval(h, {theta, phi});
  const bool real = is_real_form(spec.form());
  if (as_json) {
    json j;
    j["l"] = spec.degree().to_string();
    j["m"] = spec.order().to_string();
    j["form"] = std::string(to_string(spec.form()));
    j["theta"] = theta;
    j["phi"] = phi;
    if (real) j["value"] = y.real();
    else j["value"] = {{"re", y.real()}, {"im", y.imag()}};
    j["normalization"] = h.normalization();
    j["eigenvalue"] = spec.eigenvalue().to_string();
    j["period"] = h.period();
    out << j.dump(2) << "\n";
  } else {
    out << "l = " << spec.degree() << "\n"
        << "m = " << spec.order() << "\n"
        << "form = " << to_string(spec.form()) << "\n"
        << "theta = " << detail::num(theta) << "\n"
        << "phi = " << detail::num(phi) << "\n";
    if (real) out << "value = " << detail::num(y.real()) << "\n";
    else out << "value = " << detail::num(y.real()) << " " << detail::num(y.imag()) << "i\n";
    out << "normalization = " << detail::num(h.normalization()) << "\n"
        << "eigenvalue = " << spec.eigenvalue() << "\n"
        << "period = " << detail::num(h.period()) << "\n";
  }
  return exit_ok;
}

struct VerifyArgs {
  detail::HarmonicArgs harmonic;
  std::optional<double> k;
  int n_theta = 200;
  int n_phi = 200;
  int ode_samples = 1000;
  double eigen_tol = 1e-3;
  double norm_tol = 1e-8;
  Tolerances tol;
};

inline int cmd_verify(const VerifyArgs& a, bool as_json, std::ostream& out) {
  a.tol.validate();
  if (a.ode_samples < 2) throw DomainError("need at least 2 ODE samples");
  const HarmonicSpec spec = detail::make_spec(a.harmonic);
  const Harmonic h(spec, a.tol.quad_abs_tol);

  double ode = 0;
  const double lo = a.tol.pole_margin;
  const double hi = std::numbers::pi - a.tol.pole_margin;
  for (int i = 0; i < a.ode_samples; ++i) {
    const double theta = lo + (hi - lo) * i / (a.ode_samples - 1);
    ode = std::max(ode, std::abs(legendre_ode_residual(spec.degree(), spec.order(), theta, a.k, a.tol.pole_margin)));
  }
  const double eigen = eigen_residual(h, a.n_theta, a.n_phi, a.tol, a.k);

  // Independent check of the normalization: integrate |Y|^2 directly.
  const double period = h.period();
  const auto inner = [&](double theta) {
    const auto r = numerics::integrate([&](double phi) { return std::norm(h(theta, phi)); }, 0.0, period,
                                       a.tol.quad_abs_tol);
    return r.value * std::sin(theta);
  };
  const auto total = numerics::integrate(inner, 0.0, std::numbers::pi, a.tol.quad_abs_tol);
  const double norm_defect = std::abs(total.value - 1.0);

  const bool ode_ok = ode < a.tol.residual_tol;
  const bool eigen_ok = eigen < a.eigen_tol;
  const bool norm_ok = norm_defect < a.norm_tol;
  const bool ok = ode_ok && eigen_ok && norm_ok;

  if (as_json) {
    json j;
    j["spec"] = spec.label();
    j["eigenvalue"] = a.k ? json(*a.k) : json(spec.eigenvalue().to_string());
    j["ode_residual_max"] = ode;
    j["ode_ok"] = ode_ok;
    j["eigen_residual"] = eigen;
    j["eigen_ok"] = eigen_ok;
    j["normalization_defect"] = norm_defect;
    j["normalization_ok"] = norm_ok;
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "spec = " << spec.label() << "\n"
        << "eigenvalue = " << (a.k ? detail::num(*a.k) : spec.eigenvalue().to_string()) << "\n"
        << "ode_residual_max = " << detail::num(ode) << (ode_ok ? " ok" : " FAIL") << "\n"
        << "eigen_residual = " << detail::num(eigen) << (eigen_ok ? " ok" : " FAIL") << "\n"
        << "normalization_defect = " << detail::num(norm_defect) << (norm_ok ? " ok" : " FAIL") << "\n"
        << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? exit_ok : exit_failed;
}

struct MeshArgs {
  detail::HarmonicArgs harmonic;
  int n_theta = 64;
  int n_phi = 256;
  std::string phi_range = "0:1";
  std::string format = "obj";
  std::string out;
};

inline int cmd_mesh(const MeshArgs& a, bool as_json, std::ostream& out) {
  const HarmonicSpec spec = detail::make_spec(a.harmonic);
  if (a.format != "obj" && a.format != "ply" && a.format != "csv")
    throw ParseError("mesh format must be obj, ply or csv");
  const auto [from, to] = detail::parse_fraction_range(a.phi_range);
  const Harmonic h(spec);
  const SurfaceMesh mesh = build_surface(h, a.n_theta, a.n_phi, from * h.period(), to * h.period());

  const auto path = detail::output_path(a.out, "mesh_" + detail::slug(spec), a.format);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  if (a.format == "obj") export_obj(mesh, file);
  else if (a.format == "ply") export_ply(mesh, file);
  else export_csv(mesh, file);
  file.close();
  if (!file) throw Error("write failed: " + path.string());

  if (as_json) {
    json j{{"spec", spec.label()}, {"format", a.format}, {"path", path.string()},
           {"vertices", mesh.vertices.size()}, {"faces", mesh.quads.size()},
           {"phi_begin", mesh.phi_begin}, {"phi_end", mesh.phi_end}};
    out << j.dump(2) << "\n";
  } else {
    out << "wrote " << path.string() << "\n"
        << "spec = " << spec.label() << "\n"
        << "vertices = " << mesh.vertices.size() << "\n"
        << "faces = " << mesh.quads.size() << "\n"
        << "phi_range = " << detail::num(mesh.phi_begin) << ":" << detail::num(mesh.phi_end) << "\n";
  }
  return exit_ok;
}

struct XyviewArgs {
  detail::HarmonicArgs harmonic;
  int n_phi = 1024;
  std::string format = "csv";
  std::string out;
};

inline int cmd_xyview(const XyviewArgs& a, bool as_json, std::ostream& out) {
  const HarmonicSpec spec = detail::make_spec(a.harmonic);
  if (a.format != "csv") throw ParseError("xyview writes csv only");
  const Harmonic h(spec);
  const PlanarCurve curve = xy_view(h, a.n_phi);
  const auto path = detail::output_path(a.out, "xyview_" + detail::slug(spec), "csv");
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  export_csv(curve, file);
  file.close();
  if (!file) throw Error("write failed: " + path.string());

  if (as_json) {
    json j{{"spec", spec.label()}, {"path", path.string()}, {"samples", curve.samples.size()},
           {"phi_end", curve.samples.back().phi}};
    out << j.dump(2) << "\n";
  } else {
    out << "wrote " << path.string() << "\n"
        << "spec = " << spec.label() << "\n"
        << "samples = " << curve.samples.size() << "\n"
        << "phi_end = " << detail::num(curve.samples.back().phi) << "\n";
  }
  return exit_ok;
}

struct AnalyzeArgs {
  std::optional<std::int64_t> n;
  std::string l;
  int resolution = 128;
};

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (a.n.has_value() == !a.l.empty()) throw ParseError("analyze needs exactly one of --n or --l");
  Rational l;
  if (a.n) {
    if (*a.n < 2) throw DomainError("n must be at least 2");
    l = Rational(1, *a.n);
  } else {
    l = Rational::parse(a.l);
    if (!(l > 0)) throw DomainError("l must be positive");
  }

  json j;
  j["l"] = l.to_string();
  bool ok = true;
  if (l.num() == 1 && l.den() >= 2) {
    const std::int64_t n = l.den();
    j["n"] = n;
    j["particle_class"] = to_json(particle_class(n));
    const SymmetryReport sym = classify_symmetry(n, {}, a.resolution);
    j["symmetry"] = to_json(sym);
    ok = ok && sym.disagreements.empty();
  }
  json cont = json::array();
  for (const Form form : {Form::cos, Form::sin}) {
    const ContinuityReport rep = continuity_report(l, form);
    cont.push_back(to_json(rep));
    ok = ok && rep.closes;
  }
  j["continuity"] = std::move(cont);
  j["passed"] = ok;
  out << j.dump(2) << "\n";
  return ok ? exit_ok : exit_failed;
}

struct DecomposeArgs {
  std::string s = "1/2";
  int depth = 2;
  std::string scheme = "canonical";
  std::string parts;
  bool validate = false;
  std::int64_t max_denominator = 50;
  int max_parts = 3;
};

inline int cmd_decompose(const DecomposeArgs& a, bool as_json, std::ostream& out) {
  const Rational s = Rational::parse(a.s);

  if (a.validate || !a.parts.empty()) {
    if (a.parts.empty()) throw ParseError("--validate needs --parts");
    const auto parts = detail::parse_fraction_list(a.parts);
    const Verdict v = validate_split(s, parts);
    if (as_json) {
      json j{{"s", s.to_string()}, {"parts", fraction_list(parts)}, {"valid", v.valid}, {"violated", v.violated}};
      out << j.dump(2) << "\n";
    } else {
      std::string violated;
      for (const auto& r : v.violated) violated += (violated.empty() ? "" : ",") + r;
      out << "s = " << s << "\n"
          << "parts = " << detail::join(parts) << "\n"
          << "valid = " << (v.valid ? "true" : "false") << "\n"
          << "violated = " << (violated.empty() ? "none" : violated) << "\n";
    }
    return v.valid ? exit_ok : exit_failed;
  }

  Scheme scheme;
  if (a.scheme == "canonical") scheme = Scheme::canonical;
  else if (a.scheme == "search") scheme = Scheme::search;
  else throw ParseError("scheme must be canonical or search");

  SearchOptions options;
  options.max_denominator = a.max_denominator;
  options.max_parts = a.max_parts;
  const DecompositionTree tree = expand(s, a.depth, scheme, options);
  const int last = tree.depth();
  const Rational main = main_sum(tree, last);
  const std::string ratio = format_percent(ratio_to(s, main));

  if (as_json) {
    json j;
    j["s"] = s.to_string();
    j["scheme"] = a.scheme;
    json levels = json::array();
    for (int k = 0; k <= last; ++k) {
      std::vector<Rational> parts;
      for (const auto& c : tree.levels[static_cast<std::size_t>(k)]) parts.push_back(c.value);
      const Rational ms = main_sum(tree, k);
      levels.push_back({{"level", k},
                        {"parts", fraction_list(parts)},
                        {"sum", level_sum(tree, k).to_string()},
                        {"main", fraction_list(main_components(tree, k))},
                        {"main_sum", ms.to_string()},
                        {"ratio", format_percent(ratio_to(s, ms))}});
    }
    j["levels"] = std::move(levels);
    j["tree"] = to_json(tree)["tree"];
    j["main_sum"] = main.to_string();
    j["ratio"] = ratio;
    if (scheme == Scheme::search) {
      json splits = json::array();
      for (const auto& sp : search_splits(s, options)) splits.push_back(fraction_list(sp));
      j["splits"] = std::move(splits);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "s = " << s << "\n"
        << "scheme = " << a.scheme << "\n";
    if (scheme == Scheme::search) {
      for (const auto& sp : search_splits(s, options)) out << "split: " << detail::join(sp) << "\n";
    }
    for (int k = 0; k <= last; ++k) {
      std::vector<Rational> parts;
      for (const auto& c : tree.levels[static_cast<std::size_t>(k)]) parts.push_back(c.value);
      const Rational ms = main_sum(tree, k);
      out << "level " << k << ": " << detail::join(parts) << " | main " << detail::join(main_components(tree, k))
          << " = " << ms << " (" << format_percent(ratio_to(s, ms)) << ")\n";
    }
    out << "main_sum = " << main << "\n"
        << "ratio = " << ratio << "\n";
  }
  return exit_ok;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional-degree spherical harmonics: evaluation, verification, geometry, analysis"};
  app.name("fracsh");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  bool as_json = false;
  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", as_json, "machine-readable output"); };

  detail::HarmonicArgs eval_args;
  double theta = 0, phi = 0;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate Y at one point");
  detail::add_harmonic_options(eval_cmd, eval_args);
  eval_cmd->add_option("--theta", theta, "polar angle, radians")->required();
  eval_cmd->add_option("--phi", phi, "azimuth, radians")->required();
  add_json(eval_cmd);

  VerifyArgs verify_args;
  double k_override = 0;
  auto* verify_cmd = app.add_subcommand("verify", "ODE, eigen-equation and normalization residuals");
  detail::add_harmonic_options(verify_cmd, verify_args.harmonic);
  auto* k_opt = verify_cmd->add_option("--k", k_override, "override the eigenvalue l(l+1)");
  verify_cmd->add_option("--n-theta", verify_args.n_theta)->capture_default_str();
  verify_cmd->add_option("--n-phi", verify_args.n_phi, "grid points per 2*pi")->capture_default_str();
  verify_cmd->add_option("--ode-samples", verify_args.ode_samples)->capture_default_str();
  verify_cmd->add_option("--residual-tol", verify_args.tol.residual_tol)->capture_default_str();
  verify_cmd->add_option("--eigen-tol", verify_args.eigen_tol)->capture_default_str();
  verify_cmd->add_option("--norm-tol", verify_args.norm_tol)->capture_default_str();
  verify_cmd->add_option("--quad-tol", verify_args.tol.quad_abs_tol)->capture_default_str();
  verify_cmd->add_option("--pole-margin", verify_args.tol.pole_margin)->capture_default_str();
  add_json(verify_cmd);

  MeshArgs mesh_args;
  auto* mesh_cmd = app.add_subcommand("mesh", "write a surface mesh r = |Y|");
  detail::add_harmonic_options(mesh_cmd, mesh_args.harmonic);
  mesh_cmd->add_option("--n-theta", mesh_args.n_theta)->capture_default_str();
  mesh_cmd->add_option("--n-phi", mesh_args.n_phi)->capture_default_str();
  mesh_cmd->add_option("--phi-range", mesh_args.phi_range, "a:b as fractions of the period")->capture_default_str();
  mesh_cmd->add_option("--format", mesh_args.format, "obj | ply | csv")->capture_default_str();
  mesh_cmd->add_option("--out", mesh_args.out, "output file");
  add_json(mesh_cmd);

  XyviewArgs xy_args;
  auto* xy_cmd = app.add_subcommand("xyview", "write the equatorial curve as CSV");
  detail::add_harmonic_options(xy_cmd, xy_args.harmonic);
  xy_cmd->add_option("--n-phi", xy_args.n_phi)->capture_default_str();
  xy_cmd->add_option("--format", xy_args.format, "csv")->capture_default_str();
  xy_cmd->add_option("--out", xy_args.out, "output file");
  add_json(xy_cmd);

  AnalyzeArgs analyze_args;
  std::int64_t n_value = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "symmetry, continuity and class report (JSON)");
  auto* n_opt = analyze_cmd->add_option("--n", n_value, "analyze l = 1/n");
  analyze_cmd->add_option("--l", analyze_args.l, "analyze l = p/q");
  analyze_cmd->add_option("--resolution", analyze_args.resolution, "cloud points per axis per 2*pi")
      ->capture_default_str();
  add_json(analyze_cmd);

  DecomposeArgs dec_args;
  auto* dec_cmd = app.add_subcommand("decompose", "exact spin decomposition");
  dec_cmd->add_option("--s", dec_args.s, "spin as p/q")->capture_default_str();
  dec_cmd->add_option("--depth", dec_args.depth)->capture_default_str();
  dec_cmd->add_option("--scheme", dec_args.scheme, "canonical | search")->capture_default_str();
  dec_cmd->add_option("--parts", dec_args.parts, "comma-separated parts, e.g. 1/3,1/3,-1/6");
  dec_cmd->add_flag("--validate", dec_args.validate, "check --parts against the split rules");
  dec_cmd->add_option("--max-denominator", dec_args.max_denominator)->capture_default_str();
  dec_cmd->add_option("--max-parts", dec_args.max_parts)->capture_default_str();
  add_json(dec_cmd);

  try {
    detail::apply_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval_args, theta, phi, as_json, out);
    if (*verify_cmd) {
      if (*k_opt) verify_args.k = k_override;
      return cmd_verify(verify_args, as_json, out);
    }
    if (*mesh_cmd) return cmd_mesh(mesh_args, as_json, out);
    if (*xy_cmd) return cmd_xyview(xy_args, as_json, out);
    if (*analyze_cmd) {
      if (*n_opt) analyze_args.n = n_value;
      return cmd_analyze(analyze_args, out);
    }
    if (*dec_cmd) return cmd_decompose(dec_args, as_json, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_usage;
}

}  // namespace fracsh::cli
