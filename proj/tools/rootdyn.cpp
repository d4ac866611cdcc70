#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootdyn/rootdyn.hpp"

namespace {

using rootdyn::Complex;

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kIo = 3 };

/// Bad flag value; the message names the flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(flag + ": '" + text + "' is not a number");
  return v;
}

/// Accepts "x", "x,y", "x+yi", "x-yi", "yi".
Complex parse_complex(const std::string& flag, std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.empty()) throw UsageError(flag + ": empty value");
  if (const auto comma = text.find(','); comma != std::string::npos) {
    return {parse_real(flag, text.substr(0, comma)), parse_real(flag, text.substr(comma + 1))};
  }
  if (text.back() != 'i') return {parse_real(flag, text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(flag, s);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(flag, body.substr(0, split)), imag_part(body.substr(split))};
}

rootdyn::Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_real("--window", item));
  if (v.size() != 4) throw UsageError("--window: expected x_min,x_max,y_min,y_max");
  const rootdyn::Window w{v[0], v[1], v[2], v[3]};
  if (!(w.x_min < w.x_max && w.y_min < w.y_max)) throw UsageError("--window: need x_min < x_max and y_min < y_max");
  return w;
}

rootdyn::GridSpec parse_res(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--res: expected WIDTHxHEIGHT");
  const double w = parse_real("--res", text.substr(0, x));
  const double h = parse_real("--res", text.substr(x + 1));
  if (w != static_cast<int>(w) || h != static_cast<int>(h) || w < 2 || h < 2) {
    throw UsageError("--res: width and height must be integers >= 2");
  }
  return {static_cast<int>(w), static_cast<int>(h)};
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_window(const rootdyn::Window& w) {
  return shortest(w.x_min) + ',' + shortest(w.x_max) + ',' + shortest(w.y_min) + ',' + shortest(w.y_max);
}

struct Preset {
  std::string command;
  std::string family;  // "general" or "behl"
  int n = 4;
  int k = 1;
  std::string parameter;  // dyn-plane only
  std::string window;
  std::string res;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"fig-pparam-left", {"param-plane", "behl", 4, 1, "", "-50,10,-15,15", "3001x1501"}},
      {"fig-pparam-right", {"param-plane", "behl", 4, 1, "", "-3,4,-3.5,3.5", "1501x1501"}},
      {"fig-planonuevo44", {"param-plane", "general", 4, 1, "", "-3.2,3.2,-3.2,3.2", "1501x1501"}},
      {"fig-pparpar-a", {"param-plane", "general", 2, 2, "", "-4,6,-5,5", "1501x1501"}},
      {"fig-pparpar-b", {"param-plane", "general", 3, 2, "", "-6,6,-6,6", "1501x1501"}},
      {"fig-pparpar-c", {"param-plane", "general", 4, 2, "", "-5,21,-13,13", "1501x1501"}},
      {"fig-pparpar-d", {"param-plane", "general", 7, 2, "", "-4,4,-4,4", "1501x1501"}},
      {"fig-pparpar-e", {"param-plane", "general", 3, 5, "", "-70,70,-70,70", "1501x1501"}},
      {"fig-pparpar-f", {"param-plane", "general", 3, 6, "", "-30,30,-30,30", "1501x1501"}},
      {"fig-dynam-a", {"dyn-plane", "general", 4, 1, "3", "-1.1,1.1,-1.1,1.1", "1501x1501"}},
      {"fig-dynam-b", {"dyn-plane", "general", 4, 1, "1.6666666666666667", "-1.2,2,-1.6,1.6", "1501x1501"}},
      {"fig-dynam-c", {"dyn-plane", "general", 3, 2, "5", "-2,10,-6,6", "1501x1501"}},
      {"fig-dynam-d", {"dyn-plane", "general", 3, 3, "5", "-0.3,0.3,-0.3,0.3", "1501x1501"}},
      {"fig-dynam-e", {"dyn-plane", "general", 3, 5, "-10", "-2,2,-2,2", "1501x1501"}},
      {"fig-dynam-f", {"dyn-plane", "general", 3, 5, "-10", "-0.01,0.01,-0.01,0.01", "1501x1501"}},
  };
  return table;
}

struct PlaneOptions {
  std::string preset;
  std::string family = "general";
  int n = 4;
  int k = 1;
  std::string a = "0";
  std::string b;
  std::string window;
  std::string res = "1501x1501";
  int max_iter = 100;
  double eps_zero = 1e-8;
  double eps_inf = 1e8;
  std::string palette = "standard";
  std::string output;
  std::string format;
  std::string grid;
  std::string counts;
};

struct PlaneOptionHandles {
  CLI::Option* family = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* b = nullptr;
  CLI::Option* window = nullptr;
  CLI::Option* res = nullptr;
};

PlaneOptionHandles add_plane_options(CLI::App* cmd, PlaneOptions& o, bool dynamical) {
  PlaneOptionHandles h;
  cmd->add_option("--preset", o.preset, "Named figure preset (fills options not given explicitly)");
  if (dynamical) {
    h.a = cmd->add_option("--a", o.a, "Parameter a of O_{a,n,k} (x, x,y or x+yi)");
    h.b = cmd->add_option("--b", o.b, "Parameter b of O_b; selects that family")->excludes(h.a);
  } else {
    h.family = cmd->add_option("--family", o.family, "Operator family")->check(CLI::IsMember({"general", "behl"}));
  }
  h.n = cmd->add_option("--n", o.n, "Exponent n")->check(CLI::PositiveNumber);
  h.k = cmd->add_option("--k", o.k, "Exponent k")->check(CLI::PositiveNumber);
  h.window = cmd->add_option("--window", o.window, "x_min,x_max,y_min,y_max");
  h.res = cmd->add_option("--res", o.res, "Grid size WIDTHxHEIGHT")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Maximum iterations")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--eps-zero", o.eps_zero, "Convergence radius around 0")->capture_default_str();
  cmd->add_option("--eps-inf", o.eps_inf, "Escape radius towards infinity")->capture_default_str();
  cmd->add_option("--palette", o.palette, "Palette")->check(CLI::IsMember({"standard", "gray"}))->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Image path")->required();
  cmd->add_option("--format", o.format, "Image format (default from extension)")->check(CLI::IsMember({"ppm", "png"}));
  cmd->add_option("--grid", o.grid, "Also write the raw classification grid here");
  cmd->add_option("--counts", o.counts, "Also write outcome counts as CSV here");
  return h;
}

void apply_preset(PlaneOptions& o, const PlaneOptionHandles& h, const std::string& command) {
  if (o.preset.empty()) return;
  const auto it = presets().find(o.preset);
  if (it == presets().end()) throw UsageError("--preset: unknown preset '" + o.preset + "'");
  const Preset& p = it->second;
  if (p.command != command) throw UsageError("--preset: '" + o.preset + "' belongs to the " + p.command + " command");
  if (h.family && h.family->count() == 0) o.family = p.family;
  if (h.n->count() == 0) o.n = p.n;
  if (h.k->count() == 0) o.k = p.k;
  if (h.a && h.a->count() == 0 && h.b->count() == 0) o.a = p.parameter;
  if (h.window->count() == 0) o.window = p.window;
  if (h.res->count() == 0) o.res = p.res;
}

rootdyn::ImageFormat pick_format(const PlaneOptions& o) {
  if (!o.format.empty()) return rootdyn::image_format_from_name(o.format);
  return std::filesystem::path(o.output).extension() == ".png" ? rootdyn::ImageFormat::png : rootdyn::ImageFormat::ppm;
}

void write_sidecar(const std::string& output, const std::string& command, const PlaneOptions& o,
                   const rootdyn::Window& w, bool dynamical) {
  std::ostringstream s;
  s << "# effective configuration for " << std::filesystem::path(output).filename().string() << "\n";
  s << "[" << command << "]\n";
  if (dynamical) {
    if (!o.b.empty()) {
      s << "b = \"" << o.b << "\"\n";
    } else {
      s << "a = \"" << o.a << "\"\n";
    }
  } else {
    s << "family = \"" << o.family << "\"\n";
  }
  s << "n = " << o.n << "\nk = " << o.k << "\n";
  s << "window = \"" << format_window(w) << "\"\n";
  s << "res = \"" << o.res << "\"\n";
  s << "max-iter = " << o.max_iter << "\n";
  s << "eps-zero = " << shortest(o.eps_zero) << "\neps-inf = " << shortest(o.eps_inf) << "\n";
  s << "palette = \"" << o.palette << "\"\n";
  s << "output = \"" << o.output << "\"\n";
  if (!o.format.empty()) s << "format = \"" << o.format << "\"\n";
  if (!o.grid.empty()) s << "grid = \"" << o.grid << "\"\n";
  if (!o.counts.empty()) s << "counts = \"" << o.counts << "\"\n";
  rootdyn::write_text(s.str(), output + ".config.ini");
}

void finish_plane(const rootdyn::PlaneGrid& grid, const PlaneOptions& o, rootdyn::PlaneMode mode,
                  const std::string& command) {
  const rootdyn::Image img = rootdyn::colorize(grid, rootdyn::Palette::by_name(o.palette), mode);
  rootdyn::write_image(img, o.output, pick_format(o));
  if (!o.grid.empty()) rootdyn::write_grid(grid, o.grid);
  const std::string counts = rootdyn::outcome_counts_csv(grid);
  if (!o.counts.empty()) rootdyn::write_text(counts, o.counts);
  write_sidecar(o.output, command, o, grid.window, mode == rootdyn::PlaneMode::dynamical);
  std::cout << counts;
}

rootdyn::EscapeConfig escape_config(const PlaneOptions& o) {
  rootdyn::EscapeConfig cfg;
  cfg.max_iter = o.max_iter;
  cfg.eps_zero = o.eps_zero;
  cfg.eps_inf = o.eps_inf;
  try {
    cfg.validate();
  } catch (const rootdyn::DynamicsError&) {
    throw UsageError("--eps-zero/--eps-inf: need 0 < eps-zero < 1 < eps-inf");
  }
  return cfg;
}

int run_param_plane(PlaneOptions& o, const PlaneOptionHandles& h, int threads) {
  apply_preset(o, h, "param-plane");
  if (o.window.empty()) o.window = o.family == "behl" ? "-50,10,-15,15" : "-3.2,3.2,-3.2,3.2";
  const rootdyn::Window w = parse_window(o.window);
  const rootdyn::GridSpec g = parse_res(o.res);
  const rootdyn::EscapeConfig cfg = escape_config(o);
  rootdyn::Family family = rootdyn::BehlFamily{};
  if (o.family == "general") family = rootdyn::GeneralFamily{o.n, o.k};
  const rootdyn::PlaneGrid grid = rootdyn::render_parameter_plane(family, w, g, cfg, threads);
  finish_plane(grid, o, rootdyn::PlaneMode::parameter, "param-plane");
  return kOk;
}

int run_dyn_plane(PlaneOptions& o, const PlaneOptionHandles& h, int threads) {
  apply_preset(o, h, "dyn-plane");
  if (o.window.empty()) o.window = "-2,2,-2,2";
  const rootdyn::Window w = parse_window(o.window);
  const rootdyn::GridSpec g = parse_res(o.res);
  const rootdyn::EscapeConfig cfg = escape_config(o);
  rootdyn::PlaneGrid grid;
  if (!o.b.empty()) {
    const rootdyn::BehlParams p{parse_complex("--b", o.b)};
    const auto attractors = rootdyn::known_attractors(p);
    grid = rootdyn::render_dynamical_plane(p, w, g, cfg, attractors, threads);
  } else {
    const rootdyn::GeneralParams p{parse_complex("--a", o.a), o.n, o.k};
    const auto attractors = rootdyn::known_attractors(p);
    grid = rootdyn::render_dynamical_plane(p, w, g, cfg, attractors, threads);
  }
  finish_plane(grid, o, rootdyn::PlaneMode::dynamical, "dyn-plane");
  return kOk;
}

struct ReportOptions {
  std::string a;
  std::string b;
  int n = 4;
  int k = 1;
  bool json = false;
  std::string output;
};

int run_report(const ReportOptions& o) {
  nlohmann::json doc;
  if (!o.b.empty()) {
    doc = rootdyn::build_report(rootdyn::BehlParams{parse_complex("--b", o.b)});
  } else {
    if (o.a.empty()) throw UsageError("--a or --b is required");
    doc = rootdyn::build_report(rootdyn::GeneralParams{parse_complex("--a", o.a), o.n, o.k});
  }
  const std::string text = o.json ? doc.dump(2) + "\n" : rootdyn::report_text(doc);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    rootdyn::write_text(text, o.output);
  }
  return kOk;
}

struct VerifyCliOptions {
  std::vector<std::string> only;
  double perturb_reparam = 0.0;
  std::uint64_t seed = rootdyn::VerifyOptions{}.seed;
};

int run_verify(const VerifyCliOptions& o) {
  rootdyn::VerifyOptions opts;
  opts.only = o.only;
  opts.reparam_perturbation = o.perturb_reparam;
  opts.seed = o.seed;
  const auto results = rootdyn::run_verification(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.group << "] " << r.name << ": " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kVerifyFailed;
}

struct CurvesOptions {
  std::string point = "z1";
  std::string family = "general";
  int n = 4;
  int k = 1;
  int samples = 256;
  std::string output;
  std::string json;
};

int run_curves(const CurvesOptions& o, int threads) {
  rootdyn::StabilityRegionQuery q;
  q.which = o.point == "z1" ? rootdyn::FixedPointKind::z1
                            : (o.point == "zm1" ? rootdyn::FixedPointKind::zm1 : rootdyn::FixedPointKind::zpm);
  q.family = o.family == "behl" ? rootdyn::Parametrization::b_behl : rootdyn::Parametrization::a_general;
  q.n = o.n;
  q.k = o.k;
  if (q.family == rootdyn::Parametrization::a_general && q.which == rootdyn::FixedPointKind::zpm &&
      !(q.n == 4 && q.k == 1)) {
    throw UsageError("--point zpm: only available for --n 4 --k 1");
  }
  if (o.samples < 16) throw UsageError("--samples: must be >= 16");
  rootdyn::TraceConfig cfg;
  cfg.threads = threads;
  const rootdyn::BoundaryTrace trace = rootdyn::trace_boundary(q, o.samples, cfg);
  const std::string csv = rootdyn::boundary_csv(trace);
  if (o.output.empty()) {
    std::cout << csv;
  } else {
    rootdyn::write_text(csv, o.output);
    std::cout << trace.point_count() << " boundary points in " << trace.components.size() << " components\n";
  }
  if (!o.json.empty()) rootdyn::write_text(rootdyn::boundary_json(q, trace, o.samples).dump(2) + "\n", o.json);
  return kOk;
}

int resolve_threads(const CLI::Option* flag, int value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("ROOTDYN_THREADS")) {
    const double v = parse_real("ROOTDYN_THREADS", env);
    if (v < 0 || v != static_cast<int>(v)) throw UsageError("ROOTDYN_THREADS: expected a non-negative integer");
    return static_cast<int>(v);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of root-finding operators on the Riemann sphere"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file (flags take precedence)");
  int threads = 0;
  CLI::Option* threads_opt =
      app.add_option("--threads", threads, "Worker threads (0 = all cores; env ROOTDYN_THREADS)")->check(CLI::NonNegativeNumber);

  PlaneOptions param_opts;
  CLI::App* param = app.add_subcommand("param-plane", "Render a parameter plane");
  const PlaneOptionHandles param_h = add_plane_options(param, param_opts, false);

  PlaneOptions dyn_opts;
  CLI::App* dyn = app.add_subcommand("dyn-plane", "Render a dynamical plane");
  const PlaneOptionHandles dyn_h = add_plane_options(dyn, dyn_opts, true);

  ReportOptions report_opts;
  CLI::App* report = app.add_subcommand("report", "Fixed points, critical points and regions for one parameter");
  auto* ra = report->add_option("--a", report_opts.a, "Parameter a of O_{a,n,k}");
  report->add_option("--b", report_opts.b, "Parameter b of O_b")->excludes(ra);
  report->add_option("--n", report_opts.n, "Exponent n")->check(CLI::PositiveNumber);
  report->add_option("--k", report_opts.k, "Exponent k")->check(CLI::PositiveNumber);
  report->add_flag("--json", report_opts.json, "Emit JSON");
  report->add_option("-o,--output", report_opts.output, "Write to a file instead of stdout");

  VerifyCliOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Run the property checks");
  verify->add_option("--only", verify_opts.only, "Restrict to groups")
      ->delimiter(',')
      ->check(CLI::IsMember(rootdyn::verification_groups()));
  verify->add_option("--seed", verify_opts.seed, "Random seed for sampled checks");
  verify->add_option("--perturb-reparam", verify_opts.perturb_reparam)->group("");

  CurvesOptions curves_opts;
  CLI::App* curves = app.add_subcommand("curves", "Sample stability-region boundaries");
  curves->add_option("--point", curves_opts.point, "Fixed point")->check(CLI::IsMember({"z1", "zm1", "zpm"}));
  curves->add_option("--family", curves_opts.family, "Parametrization")->check(CLI::IsMember({"general", "behl"}));
  curves->add_option("--n", curves_opts.n, "Exponent n")->check(CLI::PositiveNumber);
  curves->add_option("--k", curves_opts.k, "Exponent k")->check(CLI::PositiveNumber);
  curves->add_option("--samples", curves_opts.samples, "Rays or scan lines per component");
  curves->add_option("-o,--output", curves_opts.output, "CSV path (default stdout)");
  curves->add_option("--json", curves_opts.json, "Also write a JSON document here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const int workers = resolve_threads(threads_opt, threads);
    if (param->parsed()) return run_param_plane(param_opts, param_h, workers);
    if (dyn->parsed()) return run_dyn_plane(dyn_opts, dyn_h, workers);
    if (report->parsed()) return run_report(report_opts);
    if (verify->parsed()) return run_verify(verify_opts);
    if (curves->parsed()) return run_curves(curves_opts, workers);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const rootdyn::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const rootdyn::DynamicsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
