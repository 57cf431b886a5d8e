#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "battery.hpp"
#include "conicquad/debug.hpp"
#include "conicquad/engine.hpp"
#include "conicquad/errors.hpp"
#include "conicquad/oracle.hpp"
#include "instances.hpp"
#include "job.hpp"
#include "svg.hpp"

namespace conicquad::tools {

namespace {

constexpr const char* kEnvOverrides = "CONIC_QUAD_EPS_OVERRIDES";
constexpr double kDefaultCheckTol = 1e-7;
// The oracle runs this much tighter than the requested check tolerance,
// but never below the floor where longest-edge bisection stops paying off.
constexpr double kOracleTolFactor = 0.1;
constexpr double kOracleTolFloor = 1e-10;

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string point(Vec2 p) { return "(" + full(p.x) + ", " + full(p.y) + ")"; }

Tolerances env_tolerances() {
  const char* env = std::getenv(kEnvOverrides);
  if (env == nullptr || *env == '\0') return {};
  try {
    return parse_tolerance_overrides(env);
  } catch (const JobError& e) {
    throw JobError(std::string(kEnvOverrides) + ": " + e.what());
  }
}

void print_result(std::ostream& out, const IntegralResult& r, bool trace, const char* heading) {
  out << heading << "class: " << to_string(r.conic_class) << "\n";
  out << heading << "pieces: " << r.pieces.size() << "\n";
  for (const auto& w : r.warnings) out << heading << "warning: " << w << "\n";
  if (!trace) return;
  out << heading << "piece  label  provenance  route  weight  value  vertices\n";
  for (std::size_t k = 0; k < r.pieces.size(); ++k) {
    const auto& p = r.pieces[k];
    out << heading << k << "  " << p.label << "  " << p.provenance << "  " << p.route << "  " << full(p.weight)
        << "  " << full(p.value) << "  " << point(p.tri[0]) << " " << point(p.tri[1]) << " " << point(p.tri[2])
        << "\n";
  }
}

int cmd_integrate(const std::string& path, bool trace, bool dump, bool timing, std::ostream& out) {
  const Job job = load_job(path);
  if (dump) {
    out << dump_job(job);
    return kOk;
  }
  const Tolerances tol = env_tolerances();
  const auto start = std::chrono::steady_clock::now();
  const Triangle t = job.tri();
  const Polynomial2 g = job.integrand();
  if (job.band) {
    const BandSpec band = job.band_spec();
    const double value = integrate_band(g, band, t, tol);
    out << "value: " << full(value) << "\n";
    // The two one-sided regions whose inclusion-exclusion gives the band.
    const Polynomial2 scaled = band.p * (1.0 / band.alpha);
    const auto r1 = integrate_region(g, -scaled - Polynomial2::constant(band.fa, 2), t, tol);
    const auto r2 = integrate_region(g, scaled + Polynomial2::constant(band.fb, 2), t, tol);
    out << "lower region value: " << full(r1.value) << "\n";
    print_result(out, r1, trace, "lower region ");
    out << "upper region value: " << full(r2.value) << "\n";
    print_result(out, r2, trace, "upper region ");
    out << "triangle value: " << full(triangle_integral(g, t)) << "\n";
  } else {
    const auto r = integrate_region(g, job.region(), t, tol);
    out << "value: " << full(r.value) << "\n";
    print_result(out, r, trace, "");
  }
  if (timing)
    out << "time: " << brief(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count())
        << " s\n";
  return kOk;
}

int cmd_subdivide(const std::string& path, const std::string& svg_path, std::ostream& out) {
  const Job job = load_job(path);
  if (job.band) throw JobError("field 'band': subdivide draws a single region; give 'f' instead");
  const Tolerances tol = env_tolerances();
  const Triangle t = job.tri();
  const auto r = integrate_region(job.integrand(), job.region(), t, tol);
  const std::string svg = render_svg(t, job.region(), r, tol);
  std::ofstream file(svg_path, std::ios::binary);
  if (!file) throw JobError("cannot write '" + svg_path + "'");
  file << svg;
  file.close();
  if (!file) throw JobError("cannot write '" + svg_path + "'");
  out << "class: " << to_string(r.conic_class) << "\n";
  out << "pieces: " << r.pieces.size() << "\n";
  for (std::size_t k = 0; k < r.pieces.size(); ++k) out << k << "  " << r.pieces[k].label << "\n";
  out << "svg: " << svg_path << "\n";
  return kOk;
}

void describe(std::ostream& out, const Polynomial2& f, const Tolerances& tol, const char* heading) {
  const Conic c(f, tol);
  const auto& p = c.params();
  out << heading << "class: " << to_string(c.type()) << "\n";
  out << heading << "margin: " << brief(c.margin()) << "\n";
  if (!c.has_frame()) return;
  out << heading << "factor: " << full(c.factor()) << "\n";
  switch (c.type()) {
    case ConicClass::Ellipse:
      out << heading << "a: " << full(p.a) << "\n" << heading << "b: " << full(p.b) << "\n";
      break;
    case ConicClass::Parabola:
      out << heading << "c: " << full(p.c) << "\n";
      break;
    case ConicClass::Hyperbola:
      out << heading << "k: " << full(p.k) << "\n";
      break;
    case ConicClass::ParallelLines:
      out << heading << "d: " << full(p.d) << "\n";
      break;
    default:
      break;
  }
  out << heading << "center: " << point(p.center) << "\n";
  if (c.type() == ConicClass::Hyperbola || c.type() == ConicClass::CrossingLines)
    out << heading << "directions: " << point(p.dir1) << " " << point(p.dir2) << "\n";
}

int cmd_classify(const std::string& path, std::ostream& out) {
  const Job job = load_job(path);
  const Tolerances tol = env_tolerances();
  if (job.band) {
    const BandSpec band = job.band_spec();
    const Polynomial2 scaled = band.p * (1.0 / band.alpha);
    describe(out, -scaled - Polynomial2::constant(band.fa, 2), tol, "lower region ");
    describe(out, scaled + Polynomial2::constant(band.fb, 2), tol, "upper region ");
  } else {
    describe(out, job.region(), tol, "");
  }
  return kOk;
}

struct CheckOutcome {
  double engine = 0.0;
  OracleEstimate oracle;
  double gap = 0.0;
  bool pass = false;
};

double oracle_tol(double check_tol, double scale) {
  return std::max(kOracleTolFactor * check_tol, kOracleTolFloor) * std::max(scale, 1.0);
}

CheckOutcome check_region(const Polynomial2& g, const Polynomial2& f, const Triangle& t, double tol,
                          const Tolerances& eps) {
  CheckOutcome c;
  c.engine = integrate_region(g, f, t, eps).value;
  c.oracle = oracle_integrate(g, f, t, oracle_tol(tol, std::abs(c.engine)));
  c.gap = std::abs(c.engine - c.oracle.value);
  c.pass = c.gap <= tol * std::max(std::abs(c.oracle.value), 1.0);
  return c;
}

CheckOutcome check_job(const Job& job, double tol, const Tolerances& eps) {
  const Triangle t = job.tri();
  const Polynomial2 g = job.integrand();
  if (!job.band) return check_region(g, job.region(), t, tol, eps);
  const BandSpec band = job.band_spec();
  const Polynomial2 scaled = band.p * (1.0 / band.alpha);
  CheckOutcome c;
  c.engine = integrate_band(g, band, t, eps);
  const double whole = triangle_integral(g, t);
  const double otol = 0.5 * oracle_tol(tol, std::abs(c.engine));
  const auto o1 = oracle_integrate(g, -scaled - Polynomial2::constant(band.fa, 2), t, otol);
  const auto o2 = oracle_integrate(g, scaled + Polynomial2::constant(band.fb, 2), t, otol);
  c.oracle = {o1.value + o2.value - whole, o1.error_bound + o2.error_bound, o1.cells_used + o2.cells_used};
  c.gap = std::abs(c.engine - c.oracle.value);
  c.pass = c.gap <= tol * std::max(std::abs(c.oracle.value), 1.0);
  return c;
}

int cmd_check(const std::optional<std::string>& path, double tol, std::optional<int> n, std::uint64_t seed,
              std::ostream& out) {
  if (!(tol > 0.0)) throw JobError("option '--tol': must be positive");
  const Tolerances eps = env_tolerances();
  if (path) {
    const auto c = check_job(load_job(*path), tol, eps);
    out << "engine: " << full(c.engine) << "\n";
    out << "oracle: " << full(c.oracle.value) << " +- " << brief(c.oracle.error_bound) << " (" << c.oracle.cells_used
        << " cells)\n";
    out << "gap: " << brief(c.gap) << " (tolerance " << brief(tol * std::max(std::abs(c.oracle.value), 1.0))
        << ")\n";
    out << "result: " << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.pass) return kCheckFailed;
    if (!n) return kOk;
  }
  if (!n) throw JobError("check needs a job file or --n");
  if (*n <= 0) throw JobError("option '--n': must be positive");
  static constexpr ConicClass kClasses[] = {
      ConicClass::Ellipse,    ConicClass::Parabola, ConicClass::Hyperbola, ConicClass::CrossingLines,
      ConicClass::ParallelLines, ConicClass::DoubleLine, ConicClass::SingleLine, ConicClass::Point,
      ConicClass::Empty,      ConicClass::ConstantSign,
  };
  InstanceGenerator gen(seed);
  int passed = 0;
  for (int k = 0; k < *n; ++k) {
    const ConicClass cls = kClasses[k % 10];
    const auto in = gen.make(cls);
    const auto c = check_region(in.g, in.f, in.t, tol, eps);
    passed += c.pass;
    out << k << "  " << to_string(cls) << "  engine " << full(c.engine) << "  oracle " << full(c.oracle.value)
        << "  gap " << brief(c.gap) << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  out << "passed: " << passed << "/" << *n << "\n";
  return passed == *n ? kOk : kCheckFailed;
}

int cmd_selftest(const std::vector<std::string>& only, bool corrupt, std::ostream& out) {
  const Tolerances tol = env_tolerances();
  std::vector<std::string> ids = only.empty() ? criterion_ids() : only;
  for (const auto& id : ids)
    if (std::find(criterion_ids().begin(), criterion_ids().end(), id) == criterion_ids().end())
      throw JobError("option '--criteria': unknown criterion '" + id + "'");
  std::unique_ptr<debug::ScopedTrigTableCorruption> fault;
  if (corrupt) {
    fault = std::make_unique<debug::ScopedTrigTableCorruption>();
    out << "fault injection: trigonometric table corrupted\n";
  }
  bool all = true;
  for (const auto& id : ids) {
    const auto r = run_criterion(id, tol);
    all = all && r.pass;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%8.2f s", r.seconds);
    out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(13) << id << std::right << secs << "  "
        << r.detail << "\n"
        << std::flush;
  }
  out << (all ? "selftest: all criteria passed" : "selftest: FAILED") << "\n";
  return all ? kOk : kCheckFailed;
}

}  // namespace

Tolerances parse_tolerance_overrides(const std::string& spec) {
  Tolerances tol;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw JobError("expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw JobError("'" + name + "' needs a positive number, got '" + text + "'");
    if (name == "classify") tol.classify = v;
    else if (name == "segment_param") tol.segment_param = v;
    else if (name == "barycentric") tol.barycentric = v;
    else if (name == "on_conic") tol.on_conic = v;
    else throw JobError("unknown tolerance '" + name + "'");
  }
  return tol;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrate polynomials over a triangle intersected with a quadratic region.", "conicquad"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string job_path, svg_path;
  std::optional<std::string> check_path;
  bool trace = false, dump = false, timing = false, corrupt = false;
  double tol = kDefaultCheckTol;
  std::optional<int> n;
  std::uint64_t seed = 1;
  std::vector<std::string> only;

  auto* integrate = app.add_subcommand("integrate", "Integrate a job and print the value");
  integrate->add_option("job", job_path, "Job file (JSON)")->required();
  integrate->add_flag("--trace", trace, "Print the per-piece table");
  integrate->add_flag("--dump-job", dump, "Print the parsed job as JSON and exit");
  integrate->add_flag("--timing", timing, "Print the elapsed time");

  auto* subdivide = app.add_subcommand("subdivide", "Write an SVG drawing of the decomposition");
  subdivide->add_option("job", job_path, "Job file (JSON)")->required();
  subdivide->add_option("--svg", svg_path, "Output SVG path")->required();

  auto* classify = app.add_subcommand("classify", "Print the conic class and standard-form parameters");
  classify->add_option("job", job_path, "Job file (JSON)")->required();

  auto* check = app.add_subcommand("check", "Compare the engine with the adaptive oracle");
  check->add_option("job", check_path, "Job file (JSON)");
  check->add_option("--tol", tol, "Allowed |engine - oracle| / max(|oracle|, 1)")->capture_default_str();
  auto* n_opt = check->add_option("--n", n, "Also check N random instances");
  check->add_option("--seed", seed, "Seed for --n")->needs(n_opt)->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance battery");
  selftest->add_option("--criteria", only, "Run only these criteria")->delimiter(',');
  selftest->add_flag("--corrupt-trig-table", corrupt, "Fault injection: perturb the trigonometric table");

  if (argc <= 1) {
    out << app.help();
    return kInputError;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  try {
    if (*integrate) return cmd_integrate(job_path, trace, dump, timing, out);
    if (*subdivide) return cmd_subdivide(job_path, svg_path, out);
    if (*classify) return cmd_classify(job_path, out);
    if (*check) return cmd_check(check_path, tol, n, seed, out);
    if (*selftest) return cmd_selftest(only, corrupt, out);
  } catch (const JobError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SubdivisionFailure& e) {
    err << "subdivision failure: " << e.what() << "\n";
    return kInternalError;
  } catch (const NoTangencyCandidate& e) {
    err << "subdivision failure: " << e.what() << "\n";
    return kInternalError;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegenerateTriangle& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegreeOverflow& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace conicquad::tools
