#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hexfold/io.hpp"
#include "hexfold/oracles.hpp"
#include "hexfold/online.hpp"
#include "hexfold/plane_coloring.hpp"
#include "hexfold/random.hpp"
#include "hexfold/shapes.hpp"

using namespace hexfold;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Bad parameters, as opposed to data that fails a check.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Rational decimal_arg(const std::string& text, const char* name) {
  try {
    return parse_decimal(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("--") + name + " expects a decimal number, got '" + text + "'");
  }
}

/// Writes to the named file, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return in;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ---------------------------------------------------------------- plane

struct PlaneArgs {
  int h = 1;
  int p = -1;
  int q = -1;
  std::string sigma;
  std::string kind = "pq";
  bool search = false;
  bool table = false;
  bool no_guard = false;
  std::string file;
  std::string out;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int h_max = 3;
  std::string sigma_max = "3";
};

PlaneColoring build_plane(const PlaneArgs& a) {
  return as_usage([&] {
    const ColoringKind kind = parse_coloring_kind(a.kind);
    const bool have_pq = a.p >= 0 && a.q >= 0;
    if (kind == ColoringKind::Pq) {
      if (have_pq) return PlaneColoring::pq(a.h, a.p, a.q);
      if (a.sigma.empty()) throw UsageError("give --p and --q, or --sigma");
      const Rational sigma = decimal_arg(a.sigma, "sigma");
      return a.search ? find_pq_base(a.h, sigma * sigma) : hsq_coloring(a.h, sigma);
    }
    if (a.p >= 0) return PlaneColoring::lstar(a.h, a.p, kind, !a.no_guard);
    if (a.sigma.empty()) throw UsageError("give --p or --sigma");
    const Rational sigma = decimal_arg(a.sigma, "sigma");
    const int p = lstar_p(a.h, sigma);
    return PlaneColoring::lstar(a.h, p, kind, !a.no_guard);
  });
}

int plane_build(const PlaneArgs& a) {
  const PlaneColoring c = build_plane(a);
  Output out(a.out);
  write_coloring(out.stream(), c, a.table);
  return 0;
}

int plane_validate(const PlaneArgs& a) {
  if (a.sigma.empty()) throw UsageError("validate needs --sigma");
  const Rational sigma = decimal_arg(a.sigma, "sigma");
  PlaneColoring c = [&] {
    if (a.file.empty()) return build_plane(a);
    std::ifstream in = open_input(a.file);
    return read_coloring(in);
  }();
  const ValidationReport r = c.is_labeling() ? validate_lstar(c, sigma) : validate_solid(c, sigma, a.samples, a.seed);
  std::cout << "kind=" << to_string(c.kind()) << " h=" << c.h() << " p=" << c.p() << " q=" << c.q() << " k=" << c.k()
            << " b=" << c.b() << " sigma=" << format_rational(sigma) << '\n';
  std::cout << "pairs_checked=" << r.pairs_checked << '\n';
  if (r.min_same_gap_sq) std::cout << "min_same_gap_sq=" << format_rational(*r.min_same_gap_sq) << '\n';
  if (r.min_consecutive_gap_sq) {
    std::cout << "min_consecutive_gap_sq=" << format_rational(*r.min_consecutive_gap_sq) << '\n';
  }
  if (r.pass) {
    std::cout << "PASS\n";
    return 0;
  }
  std::cout << "FAIL condition=" << r.condition << " tiles=(" << r.t1.i << ',' << r.t1.j << ")-(" << r.t2.i << ','
            << r.t2.j << ") colors=" << r.c1 << ',' << r.c2 << " gap_sq=" << format_rational(r.gap_sq) << '\n'
            << r.message << '\n';
  return kExitFailure;
}

int plane_sigma(const PlaneArgs& a) {
  if (a.p < 0 || a.q < 0) throw UsageError("sigma needs --p and --q");
  const SigmaBound formula = as_usage([&] { return pq_sigma_bound(a.h, a.p, a.q, 6); });
  const SigmaExact exact = as_usage([&] { return pq_sigma_max(a.h, a.p, a.q, 6); });
  std::cout << "h=" << a.h << " p=" << a.p << " q=" << a.q << " k=" << pq_color_count(a.p, a.q) << '\n';
  std::cout << "formula_lower=" << format_rational(formula.lower) << " formula_upper=" << format_rational(formula.upper)
            << '\n';
  std::cout << "exact_sq=" << format_rational(exact.sq) << " exact_lower=" << format_rational(exact.lower)
            << " exact_upper=" << format_rational(exact.upper) << " witness=(" << exact.witness.i << ','
            << exact.witness.j << ")\n";
  if (exact.sq < 1) {
    std::cout << "sigma_max < 1: not a solid coloring for any sigma >= 1\n";
    return kExitFailure;
  }
  return 0;
}

int plane_records(const PlaneArgs& a) {
  const Rational limit = decimal_arg(a.sigma_max, "sigma-max");
  const auto rows = as_usage([&] { return pq_records(a.h_max, limit); });
  Output out(a.out);
  std::ostream& os = out.stream();
  os << "sigma,k_over_h2,h2,k,p,q\n";
  for (const RecordRow& r : rows) {
    const Rational lower = sqrt_lower(ExactScalar(r.sigma_sq), 6);
    const Rational per = ratio(r.k, r.h * r.h);
    os << format_rational(lower) << ',' << fixed6(per.get_d()) << ',' << r.h * r.h << ',' << r.k << ',' << r.p << ','
       << r.q << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string algorithm = "foldshade";
  std::string sigma = "1";
  std::string mode = "proper";
  int h = 2;
  int p = -1;
  int q = -1;
  std::string base_kind;
  std::string base_file;
  std::string input;
  bool shapes = false;
  std::string rho = "2";
  std::string gen;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::string box = "10";
  std::string save_instance;
  std::string out;
  bool verify = false;
  std::string report;
  std::size_t clique_limit = 100;
  std::size_t chromatic_limit = 20;
  std::size_t l21_limit = 10;
};

struct Setup {
  AlgorithmConfig config;
  ShapeAdapterConfig shape_config;
  bool shapes = false;
};

std::shared_ptr<const PlaneColoring> explicit_base(const RunArgs& a) {
  if (!a.base_file.empty()) {
    std::ifstream in = open_input(a.base_file);
    return std::make_shared<const PlaneColoring>(read_coloring(in));
  }
  if (a.p < 0) return nullptr;
  const ColoringKind kind = a.base_kind.empty() ? ColoringKind::Pq : parse_coloring_kind(a.base_kind);
  if (kind == ColoringKind::Pq) {
    if (a.q < 0) throw UsageError("a (p, q) base needs both --p and --q");
    return std::make_shared<const PlaneColoring>(PlaneColoring::pq(a.h, a.p, a.q));
  }
  return std::make_shared<const PlaneColoring>(PlaneColoring::lstar(a.h, a.p, kind));
}

Setup make_setup(const RunArgs& a, bool shapes) {
  return as_usage([&] {
    Setup s;
    s.shapes = shapes;
    AlgorithmConfig& c = s.config;
    c.kind = parse_algorithm_kind(a.algorithm);
    c.sigma = decimal_arg(a.sigma, "sigma");
    c.mode = parse_mode(a.mode);
    if (shapes) {
      if (c.mode == Mode::L21) throw UsageError("L21 mode is not available for shapes");
      const Rational rho = decimal_arg(a.rho, "rho");
      if (rho < 1) throw UsageError("--rho must be at least 1");
      s.shape_config.kind = c.kind;
      s.shape_config.sigma = c.sigma;
      s.shape_config.rho_sq_bound = rho * rho;
      c.reach_sq = shape_reach_sq(c.kind, c.sigma, rho * rho);
    }
    c.base = explicit_base(a);
    if (!c.base) c.base = default_base(c, a.h);
    s.shape_config.base = c.base;
    OnlineColorer probe(c);  // rejects inconsistent configurations up front
    return s;
  });
}

void write_run_csv(std::ostream& os, const Setup& s, const RunResult& r) {
  const AlgorithmConfig& c = s.config;
  os << "# algorithm=" << to_string(c.kind) << " sigma=" << format_rational(c.sigma) << " mode=" << to_string(c.mode);
  if (c.base) {
    os << " base=" << to_string(c.base->kind()) << " h=" << c.base->h() << " p=" << c.base->p() << " q=" << c.base->q()
       << " k=" << c.base->k() << " b=" << c.base->b() << " shading="
       << (c.base->lattice().shading_scheme() == ShadingScheme::Stripes ? "stripes" : "canonical");
  }
  os << " branches=" << (is_branching(c.kind) ? branch_count(c.sigma) : 1) << '\n';
  os << "id,branch,color,layer,tile_i,tile_j,flat_color\n";
  for (std::size_t i = 0; i < r.colors.size(); ++i) {
    const OnlineColor& oc = r.colors[i];
    os << i << ',' << oc.branch << ',' << oc.value << ',' << oc.layer << ',' << oc.tile.i << ',' << oc.tile.j << ','
       << oc.flat << '\n';
  }
}

struct Instance {
  std::vector<Disk> disks;
  std::vector<ConvexShape> shapes;
};

Instance load_instance(const RunArgs& a, const Setup& s) {
  Instance inst;
  if (!a.input.empty()) {
    if (!a.gen.empty()) throw UsageError("give either --input or --gen");
    std::ifstream in = open_input(a.input);
    if (s.shapes) {
      inst.shapes = read_shapes_jsonl(in);
    } else {
      inst.disks = read_disks_jsonl(in);
    }
    return inst;
  }
  const Rational box = decimal_arg(a.box, "box");
  const Rational& sigma = s.config.sigma;
  Metadata meta{{"generator", a.gen}, {"rng", kRngName}, {"seed", std::to_string(a.seed)}, {"n", std::to_string(a.n)},
                {"sigma", format_rational(sigma)}};
  as_usage([&] {
    if (a.gen == "disks") {
      inst.disks = gen_random_disks(a.n, sigma, box, a.seed);
      meta.emplace_back("box", format_rational(box));
    } else if (a.gen == "clique") {
      if (!s.config.base) throw UsageError("--gen clique needs a base coloring");
      inst.disks = gen_adversarial_tile_clique(a.n, *s.config.base, a.seed);
    } else if (a.gen == "shapes") {
      inst.shapes = gen_random_shapes(a.n, sigma, box, a.seed);
      meta.emplace_back("box", format_rational(box));
    } else if (a.gen.empty()) {
      throw UsageError("give --input or --gen");
    } else {
      throw UsageError("unknown generator '" + a.gen + "'");
    }
    return 0;
  });
  if (!a.gen.empty() && (a.gen == "shapes") != s.shapes) throw UsageError("--shapes only goes with --gen shapes");
  if (!a.save_instance.empty()) {
    Output out(a.save_instance);
    if (s.shapes) {
      write_shapes_jsonl(out.stream(), inst.shapes, meta);
    } else {
      write_disks_jsonl(out.stream(), inst.disks, meta);
    }
  }
  return inst;
}

int cmd_run(const RunArgs& a) {
  const Setup s = make_setup(a, a.shapes || a.gen == "shapes");
  const Instance inst = load_instance(a, s);
  const OracleLimits limits{a.clique_limit, a.chromatic_limit, a.l21_limit};
  RunResult result;
  std::optional<RatioReport> report;
  if (a.verify) {
    ReportOutcome o = s.shapes ? competitive_report(s.shape_config, inst.shapes, "run", limits)
                               : competitive_report(s.config, inst.disks, "run", limits);
    result = std::move(o.run);
    report = o.report;
  } else {
    result = s.shapes ? shape_stream_adapter(s.shape_config, inst.shapes) : run(s.config, inst.disks);
  }
  {
    Output out(a.out);
    write_run_csv(out.stream(), s, result);
  }
  std::ostream& log = a.out.empty() || a.out == "-" ? std::cerr : std::cout;
  log << "n=" << result.colors.size() << " colors_used=" << result.colors_used << " max_flat=" << result.max_value
      << " branches_used=" << result.branches_used << " max_value_per_branch=";
  for (std::size_t j = 0; j < result.max_value_per_branch.size(); ++j) {
    log << (j ? ";" : "") << result.max_value_per_branch[j];
  }
  log << '\n';
  if (!report) return 0;
  {
    const bool append = !a.report.empty() && a.report != "-" && std::ifstream(a.report).good();
    std::ofstream file;
    if (!a.report.empty() && a.report != "-") file.open(a.report, std::ios::binary | std::ios::app);
    std::ostream& os = file.is_open() ? static_cast<std::ostream&>(file) : log;
    if (!append) os << ratio_csv_header() << '\n';
    os << ratio_csv_row(*report) << '\n';
  }
  const bool bound_ok = report->bound_respected.value_or(true);
  log << (report->verified ? "verification: PASS" : "verification: FAIL") << " violations=" << report->violations
      << " bound_respected=" << (report->bound_respected ? (*report->bound_respected ? "true" : "false") : "unknown")
      << '\n';
  return report->verified && bound_ok ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::size_t instances = 100;
  std::size_t n = 50;
  std::string sigma = "2";
  std::string box = "10";
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms{"simple", "branch", "fold", "foldshade"};
  std::vector<int> branchfold_h;
  int h = 2;
  std::string out;
  unsigned threads = 0;
  std::size_t clique_limit = 100;
  std::size_t chromatic_limit = 20;
  std::size_t l21_limit = 10;
};

int cmd_bench(const BenchArgs& a) {
  const Rational sigma = decimal_arg(a.sigma, "sigma");
  const Rational box = decimal_arg(a.box, "box");
  std::vector<AlgorithmConfig> configs;
  as_usage([&] {
    for (const std::string& name : a.algorithms) {
      AlgorithmConfig c;
      c.kind = parse_algorithm_kind(name);
      c.sigma = sigma;
      c.base = default_base(c, a.h);
      OnlineColorer probe(c);
      configs.push_back(c);
    }
    for (int h : a.branchfold_h) {
      AlgorithmConfig c;
      c.kind = AlgorithmKind::BranchFoldColor;
      c.sigma = sigma;
      c.base = default_base(c, h);
      OnlineColorer probe(c);
      configs.push_back(c);
    }
    return 0;
  });
  const OracleLimits limits{a.clique_limit, a.chromatic_limit, a.l21_limit};
  const std::size_t jobs = a.instances * configs.size();
  std::vector<RatioReport> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(jobs);
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t inst = job / configs.size();
      try {
        const auto disks = gen_random_disks(a.n, sigma, box, a.seed + inst);
        rows[job] = competitive_report(configs[job % configs.size()], disks, "i" + std::to_string(inst), limits).report;
      } catch (const std::exception& e) {
        errors[job] = e.what();
      }
    }
  };
  const unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  Output out(a.out);
  std::ostream& os = out.stream();
  os << ratio_csv_header() << '\n';
  std::size_t verified = 0, respected = 0;
  for (const RatioReport& r : rows) {
    os << ratio_csv_row(r) << '\n';
    verified += r.verified;
    respected += r.bound_respected.value_or(false);
  }
  std::ostream& log = a.out.empty() || a.out == "-" ? std::cerr : std::cout;
  log << "rows=" << rows.size() << " verified=" << verified << " bound_respected=" << respected << '\n';
  return verified == rows.size() && respected == rows.size() ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- curves

struct CurvesArgs {
  std::string which = "a";
  std::string out;
  std::vector<std::string> sigmas{"1", "2"};
  std::vector<int> hs{1, 2, 3};
  std::uint64_t omega_max = 1000000;
  std::uint64_t omega = 1000000000;
  int h = 10;
  std::string sigma_max = "64";
  std::string sigma_step = "0.25";
};

// k = ceil((2 sigma / sqrt3 + 1) h)^2 and b = h^2 of the h^2-fold coloring.
BoundParams hsq_params(int h, const Rational& sigma) {
  const std::int64_t p = ceil(ExactScalar(h) * (ExactScalar(0, Rational(2, 3)) * ExactScalar(sigma) + ExactScalar(1)));
  return {p * p, static_cast<std::int64_t>(h) * h, gamma(h), 1};
}

std::vector<Rational> sigma_grid(const CurvesArgs& a) {
  const Rational hi = decimal_arg(a.sigma_max, "sigma-max");
  const Rational step = decimal_arg(a.sigma_step, "sigma-step");
  if (step <= 0 || hi < 1) throw UsageError("need --sigma-step > 0 and --sigma-max >= 1");
  std::vector<Rational> out;
  for (Rational s(1); s <= hi; s += step) out.push_back(s);
  return out;
}

int cmd_curves(const CurvesArgs& a) {
  Output out(a.out);
  std::ostream& os = out.stream();
  if (a.which == "a") {
    os << "sigma,branchff,simplecolor,branchcolor\n";
    for (const Rational& s : sigma_grid(a)) {
      const int branches = branch_count(s);
      const BoundParams simple = hsq_params(1, s);
      os << format_rational(s) << ',' << 28 * branches << ',' << simple.k << ',' << 12 * branches << '\n';
    }
  } else if (a.which == "b") {
    os << "sigma,h,omega,bound,ratio\n";
    for (const std::string& st : a.sigmas) {
      const Rational s = decimal_arg(st, "sigmas");
      for (int h : a.hs) {
        const BoundParams params = hsq_params(h, s);
        for (std::uint64_t w = 1; w <= a.omega_max;) {
          const std::uint64_t bound = bound_formula(AlgorithmKind::FoldShadeColor, w, params);
          os << format_rational(s) << ',' << h << ',' << w << ',' << bound << ','
             << fixed6(static_cast<double>(bound) / static_cast<double>(w)) << '\n';
          w = std::max(w + 1, w + w / 20);
        }
      }
    }
  } else if (a.which == "c") {
    os << "sigma,h,omega,bound,ratio\n";
    for (const Rational& s : sigma_grid(a)) {
      const BoundParams params = hsq_params(a.h, s);
      const std::uint64_t bound = bound_formula(AlgorithmKind::FoldShadeColor, a.omega, params);
      os << format_rational(s) << ',' << a.h << ',' << a.omega << ',' << bound << ','
         << fixed6(static_cast<double>(bound) / static_cast<double>(a.omega)) << '\n';
    }
  } else {
    throw UsageError("--which must be a, b or c");
  }
  return 0;
}

void add_limits(CLI::App* app, std::size_t& clique, std::size_t& chromatic, std::size_t& l21) {
  app->add_option("--clique-limit", clique, "Largest n for exact omega")->capture_default_str();
  app->add_option("--chromatic-limit", chromatic, "Largest n for exact chi")->capture_default_str();
  app->add_option("--l21-limit", l21, "Largest n for exact lambda")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online coloring of disk and convex-shape intersection graphs over hexagonal plane colorings"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  PlaneArgs plane;
  CLI::App* plane_cmd = app.add_subcommand("plane", "Build, validate and inspect plane colorings");
  plane_cmd->require_subcommand(1);
  auto add_coloring_opts = [&](CLI::App* c) {
    c->add_option("--h", plane.h, "Tiling refinement h (b = h^2 layers)")->capture_default_str();
    c->add_option("--p", plane.p, "Lattice parameter p");
    c->add_option("--q", plane.q, "Lattice parameter q");
    c->add_option("--sigma", plane.sigma, "Target sigma (decimal)");
    c->add_option("--kind", plane.kind, "pq, lstar3 or lstar6")->capture_default_str();
    c->add_flag("--search", plane.search, "Smallest (h^2, p, q) coloring for --sigma instead of the h^2 formula");
    c->add_flag("--no-guard", plane.no_guard, "Drop the extra wrap-around label of L* labelings");
  };
  CLI::App* build_cmd = plane_cmd->add_subcommand("build", "Write a coloring file");
  add_coloring_opts(build_cmd);
  build_cmd->add_flag("--table", plane.table, "Append the color table of the fundamental tiles");
  build_cmd->add_option("--out", plane.out, "Output file (default stdout)");
  CLI::App* validate_cmd = plane_cmd->add_subcommand("validate", "Check a coloring against sigma");
  add_coloring_opts(validate_cmd);
  validate_cmd->add_option("--file", plane.file, "Coloring file written by plane build");
  validate_cmd->add_option("--samples", plane.samples, "Random points for the layer check")->capture_default_str();
  validate_cmd->add_option("--seed", plane.seed, "Seed for the sampled points")->capture_default_str();
  CLI::App* sigma_cmd = plane_cmd->add_subcommand("sigma", "Formula and exact sigma of an (h^2, p, q)-coloring");
  sigma_cmd->add_option("--h", plane.h)->capture_default_str();
  sigma_cmd->add_option("--p", plane.p)->required();
  sigma_cmd->add_option("--q", plane.q)->required();
  CLI::App* records_cmd = plane_cmd->add_subcommand("records", "Pareto-optimal (h^2, p, q)-colorings");
  records_cmd->add_option("--h-max", plane.h_max)->capture_default_str();
  records_cmd->add_option("--sigma-max", plane.sigma_max)->capture_default_str();
  records_cmd->add_option("--out", plane.out, "Output CSV (default stdout)");

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an online algorithm over a disk or shape stream");
  run_cmd->add_option("--algorithm", run_args.algorithm, "ff, simple, branch, fold, foldshade or branchfold")
      ->capture_default_str();
  run_cmd->add_option("--sigma", run_args.sigma, "Largest diameter (decimal)")->capture_default_str();
  run_cmd->add_option("--mode", run_args.mode, "proper or l21")->capture_default_str();
  run_cmd->add_option("--h", run_args.h, "h of the automatically chosen base")->capture_default_str();
  run_cmd->add_option("--p", run_args.p, "Explicit base parameter p");
  run_cmd->add_option("--q", run_args.q, "Explicit base parameter q");
  run_cmd->add_option("--base-kind", run_args.base_kind, "pq, lstar3 or lstar6 for an explicit base");
  run_cmd->add_option("--base", run_args.base_file, "Coloring file written by plane build");
  run_cmd->add_option("--input", run_args.input, "JSONL instance");
  run_cmd->add_flag("--shapes", run_args.shapes, "The --input instance holds convex shapes (implied by --gen shapes)");
  run_cmd->add_option("--rho", run_args.rho, "Declared bound on outer/inner diameter for shapes")->capture_default_str();
  run_cmd->add_option("--gen", run_args.gen, "Generate the instance: disks, clique or shapes");
  run_cmd->add_option("--n", run_args.n, "Generated instance size")->capture_default_str();
  run_cmd->add_option("--seed", run_args.seed, "Generator seed")->capture_default_str();
  run_cmd->add_option("--box", run_args.box, "Side of the generator's square")->capture_default_str();
  run_cmd->add_option("--save-instance", run_args.save_instance, "Write the generated instance as JSONL");
  run_cmd->add_option("--out", run_args.out, "Per-vertex CSV (default stdout)");
  run_cmd->add_flag("--verify", run_args.verify, "Verify with the oracles and emit a ratio report row");
  run_cmd->add_option("--report", run_args.report, "Append the ratio report row to this CSV");
  add_limits(run_cmd, run_args.clique_limit, run_args.chromatic_limit, run_args.l21_limit);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Seeded batch of random instances with ratio reports");
  bench_cmd->add_option("--instances", bench.instances)->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Disks per instance")->capture_default_str();
  bench_cmd->add_option("--sigma", bench.sigma)->capture_default_str();
  bench_cmd->add_option("--box", bench.box)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Instance i uses seed + i")->capture_default_str();
  bench_cmd->add_option("--algorithms", bench.algorithms)->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--branchfold-h", bench.branchfold_h, "Extra BranchFoldColor runs on the G[1,2] base of each h")
      ->delimiter(',');
  bench_cmd->add_option("--h", bench.h, "h of the folding bases")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output CSV (default stdout)");
  add_limits(bench_cmd, bench.clique_limit, bench.chromatic_limit, bench.l21_limit);

  CurvesArgs curves;
  CLI::App* curves_cmd = app.add_subcommand("curves", "Bound curves as CSV");
  curves_cmd->add_option("--which", curves.which, "a: basic ratios over sigma; b: FoldShadeColor over omega; "
                                                  "c: FoldShadeColor over sigma")
      ->capture_default_str();
  curves_cmd->add_option("--out", curves.out, "Output CSV (default stdout)");
  curves_cmd->add_option("--sigmas", curves.sigmas, "Curve b: sigma values")->delimiter(',')->capture_default_str();
  curves_cmd->add_option("--hs", curves.hs, "Curve b: h values")->delimiter(',')->capture_default_str();
  curves_cmd->add_option("--omega-max", curves.omega_max, "Curve b: largest omega")->capture_default_str();
  curves_cmd->add_option("--omega", curves.omega, "Curve c: omega")->capture_default_str();
  curves_cmd->add_option("--h", curves.h, "Curve c: h")->capture_default_str();
  curves_cmd->add_option("--sigma-max", curves.sigma_max, "Curves a, c: largest sigma")->capture_default_str();
  curves_cmd->add_option("--sigma-step", curves.sigma_step, "Curves a, c: sigma step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return plane_build(plane);
    if (validate_cmd->parsed()) return plane_validate(plane);
    if (sigma_cmd->parsed()) return plane_sigma(plane);
    if (records_cmd->parsed()) return plane_records(plane);
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    if (curves_cmd->parsed()) return cmd_curves(curves);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
