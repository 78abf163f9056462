// Command-line front end: solve, verify, oracle, flow, render, frameworks,
// conjecture and move.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bubbles/flow.hpp"
#include "bubbles/json_io.hpp"
#include "bubbles/moves.hpp"
#include "bubbles/oracle.hpp"
#include "bubbles/render.hpp"
#include "bubbles/solver.hpp"

namespace {

using namespace bubbles;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

const Density kDensity;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    if (v != std::floor(v)) throw PreconditionError("expected integers: " + text);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::pair<RegionId, RegionId> region_pair(const std::string& text) {
  const auto v = parse_int_list(text);
  if (v.size() != 2) throw PreconditionError("expected two region indices, e.g. 0,1");
  return {RegionId(v[0]), RegionId(v[1])};
}

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

// ---- solve ----

struct SolveArgs {
  std::string masses;
};

int cmd_solve(const SolveArgs& a, const Common& c) {
  const auto masses = parse_double_list(a.masses);
  const Solution s = solve(kDensity, masses);
  emit(c.out, to_json(s) + "\n");
  std::cerr << "perimeter " << format_double(s.perimeter) << "\n"
            << "layout    " << describe(s.layout) << "\n"
            << "provenance " << to_string(s.provenance) << "\n";
  if (s.provenance == Provenance::ConjecturedAlternating)
    std::cerr << "warning: n >= 5 uses the conjectured alternating layout; optimality is not proved\n";
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  int n = 3;
  int trials = 100;
  bool allow_split = false;
  bool paranoid = false;
  unsigned workers = 0;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  if (a.n < 1 || a.n > 12) throw PreconditionError("verify: n must be in 1..12");
  if (a.allow_split && a.n > 6) throw PreconditionError("verify: split mode supports n <= 6");
  if (a.trials < 0) throw PreconditionError("verify: negative trial count");
  std::mt19937_64 rng(c.seed);
  OracleOptions options;
  options.tol = c.tol;
  options.workers = a.workers;
  options.paranoid = a.paranoid;

  std::string failures;
  int failure_count = 0;
  double max_gap = 0.0;
  double min_split_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < a.trials; ++t) {
    const auto masses = random_masses(a.n, rng);
    const Solution s = solve(kDensity, masses);
    const OracleResult best = brute_force_min(kDensity, masses, options);
    const double gap = (s.perimeter - best.best_perimeter) / best.best_perimeter;
    max_gap = std::max(max_gap, gap);
    bool ok = gap <= c.tol;
    double margin = std::numeric_limits<double>::infinity();
    if (a.allow_split) {
      const OracleResult split = best_split_candidate(kDensity, masses, options);
      margin = (split.best_perimeter - s.perimeter) / s.perimeter;
      min_split_margin = std::min(min_split_margin, margin);
      // The paranoid set contains degenerate structures that coincide with
      // single-interval layouts, so there only "not better" is required.
      ok = ok && (a.paranoid ? margin >= -c.tol : margin > c.tol);
    }
    if (!ok) {
      if (failure_count++) failures += ',';
      std::string m = "[";
      for (std::size_t i = 0; i < masses.size(); ++i) m += (i ? "," : "") + format_double(masses[i]);
      failures += "{\"masses\":" + m + "],\"solver\":" + format_double(s.perimeter) +
                  ",\"oracle\":" + format_double(best.best_perimeter) + "}";
      std::cerr << "discrepancy at trial " << t << ": solver " << format_double(s.perimeter) << " oracle "
                << format_double(best.best_perimeter) << "\n";
    }
  }
  std::string report = "{\"n\":" + std::to_string(a.n) + ",\"trials\":" + std::to_string(a.trials) +
                       ",\"seed\":" + std::to_string(c.seed) + ",\"allow_split\":" + (a.allow_split ? "true" : "false") +
                       ",\"counterexamples\":[" + failures + "],\"max_gap\":" + format_double(max_gap);
  if (a.allow_split && a.trials > 0) report += ",\"min_split_margin\":" + format_double(min_split_margin);
  emit(c.out, report + "}\n");
  std::cerr << (failure_count ? "FAIL" : "ok") << ": " << failure_count << " discrepancies in " << a.trials
            << " trials\n";
  return failure_count ? kVerifyFailed : kOk;
}

// ---- oracle ----

struct OracleArgs {
  std::string masses;
  bool allow_split = false;
  bool paranoid = false;
  bool full = false;
  unsigned workers = 0;
};

int cmd_oracle(const OracleArgs& a, const Common& c) {
  auto masses = parse_double_list(a.masses);
  std::sort(masses.begin(), masses.end());
  OracleOptions options;
  options.allow_split = a.allow_split;
  options.paranoid = a.paranoid;
  options.mode = a.full ? EnumerationMode::FullPermutation : EnumerationMode::Pruned;
  options.workers = a.workers;
  options.tol = c.tol;
  const OracleResult r = brute_force_min(kDensity, masses, options);
  emit(c.out, to_json(r) + "\n");
  std::cerr << "best " << describe(r.best_layout) << " perimeter " << format_double(r.best_perimeter) << " ("
            << r.evaluated << " evaluated, " << r.ties << " tied)\n";
  return kOk;
}

// ---- flow ----

struct FlowArgs {
  std::string config;
  std::string moving;
  std::string directions;
  std::string siphon;
  std::string nested;
  bool origin_slide = false;
  double t_max = std::numeric_limits<double>::infinity();
  double dt_max = 1e-3;
  std::string trace;
};

int cmd_flow(const FlowArgs& a, const Common& c) {
  const Configuration config = parse_configuration(read_file(a.config));
  const int presets = !a.siphon.empty() + !a.nested.empty() + a.origin_slide;
  if (presets > 1) throw PreconditionError("flow: choose at most one of --siphon, --nested, --origin-slide");
  FlowSpec spec{config, {}, {}};
  if (!a.siphon.empty()) {
    const auto [r, s] = region_pair(a.siphon);
    spec = siphon_flow(kDensity, config, r, s);
  } else if (!a.nested.empty()) {
    const auto [r, s] = region_pair(a.nested);
    spec = nested_slide_flow(kDensity, config, r, s);
  } else if (a.origin_slide) {
    spec = origin_slide_flow(kDensity, config);
  } else if (!a.moving.empty()) {
    for (int i : parse_int_list(a.moving)) {
      if (i < 0) throw PreconditionError("flow: negative breakpoint index");
      spec.moving.push_back(static_cast<std::size_t>(i));
    }
    spec.directions = a.directions.empty() ? std::vector<int>(spec.moving.size(), 1) : parse_int_list(a.directions);
  }
  spec.max_time = std::min(spec.max_time, a.t_max);
  const FlowTrace trace = integrate_flow(kDensity, spec, a.dt_max);
  std::ostringstream csv;
  write_trace_csv(csv, trace, spec.config.region_count());
  emit(a.trace, csv.str());
  const Configuration end = final_configuration(spec, trace);
  if (!c.out.empty()) emit(c.out, to_json(end) + "\n");
  std::cerr << "initial perimeter " << format_double(trace.perimeters.front()) << "\n"
            << "final perimeter   " << format_double(total_perimeter(kDensity, end)) << "\n"
            << "steps " << trace.size() - 1 << ", stopped: " << to_string(trace.stop) << "\n";
  return kOk;
}

// ---- render ----

struct RenderArgs {
  std::string config;
  int width = 800;
  int height = 220;
  bool cone = false;
};

int cmd_render(const RenderArgs& a, const Common& c) {
  RenderSpec spec;
  spec.config = parse_configuration(read_file(a.config));
  spec.width = a.width;
  spec.height = a.height;
  spec.show_density_cone = a.cone;
  emit(c.out, render_svg(spec));
  return kOk;
}

// ---- frameworks ----

struct FrameworkArgs {
  std::string shape = "3,3";
  int trials = 200;
  int zeros = 0;
};

int cmd_frameworks(const FrameworkArgs& a, const Common& c) {
  const auto sv = parse_int_list(a.shape);
  if (sv.size() != 2) throw PreconditionError("frameworks: --shape takes left,right");
  const Shape shape{sv[0], sv[1]};
  const int k = shape.left + shape.right;
  if (a.zeros < 0 || a.zeros >= k) throw PreconditionError("frameworks: bad zero count");
  std::mt19937_64 rng(c.seed);
  int failures = 0;
  for (int t = 0; t < a.trials; ++t) {
    auto masses = random_masses(k - a.zeros, rng);
    masses.insert(masses.begin(), static_cast<std::size_t>(a.zeros), 0.0);
    const FrameworkResult r = verify_framework(kDensity, masses, shape, c.tol);
    if (!r.alternating_is_min) {
      ++failures;
      std::cerr << "trial " << t << ": " << describe(r.oracle.best_layout) << " beats alternating "
                << describe(r.alternating) << "\n";
    }
  }
  emit(c.out, "{\"shape\":[" + std::to_string(shape.left) + "," + std::to_string(shape.right) +
                  "],\"zeros\":" + std::to_string(a.zeros) + ",\"trials\":" + std::to_string(a.trials) +
                  ",\"seed\":" + std::to_string(c.seed) + ",\"failures\":" + std::to_string(failures) + "}\n");
  return failures ? kVerifyFailed : kOk;
}

// ---- conjecture ----

struct ConjectureArgs {
  int n = 5;
  int trials = 100;
};

int cmd_conjecture(const ConjectureArgs& a, const Common& c) {
  const ConjectureReport r = conjecture_scan(kDensity, a.n, a.trials, c.seed, c.tol);
  emit(c.out, to_json(r) + "\n");
  std::cerr << r.counterexamples.size() << " counterexamples, " << r.tied_trials << " tied trials\n";
  return r.counterexamples.empty() ? kOk : kVerifyFailed;
}

// ---- move ----

struct MoveArgs {
  std::string config;
  std::string name;
  int index = -1;
  std::string regions;
};

int cmd_move(const MoveArgs& a, const Common& c) {
  const Configuration config = parse_configuration(read_file(a.config));
  if (a.name == "strategy") {
    const auto reports = run_strategy(kDensity, config);
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) out += (i ? "," : "") + to_json(reports[i]);
    emit(c.out, out + "]\n");
    return kOk;
  }
  MoveReport r;
  if (a.name == "condense") {
    r = condense(kDensity, config);
  } else if (a.name == "transpose") {
    if (a.index < 0) throw PreconditionError("move transpose: --index required");
    r = transpose_adjacent(kDensity, config, static_cast<std::size_t>(a.index));
  } else if (a.name == "steal-left") {
    r = mass_steal_outer(kDensity, config, Side::Left);
  } else if (a.name == "steal-right") {
    r = mass_steal_outer(kDensity, config, Side::Right);
  } else if (a.name == "siphon" || a.name == "nested") {
    const auto [p, q] = region_pair(a.regions);
    r = a.name == "siphon" ? siphon_alternating(kDensity, config, p, q) : slide_nested_origin(kDensity, config, p, q);
  } else if (a.name == "origin-slide") {
    r = slide_origin_to_endpoint(kDensity, config);
  } else {
    throw PreconditionError("unknown move: " + a.name);
  }
  emit(c.out, to_json(r) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal interval bubbles on the line with density |x|"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output path (default: stdout)");
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    sub->add_option("--tol", common.tol, "Relative comparison tolerance")->capture_default_str();
  };

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Optimal layout for the given masses");
  solve_cmd->add_option("--masses", solve_args.masses, "Comma-separated masses")->required();
  add_common(solve_cmd);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the solver against exhaustive search");
  verify_cmd->add_option("--n", verify_args.n, "Region count")->required();
  verify_cmd->add_option("--trials", verify_args.trials)->capture_default_str();
  verify_cmd->add_flag("--allow-split", verify_args.allow_split, "Include split-region candidates");
  verify_cmd->add_flag("--paranoid", verify_args.paranoid, "Unfiltered split structures");
  verify_cmd->add_option("--workers", verify_args.workers, "Threads (0: all cores)");
  add_common(verify_cmd);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive minimum for one mass vector");
  oracle_cmd->add_option("--masses", oracle_args.masses)->required();
  oracle_cmd->add_flag("--allow-split", oracle_args.allow_split);
  oracle_cmd->add_flag("--paranoid", oracle_args.paranoid);
  oracle_cmd->add_flag("--full", oracle_args.full, "Full-permutation enumeration");
  oracle_cmd->add_option("--workers", oracle_args.workers);
  add_common(oracle_cmd);

  FlowArgs flow_args;
  auto* flow_cmd = app.add_subcommand("flow", "Integrate an endpoint flow; CSV trace, final configuration to --out");
  flow_cmd->add_option("--config", flow_args.config, "Configuration JSON")->required();
  flow_cmd->add_option("--moving", flow_args.moving, "Comma-separated breakpoint indices");
  flow_cmd->add_option("--directions", flow_args.directions, "+1/-1 per moving index");
  flow_cmd->add_option("--siphon", flow_args.siphon, "Alternating pair a,b");
  flow_cmd->add_option("--nested", flow_args.nested, "Nested pair a,b (b straddles the origin)");
  flow_cmd->add_flag("--origin-slide", flow_args.origin_slide);
  flow_cmd->add_option("--t-max", flow_args.t_max);
  flow_cmd->add_option("--dt-max", flow_args.dt_max)->capture_default_str();
  flow_cmd->add_option("--trace", flow_args.trace, "CSV path (default: stdout)");
  add_common(flow_cmd);

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Draw a configuration as SVG");
  render_cmd->add_option("--config", render_args.config, "Configuration or solution JSON")->required();
  render_cmd->add_option("--width", render_args.width)->capture_default_str();
  render_cmd->add_option("--height", render_args.height)->capture_default_str();
  render_cmd->add_flag("--cone", render_args.cone, "Draw the density graph");
  add_common(render_cmd);

  FrameworkArgs framework_args;
  auto* framework_cmd = app.add_subcommand("frameworks", "Check the alternating order for fixed-shape frameworks");
  framework_cmd->add_option("--shape", framework_args.shape, "left,right cell counts")->capture_default_str();
  framework_cmd->add_option("--trials", framework_args.trials)->capture_default_str();
  framework_cmd->add_option("--zeros", framework_args.zeros, "Zero masses injected")->capture_default_str();
  add_common(framework_cmd);

  ConjectureArgs conjecture_args;
  auto* conjecture_cmd = app.add_subcommand("conjecture", "Random scan of the alternating layout for n >= 5");
  conjecture_cmd->add_option("--n", conjecture_args.n)->capture_default_str();
  conjecture_cmd->add_option("--trials", conjecture_args.trials)->capture_default_str();
  add_common(conjecture_cmd);

  MoveArgs move_args;
  auto* move_cmd = app.add_subcommand("move", "Apply one rearrangement to a configuration");
  move_cmd->add_option("--config", move_args.config)->required();
  move_cmd->add_option("--name", move_args.name,
                       "condense|transpose|steal-left|steal-right|siphon|nested|origin-slide|strategy")
      ->required();
  move_cmd->add_option("--index", move_args.index, "Shared breakpoint for transpose");
  move_cmd->add_option("--regions", move_args.regions, "Region pair for siphon/nested");
  add_common(move_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, common);
    if (*verify_cmd) return cmd_verify(verify_args, common);
    if (*oracle_cmd) return cmd_oracle(oracle_args, common);
    if (*flow_cmd) return cmd_flow(flow_args, common);
    if (*render_cmd) return cmd_render(render_args, common);
    if (*framework_cmd) return cmd_frameworks(framework_args, common);
    if (*conjecture_cmd) return cmd_conjecture(conjecture_args, common);
    if (*move_cmd) return cmd_move(move_args, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
