#include "hybrid_centers/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hybrid_centers/asymptotics.hpp"
#include "hybrid_centers/cycles.hpp"
#include "hybrid_centers/orbit_engine.hpp"
#include "hybrid_centers/output.hpp"
#include "hybrid_centers/return_map.hpp"
#include "hybrid_centers/spec_io.hpp"
#include "hybrid_centers/symbolic_chaos.hpp"

namespace hc::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr long kDegreeCap = 4096;
constexpr int kDefaultMaxPeriod = 6;
constexpr int kFateMaxPeriod = 2;

struct Options {
  std::string spec_path;
  bool strict = false;
  bool print_spec = false;
  std::optional<std::uint64_t> seed;

  std::optional<int> max_period;
  std::string grid;
  std::optional<int> max_iter;
  std::string q;
  int which = 1;
  std::optional<int> max_events;
  std::optional<double> max_time;
  std::optional<int> samples;
  std::string svg;
  std::string range = "-1.5:1.5";
  int cobweb_samples = 1001;
  std::optional<double> start;
  int steps = 20;
  std::string csv;
  int block_length = 8;
};

std::vector<double> split_numbers(const std::string& text, char sep, std::size_t count, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v))
      throw CLI::ValidationError(flag, "'" + text + "' is not a list of numbers");
    out.push_back(v);
  }
  if (out.size() != count) throw CLI::ValidationError(flag, "expected " + std::to_string(count) + " values");
  return out;
}

ojson interval_json(const OpenInterval& iv) { return ojson::array({json_number(iv.lo), json_number(iv.hi)}); }

ojson cycle_json(const LimitCycle& c) {
  ojson j;
  j["period"] = c.period;
  j["points"] = c.points;
  j["itinerary"] = c.itinerary;
  j["regular"] = c.regular;
  j["multiplier"] = json_number(c.multiplier);
  j["classification"] = to_string(c.classification);
  j["boundary_adjacent"] = c.boundary_adjacent;
  j["extended_classification"] = c.extended_classification;
  return j;
}

int default_max_period(const SystemSpec& spec, const Options& opt, int limit) {
  if (opt.max_period) return *opt.max_period;
  if (spec.analysis.max_period) return *spec.analysis.max_period;
  return std::max(1, max_period_within_cap(spec.system.reset.degree(), kDegreeCap, limit));
}

std::vector<LimitCycle> cycles_for(const SystemSpec& spec, const BranchPartition& p, int max_period) {
  CycleSearchOptions o;
  o.max_period = max_period;
  o.degree_cap = kDegreeCap;
  std::vector<LimitCycle> cycles = find_cycles(spec.system, p, o);
  if (spec.analysis.tolerance)
    for (auto& c : cycles) c.classification = classify(c, *spec.analysis.tolerance);
  return cycles;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InvalidParameter("cannot write '" + path + "'");
  f << content;
}

int cmd_partition(const SystemSpec& spec, std::ostream& out) {
  const HybridSystem& sys = spec.system;
  const BranchPartition p = build_partition(sys);
  ojson j;
  j["system"] = system_to_json(sys);
  j["eta1"] = eta(sys.center1);
  j["eta2"] = eta(sys.center2);
  ojson tr = ojson::array();
  for (Side s : {Side::left, Side::right}) {
    const TransversalIntervals t = transversal_intervals(sys.center(s), s);
    tr.push_back({{"side", to_int(s)},
                  {"entering", interval_json(t.entering)},
                  {"leaving", interval_json(t.leaving)},
                  {"fold", t.fold},
                  {"fold_kind", to_string(t.fold_kind)}});
  }
  j["transversal"] = tr;
  ojson branches = ojson::array();
  for (const auto& b : p.branches()) {
    ojson dom = ojson::array();
    for (const auto& iv : b.domain) dom.push_back(interval_json(iv));
    ojson exact = ojson::array();
    for (const auto& c : b.expr.coeffs()) exact.push_back(c.get_str());
    branches.push_back({{"id", b.id}, {"domain", dom}, {"coefficients", b.expr.to_doubles()}, {"exact", exact}});
  }
  j["branches"] = branches;
  ojson bps = ojson::array();
  for (const auto& bp : p.boundary_points()) {
    ojson cands = ojson::array();
    for (const auto& c : bp.candidates) cands.push_back({{"branch", c.branch}, {"value", json_number(c.value)}});
    bps.push_back({{"y", bp.y}, {"exact", bp.exact}, {"candidates", cands}});
  }
  j["boundary_points"] = bps;
  out << to_json_text(j);
  return kExitOk;
}

int cmd_cycles(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  const BranchPartition p = build_partition(spec.system);
  const int k = default_max_period(spec, opt, kDefaultMaxPeriod);
  ojson j;
  j["max_period"] = k;
  if (spec.system.reset.degree() == 1) {
    const AffineCycleResult a = affine_regular_cycle(spec.system);
    ojson aj;
    aj["outcome"] = to_string(a.outcome);
    aj["fixed_point"] = a.fixed_point ? json_number(*a.fixed_point) : ojson(nullptr);
    j["affine"] = aj;
  }
  ojson list = ojson::array();
  for (const auto& c : cycles_for(spec, p, k)) list.push_back(cycle_json(c));
  j["cycles"] = list;
  out << to_json_text(j);
  return kExitOk;
}

int cmd_fate(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  const auto g = split_numbers(opt.grid, ':', 3, "--grid");
  const double count_d = g[2];
  if (count_d < 1 || count_d != std::floor(count_d) || count_d > 1e7)
    throw CLI::ValidationError("--grid", "count must be a positive integer");
  const int count = static_cast<int>(count_d);
  const BranchPartition p = build_partition(spec.system);
  const int iters = opt.max_iter.value_or(spec.analysis.max_iter);
  const auto cycles = cycles_for(spec, p, default_max_period(spec, opt, kFateMaxPeriod));
  const FateBounds bounds = fate_bounds(spec.system);
  bool undetermined = false;
  out << "y,verdict,iterations,bound\n";
  for (int i = 0; i < count; ++i) {
    const double y = count == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (count - 1);
    const FateReport r = orbit_fate(spec.system, p, y, iters, cycles, bounds);
    undetermined = undetermined || r.verdict == Verdict::undetermined;
    out << format_double(y) << ',' << to_string(r.verdict) << ',' << r.iterations_used << ','
        << (r.bound ? format_double(*r.bound) : "") << '\n';
  }
  return opt.strict && undetermined ? kExitUndetermined : kExitOk;
}

int cmd_simulate(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  const auto q = split_numbers(opt.q, ',', 2, "--q");
  if (opt.which != 1 && opt.which != 2) throw CLI::ValidationError("--which", "must be 1 or 2");
  OrbitBudget budget;
  budget.max_events = opt.max_events.value_or(spec.analysis.max_events);
  budget.max_time = opt.max_time.value_or(spec.analysis.max_time);
  budget.samples = opt.samples.value_or(spec.analysis.samples);
  const OrbitTrace tr = global_orbit(spec.system, {q[0], q[1]}, side_from_int(opt.which), budget);

  out << "event_index,kind,t_start,duration,x,y\n";
  PlanePoint last = tr.initial;
  for (const auto& e : tr.events) {
    std::string kind = to_string(e.kind);
    double duration = 0.0;
    if (e.kind == OrbitEvent::Kind::arc) {
      duration = e.arc.duration;
      last = e.arc.end;
    } else if (e.kind == OrbitEvent::Kind::jump) {
      last = {0.0, e.jump.to_y};
    } else {
      kind += ":" + std::string(to_string(e.reason));
    }
    out << e.index << ',' << kind << ',' << format_double(e.t_start) << ',' << format_double(duration) << ','
        << format_double(last.x) << ',' << format_double(last.y) << '\n';
  }

  if (!opt.svg.empty()) {
    double xmin = 0.0, xmax = 0.0, ymin = tr.initial.y, ymax = tr.initial.y;
    auto grow = [&](PlanePoint p) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    };
    for (const auto& e : tr.events) {
      if (e.kind == OrbitEvent::Kind::arc) {
        for (const auto& s : e.arc.samples) grow(s);
        grow(e.arc.start);
        grow(e.arc.end);
      } else if (e.kind == OrbitEvent::Kind::jump) {
        grow({0.0, e.jump.from_y});
        grow({0.0, e.jump.to_y});
      }
    }
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-6});
    SvgPlot plot(xmin - pad, xmax + pad, ymin - pad, ymax + pad);
    plot.line({0.0, ymin - pad}, {0.0, ymax + pad}, "#999999", 1.0);
    for (const auto& e : tr.events) {
      if (e.kind == OrbitEvent::Kind::arc) {
        const auto& pts = e.arc.samples.empty() ? std::vector<PlanePoint>{e.arc.start, e.arc.end} : e.arc.samples;
        plot.polyline(pts, e.arc.side == Side::left ? "#1f77b4" : "#d62728");
      } else if (e.kind == OrbitEvent::Kind::jump) {
        plot.line({0.0, e.jump.from_y}, {0.0, e.jump.to_y}, "#2ca02c", 2.0, true);
      }
    }
    plot.dot(tr.initial, "black");
    std::ostringstream os;
    plot.write(os);
    write_file(opt.svg, os.str());
  }
  return opt.strict && tr.terminated == StopReason::budget ? kExitUndetermined : kExitOk;
}

int cmd_cobweb(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  const auto r = split_numbers(opt.range, ':', 2, "--range");
  if (!(r[1] > r[0])) throw CLI::ValidationError("--range", "must satisfy a < b");
  if (opt.cobweb_samples < 2) throw CLI::ValidationError("--samples", "must be at least 2");
  const HybridSystem& sys = spec.system;
  const BranchPartition p = build_partition(sys);
  std::vector<PlanePoint> graph;
  out << "y,P,branch\n";
  for (int i = 0; i < opt.cobweb_samples; ++i) {
    const double y = r[0] + (r[1] - r[0]) * i / (opt.cobweb_samples - 1);
    const auto br = p.branch_of(y);
    const double v = eval_return_resolved(sys, p, y).value;
    out << format_double(y) << ',' << format_double(v) << ',' << (br ? *br : 0) << '\n';
    graph.push_back({y, v});
  }
  if (!opt.svg.empty()) {
    const double span = r[1] - r[0];
    SvgPlot plot(r[0], r[1], r[0] - 0.25 * span, r[1] + 0.25 * span);
    std::vector<PlanePoint> clipped;
    for (const auto& g : graph)
      clipped.push_back({g.x, std::clamp(g.y, r[0] - 0.25 * span, r[1] + 0.25 * span)});
    plot.line({r[0], r[0]}, {r[1], r[1]}, "#999999");
    plot.polyline(clipped, "#1f77b4");
    if (opt.start) {
      double y = *opt.start;
      std::vector<PlanePoint> web{{y, y}};
      for (int i = 0; i < opt.steps && std::isfinite(y) && std::abs(y) < 1e6; ++i) {
        const double next = eval_return_resolved(sys, p, y).value;
        web.push_back({y, next});
        web.push_back({next, next});
        y = next;
      }
      plot.polyline(web, "#d62728", 1.0);
    }
    std::ostringstream os;
    plot.write(os);
    write_file(opt.svg, os.str());
  }
  return kExitOk;
}

int cmd_chaos_demo(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  CertificateOptions co;
  co.block_length = opt.block_length;
  co.seed = opt.seed.value_or(spec.analysis.seed);
  const ChaosCertificate c = certify_chaos(spec.system, co);
  ojson j;
  j["system"] = system_to_json(spec.system);
  j["coefficient_match"] = c.coefficient_match;
  j["unit_interval_in_branch1"] = c.unit_interval_in_branch1;
  j["interval_invariant"] = c.interval_invariant;
  j["periodic_density_depth"] = c.periodic_density_depth;
  j["periodic_density_gap"] = c.periodic_density_gap;
  j["transitivity_blocks"] = c.transitivity_blocks;
  j["sensitivity_estimate"] = c.sensitivity_estimate;
  j["failed_clauses"] = c.failed_clauses;
  j["passes"] = c.passes();
  out << to_json_text(j);

  if (!opt.csv.empty()) {
    const BranchPartition p = build_partition(spec.system);
    const TransitivityWitness w = transitivity_witness(opt.block_length);
    std::ostringstream os;
    os << "m,x,h_x,P_h_x,h_next\n";
    for (std::size_t m = 0; m + 1 < w.orbit.size(); ++m) {
      const double hx = conjugacy_h(w.orbit[m]);
      os << m << ',' << format_double(w.orbit[m]) << ',' << format_double(hx) << ','
         << format_double(eval_return_resolved(spec.system, p, hx).value) << ','
         << format_double(conjugacy_h(w.orbit[m + 1])) << '\n';
    }
    write_file(opt.csv, os.str());
  }
  return opt.strict && !c.passes() ? kExitUndetermined : kExitOk;
}

// Help and version keep their zero code; anything else is a usage error.
int usage_exit(const CLI::App& app, const CLI::ParseError& e, std::ostream& out, std::ostream& err) {
  const int rc = app.exit(e, out, err);
  return rc == 0 ? kExitOk : kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze planar hybrid systems made of two linear centers and a polynomial reset.", "hybrid-centers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--strict", opt.strict, "Exit 3 when a verdict stays undetermined");
  app.add_flag("--print-spec", opt.print_spec, "Print the normalized spec and exit");
  app.add_option("--seed", opt.seed, "Seed for randomized scans");

  auto* partition = app.add_subcommand("partition", "Branch domains and formulas of the return map (JSON)");
  auto* cycles = app.add_subcommand("cycles", "Periodic orbits of the return map (JSON)");
  auto* fate = app.add_subcommand("fate", "Asymptotic fate over a grid of initial points (CSV)");
  auto* simulate = app.add_subcommand("simulate", "Global orbit as a sequence of arcs and jumps (CSV)");
  auto* cobweb = app.add_subcommand("cobweb", "Return map sampled on a range (CSV)");
  auto* chaos = app.add_subcommand("chaos-demo", "Chaos certificate for the logistic example (JSON)");
  for (auto* sub : {partition, cycles, fate, simulate, cobweb})
    sub->add_option("spec", opt.spec_path, "System spec (JSON)")->required();
  chaos->add_option("spec", opt.spec_path, "System spec (JSON); the built-in example when omitted");

  cycles->add_option("--max-period", opt.max_period, "Largest period searched")->check(CLI::PositiveNumber);
  fate->add_option("--grid", opt.grid, "y0:y1:count")->required();
  fate->add_option("--max-iter", opt.max_iter, "Iteration budget per point")->check(CLI::PositiveNumber);
  fate->add_option("--max-period", opt.max_period, "Largest cycle period tested for convergence")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--q", opt.q, "Initial point x,y")->required();
  simulate->add_option("--which", opt.which, "Side followed first from a point on x = 0 (1 or 2)");
  simulate->add_option("--max-events", opt.max_events, "Event budget")->check(CLI::PositiveNumber);
  simulate->add_option("--max-time", opt.max_time, "Time budget")->check(CLI::PositiveNumber);
  simulate->add_option("--samples", opt.samples, "Points per arc in the SVG")->check(CLI::NonNegativeNumber);
  simulate->add_option("--svg", opt.svg, "Write the orbit as SVG");
  cobweb->add_option("--range", opt.range, "a:b");
  cobweb->add_option("--samples", opt.cobweb_samples, "Number of grid points");
  cobweb->add_option("--start", opt.start, "Draw a cobweb from this point in the SVG");
  cobweb->add_option("--steps", opt.steps, "Cobweb steps")->check(CLI::NonNegativeNumber);
  cobweb->add_option("--svg", opt.svg, "Write the graph as SVG");
  chaos->add_option("--csv", opt.csv, "Write the dense-orbit witness as CSV");
  chaos->add_option("--block-length", opt.block_length, "Longest block of the dense orbit (even)");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return usage_exit(app, e, out, err);
  }

  SystemSpec spec{logistic_square_system(), {}};
  try {
    if (!opt.spec_path.empty()) spec = load_spec(opt.spec_path);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return kExitSpecError;
  }
  if (opt.seed) spec.analysis.seed = *opt.seed;
  if (opt.print_spec) {
    out << to_json_text(spec_to_json(spec));
    return kExitOk;
  }

  try {
    if (*partition) return cmd_partition(spec, out);
    if (*cycles) return cmd_cycles(spec, opt, out);
    if (*fate) return cmd_fate(spec, opt, out);
    if (*simulate) return cmd_simulate(spec, opt, out);
    if (*cobweb) return cmd_cobweb(spec, opt, out);
    return cmd_chaos_demo(spec, opt, out);
  } catch (const CLI::ParseError& e) {
    return usage_exit(app, e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitAnalysisError;
  }
}

}  // namespace hc::cli
