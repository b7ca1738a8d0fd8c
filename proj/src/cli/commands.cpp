#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "bellfacts/cli.hpp"
#include "bellfacts/errors.hpp"
#include "bellfacts/format.hpp"
#include "json.hpp"

namespace bellfacts::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Format> kFormats{
    {"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};

// Standard output unless a path is given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw UsageError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

MeasurementProtocol protocol_from(const std::vector<double>& angles) {
  return angles.empty() ? MeasurementProtocol{} : MeasurementProtocol{angles};
}

NamedState state_from(const std::string& tag) {
  const auto s = parse_state_tag(tag);
  if (!s) {
    throw UsageError("unknown state '" + tag +
                     "' (expected phi+, phi-, psi+, psi-, rhomax or rho)");
  }
  return *s;
}

Plane plane_from(const std::string& text) {
  const auto p = parse_plane(text);
  if (!p) throw UsageError("unknown plane '" + text + "'");
  return *p;
}

std::vector<LabeledFacts> named_state_facts(const MeasurementProtocol& protocol) {
  std::vector<LabeledFacts> out;
  for (NamedState s : kAllNamedStates) {
    out.emplace_back(std::string(state_tag(s)), facts(s, protocol));
  }
  return out;
}

struct Options {
  std::string format = "text";
  std::string out_path;
  std::vector<double> angles;
  std::string table;
  double f2 = 0.0;
  double f3 = 0.0;
  unsigned p = 10;
  unsigned plot_p = 25;
  unsigned check_p = 25;
  std::string plane = "none";
  std::string kind;
  std::vector<double> mixture;
  std::string state;
  std::uint64_t runs = 100000;
  std::uint64_t seed = 0;
  std::string log_path;
  unsigned threads = 0;
};

int cmd_table(const Options& o, std::ostream& out) {
  Sink sink(o.out_path, out);
  if (o.table == "facts") {
    write_facts_table(sink.stream(), kFormats.at(o.format),
                      protocol_from(o.angles));
  } else {
    write_coincidence_table(sink.stream(), kFormats.at(o.format));
  }
  sink.finish();
  return kSuccess;
}

int cmd_solve(const Options& o, std::ostream& out) {
  if (!(o.f2 >= 0.0 && o.f2 <= 1.0 && o.f3 >= 0.0 && o.f3 <= 1.0)) {
    throw UsageError("F2 and F3 must lie in [0,1]");
  }
  const FeasibilityResult r = solve_mixture_for_facts(o.f2, o.f3);
  Sink sink(o.out_path, out);
  write_feasibility(sink.stream(), kFormats.at(o.format), o.f2, o.f3, r);
  sink.finish();
  return r.feasible ? kSuccess : kViolation;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const GridSpec spec{o.p, plane_from(o.plane)};
  const auto records = sweep_facts(spec, o.threads);
  Sink sink(o.out_path, out);
  write_sweep(sink.stream(), o.format == "json" ? Format::Json : Format::Csv,
              spec, records);
  sink.finish();
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : records) worst = std::min(worst, r.margin);
  err << "points=" << records.size() << " worst_margin=" << fmt12(worst)
      << '\n';
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SimConfig config;
  config.runs = o.runs;
  config.seed = o.seed;
  config.protocol = protocol_from(o.angles);
  config.workers = o.threads;

  std::vector<RunRecord> log;
  std::vector<RunRecord>* log_ptr = o.log_path.empty() ? nullptr : &log;
  SimReport report;
  if (o.kind == "students") {
    if (o.mixture.size() != 4) {
      throw UsageError("students simulation needs --mixture a,b,c,d");
    }
    const MixturePoint m(o.mixture[0], o.mixture[1], o.mixture[2],
                         o.mixture[3]);
    report = simulate_students(m, config, log_ptr);
  } else {
    if (o.state.empty()) throw UsageError("quantum simulation needs --state");
    report = simulate_quantum(state_from(o.state), config, log_ptr);
  }

  Sink sink(o.out_path, out);
  write_sim_report(sink.stream(), kFormats.at(o.format), o.kind, report,
                   config.protocol);
  sink.finish();
  if (log_ptr) {
    std::ostringstream unused;
    Sink log_sink(o.log_path, unused);
    write_run_log_csv(log_sink.stream(), log);
    log_sink.finish();
  }
  return kSuccess;
}

int cmd_plot(const Options& o, std::ostream& out) {
  const GridSpec spec{o.plot_p, plane_from(o.plane)};
  const auto records = sweep_facts(spec, o.threads);
  const auto states = named_state_facts(protocol_from(o.angles));
  Sink sink(o.out_path, out);
  write_facts_plot_svg(sink.stream(), records, states);
  sink.finish();
  return kSuccess;
}

int cmd_check(const Options& o, std::ostream& out) {
  const NamedState s = state_from(o.state);
  const FactsTriple f = facts(s, protocol_from(o.angles));
  const RegionReport region = region_report(f, GridSpec{o.check_p});
  const ClassicalFrame frame = classical_frame(f);
  const FeasibilityResult solved =
      solve_mixture_for_facts(frame.facts.f2(), frame.facts.f3());
  const auto& m = solved.mixture;

  Sink sink(o.out_path, out);
  std::ostream& os = sink.stream();
  const Format format = kFormats.at(o.format);
  if (format == Format::Json) {
    auto r12 = [](double x) { return std::stod(fmt12(x)); };
    nlohmann::ordered_json j = {
        {"state", o.state},
        {"F1", r12(f.f1())},
        {"F2", r12(f.f2())},
        {"F3", r12(f.f3())},
        {"game", std::string(polarity_name(region.polarity))},
        {"f1_matches_game", region.f1_matches_protocol},
        {"alpha", r12(m[0])},
        {"beta", r12(m[1])},
        {"gamma", r12(m[2])},
        {"delta", r12(m[3])},
        {"feasible", solved.feasible},
        {"inside", region.inside},
        {"inequality_margin", r12(region.inequality_margin)},
        {"distance", r12(region.euclidean_distance)},
        {"grid_min_distance", r12(region.grid_min_distance)}};
    os << j.dump(2) << '\n';
  } else if (format == Format::Csv) {
    os << "state,F1,F2,F3,game,f1_matches_game,alpha,beta,gamma,delta,"
          "feasible,inside,inequality_margin,distance,grid_min_distance\n"
       << o.state << ',' << fmt12(f.f1()) << ',' << fmt12(f.f2()) << ','
       << fmt12(f.f3()) << ',' << polarity_name(region.polarity) << ','
       << (region.f1_matches_protocol ? "true" : "false") << ','
       << fmt12(m[0]) << ',' << fmt12(m[1]) << ',' << fmt12(m[2]) << ','
       << fmt12(m[3]) << ',' << (solved.feasible ? "true" : "false") << ','
       << (region.inside ? "true" : "false") << ','
       << fmt12(region.inequality_margin) << ','
       << fmt12(region.euclidean_distance) << ','
       << fmt12(region.grid_min_distance) << '\n';
  } else {
    os << "state    " << o.state << '\n'
       << "facts    F1 = " << fmt6(f.f1()) << "  F2 = " << fmt6(f.f2())
       << "  F3 = " << fmt6(f.f3()) << '\n'
       << "game     " << polarity_name(region.polarity) << " students, F1 "
       << (region.f1_matches_protocol ? "matches" : "differs (F2/F3 only)")
       << '\n'
       << "mixture  alpha = " << fmt6(m[0]) << "  beta = " << fmt6(m[1])
       << "  gamma = " << fmt6(m[2]) << "  delta = " << fmt6(m[3]) << "  ("
       << (solved.feasible ? "feasible" : "infeasible") << ")\n"
       << "region   " << (region.inside ? "inside" : "outside")
       << "  margin = " << fmt6(region.inequality_margin)
       << "  distance = " << fmt6(region.euclidean_distance)
       << "  nearest grid point = " << fmt6(region.grid_min_distance) << '\n';
  }
  sink.finish();
  return region.inside ? kSuccess : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Quantum coincidence facts versus local classical strategies",
               "bellfacts"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub, std::string fallback,
                        std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")
        ->default_val(fallback)
        ->check(CLI::IsMember(allowed));
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output file (default: stdout)");
  };
  auto add_angles = [&](CLI::App* sub) {
    sub->add_option("--angles", o.angles, "Analyzer angles in degrees")
        ->delimiter(',');
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  };

  auto* table = app.add_subcommand("table", "Coincidence kernels or facts table");
  table->add_option("which", o.table, "coincidence | facts")
      ->required()
      ->check(CLI::IsMember({"coincidence", "facts"}));
  add_format(table, "text", {"text", "csv", "json"});
  add_out(table);
  add_angles(table);

  auto* solve = app.add_subcommand("solve", "Solve for a mixture reproducing F2, F3");
  solve->add_option("F2", o.f2)->required();
  solve->add_option("F3", o.f3)->required();
  add_format(solve, "text", {"text", "csv", "json"});
  add_out(solve);

  auto* sweep = app.add_subcommand("sweep", "Map the simplex grid into facts space");
  sweep->add_option("--p", o.p, "Resolution (step 1/p)")
      ->check(CLI::Range(1u, 100000u));
  sweep->add_option("--plane", o.plane, "none | alpha=0 | beta=0 | gamma=0 | delta=0");
  add_format(sweep, "csv", {"csv", "json"});
  add_out(sweep);
  add_threads(sweep);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo game simulation");
  simulate->add_option("kind", o.kind, "students | quantum")
      ->required()
      ->check(CLI::IsMember({"students", "quantum"}));
  simulate->add_option("--mixture", o.mixture, "alpha,beta,gamma,delta")
      ->delimiter(',');
  simulate->add_option("--state", o.state, "phi+ | phi- | psi+ | psi- | rhomax | rho");
  simulate->add_option("--runs", o.runs, "Number of runs")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  simulate->add_option("--seed", o.seed, "64-bit seed");
  simulate->add_option("--log", o.log_path, "Write the run log CSV here");
  add_format(simulate, "text", {"text", "csv", "json"});
  add_out(simulate);
  add_angles(simulate);
  add_threads(simulate);

  auto* plot = app.add_subcommand("plot", "SVG of the classical region and states");
  plot->add_option("--p", o.plot_p, "Resolution (step 1/p)")
      ->check(CLI::Range(1u, 100000u));
  plot->add_option("--plane", o.plane, "Restrict the classical sweep to a plane");
  add_out(plot);
  add_angles(plot);
  add_threads(plot);

  auto* check = app.add_subcommand("check", "Feasibility and inequality verdict for a state");
  check->add_option("--state", o.state, "phi+ | phi- | psi+ | psi- | rhomax | rho")
      ->required();
  check->add_option("--p", o.check_p, "Grid resolution for the cross-check")
      ->check(CLI::Range(1u, 100000u));
  add_format(check, "text", {"text", "csv", "json"});
  add_out(check);
  add_angles(check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (table->parsed()) return cmd_table(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (plot->parsed()) return cmd_plot(o, out);
    if (check->parsed()) return cmd_check(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bellfacts::cli
