#include <array>
#include <ostream>
#include <sstream>
#include <string>

#include "bellfacts/cli.hpp"
#include "bellfacts/format.hpp"
#include "json.hpp"

namespace bellfacts::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON numbers carry 12 significant digits, like the CSV output.
double j12(double x) { return std::stod(fmt12(x)); }

ordered_json j12_or_null(const std::optional<double>& x) {
  return x ? ordered_json(j12(*x)) : ordered_json(nullptr);
}

constexpr std::array<std::pair<double, double>, 4> kSpotChecks{{
    {0.0, 0.0}, {0.0, 30.0}, {30.0, 60.0}, {17.0, 71.0}}};

std::string join_offsets(const std::vector<double>& offsets, char sep) {
  std::string s;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (k) s += sep;
    s += fmt12(offsets[k]);
  }
  return s;
}

void pad(std::ostream& out, const std::string& s, std::size_t width) {
  out << s;
  for (std::size_t k = s.size(); k < width; ++k) out << ' ';
}

}  // namespace

void write_facts_table(std::ostream& out, Format format,
                       const MeasurementProtocol& protocol) {
  switch (format) {
    case Format::Json: {
      ordered_json j = ordered_json::object();
      for (NamedState s : kAllNamedStates) {
        const FactsTriple f = facts(s, protocol);
        j[std::string(state_tag(s))] = {
            {"F1", j12(f.f1())}, {"F2", j12(f.f2())}, {"F3", j12(f.f3())}};
      }
      out << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      out << "state,F1,F2,F3\n";
      for (NamedState s : kAllNamedStates) {
        const FactsTriple f = facts(s, protocol);
        out << state_tag(s) << ',' << fmt12(f.f1()) << ',' << fmt12(f.f2())
            << ',' << fmt12(f.f3()) << '\n';
      }
      return;
    case Format::Text:
      pad(out, "state", 8);
      for (std::size_t k = 0; k < 3; ++k) {
        pad(out, "F" + std::to_string(k + 1) + " (" +
                     join_offsets(protocol.offset_classes()[k].offsets, '/') +
                     " deg)",
            18);
      }
      out << '\n';
      for (NamedState s : kAllNamedStates) {
        const FactsTriple f = facts(s, protocol);
        pad(out, std::string(state_tag(s)), 8);
        for (double v : f.values()) pad(out, fmt6(v), 18);
        out << '\n';
      }
      return;
  }
}

void write_coincidence_table(std::ostream& out, Format format) {
  switch (format) {
    case Format::Json: {
      ordered_json j = ordered_json::object();
      for (NamedState s : kAllNamedStates) {
        const TwoPhotonState st = make_state(s);
        ordered_json checks = ordered_json::array();
        for (auto [ts, ti] : kSpotChecks) {
          checks.push_back({{"theta_s", j12(ts)},
                            {"theta_i", j12(ti)},
                            {"closed_form", j12(closed_form_coincidence(s, ts, ti))},
                            {"born_rule", j12(coincidence_probability(st, ts, ti))}});
        }
        j[std::string(state_tag(s))] = {
            {"expression", std::string(closed_form_expression(s))},
            {"spot_checks", checks}};
      }
      out << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      out << "state,expression,theta_s,theta_i,closed_form,born_rule\n";
      for (NamedState s : kAllNamedStates) {
        const TwoPhotonState st = make_state(s);
        for (auto [ts, ti] : kSpotChecks) {
          out << state_tag(s) << ",\"" << closed_form_expression(s) << "\","
              << fmt12(ts) << ',' << fmt12(ti) << ','
              << fmt12(closed_form_coincidence(s, ts, ti)) << ','
              << fmt12(coincidence_probability(st, ts, ti)) << '\n';
        }
      }
      return;
    case Format::Text:
      pad(out, "state", 8);
      pad(out, "P_coincidence(theta_s, theta_i)", 40);
      for (auto [ts, ti] : kSpotChecks) {
        pad(out, "(" + fmt6(ts) + "," + fmt6(ti) + ")", 14);
      }
      out << '\n';
      for (NamedState s : kAllNamedStates) {
        const TwoPhotonState st = make_state(s);
        pad(out, std::string(state_tag(s)), 8);
        pad(out, std::string(closed_form_expression(s)), 40);
        for (auto [ts, ti] : kSpotChecks) {
          pad(out, fmt6(coincidence_probability(st, ts, ti)), 14);
        }
        out << '\n';
      }
      return;
  }
}

void write_feasibility(std::ostream& out, Format format, double f2, double f3,
                       const FeasibilityResult& result) {
  const InequalityCheck ineq = classical_inequality(f2, f3);
  const auto& m = result.mixture;
  switch (format) {
    case Format::Json: {
      ordered_json j = {{"F2", j12(f2)},         {"F3", j12(f3)},
                        {"alpha", j12(m[0])},    {"beta", j12(m[1])},
                        {"gamma", j12(m[2])},    {"delta", j12(m[3])},
                        {"feasible", result.feasible},
                        {"inequality_margin", j12(ineq.margin)}};
      out << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      out << "F2,F3,alpha,beta,gamma,delta,feasible,inequality_margin\n"
          << fmt12(f2) << ',' << fmt12(f3) << ',' << fmt12(m[0]) << ','
          << fmt12(m[1]) << ',' << fmt12(m[2]) << ',' << fmt12(m[3]) << ','
          << (result.feasible ? "true" : "false") << ',' << fmt12(ineq.margin)
          << '\n';
      return;
    case Format::Text:
      out << "target   F2 = " << fmt6(f2) << "  F3 = " << fmt6(f3) << '\n'
          << "mixture  alpha = " << fmt6(m[0]) << "  beta = " << fmt6(m[1])
          << "  gamma = " << fmt6(m[2]) << "  delta = " << fmt6(m[3]) << '\n'
          << "|2F2 - 1| <= F3 margin = " << fmt6(ineq.margin) << '\n'
          << "verdict  " << (result.feasible ? "feasible" : "infeasible")
          << '\n';
      return;
  }
}

void write_sweep(std::ostream& out, Format format, const GridSpec& spec,
                 const std::vector<SweepRecord>& records) {
  if (format != Format::Json) {
    write_sweep_csv(out, records);
    return;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    const auto& w = r.mixture.weights();
    rows.push_back({{"alpha", j12(w[0])},
                    {"beta", j12(w[1])},
                    {"gamma", j12(w[2])},
                    {"delta", j12(w[3])},
                    {"F1", j12(r.facts.f1())},
                    {"F2", j12(r.facts.f2())},
                    {"F3", j12(r.facts.f3())},
                    {"margin", j12(r.margin)}});
  }
  ordered_json j = {{"p", spec.p},
                    {"plane", std::string(plane_name(spec.restriction))},
                    {"records", rows}};
  out << j.dump(2) << '\n';
}

void write_sim_report(std::ostream& out, Format format, std::string_view kind,
                      const SimReport& report,
                      const MeasurementProtocol& protocol) {
  const auto& classes = protocol.offset_classes();
  switch (format) {
    case Format::Json: {
      ordered_json cls = ordered_json::array();
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& t = report.classes[k];
        ordered_json offsets = ordered_json::array();
        for (double o : classes[k].offsets) offsets.push_back(j12(o));
        cls.push_back({{"fact", "F" + std::to_string(k + 1)},
                       {"offsets", offsets},
                       {"count", t.count},
                       {"agreements", t.agreements},
                       {"value", j12_or_null(t.fact())},
                       {"standard_error", j12_or_null(t.standard_error())}});
      }
      ordered_json j = {{"kind", std::string(kind)},
                        {"seed", report.seed},
                        {"runs", report.total_runs},
                        {"classes", cls}};
      out << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      out << "fact,offsets,count,agreements,value,standard_error\n";
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& t = report.classes[k];
        out << 'F' << k + 1 << ',' << join_offsets(classes[k].offsets, ';')
            << ',' << t.count << ',' << t.agreements << ','
            << (t.fact() ? fmt12(*t.fact()) : "") << ','
            << (t.standard_error() ? fmt12(*t.standard_error()) : "") << '\n';
      }
      return;
    case Format::Text:
      out << kind << " simulation: runs = " << report.total_runs
          << "  seed = " << report.seed << '\n';
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& t = report.classes[k];
        out << "  F" << k + 1 << " (" << join_offsets(classes[k].offsets, '/')
            << " deg): ";
        if (t.fact()) {
          out << fmt6(*t.fact()) << " +/- " << fmt6(*t.standard_error());
        } else {
          out << "undefined";
        }
        out << "  (" << t.agreements << '/' << t.count << ")\n";
      }
      return;
  }
}

}  // namespace bellfacts::cli
