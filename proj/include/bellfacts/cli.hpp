// Command-line front end. Exit codes: 0 success or feasible, 1 infeasible
// or classical-inequality violation, 2 usage or I/O error.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bellfacts/montecarlo.hpp"
#include "bellfacts/quantum.hpp"
#include "bellfacts/sweep.hpp"

namespace bellfacts::cli {

enum ExitCode : int { kSuccess = 0, kViolation = 1, kUsage = 2 };

enum class Format { Text, Csv, Json };

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Renderers used by the commands; exposed for tests.
void write_facts_table(std::ostream& out, Format format,
                       const MeasurementProtocol& protocol);
void write_coincidence_table(std::ostream& out, Format format);
void write_feasibility(std::ostream& out, Format format, double f2, double f3,
                       const FeasibilityResult& result);
void write_sweep(std::ostream& out, Format format, const GridSpec& spec,
                 const std::vector<SweepRecord>& records);
void write_sim_report(std::ostream& out, Format format, std::string_view kind,
                      const SimReport& report,
                      const MeasurementProtocol& protocol);

using LabeledFacts = std::pair<std::string, FactsTriple>;

// Self-contained SVG: classical records in the (F3 horizontal, F2 vertical)
// unit square, both boundary lines, and one labeled marker per state.
void write_facts_plot_svg(std::ostream& out,
                          const std::vector<SweepRecord>& classical,
                          const std::vector<LabeledFacts>& states);

}  // namespace bellfacts::cli
