// Run-by-run simulation of the students' game and of quantum measurements,
// tallied into empirical facts.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bellfacts/classical.hpp"
#include "bellfacts/quantum.hpp"
#include "bellfacts/sweep.hpp"

namespace bellfacts {

struct RunRecord {
  double theta_a;
  double theta_b;
  Answer r_a;
  Answer r_b;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SimConfig {
  std::uint64_t runs = 100000;
  std::uint64_t seed = 0;
  MeasurementProtocol protocol;
  unsigned workers = 0;  // 0: all cores; results do not depend on it
};

struct ClassTally {
  std::uint64_t count = 0;
  std::uint64_t agreements = 0;

  // Empty when no run fell into the class.
  std::optional<double> fact() const;
  std::optional<double> standard_error() const;

  friend bool operator==(const ClassTally&, const ClassTally&) = default;
};

struct SimReport {
  std::array<ClassTally, 3> classes;
  std::uint64_t total_runs = 0;
  std::uint64_t seed = 0;

  // Sums tallies. Both reports must come from the same seed.
  SimReport& merge(const SimReport& other);

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// When `log` is non-null it receives one record per run, in run order.
SimReport simulate_students(const MixturePoint& mixture, const SimConfig& config,
                            std::vector<RunRecord>* log = nullptr);

SimReport simulate_quantum(const TwoPhotonState& state, const SimConfig& config,
                           std::vector<RunRecord>* log = nullptr);
SimReport simulate_quantum(NamedState state, const SimConfig& config,
                           std::vector<RunRecord>* log = nullptr);

struct GridVerdict {
  MixturePoint mixture;
  SimReport report;
  bool matches;
};

struct GridSearchResult {
  std::vector<GridVerdict> points;

  std::vector<MixturePoint> matching() const;
};

// Simulates `config.runs` games at every grid mixture (seeded per point) and
// marks the points whose empirical F2 and F3 both lie within
// `tolerance_sigmas` standard errors of the targets. The standard error is
// sqrt(t(1-t)/N_k) for target value t.
GridSearchResult stochastic_grid_search(const GridSpec& spec,
                                        const SimConfig& config,
                                        const FactsTriple& targets,
                                        double tolerance_sigmas = 3.0);

// run,theta_a,theta_b,r_a,r_b
void write_run_log_csv(std::ostream& out, const std::vector<RunRecord>& log);

}  // namespace bellfacts
