#include "bellfacts/montecarlo.hpp"

#include <cmath>
#include <ostream>

#include "bellfacts/errors.hpp"
#include "bellfacts/format.hpp"
#include "bellfacts/parallel.hpp"
#include "bellfacts/rng.hpp"

namespace bellfacts {

namespace {

constexpr double kImpossible = 1e-14;

void validate(const SimConfig& config) {
  if (config.runs == 0) throw InvalidConfig("runs must be >= 1");
}

// Runs [0, config.runs) through `play`, which maps (stream, run) to a
// RunRecord plus question indices, and tallies by offset class.
template <class Play>
SimReport run_games(const SimConfig& config, std::vector<RunRecord>* log,
                    Play&& play) {
  validate(config);
  if (log) log->assign(config.runs, RunRecord{});

  const unsigned workers = detail::resolve_workers(config.workers);
  std::vector<SimReport> partial(workers);
  detail::parallel_chunks(
      config.runs, workers,
      [&](unsigned chunk, std::size_t begin, std::size_t end) {
        SimReport& rep = partial[chunk];
        for (std::size_t run = begin; run < end; ++run) {
          RunStream stream(config.seed, run);
          std::size_t qa = 0;
          std::size_t qb = 0;
          const RunRecord rec = play(stream, qa, qb);
          ClassTally& t = rep.classes[config.protocol.class_of(qa, qb)];
          ++t.count;
          if (rec.r_a == rec.r_b) ++t.agreements;
          if (log) (*log)[run] = rec;
        }
        rep.total_runs = end - begin;
      });

  SimReport total;
  total.seed = config.seed;
  for (auto& p : partial) {
    p.seed = config.seed;
    total.merge(p);
  }
  return total;
}

}  // namespace

std::optional<double> ClassTally::fact() const {
  if (count == 0) return std::nullopt;
  return static_cast<double>(agreements) / static_cast<double>(count);
}

std::optional<double> ClassTally::standard_error() const {
  const auto f = fact();
  if (!f) return std::nullopt;
  return std::sqrt(*f * (1.0 - *f) / static_cast<double>(count));
}

SimReport& SimReport::merge(const SimReport& other) {
  if (other.seed != seed) {
    throw InvalidInput("cannot merge reports from different seeds");
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    classes[k].count += other.classes[k].count;
    classes[k].agreements += other.classes[k].agreements;
  }
  total_runs += other.total_runs;
  return *this;
}

SimReport simulate_students(const MixturePoint& mixture, const SimConfig& config,
                            std::vector<RunRecord>* log) {
  const auto& angles = config.protocol.angles();
  const std::uint64_t n = angles.size();

  std::array<double, 4> cumulative{};
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    acc += mixture[k];
    cumulative[k] = acc;
    if (mixture[k] > 0.0) last_nonzero = k;
  }

  return run_games(config, log,
                   [&](RunStream& stream, std::size_t& qa, std::size_t& qb) {
                     const double u = stream.uniform();
                     std::size_t cls = last_nonzero;
                     for (std::size_t k = 0; k < 4; ++k) {
                       if (u < cumulative[k]) {
                         cls = k;
                         break;
                       }
                     }
                     const auto member = stream.below(2);
                     const auto& strategy = all_strategies()[2 * cls + member];
                     qa = stream.below(n);
                     qb = stream.below(n);
                     return RunRecord{angles[qa], angles[qb],
                                      answer(strategy, qa), answer(strategy, qb)};
                   });
}

SimReport simulate_quantum(const TwoPhotonState& state, const SimConfig& config,
                           std::vector<RunRecord>* log) {
  validate(config);
  const auto& angles = config.protocol.angles();
  const std::size_t n = angles.size();

  // Cumulative outcome distribution per ordered setting pair.
  std::vector<std::array<double, 4>> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto dist = outcome_distribution(state, AnalyzerSetting::linear(angles[a]),
                                       AnalyzerSetting::linear(angles[b]));
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        acc += dist[k] < kImpossible ? 0.0 : dist[k];
        table[a * n + b][k] = acc;
      }
    }
  }

  return run_games(config, log,
                   [&](RunStream& stream, std::size_t& qa, std::size_t& qb) {
                     qa = stream.below(n);
                     qb = stream.below(n);
                     const auto& cum = table[qa * n + qb];
                     const double u = stream.uniform() * cum[3];
                     std::size_t k = 0;
                     while (k < 3 && !(u < cum[k])) ++k;
                     // Skip zero-width bins left behind by the loop bound.
                     while (k > 0 && cum[k] == cum[k - 1]) --k;
                     const OutcomePair o = kAllOutcomes[k];
                     return RunRecord{angles[qa], angles[qb], o.signal, o.idler};
                   });
}

SimReport simulate_quantum(NamedState state, const SimConfig& config,
                           std::vector<RunRecord>* log) {
  return simulate_quantum(make_state(state), config, log);
}

std::vector<MixturePoint> GridSearchResult::matching() const {
  std::vector<MixturePoint> out;
  for (const auto& p : points) {
    if (p.matches) out.push_back(p.mixture);
  }
  return out;
}

GridSearchResult stochastic_grid_search(const GridSpec& spec,
                                        const SimConfig& config,
                                        const FactsTriple& targets,
                                        double tolerance_sigmas) {
  validate(config);
  if (!(tolerance_sigmas >= 0.0)) {
    throw InvalidConfig("tolerance must be nonnegative");
  }
  const auto grid = simplex_grid(spec);

  auto within = [&](const ClassTally& t, double target) {
    const auto f = t.fact();
    if (!f) return false;
    const double se =
        std::sqrt(target * (1.0 - target) / static_cast<double>(t.count));
    return std::abs(*f - target) <= tolerance_sigmas * se;
  };

  std::vector<std::optional<GridVerdict>> slots(grid.size());
  detail::parallel_chunks(
      grid.size(), detail::resolve_workers(config.workers),
      [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
          SimConfig point_config = config;
          point_config.seed = derive_seed(config.seed, k);
          point_config.workers = 1;
          SimReport rep = simulate_students(grid[k], point_config);
          const bool ok = within(rep.classes[1], targets.f2()) &&
                          within(rep.classes[2], targets.f3());
          slots[k].emplace(GridVerdict{grid[k], rep, ok});
        }
      });

  GridSearchResult result;
  result.points.reserve(slots.size());
  for (auto& s : slots) result.points.push_back(*s);
  return result;
}

void write_run_log_csv(std::ostream& out, const std::vector<RunRecord>& log) {
  out << "run,theta_a,theta_b,r_a,r_b\n";
  for (std::size_t k = 0; k < log.size(); ++k) {
    const auto& r = log[k];
    out << k << ',' << fmt12(r.theta_a) << ',' << fmt12(r.theta_b) << ','
        << answer_letter(r.r_a) << ',' << answer_letter(r.r_b) << '\n';
  }
}

}  // namespace bellfacts
