#include "bellfacts/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellfacts/errors.hpp"

namespace bellfacts {

namespace {

constexpr Answer A = Answer::Absorb;
constexpr Answer P = Answer::Pass;

constexpr double kNegativeGuard = 1e-12;

void require_probability(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw InvalidInput(std::string(name) + " must lie in [0,1]");
  }
}

struct Point {
  double x;
  double y;
};

double segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

const std::array<DeterministicStrategy, 8>& all_strategies() {
  static const std::array<DeterministicStrategy, 8> kStrategies{{
      {{P, P, P}}, {{A, A, A}},
      {{A, P, P}}, {{P, A, A}},
      {{P, A, P}}, {{A, P, A}},
      {{P, P, A}}, {{A, A, P}},
  }};
  return kStrategies;
}

DeterministicStrategy complement(const DeterministicStrategy& s) {
  return {{flip(s.answers[0]), flip(s.answers[1]), flip(s.answers[2])}};
}

Answer answer(const DeterministicStrategy& s, std::size_t question) {
  if (question >= s.answers.size()) {
    throw InvalidQuestion("question index outside the protocol");
  }
  return s.answers[question];
}

Answer answer(const DeterministicStrategy& s, double question_deg,
              const MeasurementProtocol& protocol) {
  const auto idx = protocol.index_of(question_deg);
  if (!idx) {
    throw InvalidQuestion("question " + std::to_string(question_deg) +
                          " deg is not a protocol angle");
  }
  return answer(s, *idx);
}

std::string_view class_name(StrategyClass c) {
  switch (c) {
    case StrategyClass::Alpha: return "alpha";
    case StrategyClass::Beta: return "beta";
    case StrategyClass::Gamma: return "gamma";
    case StrategyClass::Delta: return "delta";
  }
  return "?";
}

std::array<DeterministicStrategy, 2> class_members(StrategyClass c) {
  const auto k = 2 * static_cast<std::size_t>(c);
  return {all_strategies()[k], all_strategies()[k + 1]};
}

StrategyClass class_of(const DeterministicStrategy& s) {
  const auto& all = all_strategies();
  const auto it = std::find(all.begin(), all.end(), s);
  return static_cast<StrategyClass>((it - all.begin()) / 2);
}

MixturePoint::MixturePoint(double alpha, double beta, double gamma,
                           double delta)
    : w_{alpha, beta, gamma, delta} {
  double sum = 0.0;
  for (double& x : w_) {
    if (!std::isfinite(x) || x < -kNegativeGuard) {
      throw InvalidInput("mixture components must be nonnegative");
    }
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidInput("mixture components must sum to 1");
  }
}

Disagreements disagreements(const MixturePoint& m) {
  return {m.beta() + m.gamma(), m.gamma() + m.delta(), m.beta() + m.delta()};
}

std::array<double, 3> facts_of_weights(const std::array<double, 4>& w) {
  const double beta = w[1];
  const double gamma = w[2];
  const double delta = w[3];
  return {1.0, 1.0 - (beta + 2.0 * gamma + delta) / 2.0, 1.0 - beta - delta};
}

FactsTriple facts_of_mixture(const MixturePoint& m) {
  const auto f = facts_of_weights(m.weights());
  return {f[0], f[1], f[2]};
}

FeasibilityResult solve_mixture_for_facts(double f2, double f3) {
  require_probability(f2, "F2");
  require_probability(f3, "F3");
  const double d30 = 1.0 - f2;  // each adjacent-pair disagreement
  const double d60 = 1.0 - f3;
  const double gamma = (2.0 * d30 - d60) / 2.0;
  const double beta = d60 / 2.0;
  const double delta = beta;
  const double alpha = 1.0 - beta - gamma - delta;

  FeasibilityResult r{{alpha, beta, gamma, delta}, true};
  double sum = 0.0;
  for (double x : r.mixture) {
    sum += x;
    if (x < -kNegativeGuard) r.feasible = false;
  }
  if (std::abs(sum - 1.0) > 1e-10) r.feasible = false;
  return r;
}

InequalityCheck classical_inequality(double f2, double f3) {
  const double margin = f3 - std::abs(2.0 * f2 - 1.0);
  return {margin >= -kNegativeGuard, margin};
}

BoundaryLines boundary_lines() {
  return {{0.5, 0.5}, {-0.5, 0.5}};
}

double distance_to_classical_region(double f2, double f3) {
  require_probability(f2, "F2");
  require_probability(f3, "F3");
  if (classical_inequality(f2, f3).margin >= 0.0) return 0.0;
  // (F3, F2) coordinates
  const Point p{f3, f2};
  const Point apex{0.0, 0.5};
  const Point bottom{1.0, 0.0};
  const Point top{1.0, 1.0};
  return std::min({segment_distance(p, apex, top),
                   segment_distance(p, apex, bottom),
                   segment_distance(p, bottom, top)});
}

std::string_view polarity_name(Polarity p) {
  return p == Polarity::Correlated ? "correlated" : "anticorrelated";
}

ClassicalFrame classical_frame(const FactsTriple& target) {
  if (std::abs(target.f1()) <= 1e-9) {
    return {Polarity::Anticorrelated,
            FactsTriple(1.0 - target.f1(), 1.0 - target.f2(),
                        1.0 - target.f3())};
  }
  return {Polarity::Correlated, target};
}

}  // namespace bellfacts
