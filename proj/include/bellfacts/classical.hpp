// Local deterministic answer strategies for the non-communicating students
// game and the region of facts they can reach.

#pragma once

#include <array>
#include <string_view>

#include "bellfacts/quantum.hpp"

namespace bellfacts {

// Answers to the three questions, in protocol angle order.
struct DeterministicStrategy {
  std::array<Answer, 3> answers;

  friend bool operator==(const DeterministicStrategy&,
                         const DeterministicStrategy&) = default;
};

// The eight strategies, numbered (1)..(8) as indices 0..7:
// PPP AAA | APP PAA | PAP APA | PPA AAP.
const std::array<DeterministicStrategy, 8>& all_strategies();

DeterministicStrategy complement(const DeterministicStrategy& s);

Answer answer(const DeterministicStrategy& s, std::size_t question);
// Looks the question up by angle; throws InvalidQuestion if it is not one of
// the protocol's angles.
Answer answer(const DeterministicStrategy& s, double question_deg,
              const MeasurementProtocol& protocol = {});

enum class StrategyClass { Alpha, Beta, Gamma, Delta };

inline constexpr std::array<StrategyClass, 4> kAllClasses{
    StrategyClass::Alpha, StrategyClass::Beta, StrategyClass::Gamma,
    StrategyClass::Delta};

std::string_view class_name(StrategyClass c);
std::array<DeterministicStrategy, 2> class_members(StrategyClass c);
StrategyClass class_of(const DeterministicStrategy& s);

// Weights over the four strategy classes.
class MixturePoint {
 public:
  MixturePoint(double alpha, double beta, double gamma, double delta);

  double alpha() const { return w_[0]; }
  double beta() const { return w_[1]; }
  double gamma() const { return w_[2]; }
  double delta() const { return w_[3]; }
  double operator[](std::size_t k) const { return w_.at(k); }
  double weight(StrategyClass c) const { return w_[static_cast<std::size_t>(c)]; }
  const std::array<double, 4>& weights() const { return w_; }

  friend bool operator==(const MixturePoint&, const MixturePoint&) = default;

 private:
  std::array<double, 4> w_;
};

// Disagreement probabilities for question pairs (0,1), (1,2), (0,2).
struct Disagreements {
  double d01;
  double d12;
  double d02;
};

Disagreements disagreements(const MixturePoint& m);

// Expected facts when questions are drawn uniformly and independently.
FactsTriple facts_of_mixture(const MixturePoint& m);

// Signed facts map; accepts mixtures with negative components so solver
// output can be checked by substitution.
std::array<double, 3> facts_of_weights(const std::array<double, 4>& w);

struct FeasibilityResult {
  std::array<double, 4> mixture;  // alpha, beta, gamma, delta; may be negative
  bool feasible;

  double gamma() const { return mixture[2]; }
};

// Symmetric solution (beta = delta) of the disagreement system for target
// facts F2, F3 with F1 = 1.
FeasibilityResult solve_mixture_for_facts(double f2, double f3);

struct InequalityCheck {
  bool satisfied;
  double margin;  // F3 - |2 F2 - 1|
};

InequalityCheck classical_inequality(double f2, double f3);

// F2 as an affine function of F3.
struct BoundaryLine {
  double slope;
  double intercept;

  double operator()(double f3) const { return slope * f3 + intercept; }
};

struct BoundaryLines {
  BoundaryLine upper;  // F2 = (F3 + 1)/2
  BoundaryLine lower;  // F2 = (1 - F3)/2
};

BoundaryLines boundary_lines();

// Euclidean distance in the (F2, F3) plane from a point to the classical
// triangle with (F3, F2) vertices (0, 1/2), (1, 0), (1, 1). Zero inside.
double distance_to_classical_region(double f2, double f3);

// Students who agree beforehand that one of them inverts every answer play
// the anti-correlated game: every fact F becomes 1 - F and F1 = 0.
enum class Polarity { Correlated, Anticorrelated };

std::string_view polarity_name(Polarity p);

struct ClassicalFrame {
  Polarity polarity;
  FactsTriple facts;  // target facts seen through the matching protocol
};

// Picks the anti-correlated game when F1 is zero (within 1e-9) and the
// correlated game otherwise.
ClassicalFrame classical_frame(const FactsTriple& target);

}  // namespace bellfacts
