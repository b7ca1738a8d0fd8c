// Two-photon polarization states, analyzer projectors and Born-rule
// coincidence probabilities.
//
// Basis ordering throughout is (HH, HV, VH, VV): signal photon first.
// Angles are in degrees at every public boundary.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace bellfacts {

using Amplitudes2 = Eigen::Vector2cd;
using Amplitudes4 = Eigen::Vector4cd;
using Operator4 = Eigen::Matrix4cd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kProbabilityGuard = 1e-10;

// Outcome of one analyzer (quantum) or one button press (classical game).
enum class Answer : unsigned char { Absorb, Pass };

char answer_letter(Answer a);
Answer flip(Answer a);

struct OutcomePair {
  Answer signal;
  Answer idler;

  friend bool operator==(const OutcomePair&, const OutcomePair&) = default;
};

inline constexpr std::array<OutcomePair, 4> kAllOutcomes{{
    {Answer::Pass, Answer::Pass},
    {Answer::Pass, Answer::Absorb},
    {Answer::Absorb, Answer::Pass},
    {Answer::Absorb, Answer::Absorb},
}};

// Polarization analyzer orientation. theta is the polar angle and phase the
// ellipticity phase, both in degrees; phase = 0 is a linear polarizer.
struct AnalyzerSetting {
  double theta = 0.0;
  double phase = 0.0;

  static AnalyzerSetting linear(double theta_deg) { return {theta_deg, 0.0}; }
};

// Degrees to radians after reduction mod 360.
double reduced_radians(double degrees);

// Either a normalized pure state or a valid density operator.
class TwoPhotonState {
 public:
  static TwoPhotonState pure(const Amplitudes4& amplitudes);
  static TwoPhotonState mixed(const Operator4& density);

  bool is_pure() const { return std::holds_alternative<Amplitudes4>(repr_); }
  const Amplitudes4& amplitudes() const;  // throws unless pure
  Operator4 density() const;

 private:
  explicit TwoPhotonState(std::variant<Amplitudes4, Operator4> repr)
      : repr_(std::move(repr)) {}

  std::variant<Amplitudes4, Operator4> repr_;
};

enum class NamedState { PhiPlus, PhiMinus, PsiPlus, PsiMinus, RhoMax, Rho };

inline constexpr std::array<NamedState, 6> kAllNamedStates{
    NamedState::PhiPlus, NamedState::PhiMinus, NamedState::PsiPlus,
    NamedState::PsiMinus, NamedState::RhoMax, NamedState::Rho};

// Command-line tag: phi+, phi-, psi+, psi-, rhomax, rho.
std::string_view state_tag(NamedState s);
std::optional<NamedState> parse_state_tag(std::string_view tag);

TwoPhotonState make_state(NamedState s);

// cos θ|H> + sin θ e^{iφ}|V>, or sin θ|H> - cos θ e^{-iφ}|V> when orthogonal.
Amplitudes2 analyzer_state(const AnalyzerSetting& setting, bool orthogonal = false);

// Rank-one projector onto the product of the two analyzer eigenstates picked
// by `outcome` (plain state for Pass, orthogonal state for Absorb).
Operator4 projector(const AnalyzerSetting& signal, const AnalyzerSetting& idler,
                    OutcomePair outcome);

double outcome_probability(const TwoPhotonState& state,
                           const AnalyzerSetting& signal,
                           const AnalyzerSetting& idler, OutcomePair outcome);

// All four outcome probabilities, indexed like kAllOutcomes.
std::array<double, 4> outcome_distribution(const TwoPhotonState& state,
                                           const AnalyzerSetting& signal,
                                           const AnalyzerSetting& idler);

// P(Pass,Pass) + P(Absorb,Absorb) for linear analyzers.
double coincidence_probability(const TwoPhotonState& state, double theta_s,
                               double theta_i);

// Closed-form coincidence kernels for the named states.
double closed_form_coincidence(NamedState s, double theta_s, double theta_i);

// Symbolic form of the closed-form kernel, e.g. "cos^2(theta_s - theta_i)".
std::string_view closed_form_expression(NamedState s);

// Snaps values inside the round-off guard onto [0,1]; throws
// ConsistencyError for anything further out.
double clamp_probability(double p);

class FactsTriple {
 public:
  FactsTriple(double f1, double f2, double f3);

  double f1() const { return values_[0]; }
  double f2() const { return values_[1]; }
  double f3() const { return values_[2]; }
  double operator[](std::size_t k) const { return values_.at(k); }
  const std::array<double, 3>& values() const { return values_; }

 private:
  std::array<double, 3> values_;
};

// Ordered pair of question indices into MeasurementProtocol::angles().
using SettingPair = std::pair<std::size_t, std::size_t>;

struct OffsetClass {
  std::vector<double> offsets;  // distinct |θ_A - θ_B| values, ascending
  std::vector<SettingPair> pairs;
};

// The analyzer angles both sides choose from. Angles are kept sorted; offset
// class k holds the ordered pairs whose question indices differ by k, which
// for evenly spaced angles is exactly the |θ_A - θ_B| grouping.
class MeasurementProtocol {
 public:
  MeasurementProtocol();  // {0, 30, 60}
  explicit MeasurementProtocol(std::vector<double> angles);

  const std::vector<double>& angles() const { return angles_; }
  std::size_t size() const { return angles_.size(); }
  const std::array<OffsetClass, 3>& offset_classes() const { return classes_; }

  // Offset class of an ordered question pair.
  std::size_t class_of(std::size_t question_a, std::size_t question_b) const;
  std::optional<std::size_t> index_of(double angle) const;

 private:
  std::vector<double> angles_;
  std::array<OffsetClass, 3> classes_;
};

FactsTriple facts(const TwoPhotonState& state,
                  const MeasurementProtocol& protocol = {});
FactsTriple facts(NamedState state, const MeasurementProtocol& protocol = {});

// Same averaging as facts(NamedState), evaluated with the closed-form kernels.
FactsTriple closed_form_facts(NamedState state,
                              const MeasurementProtocol& protocol = {});

}  // namespace bellfacts
