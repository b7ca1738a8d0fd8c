#include "bellfacts/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bellfacts/errors.hpp"

namespace bellfacts {

namespace {

using cd = std::complex<double>;

Amplitudes4 kron(const Amplitudes2& signal, const Amplitudes2& idler) {
  Amplitudes4 out;
  out << signal(0) * idler(0), signal(0) * idler(1), signal(1) * idler(0),
      signal(1) * idler(1);
  return out;
}

Amplitudes4 product_state(const AnalyzerSetting& signal,
                          const AnalyzerSetting& idler, OutcomePair outcome) {
  return kron(analyzer_state(signal, outcome.signal == Answer::Absorb),
              analyzer_state(idler, outcome.idler == Answer::Absorb));
}

double raw_probability(const TwoPhotonState& state, const Amplitudes4& e) {
  if (state.is_pure()) return std::norm(state.amplitudes().dot(e));
  // Tr(ρ |e><e|) = <e|ρ|e>
  return (e.adjoint() * state.density() * e)(0, 0).real();
}

double sq(double x) { return x * x; }

}  // namespace

char answer_letter(Answer a) { return a == Answer::Pass ? 'P' : 'A'; }

Answer flip(Answer a) {
  return a == Answer::Pass ? Answer::Absorb : Answer::Pass;
}

double reduced_radians(double degrees) {
  if (!std::isfinite(degrees)) {
    throw InvalidInput("angle must be finite");
  }
  return std::fmod(degrees, 360.0) * (std::numbers::pi / 180.0);
}

TwoPhotonState TwoPhotonState::pure(const Amplitudes4& amplitudes) {
  if (!amplitudes.allFinite()) {
    throw InvalidInput("state amplitudes must be finite");
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "pure state is not normalized (|psi|^2 = " << norm2 << ")";
    throw InvalidInput(msg.str());
  }
  return TwoPhotonState(amplitudes);
}

TwoPhotonState TwoPhotonState::mixed(const Operator4& density) {
  if (!density.allFinite()) {
    throw InvalidInput("density matrix must be finite");
  }
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
    throw InvalidInput("density matrix is not Hermitian");
  }
  const cd tr = density.trace();
  if (std::abs(tr - cd(1.0, 0.0)) > kNormTolerance) {
    throw InvalidInput("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Operator4> eig(density,
                                               Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kProbabilityGuard) {
    throw InvalidInput("density matrix is not positive semidefinite");
  }
  return TwoPhotonState(density);
}

const Amplitudes4& TwoPhotonState::amplitudes() const {
  if (!is_pure()) throw InvalidInput("state is mixed; no amplitude vector");
  return std::get<Amplitudes4>(repr_);
}

Operator4 TwoPhotonState::density() const {
  if (is_pure()) {
    const auto& psi = std::get<Amplitudes4>(repr_);
    return psi * psi.adjoint();
  }
  return std::get<Operator4>(repr_);
}

std::string_view state_tag(NamedState s) {
  switch (s) {
    case NamedState::PhiPlus: return "phi+";
    case NamedState::PhiMinus: return "phi-";
    case NamedState::PsiPlus: return "psi+";
    case NamedState::PsiMinus: return "psi-";
    case NamedState::RhoMax: return "rhomax";
    case NamedState::Rho: return "rho";
  }
  return "?";
}

std::optional<NamedState> parse_state_tag(std::string_view tag) {
  for (NamedState s : kAllNamedStates) {
    if (state_tag(s) == tag) return s;
  }
  return std::nullopt;
}

TwoPhotonState make_state(NamedState s) {
  const double h = 1.0 / std::numbers::sqrt2;
  Amplitudes4 v = Amplitudes4::Zero();
  Operator4 rho = Operator4::Zero();
  switch (s) {
    case NamedState::PhiPlus:
      v << h, 0, 0, h;
      return TwoPhotonState::pure(v);
    case NamedState::PhiMinus:
      v << h, 0, 0, -h;
      return TwoPhotonState::pure(v);
    case NamedState::PsiPlus:
      v << 0, h, h, 0;
      return TwoPhotonState::pure(v);
    case NamedState::PsiMinus:
      v << 0, h, -h, 0;
      return TwoPhotonState::pure(v);
    case NamedState::RhoMax:
      rho.diagonal().setConstant(0.25);
      return TwoPhotonState::mixed(rho);
    case NamedState::Rho:
      rho(0, 0) = 0.5;
      rho(3, 3) = 0.5;
      return TwoPhotonState::mixed(rho);
  }
  throw InvalidInput("unknown named state");
}

Amplitudes2 analyzer_state(const AnalyzerSetting& setting, bool orthogonal) {
  const double t = reduced_radians(setting.theta);
  const double ph = reduced_radians(setting.phase);
  const double c = std::cos(t);
  const double s = std::sin(t);
  Amplitudes2 out;
  if (orthogonal) {
    out << cd(s, 0.0), -c * std::polar(1.0, ph);
  } else {
    out << cd(c, 0.0), s * std::polar(1.0, ph);
  }
  return out;
}

Operator4 projector(const AnalyzerSetting& signal, const AnalyzerSetting& idler,
                    OutcomePair outcome) {
  const Amplitudes4 e = product_state(signal, idler, outcome);
  return e * e.adjoint();
}

double clamp_probability(double p) {
  if (!(p >= -kProbabilityGuard && p <= 1.0 + kProbabilityGuard)) {
    std::ostringstream msg;
    msg << "probability " << p << " outside [0,1]";
    throw ConsistencyError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

double outcome_probability(const TwoPhotonState& state,
                           const AnalyzerSetting& signal,
                           const AnalyzerSetting& idler, OutcomePair outcome) {
  return clamp_probability(
      raw_probability(state, product_state(signal, idler, outcome)));
}

std::array<double, 4> outcome_distribution(const TwoPhotonState& state,
                                           const AnalyzerSetting& signal,
                                           const AnalyzerSetting& idler) {
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < kAllOutcomes.size(); ++k) {
    out[k] = outcome_probability(state, signal, idler, kAllOutcomes[k]);
  }
  return out;
}

double coincidence_probability(const TwoPhotonState& state, double theta_s,
                               double theta_i) {
  const auto s = AnalyzerSetting::linear(theta_s);
  const auto i = AnalyzerSetting::linear(theta_i);
  return clamp_probability(
      outcome_probability(state, s, i, {Answer::Pass, Answer::Pass}) +
      outcome_probability(state, s, i, {Answer::Absorb, Answer::Absorb}));
}

double closed_form_coincidence(NamedState s, double theta_s, double theta_i) {
  switch (s) {
    case NamedState::PhiPlus:
      return sq(std::cos(reduced_radians(theta_s - theta_i)));
    case NamedState::PhiMinus:
      return sq(std::cos(reduced_radians(theta_s + theta_i)));
    case NamedState::PsiPlus:
      return sq(std::sin(reduced_radians(theta_s + theta_i)));
    case NamedState::PsiMinus:
      return sq(std::sin(reduced_radians(theta_s - theta_i)));
    case NamedState::RhoMax:
      reduced_radians(theta_s);
      reduced_radians(theta_i);
      return 0.5;
    case NamedState::Rho:
      return 0.5 * (std::cos(2.0 * reduced_radians(theta_s)) *
                        std::cos(2.0 * reduced_radians(theta_i)) +
                    1.0);
  }
  throw InvalidInput("unknown named state");
}

std::string_view closed_form_expression(NamedState s) {
  switch (s) {
    case NamedState::PhiPlus: return "cos^2(theta_s - theta_i)";
    case NamedState::PhiMinus: return "cos^2(theta_s + theta_i)";
    case NamedState::PsiPlus: return "sin^2(theta_s + theta_i)";
    case NamedState::PsiMinus: return "sin^2(theta_s - theta_i)";
    case NamedState::RhoMax: return "1/2";
    case NamedState::Rho: return "(cos(2 theta_s) cos(2 theta_i) + 1)/2";
  }
  return "?";
}

FactsTriple::FactsTriple(double f1, double f2, double f3) : values_{f1, f2, f3} {
  for (double& f : values_) {
    if (!(f >= -kProbabilityGuard && f <= 1.0 + kProbabilityGuard)) {
      throw InvalidInput("facts must lie in [0,1]");
    }
    f = std::clamp(f, 0.0, 1.0);
  }
}

MeasurementProtocol::MeasurementProtocol()
    : MeasurementProtocol(std::vector<double>{0.0, 30.0, 60.0}) {}

MeasurementProtocol::MeasurementProtocol(std::vector<double> angles)
    : angles_(std::move(angles)) {
  if (angles_.empty()) throw InvalidProtocol("protocol needs at least one angle");
  if (angles_.size() > 3) {
    throw InvalidProtocol("protocol supports at most three questions");
  }
  for (double a : angles_) {
    if (!std::isfinite(a)) throw InvalidProtocol("protocol angles must be finite");
  }
  std::sort(angles_.begin(), angles_.end());
  if (std::adjacent_find(angles_.begin(), angles_.end()) != angles_.end()) {
    throw InvalidProtocol("protocol angles must be distinct");
  }

  const std::size_t n = angles_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto& cls = classes_[class_of(a, b)];
      cls.pairs.emplace_back(a, b);
      cls.offsets.push_back(std::abs(angles_[a] - angles_[b]));
    }
  }
  for (auto& cls : classes_) {
    std::sort(cls.offsets.begin(), cls.offsets.end());
    cls.offsets.erase(
        std::unique(cls.offsets.begin(), cls.offsets.end(),
                    [](double x, double y) { return std::abs(x - y) < 1e-12; }),
        cls.offsets.end());
  }
}

std::size_t MeasurementProtocol::class_of(std::size_t question_a,
                                          std::size_t question_b) const {
  if (question_a >= angles_.size() || question_b >= angles_.size()) {
    throw InvalidQuestion("question index outside the protocol");
  }
  return question_a > question_b ? question_a - question_b
                                 : question_b - question_a;
}

std::optional<std::size_t> MeasurementProtocol::index_of(double angle) const {
  for (std::size_t k = 0; k < angles_.size(); ++k) {
    if (std::abs(angles_[k] - angle) < 1e-9) return k;
  }
  return std::nullopt;
}

namespace {

template <class Kernel>
FactsTriple average_over_classes(const MeasurementProtocol& protocol,
                                 Kernel&& kernel) {
  std::array<double, 3> f{};
  const auto& angles = protocol.angles();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& pairs = protocol.offset_classes()[k].pairs;
    if (pairs.empty()) {
      throw InvalidProtocol("offset class " + std::to_string(k) +
                            " has no setting pairs");
    }
    double sum = 0.0;
    for (const auto& [a, b] : pairs) sum += kernel(angles[a], angles[b]);
    f[k] = sum / static_cast<double>(pairs.size());
  }
  return {f[0], f[1], f[2]};
}

}  // namespace

FactsTriple facts(const TwoPhotonState& state,
                  const MeasurementProtocol& protocol) {
  return average_over_classes(protocol, [&](double s, double i) {
    return coincidence_probability(state, s, i);
  });
}

FactsTriple facts(NamedState state, const MeasurementProtocol& protocol) {
  return facts(make_state(state), protocol);
}

FactsTriple closed_form_facts(NamedState state,
                              const MeasurementProtocol& protocol) {
  return average_over_classes(protocol, [&](double s, double i) {
    return closed_form_coincidence(state, s, i);
  });
}

}  // namespace bellfacts
