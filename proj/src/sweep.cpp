#include "bellfacts/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "bellfacts/errors.hpp"
#include "bellfacts/format.hpp"
#include "bellfacts/parallel.hpp"

namespace bellfacts {

namespace {

void validate(const GridSpec& spec) {
  if (spec.p == 0) throw InvalidResolution("grid resolution p must be >= 1");
}

bool admitted(const Composition& c, Plane plane) {
  switch (plane) {
    case Plane::None: return true;
    case Plane::Alpha: return c[0] == 0;
    case Plane::Beta: return c[1] == 0;
    case Plane::Gamma: return c[2] == 0;
    case Plane::Delta: return c[3] == 0;
  }
  return false;
}

MixturePoint to_mixture(const Composition& c, unsigned p) {
  const double scale = static_cast<double>(p);
  return {c[0] / scale, c[1] / scale, c[2] / scale, c[3] / scale};
}

}  // namespace

std::string_view plane_name(Plane p) {
  switch (p) {
    case Plane::None: return "none";
    case Plane::Alpha: return "alpha=0";
    case Plane::Beta: return "beta=0";
    case Plane::Gamma: return "gamma=0";
    case Plane::Delta: return "delta=0";
  }
  return "?";
}

std::optional<Plane> parse_plane(std::string_view text) {
  for (Plane p : {Plane::None, Plane::Alpha, Plane::Beta, Plane::Gamma,
                  Plane::Delta}) {
    const auto name = plane_name(p);
    if (text == name || text == name.substr(0, name.find('='))) return p;
  }
  return std::nullopt;
}

std::uint64_t grid_size(const GridSpec& spec) {
  validate(spec);
  const std::uint64_t p = spec.p;
  if (spec.restriction == Plane::None) {
    return (p + 3) * (p + 2) * (p + 1) / 6;
  }
  return (p + 2) * (p + 1) / 2;
}

std::vector<Composition> simplex_compositions(const GridSpec& spec) {
  validate(spec);
  const unsigned p = spec.p;
  std::vector<Composition> out;
  out.reserve(grid_size(spec));
  for (unsigned a = p + 1; a-- > 0;) {
    for (unsigned b = p - a + 1; b-- > 0;) {
      for (unsigned c = p - a - b + 1; c-- > 0;) {
        const Composition comp{a, b, c, p - a - b - c};
        if (admitted(comp, spec.restriction)) out.push_back(comp);
      }
    }
  }
  return out;
}

std::vector<MixturePoint> simplex_grid(const GridSpec& spec) {
  std::vector<MixturePoint> out;
  const auto comps = simplex_compositions(spec);
  out.reserve(comps.size());
  for (const auto& c : comps) out.push_back(to_mixture(c, spec.p));
  return out;
}

std::vector<SweepRecord> sweep_facts(const GridSpec& spec, unsigned workers) {
  const auto comps = simplex_compositions(spec);
  std::vector<std::optional<SweepRecord>> slots(comps.size());
  detail::parallel_chunks(
      comps.size(), detail::resolve_workers(workers),
      [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
          const MixturePoint m = to_mixture(comps[k], spec.p);
          const FactsTriple f = facts_of_mixture(m);
          slots[k].emplace(
              SweepRecord{m, f, classical_inequality(f.f2(), f.f3()).margin});
        }
      });
  std::vector<SweepRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(*s);
  return out;
}

RegionReport region_report(const FactsTriple& target, const GridSpec& spec) {
  validate(spec);
  const ClassicalFrame frame = classical_frame(target);
  const FactsTriple& f = frame.facts;
  const InequalityCheck ineq = classical_inequality(f.f2(), f.f3());

  RegionReport r{target,
                 frame.polarity,
                 std::abs(f.f1() - 1.0) <= 1e-9,
                 ineq.satisfied,
                 ineq.margin,
                 ineq.satisfied ? 0.0
                                : distance_to_classical_region(f.f2(), f.f3()),
                 std::numeric_limits<double>::infinity()};

  for (const auto& rec : sweep_facts(spec)) {
    r.grid_min_distance =
        std::min(r.grid_min_distance,
                 std::hypot(rec.facts.f2() - f.f2(), rec.facts.f3() - f.f3()));
  }
  if (r.grid_min_distance < r.euclidean_distance - spec.step()) {
    throw ConsistencyError("grid point closer to target than classical region");
  }
  return r;
}

void write_sweep_csv(std::ostream& out,
                     const std::vector<SweepRecord>& records) {
  out << "alpha,beta,gamma,delta,F1,F2,F3,margin\n";
  for (const auto& r : records) {
    const auto& w = r.mixture.weights();
    out << fmt12(w[0]) << ',' << fmt12(w[1]) << ',' << fmt12(w[2]) << ','
        << fmt12(w[3]) << ',' << fmt12(r.facts.f1()) << ','
        << fmt12(r.facts.f2()) << ',' << fmt12(r.facts.f3()) << ','
        << fmt12(r.margin) << '\n';
  }
}

}  // namespace bellfacts
