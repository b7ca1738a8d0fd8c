// Exhaustive enumeration of the (alpha, beta, gamma, delta) simplex at a
// fixed resolution and its image in facts space.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "bellfacts/classical.hpp"

namespace bellfacts {

// Optional plane: the named class weight is held at zero.
enum class Plane { None, Alpha, Beta, Gamma, Delta };

std::string_view plane_name(Plane p);
// Accepts "none", "alpha=0", "beta=0", ... (also the bare class name).
std::optional<Plane> parse_plane(std::string_view text);

struct GridSpec {
  unsigned p = 10;  // resolution 1/p
  Plane restriction = Plane::None;

  double step() const { return 1.0 / static_cast<double>(p); }
};

// Integer weights (a, b, c, d) with a + b + c + d = p.
using Composition = std::array<unsigned, 4>;

// Number of points simplex_grid(spec) emits.
std::uint64_t grid_size(const GridSpec& spec);

// Compositions in descending lexicographic order of (a, b, c), starting at
// (p, 0, 0, 0) and ending at (0, 0, 0, p).
std::vector<Composition> simplex_compositions(const GridSpec& spec);

std::vector<MixturePoint> simplex_grid(const GridSpec& spec);

struct SweepRecord {
  MixturePoint mixture;
  FactsTriple facts;
  double margin;
};

// One record per grid point, in grid order. `workers` = 0 uses every core.
std::vector<SweepRecord> sweep_facts(const GridSpec& spec, unsigned workers = 0);

struct RegionReport {
  FactsTriple target;
  Polarity polarity;         // game the target is compared against
  bool f1_matches_protocol;  // target F1 equals the game's F1 (1 or 0)
  bool inside;
  double inequality_margin;
  double euclidean_distance;  // analytic, to the classical triangle
  double grid_min_distance;   // nearest sweep record, cross-check only
};

RegionReport region_report(const FactsTriple& target, const GridSpec& spec);

// alpha,beta,gamma,delta,F1,F2,F3,margin
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

}  // namespace bellfacts
