#include <cmath>
#include <random>
#include <sstream>

#include "bellfacts/errors.hpp"
#include "bellfacts/sweep.hpp"
#include "doctest.h"

using namespace bellfacts;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string csv_of(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  write_sweep_csv(os, records);
  return os.str();
}

}  // namespace

TEST_CASE("grid point counts follow the tetrahedral numbers") {
  for (unsigned p = 1; p <= 50; ++p) {
    const auto n = simplex_grid({p}).size();
    CHECK(n == binomial(p + 3, 3));
    CHECK(grid_size({p}) == n);
    const auto plane = simplex_grid({p, Plane::Beta}).size();
    CHECK(plane == binomial(p + 2, 2));
    CHECK(grid_size({p, Plane::Beta}) == plane);
  }
  CHECK(simplex_grid({10}).size() == 286);
  CHECK(simplex_grid({25}).size() == 3276);
}

TEST_CASE("p = 1 yields the simplex vertices") {
  const auto g = simplex_grid({1});
  REQUIRE(g.size() == 4);
  CHECK(g[0] == MixturePoint(1, 0, 0, 0));
  CHECK(g[1] == MixturePoint(0, 1, 0, 0));
  CHECK(g[2] == MixturePoint(0, 0, 1, 0));
  CHECK(g[3] == MixturePoint(0, 0, 0, 1));
}

TEST_CASE("grid order walks down from (1,0,0,0)") {
  const auto comps = simplex_compositions({10});
  CHECK(comps[0] == Composition{10, 0, 0, 0});
  CHECK(comps[1] == Composition{9, 1, 0, 0});
  CHECK(comps[2] == Composition{9, 0, 1, 0});
  CHECK(comps[3] == Composition{9, 0, 0, 1});
  CHECK(comps.back() == Composition{0, 0, 0, 10});
  for (std::size_t k = 1; k < comps.size(); ++k) {
    const std::array<unsigned, 3> prev{comps[k - 1][0], comps[k - 1][1],
                                       comps[k - 1][2]};
    const std::array<unsigned, 3> cur{comps[k][0], comps[k][1], comps[k][2]};
    CHECK(prev > cur);
  }
  for (const auto& c : comps) CHECK(c[0] + c[1] + c[2] + c[3] == 10);
}

TEST_CASE("plane restriction keeps only that component at zero") {
  for (Plane plane : {Plane::Alpha, Plane::Beta, Plane::Gamma, Plane::Delta}) {
    const auto idx = static_cast<std::size_t>(plane) - 1;
    for (const auto& m : simplex_grid({7, plane})) CHECK(m[idx] == 0.0);
  }
}

TEST_CASE("plane parsing") {
  CHECK(parse_plane("gamma=0") == Plane::Gamma);
  CHECK(parse_plane("alpha") == Plane::Alpha);
  CHECK(parse_plane("none") == Plane::None);
  CHECK_FALSE(parse_plane("gamma=1").has_value());
}

TEST_CASE("zero resolution is rejected") {
  CHECK_THROWS_AS(simplex_grid({0}), InvalidResolution);
  CHECK_THROWS_AS(sweep_facts({0}), InvalidResolution);
  CHECK_THROWS_AS(region_report(FactsTriple(1, 0.5, 0.5), {0}), InvalidResolution);
}

TEST_CASE("sweep_facts examples") {
  const auto v = sweep_facts({1});
  CHECK(v[0].facts.values() == std::array<double, 3>{1, 1, 1});
  CHECK(v[0].margin == 0.0);
  CHECK(v[2].facts.values() == std::array<double, 3>{1, 0, 1});
  CHECK(v[2].margin == 0.0);

  bool found = false;
  for (const auto& r : sweep_facts({2})) {
    if (r.mixture == MixturePoint(0, 0.5, 0, 0.5)) {
      found = true;
      CHECK(r.facts.values() == std::array<double, 3>{1, 0.5, 0});
      CHECK(r.margin == doctest::Approx(0.0));
    }
  }
  CHECK(found);
}

TEST_CASE("sweep records are classically sound and frontier planes saturate") {
  for (const auto& r : sweep_facts({25})) CHECK(r.margin >= -1e-12);
  const auto lines = boundary_lines();
  for (const auto& r : sweep_facts({25, Plane::Gamma})) {
    CHECK(std::abs(r.facts.f2() - lines.upper(r.facts.f3())) < 1e-12);
  }
  for (const auto& r : sweep_facts({25, Plane::Alpha})) {
    CHECK(std::abs(r.facts.f2() - lines.lower(r.facts.f3())) < 1e-12);
  }
}

TEST_CASE("sweep output does not depend on worker count") {
  const auto one = csv_of(sweep_facts({20}, 1));
  CHECK(one == csv_of(sweep_facts({20}, 3)));
  CHECK(one == csv_of(sweep_facts({20}, 8)));
}

TEST_CASE("sweep CSV layout") {
  const auto csv = csv_of(sweep_facts({1}));
  CHECK(csv ==
        "alpha,beta,gamma,delta,F1,F2,F3,margin\n"
        "1,0,0,0,1,1,1,0\n"
        "0,1,0,0,1,0.5,0,0\n"
        "0,0,1,0,1,0,1,0\n"
        "0,0,0,1,1,0.5,0,0\n");
}

TEST_CASE("nearest grid record lies within the step of any feasible target") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (unsigned p : {4u, 10u, 25u}) {
    const auto records = sweep_facts({p});
    const double step = 1.0 / p;
    for (int k = 0; k < 200; ++k) {
      const double f2 = u(gen), f3 = u(gen);
      if (!classical_inequality(f2, f3).satisfied) continue;
      double best = 1e9;
      for (const auto& r : records) {
        best = std::min(best, std::max(std::abs(r.facts.f2() - f2),
                                       std::abs(r.facts.f3() - f3)));
      }
      CHECK(best <= step + 1e-12);
    }
  }
}

TEST_CASE("region_report examples") {
  const auto phi = region_report(FactsTriple(1, 0.75, 0.25), {10});
  CHECK_FALSE(phi.inside);
  CHECK(phi.polarity == Polarity::Correlated);
  CHECK(phi.f1_matches_protocol);
  CHECK(phi.inequality_margin == doctest::Approx(-0.25));
  CHECK(phi.euclidean_distance == doctest::Approx(0.25 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(phi.grid_min_distance >= phi.euclidean_distance - 1e-12);

  const auto mid = region_report(FactsTriple(0.5, 0.5, 0.5), {10});
  CHECK(mid.inside);
  CHECK(mid.euclidean_distance == 0.0);
  CHECK_FALSE(mid.f1_matches_protocol);
  CHECK(mid.grid_min_distance <= 0.1 / std::sqrt(2.0) + 1e-12);

  // F1 = 0: judged against the anti-correlated game.
  const auto anti = region_report(FactsTriple(0, 0.25, 0.75), {10});
  CHECK(anti.polarity == Polarity::Anticorrelated);
  CHECK(anti.f1_matches_protocol);
  CHECK_FALSE(anti.inside);
  CHECK(anti.inequality_margin == doctest::Approx(-0.25));
}
