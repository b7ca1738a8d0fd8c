#include <cmath>
#include <sstream>

#include "bellfacts/errors.hpp"
#include "bellfacts/montecarlo.hpp"
#include "bellfacts/rng.hpp"
#include "doctest.h"

using namespace bellfacts;

namespace {

SimConfig config(std::uint64_t runs, std::uint64_t seed, unsigned workers = 1) {
  SimConfig c;
  c.runs = runs;
  c.seed = seed;
  c.workers = workers;
  return c;
}

void check_within(const ClassTally& t, double expected, double sigmas = 5.0) {
  REQUIRE(t.fact().has_value());
  const double se = std::sqrt(expected * (1.0 - expected) / t.count);
  if (se == 0.0) {
    CHECK(*t.fact() == expected);
  } else {
    CHECK(std::abs(*t.fact() - expected) <= sigmas * se);
  }
}

}  // namespace

TEST_CASE("run streams are reproducible and in range") {
  RunStream a(42, 7), b(42, 7), c(42, 8);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  RunStream s(1, 0);
  std::array<int, 3> hist{};
  for (int k = 0; k < 30000; ++k) {
    const double u = s.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const auto q = s.below(3);
    REQUIRE(q < 3);
    ++hist[q];
  }
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("zero runs is a config error") {
  CHECK_THROWS_AS(simulate_students({1, 0, 0, 0}, config(0, 1)), InvalidConfig);
  CHECK_THROWS_AS(simulate_quantum(NamedState::PhiPlus, config(0, 1)), InvalidConfig);
}

TEST_CASE("constant strategies always agree") {
  const auto r = simulate_students({1, 0, 0, 0}, config(5000, 9));
  for (const auto& t : r.classes) CHECK(*t.fact() == 1.0);
}

TEST_CASE("class gamma always disagrees at adjacent questions") {
  const auto r = simulate_students({0, 0, 1, 0}, config(100000, 3));
  CHECK(*r.classes[0].fact() == 1.0);
  CHECK(*r.classes[1].fact() == 0.0);
  CHECK(*r.classes[2].fact() == 1.0);
}

TEST_CASE("uniform mixture converges to (1, 1/2, 1/2)") {
  const auto r = simulate_students({0.25, 0.25, 0.25, 0.25}, config(200000, 77));
  CHECK(*r.classes[0].fact() == 1.0);
  check_within(r.classes[1], 0.5);
  check_within(r.classes[2], 0.5);
}

TEST_CASE("student facts converge on the 1/4 grid; F1 is exact") {
  std::uint64_t seed = 100;
  for (const auto& m : simplex_grid({4})) {
    const auto r = simulate_students(m, config(40000, seed++, 0));
    const auto f = facts_of_mixture(m);
    CHECK(*r.classes[0].fact() == 1.0);
    check_within(r.classes[1], f.f2());
    check_within(r.classes[2], f.f3());
    CHECK(r.classes[0].count + r.classes[1].count + r.classes[2].count ==
          r.total_runs);
    CHECK(r.total_runs == 40000);
  }
}

TEST_CASE("quantum simulation examples") {
  const auto phi = simulate_quantum(NamedState::PhiPlus, config(200000, 7));
  CHECK(*phi.classes[0].fact() == 1.0);
  check_within(phi.classes[1], 0.75);
  check_within(phi.classes[2], 0.25);

  const auto rmax = simulate_quantum(NamedState::RhoMax, config(200000, 8));
  for (const auto& t : rmax.classes) check_within(t, 0.5);

  const auto psi = simulate_quantum(NamedState::PsiMinus, config(200000, 9));
  CHECK(*psi.classes[0].fact() == 0.0);
  check_within(psi.classes[1], 0.25);
  check_within(psi.classes[2], 0.75);
}

TEST_CASE("quantum simulation tracks the analytic facts for every state") {
  std::uint64_t seed = 500;
  for (NamedState s : kAllNamedStates) {
    const auto r = simulate_quantum(s, config(100000, seed++, 0));
    const auto f = facts(s);
    for (std::size_t k = 0; k < 3; ++k) check_within(r.classes[k], f[k]);
  }
}

TEST_CASE("reports and logs do not depend on worker count") {
  std::vector<RunRecord> log1, log4;
  const MixturePoint m(0.1, 0.2, 0.3, 0.4);
  const auto r1 = simulate_students(m, config(20001, 5, 1), &log1);
  const auto r4 = simulate_students(m, config(20001, 5, 4), &log4);
  CHECK(r1 == r4);
  CHECK(log1 == log4);

  std::vector<RunRecord> q1, q3;
  const auto s1 = simulate_quantum(NamedState::Rho, config(9999, 11, 1), &q1);
  const auto s3 = simulate_quantum(NamedState::Rho, config(9999, 11, 3), &q3);
  CHECK(s1 == s3);
  CHECK(q1 == q3);
}

TEST_CASE("run log is consistent with the tallies") {
  std::vector<RunRecord> log;
  const auto r = simulate_students({0.1, 0.2, 0.3, 0.4}, config(3000, 2), &log);
  REQUIRE(log.size() == 3000);
  const MeasurementProtocol proto;
  SimReport recount;
  for (const auto& rec : log) {
    auto& t = recount.classes[proto.class_of(*proto.index_of(rec.theta_a),
                                             *proto.index_of(rec.theta_b))];
    ++t.count;
    if (rec.r_a == rec.r_b) ++t.agreements;
  }
  for (std::size_t k = 0; k < 3; ++k) CHECK(recount.classes[k] == r.classes[k]);

  std::ostringstream os;
  write_run_log_csv(os, {log.begin(), log.begin() + 2});
  const std::string csv = os.str();
  CHECK(csv.rfind("run,theta_a,theta_b,r_a,r_b\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("merging is associative and order independent") {
  SimReport a, b, c;
  a.classes[0] = {10, 4};
  b.classes[1] = {7, 7};
  c.classes[2] = {3, 1};
  a.total_runs = 10;
  b.total_runs = 7;
  c.total_runs = 3;
  SimReport left = a;
  left.merge(b).merge(c);
  SimReport bc = b;
  bc.merge(c);
  SimReport right = a;
  right.merge(bc);
  SimReport reversed = c;
  reversed.merge(b).merge(a);
  CHECK(left == right);
  CHECK(left == reversed);
  CHECK(left.total_runs == 20);

  SimReport other;
  other.seed = 1;
  CHECK_THROWS_AS(a.merge(other), InvalidInput);
}

TEST_CASE("empty classes are flagged") {
  SimConfig c = config(1000, 4);
  c.protocol = MeasurementProtocol({0.0, 45.0});
  const auto r = simulate_quantum(NamedState::PhiPlus, c);
  CHECK_FALSE(r.classes[2].fact().has_value());
  CHECK_FALSE(r.classes[2].standard_error().has_value());
  CHECK(r.classes[0].count + r.classes[1].count == 1000);
}

TEST_CASE("stochastic grid search") {
  SUBCASE("perfect agreement matches only the constant class") {
    const auto res = stochastic_grid_search({2}, config(10000, 1),
                                            FactsTriple(1, 1, 1));
    const auto hits = res.matching();
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == MixturePoint(1, 0, 0, 0));
  }
  SUBCASE("uniform facts are reproduced by the uniform mixture") {
    const auto res = stochastic_grid_search({4}, config(100000, 2),
                                            FactsTriple(1, 0.5, 0.5));
    const auto hits = res.matching();
    CHECK(std::find(hits.begin(), hits.end(),
                    MixturePoint(0.25, 0.25, 0.25, 0.25)) != hits.end());
    for (const auto& m : hits) {
      const auto f = facts_of_mixture(m);
      CHECK(f.f2() == doctest::Approx(0.5));
      CHECK(f.f3() == doctest::Approx(0.5));
    }
  }
  SUBCASE("phi+ facts are out of reach on a coarse grid") {
    const auto res = stochastic_grid_search({5}, config(20000, 3),
                                            FactsTriple(1, 0.75, 0.25));
    CHECK(res.points.size() == 56);
    CHECK(res.matching().empty());
  }
  SUBCASE("result does not depend on worker count") {
    SimConfig c1 = config(2000, 4, 1), c3 = config(2000, 4, 3);
    const auto a = stochastic_grid_search({3}, c1, FactsTriple(1, 0.5, 0.5));
    const auto b = stochastic_grid_search({3}, c3, FactsTriple(1, 0.5, 0.5));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      CHECK(a.points[k].report == b.points[k].report);
    }
  }
}
