#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "stseq/census.hpp"
#include "stseq/design.hpp"
#include "stseq/generators.hpp"
#include "stseq/sequencer.hpp"

using namespace stseq;

TEST_CASE("exact census on the fano plane") {
  const CensusReport r = census_exact(fano(), 3, 9);
  CHECK(r.mode == CensusReport::Mode::exact);
  CHECK(r.total_permutations == 5040);
  CHECK(r.windows() == 5);
  for (int i = 1; i <= 5; ++i)
    CHECK(r.per_i_forbidden[i - 1] == 1008);  // v!/(v-2)
  CHECK(r.total_forbidden < 5040);
  CHECK(r.good_count > 0);
  CHECK(r.good_count == 5040 - r.total_forbidden);
  // union bound, strictly (fano has intersecting blocks)
  CHECK(r.total_forbidden < r.per_i_sum());
  // frozen regression value, confirmed by the verifier recount below
  CHECK(r.total_forbidden == 4032);
  CHECK(r.good_count == count_good_by_verifier(fano(), 3, 9));
}

TEST_CASE("exact census on sts(9)") {
  const CensusReport r = census_exact(bose(1), 3, 9);
  CHECK(r.total_permutations == 362880);
  for (int i = 1; i <= r.windows(); ++i)
    CHECK(r.per_i_forbidden[i - 1] == 51840);  // 9!/7
  CHECK(r.total_forbidden < r.per_i_sum());
  CHECK(r.good_count == count_good_by_verifier(bose(1), 3, 9));
}

TEST_CASE("exact census at ell=4 cross-checks the verifier") {
  const CensusReport r = census_exact(fano(), 4, 9);
  CHECK(r.windows() == 4);
  CHECK(r.good_count == count_good_by_verifier(fano(), 4, 9));
  CHECK(r.good_count == 0);  // no 4-good sequencing of sts(7) exists
}

TEST_CASE("psts with an uncovered pair drops strictly below v!/(v-2)") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TripleSystem sys = random_psts(7, 5, seed);
    REQUIRE(ThirdTable(sys).uncovered_ordered_pairs() > 0);
    const CensusReport r = census_exact(sys, 3, 9);
    for (int i = 1; i <= r.windows(); ++i)
      CHECK(r.per_i_forbidden[i - 1] < 1008);
  }
}

TEST_CASE("exact census rejects oversized inputs") {
  CHECK_THROWS_AS(census_exact(bose(2), 3, 9), std::invalid_argument);
  CHECK_THROWS_AS(census_exact(fano(), 3, 25), std::invalid_argument);
  CHECK_THROWS_AS(census_exact(fano(), 2, 9), std::invalid_argument);
}

TEST_CASE("monte carlo census tracks the exact rates") {
  const CensusReport r = census_sample(fano(), 3, 200000, 17);
  CHECK(r.mode == CensusReport::Mode::monte_carlo);
  CHECK(r.samples == 200000);
  for (int i = 1; i <= r.windows(); ++i) {
    const double gap = std::abs(r.per_i_estimate(i) - 0.2);
    CHECK(gap <= 3.0 * r.per_i_stderr(i));
  }
  // exact Pr[forbidden] = 4032/5040 = 0.8
  CHECK(std::abs(r.forbidden_estimate() - 0.8) <=
        3.0 * r.forbidden_stderr());
}

TEST_CASE("monte carlo census on a blockless psts is exactly zero") {
  const TripleSystem empty{8, SystemKind::psts, {}};
  const CensusReport r = census_sample(empty, 3, 10000, 3);
  CHECK(r.total_forbidden == 0);
  CHECK(r.forbidden_estimate() == 0.0);
  CHECK(r.forbidden_stderr() == 0.0);
}

TEST_CASE("monte carlo census runs at orders far beyond the exact cap") {
  const CensusReport r = census_sample(bose(4), 3, 2000, 5);  // v = 27
  CHECK(r.windows() == 25);
  CHECK(r.total_forbidden <= 2000);
}

TEST_CASE("overlap certificate pins the strict union bound") {
  const auto cert = find_overlap_certificate(fano());
  REQUIRE(cert.has_value());
  int shared = 0;
  for (Point p : cert->first.pts)
    if (cert->second.contains(p)) ++shared;
  CHECK(shared == 1);
  // the pivot of the prefix is the common point
  CHECK(cert->first.contains(cert->prefix[2]));
  CHECK(cert->second.contains(cert->prefix[2]));

  // any permutation with this prefix is 1-forbidden and 3-forbidden
  std::vector<Point> order(cert->prefix.begin(), cert->prefix.end());
  for (Point p = 0; p < 7; ++p)
    if (std::find(order.begin(), order.end(), p) == order.end())
      order.push_back(p);
  const ThirdTable table(fano());
  CHECK(table.is_block(order[0], order[1], order[2]));
  CHECK(table.is_block(order[2], order[3], order[4]));

  // blockless systems have no certificate
  CHECK(!find_overlap_certificate(TripleSystem{5, SystemKind::psts, {}})
             .has_value());
}

TEST_CASE("report renderings carry the stable field names") {
  const CensusReport r = census_exact(fano(), 3, 9);
  const std::string kv = to_kv(r);
  CHECK(kv.find("mode=exact\n") != std::string::npos);
  CHECK(kv.find("total_permutations=5040\n") != std::string::npos);
  CHECK(kv.find("good_count=1008\n") != std::string::npos);
  CHECK(kv.find("per_i_forbidden=1008,1008,1008,1008,1008\n") !=
        std::string::npos);
  CHECK(kv.find("certificate_prefix=") != std::string::npos);
  CHECK(to_text(r).find("strict") != std::string::npos);

  const CensusReport mc = census_sample(fano(), 3, 100, 1);
  const std::string mkv = to_kv(mc);
  CHECK(mkv.find("mode=monte_carlo\n") != std::string::npos);
  CHECK(mkv.find("samples=100\n") != std::string::npos);
  CHECK(mkv.find("seed=1\n") != std::string::npos);
  CHECK(mkv.find("forbidden_estimate=") != std::string::npos);
}

TEST_CASE("factorial helper") {
  CHECK(factorial_u64(0) == 1);
  CHECK(factorial_u64(9) == 362880);
  CHECK(factorial_u64(20) == 2432902008176640000ULL);
  CHECK_THROWS_AS(factorial_u64(21), std::invalid_argument);
}
