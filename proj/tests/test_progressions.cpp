#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bfilab/progressions.hpp"
#include "support/oracles.hpp"

using namespace bfilab;

namespace {

const PrimeTable& table() {
  static PrimeTable pt(200'000);
  return pt;
}

}  // namespace

TEST_CASE("psi examples") {
  CHECK(psi_progression(table(), 20, 1, 1).psi ==
        doctest::Approx(19.2656).epsilon(1e-4));
  CHECK(psi_progression(table(), 30, 4, 1).psi ==
        doctest::Approx(2 * std::log(5.0) + std::log(3.0) + std::log(13.0) +
                        std::log(17.0) + std::log(29.0)).epsilon(1e-14));
  // From-one convention counts n = 2 here; the tally records its convention.
  auto t = psi_progression(table(), 10, 3, 2);
  CHECK(t.psi == doctest::Approx(2 * std::log(2.0) + std::log(5.0)).epsilon(1e-14));
  CHECK(t.range == RangeConvention::kFromOne);
  auto t2 = psi_progression(table(), 10, 3, 2, RangeConvention::kAboveAbsA);
  CHECK(t2.psi == doctest::Approx(std::log(2.0) + std::log(5.0)).epsilon(1e-14));
  CHECK(t2.range == RangeConvention::kAboveAbsA);
}

TEST_CASE("psi tallies: theta <= psi, prime count, monotone in x") {
  auto t = psi_progression(table(), 10'000, 7, 3);
  CHECK(t.theta <= t.psi);
  CHECK(t.prime_count > 0);
  double prev = -1.0;
  for (uint64_t x : {100ull, 1000ull, 10'000ull, 100'000ull}) {
    auto tx = psi_progression(table(), x, 7, 3);
    CHECK(tx.psi >= prev);
    prev = tx.psi;
  }
}

TEST_CASE("psi against trial-division oracle") {
  std::mt19937_64 rng(1729);
  std::uniform_int_distribution<uint64_t> x_dist(10, 3000);
  std::uniform_int_distribution<uint64_t> q_dist(1, 12);
  std::uniform_int_distribution<int64_t> a_dist(-12, 12);
  for (int trial = 0; trial < 25; ++trial) {
    uint64_t x = x_dist(rng), q = q_dist(rng);
    int64_t a = a_dist(rng);
    double expect_psi = 0.0, expect_theta = 0.0;
    uint64_t expect_count = 0;
    int64_t qi = static_cast<int64_t>(q);
    for (uint64_t n = 1; n <= x; ++n) {
      if (((static_cast<int64_t>(n) - a) % qi + qi) % qi != 0) continue;
      expect_psi += oracle::von_mangoldt(n);
      if (oracle::is_prime(n)) {
        expect_theta += std::log(static_cast<double>(n));
        ++expect_count;
      }
    }
    auto t = psi_progression(table(), x, q, a);
    CHECK(t.psi == doctest::Approx(expect_psi).epsilon(1e-12));
    CHECK(t.theta == doctest::Approx(expect_theta).epsilon(1e-12));
    CHECK(t.prime_count == expect_count);
  }
}

TEST_CASE("residue-class completeness is exact") {
  // Sum over residue classes equals the single-class total exactly: the
  // tallies' quad accumulators make the merge order immaterial.
  for (uint64_t x : {1000ull, 100'000ull}) {
    for (uint64_t q : {2ull, 7ull, 50ull}) {
      auto full = psi_progression(table(), x, 1, 1);
      quad split = 0;
      for (uint64_t a = 0; a < q; ++a)
        split += psi_progression(table(), x, q, static_cast<int64_t>(a)).psi_exact;
      CHECK(static_cast<double>(split) == full.psi);
      CHECK(split == full.psi_exact);  // bit-exact
    }
  }
}

TEST_CASE("delta_sum trivial and validation cases") {
  CHECK(delta_sum(table(), 1000, 1, 0, 1) == 0.0);
  CHECK_THROWS_AS(delta_sum(table(), 1000, 2, 5, 2), std::domain_error);  // gcd
  CHECK_THROWS_AS(delta_sum(table(), 1000, 2, 501, 1), std::domain_error);  // q r > x
  CHECK_THROWS_AS(delta_sum(table(), 1000, 1, 5, 0), std::domain_error);
}

TEST_CASE("delta_sum against fully independent brute force") {
  // x = 1e3, r = 2, Qmax = 5, a = 1: per-n enumeration with trial-division
  // von Mangoldt and phi.
  const uint64_t x = 1000, r = 2, q_max = 5;
  const int64_t a = 1;
  double expected = 0.0;
  for (uint64_t q = 1; q <= q_max; ++q) {
    if (oracle::gcd(q, 1) != 1) continue;
    uint64_t m = q * r;
    double class_sum = 0.0;
    for (uint64_t n = 2; n <= x; ++n)
      if (n % m == 1 % m) class_sum += oracle::von_mangoldt(n);
    expected += class_sum - static_cast<double>(x) / oracle::phi_factored(m);
  }
  double got = delta_sum(table(), x, r, q_max, a);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("delta_sum stepping vs divisor transform on a random grid") {
  std::mt19937_64 rng(24601);
  std::uniform_int_distribution<uint64_t> x_dist(5000, 100'000);
  std::uniform_int_distribution<uint64_t> r_dist(1, 5);
  std::uniform_int_distribution<int64_t> a_dist(-6, 6);
  int done = 0;
  while (done < 20) {
    uint64_t x = x_dist(rng), r = r_dist(rng);
    int64_t a = a_dist(rng);
    if (a == 0 || gcd_u64(r, abs_u64(a)) != 1) continue;
    ++done;
    std::uniform_int_distribution<uint64_t> q_dist(1, x / (r * 20));
    uint64_t q_max = q_dist(rng);
    double s = delta_sum(table(), x, r, q_max, a, DeltaMethod::kStepping);
    double d = delta_sum(table(), x, r, q_max, a, DeltaMethod::kDivisorTransform);
    CHECK(std::fabs(s - d) <= 1e-9 * std::max(1.0, std::fabs(s)));
  }
}

TEST_CASE("divisor switch worked instance (x=30, r=2, P=3, a=1)") {
  auto rep = divisor_switch_check(table(), 30, 2, 3.0, 1);
  CHECK(rep.diff == doctest::Approx(std::log(11.0)).epsilon(1e-12));
  std::vector<SwitchPair> expected_lhs{{13, 6}, {29, 7}, {17, 8},
                                       {19, 9}, {23, 11}, {29, 14}};
  CHECK(rep.lhs_pairs == expected_lhs);
  REQUIRE(rep.unmatched.size() == 1);
  CHECK(rep.unmatched[0].p == 11);
  CHECK(rep.unmatched[0].cofactor == 1);
  CHECK(rep.unmatched[0].side == 'R');
  REQUIRE(rep.unmatched[0].violations.size() == 1);
  CHECK(rep.unmatched[0].violations[0] == "q > x/(rP)");
}

TEST_CASE("divisor switch with empty q-range") {
  // P small enough that (x/(rP), x/r] contains no integer.
  auto rep = divisor_switch_check(table(), 20, 10, 2.0, 1);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.lhs_pairs.empty());
}

TEST_CASE("divisor switch property: 50 random instances") {
  std::mt19937_64 rng(31415926);
  std::uniform_int_distribution<uint64_t> x_dist(1000, 100'000);
  std::uniform_int_distribution<uint64_t> r_dist(1, 5);
  std::uniform_real_distribution<double> p_dist(2.0, 20.0);
  const int64_t a_choices[5] = {1, -1, 2, -2, 3};
  std::uniform_int_distribution<int> a_idx(0, 4);
  int done = 0;
  while (done < 50) {
    uint64_t x = x_dist(rng), r = r_dist(rng);
    int64_t a = a_choices[a_idx(rng)];
    if (gcd_u64(r, abs_u64(a)) != 1) continue;
    ++done;
    double P = std::floor(p_dist(rng));
    // The bound |diff| <= 4 log^2 x is asserted inside; surviving the call
    // is the property.
    auto rep = divisor_switch_check(table(), x, r, P, a);
    double logx = std::log(static_cast<double>(x));
    CHECK(std::fabs(rep.diff) <= 4.0 * logx * logx);
    // Bijection soundness: every unmatched pair flags exactly one violated
    // constraint, verified by direct recheck.
    for (const auto& u : rep.unmatched) CHECK(u.violations.size() == 1);
    // Pair counts minus unmatched must balance.
    size_t unmatched_l = 0, unmatched_r = 0;
    for (const auto& u : rep.unmatched)
      (u.side == 'L' ? unmatched_l : unmatched_r)++;
    CHECK(rep.lhs_pairs.size() - unmatched_l == rep.rhs_pairs.size() - unmatched_r);
  }
}
