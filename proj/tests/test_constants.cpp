#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfilab/accumulate.hpp"
#include "bfilab/constants.hpp"
#include "bfilab/sieve.hpp"

using namespace bfilab;

namespace {

// Test-side zeta oracle: plain partial sum bracketed by integral bounds,
// independent of the Euler-Maclaurin path in the library.
double zeta_oracle(double s) {
  const uint64_t N = 2'000'000;
  CompensatedSum sum;
  for (uint64_t n = N; n >= 1; --n)
    sum.add(std::pow(static_cast<double>(n), -s));
  // Midpoint of the integral bracket for the tail.
  double lo = std::pow(static_cast<double>(N + 1), 1.0 - s) / (s - 1.0);
  double hi = std::pow(static_cast<double>(N), 1.0 - s) / (s - 1.0);
  return sum.value() + 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("zeta series matches bracketed oracle") {
  for (double s : {2.0, 3.0, 6.0}) {
    auto z = zeta_series(s);
    double ref = zeta_oracle(s);
    CHECK(std::fabs(z.value - ref) < 1e-12);
  }
  CHECK(zeta_series(2.0).value == doctest::Approx(1.6449340668482264).epsilon(1e-14));
  CHECK(zeta_series(3.0).value == doctest::Approx(1.2020569031595943).epsilon(1e-14));
  CHECK(zeta_series(6.0).value == doctest::Approx(1.0173430619844491).epsilon(1e-14));
}

TEST_CASE("prime zeta and prime log zeta match explicit prime sums") {
  // Explicit sums over primes below 10^7 leave tails around 1e-8, so
  // agreement at that scale validates the Moebius-zeta evaluation.
  auto primes = primes_up_to(10'000'000);
  CompensatedSum p2, p3, l2;
  for (uint64_t p : primes) {
    double pd = static_cast<double>(p);
    p2.add(1.0 / (pd * pd));
    p3.add(1.0 / (pd * pd * pd));
    l2.add(std::log(pd) / (pd * pd));
  }
  CHECK(std::fabs(prime_zeta(2.0).value - p2.value()) < 5e-8);
  CHECK(std::fabs(prime_zeta(3.0).value - p3.value()) < 1e-12);
  CHECK(std::fabs(prime_log_zeta(2.0).value - l2.value()) < 5e-7);
  // Known digits.
  CHECK(prime_zeta(2.0).value == doctest::Approx(0.4522474200410655).epsilon(1e-13));
  CHECK(prime_log_zeta(2.0).value == doctest::Approx(0.4930911093687904).epsilon(1e-12));
}

TEST_CASE("Euler gamma") {
  CHECK(euler_gamma_series().value ==
        doctest::Approx(0.5772156649015329).epsilon(1e-14));
}

TEST_CASE("C1(1,1): truncated Euler product vs zeta ratio") {
  ConstantsEngine engine(1'000'000);
  auto c1 = engine.c1(1, 1);
  auto ratio = engine.zeta_ratio();
  CHECK(std::fabs(c1.value - ratio.value) < 1e-10);
  CHECK(c1.value == doctest::Approx(1.9435964368).epsilon(1e-10));
}

TEST_CASE("C1 rational factors for small a, r") {
  ConstantsEngine engine(100'000);
  double base = engine.c1_value(1, 1);
  // p = 2: 1 - p/(p^2-p+1) = 1/3, 1 + (p-1)/(p^2-p+1) = 4/3.
  CHECK(engine.c1_value(2, 1) == doctest::Approx(base / 3.0).epsilon(1e-14));
  CHECK(engine.c1_value(1, 2) == doctest::Approx(base * 4.0 / 3.0).epsilon(1e-14));
  CHECK(engine.c1_value(2, 1) == doctest::Approx(0.6478654).epsilon(1e-6));
  CHECK(engine.c1_value(1, 2) == doctest::Approx(2.5914619).epsilon(1e-6));
  // C1(a,r) depends on r only through its radical.
  CHECK(engine.c1_value(1, 4) == doctest::Approx(engine.c1_value(1, 2)).epsilon(1e-15));
  CHECK(engine.c1_value(3, 8) == doctest::Approx(engine.c1_value(3, 2)).epsilon(1e-15));
}

TEST_CASE("C5 and C6 values") {
  ConstantsEngine engine(1'000'000);
  // C5(1) = (log 2pi + 1 + gamma + 0.755366...) / 2.
  CHECK(engine.c5_value(1) == doctest::Approx(2.08523).epsilon(1e-5));
  CHECK(engine.prime_sum_phi().value == doctest::Approx(0.755366).epsilon(5e-6));
  CHECK(engine.prime_sum_sq().value == doctest::Approx(0.4930911).epsilon(5e-6));
  CHECK(engine.c6_value() == doctest::Approx(2.8318).epsilon(1e-4));
  CHECK(engine.c6_value() ==
        doctest::Approx(engine.c5_value(1) + 0.5 +
                        0.5 * engine.prime_sum_sq().value).epsilon(1e-15));
  // C5(r) adds (1/2) sum_{p|r} log p / p.
  CHECK(engine.c5_value(6) ==
        doctest::Approx(engine.c5_value(1) + 0.5 * (std::log(2.0) / 2.0 +
                                                    std::log(3.0) / 3.0))
            .epsilon(1e-14));
}

TEST_CASE("C3 = C2 - C1 exactly as computed") {
  ConstantsEngine engine(10'000);
  for (int64_t a : {1, -1, 2, 3, 5, 6, 30}) {
    for (uint64_t r : {1ull, 2ull, 7ull, 15ull}) {
      if (gcd_u64(abs_u64(a), r) != 1) continue;
      auto fam = engine.family(a, r);
      CHECK(fam.c3.value == fam.c2.value - fam.c1.value);  // bitwise
    }
  }
}

TEST_CASE("family rejects non-coprime and degenerate inputs") {
  ConstantsEngine engine(1000);
  CHECK_THROWS_AS(engine.family(2, 4), std::domain_error);
  CHECK_THROWS_AS(engine.family(0, 1), std::domain_error);
  CHECK_THROWS_AS(engine.family(1, 0), std::domain_error);
  CHECK_THROWS_AS(ConstantsEngine(999), std::domain_error);
}

TEST_CASE("tail bounds: rigorous, decreasing, within contract") {
  std::vector<uint64_t> cutoffs = {1000, 2000, 8000, 64'000, 256'000, 1'024'000};
  double prev_s_tail = 1e9, prev_phi_tail = 1e9, prev_z_tail = 1e9;
  double prev_c2 = 0.0, prev_c2_tail = 0.0;
  double prev_c1 = 0.0, prev_c1_tail = 0.0;
  bool first = true;
  for (uint64_t cutoff : cutoffs) {
    ConstantsEngine engine(cutoff);
    auto fam = engine.family(1, 1);
    double contract = 4.0 * std::log(static_cast<double>(cutoff)) /
                      static_cast<double>(cutoff);
    CHECK(fam.c1.tail_bound <= contract);
    CHECK(fam.c2.tail_bound <= 3.0 * contract);  // propagated through C1*bracket
    CHECK(fam.c5.tail_bound <= contract);

    // Strict decrease with the cutoff.
    CHECK(fam.c1.tail_bound < prev_z_tail);
    CHECK(fam.c2.tail_bound < prev_s_tail);
    CHECK(fam.c5.tail_bound < prev_phi_tail);
    prev_z_tail = fam.c1.tail_bound;
    prev_s_tail = fam.c2.tail_bound;
    prev_phi_tail = fam.c5.tail_bound;

    // Raising the cutoff moves each value by at most the older tail bound
    // (plus the documented 1e-13 relative roundoff budget).
    if (!first) {
      CHECK(std::fabs(fam.c2.value - prev_c2) <=
            prev_c2_tail + 2e-13 * std::fabs(prev_c2));
      CHECK(std::fabs(fam.c1.value - prev_c1) <=
            prev_c1_tail + 2e-13 * std::fabs(prev_c1));
    }
    prev_c2 = fam.c2.value;
    prev_c2_tail = fam.c2.tail_bound;
    prev_c1 = fam.c1.value;
    prev_c1_tail = fam.c1.tail_bound;
    first = false;
  }
}

TEST_CASE("truncation honest: higher-cutoff values stay within tail bounds") {
  ConstantsEngine coarse(10'000);
  ConstantsEngine fine(4'000'000);
  // The fine engine is, within its own (much smaller) tail, the truth.
  CHECK(std::fabs(coarse.prime_sum_phi().value - fine.prime_sum_phi().value) <=
        coarse.prime_sum_phi().tail_bound);
  CHECK(std::fabs(coarse.prime_sum_sq().value - fine.prime_sum_sq().value) <=
        coarse.prime_sum_sq().tail_bound);
  CHECK(std::fabs(coarse.c2_value(1, 1) - fine.c2_value(1, 1)) <=
        coarse.c2(1, 1).tail_bound);
  CHECK(std::fabs(coarse.c1_value(1, 1) - fine.c1_value(1, 1)) <=
        coarse.c1(1, 1).tail_bound);
}

TEST_CASE("multiplicativity of the C1 rational part in r") {
  ConstantsEngine engine(1000);
  auto rat = [&](uint64_t r) { return engine.c1_rational(1, r); };
  // Coprime squarefree pieces multiply.
  CHECK(rat(6) * rat(35) == rat(210));
  CHECK(rat(2) * rat(3) == rat(6));
  CHECK(rat(10) * rat(21) == rat(210));
}
