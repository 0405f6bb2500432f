#include "doctest.h"

#include <cmath>

#include "lcmb/asymptotics.hpp"
#include "lcmb/bigmath.hpp"
#include "lcmb/errors.hpp"
#include "lcmb/verify.hpp"
#include "oracles.hpp"

using namespace lcmb;

TEST_CASE("Mangoldt sieve") {
  const MangoldtSieve s(100, 1000);
  CHECK(s.at(64) == MangoldtValue{2, 6});
  CHECK(s.at(97) == MangoldtValue{97, 1});
  CHECK(s.at(1).is_zero());
  CHECK(s.at(100).is_zero());
  for (u64 d = 1; d <= 100; ++d) REQUIRE(s.at(d) == von_mangoldt(d));
  CHECK_THROWS_AS(s.at(101), DomainError);
  CHECK_THROWS_AS(MangoldtSieve(1001, 1000), ResourceError);
}

TEST_CASE("log L_n through von Mangoldt") {
  const MangoldtSieve s(5000, 10000);
  CHECK(log_lcm_via_mangoldt(Progression(1, 2), 4, s).reconstruction == 315);
  CHECK(log_lcm_via_mangoldt(Progression(3, 4), 3, s).reconstruction == 1155);
  CHECK(static_cast<double>(log_lcm_via_mangoldt(Progression(1, 2), 4, s).log_sum) ==
        doctest::Approx(std::log(315.0)).epsilon(1e-12));

  for (auto [u0, r] : coprime_grid(10, 7)) {
    for (u64 n = 0; n <= 60; n += 5) {
      REQUIRE(log_lcm_via_mangoldt(Progression(u0, r), n, s).reconstruction ==
              oracle::lcm_by_prime_exponents(u0, r, n, 0));
    }
  }
  CHECK_THROWS_AS(log_lcm_via_mangoldt(Progression(1, 2), 5000, s), ResourceError);
}

TEST_CASE("step2 sum") {
  const MangoldtSieve s(20000, 20000);
  const auto v = step2_sum(Progression(1, 2), 4, s);
  CHECK(v.reconstruction == 315);
  CHECK(static_cast<double>(v.log_sum) == doctest::Approx(5.7526).epsilon(1e-4));
  CHECK(step2_sum(Progression(1, 3), 0, s).log_sum == 0);
  CHECK(step2_sum(Progression(1, 5), 0, s).reconstruction == 1);

  const Progression p13(1, 3);
  const u64 n = 3000;
  const mpz_class lcm = exact_lcm(p13, n, 0).value;
  const auto big = step2_sum(p13, n, s);
  CHECK(big.reconstruction == lcm);
  CHECK(static_cast<double>(big.log_sum) == doctest::Approx(static_cast<double>(log_big(lcm))).epsilon(1e-12));

  for (auto [u0, r] : coprime_grid(12, 6, 2)) {
    const Progression prog(u0, r);
    for (u64 n2 = 0; n2 <= 80; n2 += 4) {
      const mpz_class l = exact_lcm(prog, n2, 0).value;
      if (step2_exactness(prog, l)) REQUIRE(step2_sum(prog, n2, s).reconstruction == l);
    }
  }
  CHECK_THROWS_AS(step2_sum(Progression(1, 1), 4, s), DomainError);
}

TEST_CASE("step2 exactness") {
  for (u64 n = 0; n <= 20; ++n) CHECK(step2_exactness(Progression(1, 2), n));
  CHECK_FALSE(step2_exactness(Progression(9, 2), 0));
  CHECK_FALSE(step2_exactness(Progression(9, 2), 2));
  CHECK(step2_exactness(Progression(9, 2), 6));  // 15 and 21 bring in 5 and 7
  CHECK_FALSE(step2_exactness(Progression(9, 2), 5));
}

TEST_CASE("main-term coefficients") {
  CHECK(step3_coefficient(4) == mpq_class(2, 3));
  CHECK(step3_coefficient(2) == 1);
  CHECK(step3_coefficient(3) == mpq_class(3, 4));
  CHECK(step4_coefficient(3) == mpq_class(3, 4));
  CHECK(step4_coefficient(2) == 1);
  CHECK(step4_coefficient(5) == mpq_class(25, 48));
  CHECK_THROWS_AS(step4_coefficient(4), DomainError);
  CHECK_THROWS_AS(step3_coefficient(1), DomainError);
  for (u64 p : oracle::primes_up_to(300)) REQUIRE(step3_coefficient(p) == step4_coefficient(p));

  CHECK(step3_main_term(Progression(1, 4), 10) == doctest::Approx(41.0 * 2 / 3));
  CHECK(step4_main_term(Progression(1, 2), 10) == doctest::Approx(21.0));
}

TEST_CASE("Stirling parameters") {
  const auto sp = stirling_params(Progression(1, 2), 100);
  CHECK(static_cast<double>(sp.alpha) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(static_cast<double>(sp.mu) == doctest::Approx(201.0 / 2));
  for (auto [u0, r] : coprime_grid(20, 11, 2)) {
    for (u64 n : {0, 1, 7, 100, 12345}) {
      const auto p = stirling_params(Progression(u0, r), n);
      const long double lhs = (p.alpha + 1) * (static_cast<long double>(n) - p.k_tilde + 1);
      REQUIRE(std::fabs(static_cast<double>(lhs - p.mu)) <= 1e-9 * std::max(1.0, double(p.mu)));
    }
  }
  CHECK_THROWS_AS(stirling_params(Progression(1, 1), 5), DomainError);
}

TEST_CASE("Stirling bound and exponential part") {
  CHECK(exppart_per_n_log(2) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(std::fabs(exppart_per_n_log(10007) - std::log(10007.0)) < 0.01);
  const double e3 = exppart_per_n_log(3);
  CHECK(e3 > std::log(3.0));
  CHECK(e3 < std::log(3.0) + 1);
  CHECK(std::isfinite(stirling_log_bound(Progression(1, 3), 10000)));
  CHECK(std::isfinite(stirling_log_bound(Progression(1001, 2), 1)));
}

TEST_CASE("gamma gap") {
  const double gap = linear_term_coefficient(101) - std::log(101.0) - static_cast<double>(kEulerGamma);
  CHECK(gap == doctest::Approx(0.047).epsilon(0.05));
  CHECK(gap > 0);

  const MangoldtSieve s(100, 1000);
  const auto r0 = gamma_gap_report(Progression(1, 2), 0, s);
  CHECK_FALSE(r0.gap_per_n.has_value());
  CHECK_FALSE(r0.note.empty());

  const auto r4 = gamma_gap_report(Progression(1, 4), 10, s);
  CHECK_FALSE(r4.step4_main_term.has_value());
  CHECK_FALSE(r4.linear_term_coefficient.has_value());
  CHECK(r4.exact_log_lcm == doctest::Approx(static_cast<double>(log_big(exact_lcm(Progression(1, 4), 10, 0).value))));
}
