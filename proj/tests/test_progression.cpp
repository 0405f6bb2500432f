#include "doctest.h"

#include "lcmb/errors.hpp"
#include "lcmb/number_theory.hpp"
#include "lcmb/progression.hpp"
#include "lcmb/verify.hpp"
#include "oracles.hpp"

using namespace lcmb;

TEST_CASE("progression terms") {
  const Progression p(1, 2);
  CHECK(p.term(0) == 1);
  CHECK(p.term(4) == 9);
  CHECK(p.term(-1) == -1);
  CHECK(Progression(3, 4).term(3) == 15);
  CHECK(Progression(5, 1).term(10) == 15);

  CHECK_THROWS_AS(Progression(2, 4), DomainError);
  CHECK_THROWS_AS(Progression(0, 3), DomainError);
  CHECK_THROWS_AS(Progression(3, 0), DomainError);
}

TEST_CASE("exact lcm") {
  CHECK(exact_lcm(Progression(1, 2), 4, 0).value == 315);
  CHECK(exact_lcm(Progression(3, 4), 3, 0).value == 1155);
  CHECK(exact_lcm(Progression(1, 1), 10, 0).value == 27720);
  CHECK(exact_lcm(Progression(1, 2), 4, 4).value == 9);
  CHECK_THROWS_AS(exact_lcm(Progression(1, 2), 3, 4), DomainError);

  for (auto [u0, r] : coprime_grid(12, 6)) {
    const Progression prog(u0, r);
    const auto tails = tail_lcms(prog, 30);
    REQUIRE(tails.size() == 31);
    for (u64 k = 0; k <= 30; k += 3) {
      REQUIRE(tails[k] == exact_lcm(prog, 30, k).value);
      REQUIRE(tails[k] == oracle::lcm_by_prime_exponents(u0, r, 30, k));
    }
  }
}

TEST_CASE("C and A") {
  CHECK(c_value(Progression(1, 2), 4, 0) == mpq_class(315, 8));
  CHECK(a_value(Progression(1, 2), 4, 0) == 8);
  CHECK(c_value(Progression(3, 4), 3, 0) == mpq_class(1155, 2));
  CHECK(a_value(Progression(3, 4), 3, 0) == 2);

  // n = k: C = u_n, A = 1
  for (u64 n = 0; n <= 6; ++n) {
    const Progression prog(5, 3);
    CHECK(c_value(prog, n, n) == mpq_class(prog.term(static_cast<std::int64_t>(n))));
    CHECK(a_value(prog, n, n) == 1);
  }

  const auto d = decompose(Progression(1, 2), 4, 0);
  CHECK(d.c == mpq_class(315, 8));
  CHECK(d.a == 8);
}

TEST_CASE("L = A * C with A a positive integer, r-smooth denominator of C") {
  for (auto [u0, r] : coprime_grid(8, 5)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= 18; ++n) {
      const auto tails = tail_lcms(prog, n);
      for (u64 k = 0; k <= n; ++k) {
        // C computed independently: product / factorial as plain integers
        mpz_class prod = 1;
        for (u64 j = k; j <= n; ++j) prod *= u0 + j * r;
        mpq_class c(prod, oracle::factorial_loop(n - k));
        c.canonicalize();
        const mpq_class a_rat = mpq_class(tails[k]) / c;
        REQUIRE(a_rat.get_den() == 1);
        REQUIRE(a_rat > 0);
        const auto dec = decompose(prog, n, k, tails[k]);
        REQUIRE(dec.a == a_rat.get_num());
        REQUIRE(dec.c == c);
        REQUIRE(coprime_part(c.get_den(), r) == 1);
      }
    }
  }
}

TEST_CASE("tail lcm divides the next") {
  for (auto [u0, r] : coprime_grid(6, 4)) {
    const Progression prog(u0, r);
    const auto tails = tail_lcms(prog, 25);
    for (u64 k = 0; k < 25; ++k) {
      REQUIRE(mpz_divisible_p(tails[k].get_mpz_t(), tails[k + 1].get_mpz_t()));
    }
  }
}
