#include "doctest.h"

#include <cmath>

#include "lcmb/bounds.hpp"
#include "lcmb/errors.hpp"
#include "lcmb/number_theory.hpp"
#include "lcmb/verify.hpp"
#include "oracles.hpp"

using namespace lcmb;

namespace {

mpq_class exact(const BoundValue& b) {
  auto v = b.exact_rational();
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("bound examples") {
  const Progression p12(1, 2);
  const Progression p34(3, 4);

  CHECK(exact(bound_multi_prime(p34, 3, 0)) == 1155);
  CHECK(exact(bound_multi_prime(p12, 4, 0)) == 126);
  CHECK(exact(bound_single_r(p12, 4, 0)) == 126);
  CHECK(exact(bound_single_r(p34, 3, 0)) == mpq_class(1155, 2));
  CHECK(exact(bound_binomial(p12, 4, 0)) == 63);
  CHECK(exact(bound_binomial(p12, 1, 0)) == mpq_class(3, 2));
  CHECK(exact(bound_binomial_corrected(p12, 4, 0)) == 126);
  CHECK(exact(bound_binomial_corrected(p12, 1, 0)) == 3);
  CHECK(exact(bound_single_r(p12, 1, 0)) == 3);

  CHECK(bound_multi_prime(p34, 3, 0).log_value == doctest::Approx(std::log(1155.0)));
  CHECK_THROWS_AS(bound_single_r(Progression(1, 1), 4, 0), DomainError);
  CHECK_THROWS_AS(bound_multi_prime(p12, 3, 4), DomainError);
}

TEST_CASE("k = n collapses to u_n") {
  for (auto [u0, r] : coprime_grid(7, 6, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= 5; ++n) {
      const mpq_class un(prog.term(static_cast<std::int64_t>(n)));
      REQUIRE(exact(bound_multi_prime(prog, n, n)) == un);
      REQUIRE(exact(bound_single_r(prog, n, n)) == un);
      REQUIRE(exact(bound_binomial_corrected(prog, n, n)) == un);
    }
  }
}

TEST_CASE("irrational exponent for composite r") {
  // r = 6: 2^{m} 3^{m/2} = 12^{m/2}
  const auto b = bound_multi_prime(Progression(1, 6), 3, 0);
  CHECK(b.base == 12);
  CHECK(b.exponent == mpq_class(3, 2));
  CHECK_FALSE(b.exact_rational().has_value());
  CHECK(b.to_string().find("12^(3/2)") != std::string::npos);
}

TEST_CASE("binomial against the integer-expansion oracle") {
  for (auto [u0, r] : coprime_grid(9, 5, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= 14; ++n) {
      for (u64 k = 0; k <= n; ++k) {
        const u64 m = n - k + 1;
        // top = u_{k-1}/r + m = (u_{k-1} + m r) / r
        const mpz_class a = prog.term(static_cast<std::int64_t>(k) - 1) + mpz_class(m * r);
        const mpq_class binom = oracle::binomial_integer_expansion(a, r, m);
        const auto printed = bound_binomial(prog, n, k);
        REQUIRE(printed.mantissa == binom);
        REQUIRE(printed.base == r);
        mpq_class e(mpz_class((n - k) * r), mpz_class(r - 1));
        e.canonicalize();
        REQUIRE(printed.exponent == e);
        // printed form is exactly the single-r bound divided by r
        const auto single = bound_single_r(prog, n, k);
        REQUIRE(exact_compare(printed.scaled(mpq_class(mpz_class(r))), single) ==
                std::strong_ordering::equal);
      }
    }
  }
}

TEST_CASE("bound_sequence matches pointwise evaluation") {
  for (Variant v : kNewVariants) {
    for (auto [u0, r] : coprime_grid(5, 6, 2)) {
      const Progression prog(u0, r);
      const u64 n = 12;
      const auto seq = bound_sequence(v, prog, n);
      for (u64 k = 0; k <= n; ++k) {
        const auto direct = evaluate(v, prog, n, k);
        REQUIRE(seq[k].mantissa == direct.mantissa);
        REQUIRE(seq[k].base == direct.base);
        REQUIRE(seq[k].exponent == direct.exponent);
      }
    }
  }
}

TEST_CASE("validity on a small grid with an independent lcm") {
  for (auto [u0, r] : coprime_grid(8, 6)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= 20; ++n) {
      const mpz_class lcm = oracle::lcm_by_prime_exponents(u0, r, n, 0);
      for (u64 k = 0; k <= n; ++k) {
        REQUIRE(exact_compare(bound_multi_prime(prog, n, k), lcm) != std::strong_ordering::greater);
        if (r < 2) continue;
        REQUIRE(exact_compare(bound_single_r(prog, n, k), lcm) != std::strong_ordering::greater);
        REQUIRE(exact_compare(bound_binomial_corrected(prog, n, k), lcm) !=
                std::strong_ordering::greater);
      }
    }
  }
}

TEST_CASE("k_star") {
  CHECK(k_star(Progression(1, 2), 10) == 2);
  CHECK(k_star(Progression(100, 3), 3) == 0);
  CHECK(k_star(Progression(1, 2), 0) == 0);
  CHECK_THROWS_AS(k_star(Progression(1, 1), 5), DomainError);

  // independent closed-form estimate in double
  for (auto [u0, r] : coprime_grid(10, 7, 2)) {
    for (u64 n = 0; n <= 200; n += 7) {
      const double c = std::pow(double(r), 1.0 / double(r - 1));
      const double x = (double(n) + 1.0 - double(u0) * c) / (double(r) * c + 1.0);
      const double ceil_x = std::max(0.0, std::ceil(x));
      const u64 ks = k_star(Progression(u0, r), n);
      REQUIRE(std::fabs(double(ks) - ceil_x) <= 1.0);
    }
  }

  for (auto [u0, r] : coprime_grid(6, 5, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= 40; n += 3) {
      const u64 ks = k_star(prog, n);
      const u64 ka = k_argmax(prog, n, Variant::binomial_corrected);
      REQUIRE((ks > ka ? ks - ka : ka - ks) <= 1);
    }
  }
}

TEST_CASE("Tan-Hong") {
  const Progression p12(1, 2);
  CHECK(exact(bound_tan_hong_optimized(p12, 12)) == 4251528);
  CHECK(4251528 == 8 * 531441);
  CHECK_THROWS_AS(bound_tan_hong_optimized(p12, 11), HypothesisError);
  CHECK_THROWS_AS(bound_tan_hong_optimized(Progression(1, 1), 100), DomainError);
  CHECK_THROWS_AS(bound_tan_hong(p12, 100, {3, 2, 3}), HypothesisError);
  CHECK_THROWS_AS(bound_tan_hong(p12, 100, {2, 3, 1}), HypothesisError);
  CHECK_THROWS_AS(bound_tan_hong(p12, 100, {1, 3, 2}), HypothesisError);

  const auto th3 = bound_tan_hong_optimized(Progression(1, 3), 36);
  mpz_class four36;
  mpz_ui_pow_ui(four36.get_mpz_t(), 4, 36);
  CHECK(exact(th3) == mpq_class(6561 * four36));  // 3^8 * 4^36
  CHECK(exact_compare(th3, exact_lcm(Progression(1, 3), 36, 0).value) !=
        std::strong_ordering::greater);
}

TEST_CASE("exact_compare") {
  const auto sqrt2 = BoundValue::make(1, 2, mpq_class(1, 2));
  CHECK(exact_compare(sqrt2, mpz_class(1)) == std::strong_ordering::greater);
  CHECK(exact_compare(sqrt2, mpz_class(2)) == std::strong_ordering::less);
  CHECK(exact_compare(BoundValue::make(1, 4, mpq_class(1, 2)), mpz_class(2)) ==
        std::strong_ordering::equal);
  CHECK(exact_compare(BoundValue::make(mpq_class(1, 2), 4, 1), mpz_class(2)) ==
        std::strong_ordering::equal);
  CHECK(exact_compare(BoundValue::make(1, 8, mpq_class(1, 3)), BoundValue::make(1, 4, mpq_class(1, 2))) ==
        std::strong_ordering::equal);
  CHECK(exact_compare(BoundValue::make(1, 3, mpq_class(1, 2)), BoundValue::make(1, 2, mpq_class(2, 3))) ==
        std::strong_ordering::greater);  // 27^(1/6) vs 16^(1/6)
  CHECK(exact_compare(BoundValue::make(1, 2, mpq_class(-1)), mpz_class(1)) ==
        std::strong_ordering::less);
  CHECK_THROWS_AS(exact_compare(BoundValue::make(1, 3, mpq_class(1000000)), mpz_class(2), 1000),
                  ResourceError);
}

TEST_CASE("large-u0 bound") {
  CHECK(exact(bound_large_u0(Progression(1, 2), 0)) == mpq_class(1, 2));
  CHECK(exact(bound_large_u0_corrected(Progression(1, 2), 0)) == 1);
}

TEST_CASE("full_report") {
  const auto rep = full_report(Progression(1, 2), 4);
  CHECK(rep.lcm == 315);
  CHECK(rep.all_valid());
  REQUIRE(rep.k_star);
  REQUIRE(rep.best);
  CHECK(rep.sharpness_ratio.value() >= 1.0);
  // Tan-Hong does not apply at n = 4
  CHECK_FALSE(rep.records.back().value.has_value());
  CHECK_FALSE(rep.records.back().error.empty());

  const auto r1 = full_report(Progression(1, 1), 6);
  CHECK_FALSE(r1.k_star.has_value());
  CHECK(r1.all_valid());
}

TEST_CASE("variant names") {
  for (Variant v : {Variant::multi_prime, Variant::single_r, Variant::binomial_printed,
                    Variant::binomial_corrected, Variant::tan_hong_optimized}) {
    CHECK(parse_variant(variant_name(v)) == v);
  }
  CHECK_FALSE(parse_variant("nope"));
}
