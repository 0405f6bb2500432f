#include "lcmb/verify.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lcmb/bigmath.hpp"
#include "lcmb/errors.hpp"

namespace lcmb {

std::vector<std::pair<u64, u64>> coprime_grid(u64 max_u0, u64 max_r, u64 min_r) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 r = min_r; r <= max_r; ++r) {
    for (u64 u0 = 1; u0 <= max_u0; ++u0) {
      if (std::gcd(u0, r) == 1) out.emplace_back(u0, r);
    }
  }
  return out;
}

namespace {

std::string tuple(u64 u0, u64 r, u64 n) {
  std::ostringstream os;
  os << "u0=" << u0 << " r=" << r << " n=" << n;
  return os.str();
}

std::string tuple(u64 u0, u64 r, u64 n, u64 k) { return tuple(u0, r, n) + " k=" + std::to_string(k); }

// One property: records the first failing tuple and stops.
class Check {
 public:
  explicit Check(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  bool ok() const { return result_.passed; }

  void fail(std::string repro) {
    if (!result_.passed) return;
    result_.passed = false;
    result_.repro = std::move(repro);
  }

  void expect(bool cond, const std::string& repro) {
    if (!cond) fail(repro);
  }

  void detail(std::string d) { result_.detail = std::move(d); }

  PropertyResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  PropertyResult result_;
  std::chrono::steady_clock::time_point start_;
};

bool leq(const BoundValue& b, const mpz_class& m) {
  return exact_compare(b, m) != std::strong_ordering::greater;
}

struct Grid {
  u64 max_u0 = 12;
  u64 max_r = 6;
  u64 lemma_n = 40;
  u64 bound_n = 60;
  u64 digit_m = 10'000;
  u64 valuation_m = 200;
  u64 factor_max = 100'000;
  u64 ktilde_n = 10'000;
  u64 step2_n = 200;
  u64 sharp_n = 20;
  u64 th_n = 1000;
  u64 conv_lo = 500;
  u64 conv_hi = 5000;
};

Grid grid_for(bool quick) {
  Grid g;
  if (quick) {
    g.lemma_n = 20;
    g.bound_n = 25;
    g.digit_m = 1000;
    g.valuation_m = 60;
    g.factor_max = 10'000;
    g.ktilde_n = 1000;
    g.step2_n = 60;
    g.sharp_n = 12;
    g.th_n = 400;
    g.conv_lo = 200;
    g.conv_hi = 2000;
  }
  return g;
}

// ---- number_theory -------------------------------------------------------

PropertyResult check_sieve(const Grid& g) {
  Check c("sieve_matches_trial_division");
  const u64 limit = g.factor_max / 10;
  const PrimeTable t = sieve(limit);
  std::size_t idx = 0;
  for (u64 m = 0; m <= limit && c.ok(); ++m) {
    const bool listed = idx < t.primes.size() && t.primes[idx] == m;
    c.expect(listed == is_prime(m), "m=" + std::to_string(m));
    if (listed) ++idx;
  }
  c.expect(idx == t.primes.size(), "extra entries");
  c.detail("limit " + std::to_string(limit));
  return c.finish();
}

PropertyResult check_factorize(const Grid& g) {
  Check c("factorize_roundtrip");
  for (u64 m = 1; m <= g.factor_max && c.ok(); ++m) {
    const auto f = factorize(m);
    bool increasing = true;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      if (!is_prime(f.factors[i].prime) || f.factors[i].exponent == 0) increasing = false;
      if (i > 0 && f.factors[i - 1].prime >= f.factors[i].prime) increasing = false;
    }
    c.expect(increasing && f.multiply_back() == m, "m=" + std::to_string(m));
  }
  c.detail("[1, " + std::to_string(g.factor_max) + "]");
  return c.finish();
}

PropertyResult check_factorial_valuation(const Grid& g) {
  Check c("factorial_valuation");
  for (u64 m = 0; m <= g.valuation_m && c.ok(); ++m) {
    const mpz_class fact = factorial(m);
    for (u64 s = 2; s <= 30 && c.ok(); ++s) {
      const auto fv = factorial_valuation(s, m);
      const std::string repro = "s=" + std::to_string(s) + " m=" + std::to_string(m);
      const mpz_class sa = pow_big(mpz_class(s), fv.lemma_exponent);
      c.expect(mpz_divisible_p(fact.get_mpz_t(), sa.get_mpz_t()) != 0, repro + " (divides)");
      c.expect(analytic_floor_holds(fv), repro + " (analytic floor)");
      c.expect(fv.lemma_exponent <= fv.max_exponent, repro + " (lemma <= max)");
      c.expect(mpz_divisible_p(fact.get_mpz_t(), pow_big(mpz_class(s), fv.max_exponent + 1).get_mpz_t()) == 0,
               repro + " (max is maximal)");
      if (is_prime(s)) {
        c.expect(fv.lemma_exponent == fv.max_exponent &&
                     fv.lemma_exponent * (s - 1) == m - digitsum(m, s),
                 repro + " (prime s identity)");
      }
    }
  }
  c.detail("s in [2,30], m in [0," + std::to_string(g.valuation_m) + "]");
  return c.finish();
}

PropertyResult check_digit_sum(const Grid& g) {
  Check c("digit_sum_identity");
  for (u64 s = 2; s <= 30 && c.ok(); ++s) {
    for (u64 m = 0; m <= g.digit_m && c.ok(); ++m) {
      u64 floor_sum = 0;
      for (u64 q = m / s; q > 0; q /= s) floor_sum += q;
      c.expect(floor_sum * (s - 1) == m - digitsum(m, s),
               "s=" + std::to_string(s) + " m=" + std::to_string(m));
    }
  }
  c.detail("s in [2,30], m in [0," + std::to_string(g.digit_m) + "]");
  return c.finish();
}

PropertyResult check_legendre_upper(const Grid& g) {
  Check c("legendre_at_most_m_over_p_minus_1");
  for (u64 p : sieve(30).primes) {
    for (u64 m = 0; m <= g.valuation_m && c.ok(); ++m) {
      c.expect(legendre_valuation(p, m) * (p - 1) <= m,
               "p=" + std::to_string(p) + " m=" + std::to_string(m));
    }
  }
  return c.finish();
}

// ---- progression ---------------------------------------------------------

PropertyResult check_lemma_l1(const Grid& g) {
  Check c("lemma_c_divides_l");
  std::size_t points = 0;
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= g.lemma_n && c.ok(); ++n) {
      const auto lcms = tail_lcms(prog, n);
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        try {
          const auto d = decompose(prog, n, k, lcms[k]);
          c.expect(sgn(d.a) > 0 && d.c * mpq_class(d.a) == mpq_class(lcms[k]), tuple(u0, r, n, k));
        } catch (const IntegrityError&) {
          c.fail(tuple(u0, r, n, k));
        }
        ++points;
      }
    }
  }
  c.detail(std::to_string(points) + " points");
  return c.finish();
}

PropertyResult check_c_denominator(const Grid& g) {
  Check c("c_denominator_r_smooth");
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= g.lemma_n && c.ok(); ++n) {
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        const mpq_class cv = c_value(prog, n, k);
        c.expect(coprime_part(mpz_class(cv.get_den()), r) == 1, tuple(u0, r, n, k));
      }
    }
  }
  return c.finish();
}

// Informational: A_{n,k} may carry primes outside r, so this never fails.
PropertyResult check_a_prime_support(const Grid& g) {
  Check c("a_prime_support_finding");
  std::size_t total = 0, outside = 0;
  std::string first;
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= g.lemma_n; ++n) {
      const auto lcms = tail_lcms(prog, n);
      for (u64 k = 0; k <= n; ++k) {
        const auto d = decompose(prog, n, k, lcms[k]);
        ++total;
        if (coprime_part(d.a, r) != 1) {
          if (first.empty()) first = tuple(u0, r, n, k) + " A=" + d.a.get_str();
          ++outside;
        }
      }
    }
  }
  c.detail(std::to_string(outside) + "/" + std::to_string(total) +
           " points have A with a prime not dividing r" + (first.empty() ? "" : "; first: " + first));
  return c.finish();
}

PropertyResult check_a_smooth_factorial(const Grid& g) {
  Check c("a_divisible_by_r_smooth_factorial");
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r)) {
    const Progression prog(u0, r);
    for (u64 n = 1; n <= g.lemma_n && c.ok(); ++n) {
      const auto lcms = tail_lcms(prog, n);
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        const mpz_class a = decompose(prog, n, k, lcms[k]).a;
        const mpz_class smooth = smooth_part_of_factorial(n - k, r);
        c.expect(mpz_divisible_p(a.get_mpz_t(), smooth.get_mpz_t()) != 0, tuple(u0, r, n, k));
      }
    }
  }
  return c.finish();
}

PropertyResult check_lcm_growth(const Grid& g) {
  Check c("lcm_tail_divides_next");
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r)) {
    const Progression prog(u0, r);
    auto prev = tail_lcms(prog, 0);
    for (u64 n = 1; n <= g.lemma_n && c.ok(); ++n) {
      auto cur = tail_lcms(prog, n);
      for (u64 k = 0; k < n && c.ok(); ++k) {
        c.expect(mpz_divisible_p(cur[k].get_mpz_t(), prev[k].get_mpz_t()) != 0, tuple(u0, r, n - 1, k));
      }
      prev = std::move(cur);
    }
  }
  return c.finish();
}

// ---- bounds --------------------------------------------------------------

PropertyResult check_bound_validity(const Grid& g, const MultiPrimeFn& multi) {
  Check c("bound_validity");
  std::size_t verdicts = 0;
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.bound_n && c.ok(); ++n) {
      const mpz_class lcm = exact_lcm(prog, n, 0).value;
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        c.expect(leq(multi(prog, n, k), lcm), tuple(u0, r, n, k) + " multi_prime");
        ++verdicts;
        if (r < 2) continue;
        c.expect(leq(bound_single_r(prog, n, k), lcm), tuple(u0, r, n, k) + " single_r");
        c.expect(leq(bound_binomial(prog, n, k), lcm), tuple(u0, r, n, k) + " binomial_printed");
        c.expect(leq(bound_binomial_corrected(prog, n, k), lcm), tuple(u0, r, n, k) + " binomial_corrected");
        verdicts += 3;
      }
    }
  }
  c.detail(std::to_string(verdicts) + " exact verdicts");
  return c.finish();
}

PropertyResult check_equality_witness(const MultiPrimeFn& multi) {
  Check c("equality_witness_1155");
  const Progression prog(3, 4);
  c.expect(exact_compare(multi(prog, 3, 0), mpz_class(1155)) == std::strong_ordering::equal &&
               exact_lcm(prog, 3, 0).value == 1155,
           tuple(3, 4, 3, 0));
  return c.finish();
}

PropertyResult check_prime_agreement(const Grid& g, const MultiPrimeFn& multi) {
  Check c("prime_r_agreement");
  for (u64 r : {2, 3, 5}) {
    for (u64 u0 = 1; u0 <= g.max_u0; ++u0) {
      if (std::gcd(u0, r) != 1) continue;
      const Progression prog(u0, r);
      for (u64 n = 0; n <= g.bound_n && c.ok(); ++n) {
        for (u64 k = 0; k <= n && c.ok(); ++k) {
          c.expect(exact_compare(multi(prog, n, k), bound_single_r(prog, n, k)) ==
                       std::strong_ordering::equal,
                   tuple(u0, r, n, k));
        }
      }
    }
  }
  return c.finish();
}

PropertyResult check_dominance(const Grid& g, const MultiPrimeFn& multi) {
  Check c("multi_prime_dominates_composite_r");
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    if (is_prime(r)) continue;
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.bound_n && c.ok(); ++n) {
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        c.expect(exact_compare(multi(prog, n, k), bound_single_r(prog, n, k)) !=
                     std::strong_ordering::less,
                 tuple(u0, r, n, k));
      }
    }
  }
  return c.finish();
}

PropertyResult check_unimodal_and_kstar(const Grid& g) {
  Check c("k_star_accuracy_and_unimodality");
  std::size_t exact_hits = 0, total = 0;
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.bound_n && c.ok(); ++n) {
      const auto seq = bound_sequence(Variant::single_r, prog, n);
      for (u64 k = 1; k + 1 <= n && c.ok(); ++k) {
        const bool strict_min = exact_compare(seq[k], seq[k - 1]) == std::strong_ordering::less &&
                                exact_compare(seq[k], seq[k + 1]) == std::strong_ordering::less;
        c.expect(!strict_min, tuple(u0, r, n, k) + " interior strict minimum");
      }
      const u64 ks = k_star(prog, n);
      const u64 ka = k_argmax(prog, n, Variant::single_r);
      c.expect((ks > ka ? ks - ka : ka - ks) <= 1,
               tuple(u0, r, n) + " k_star=" + std::to_string(ks) + " k_argmax=" + std::to_string(ka));
      exact_hits += ks == ka;
      ++total;
    }
  }
  c.detail("k_star == k_argmax at " + std::to_string(exact_hits) + "/" + std::to_string(total));
  return c.finish();
}

PropertyResult check_factor_growth() {
  Check c("per_prime_factor_at_least_one");
  for (u64 p : sieve(13).primes) {
    for (u64 m = p - 1; m <= 200 && c.ok(); ++m) {
      // p^{m/(p-1)} >= m+1  <=>  p^m >= (m+1)^{p-1}
      c.expect(pow_big(mpz_class(p), m) >= pow_big(mpz_class(m + 1), p - 1),
               "p=" + std::to_string(p) + " m=" + std::to_string(m));
    }
  }
  return c.finish();
}

PropertyResult check_cor33(const Grid& g) {
  Check c("binomial_printed_equals_single_r_over_r");
  std::size_t equal_plain = 0, equal_over_r = 0;
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.bound_n && c.ok(); ++n) {
      for (u64 k = 0; k <= n && c.ok(); ++k) {
        const BoundValue printed = bound_binomial(prog, n, k);
        const BoundValue single = bound_single_r(prog, n, k);
        const bool over_r = exact_compare(printed.scaled(mpq_class(mpz_class(r))), single) ==
                            std::strong_ordering::equal;
        equal_over_r += over_r;
        equal_plain += exact_compare(printed, single) == std::strong_ordering::equal;
        c.expect(over_r, tuple(u0, r, n, k));
      }
    }
  }
  c.detail("printed = single_r/r at " + std::to_string(equal_over_r) + " points, = single_r at " +
           std::to_string(equal_plain));
  return c.finish();
}

PropertyResult check_tan_hong(const Grid& g) {
  Check c("new_bound_beats_tan_hong");
  c.expect(bound_tan_hong_optimized(Progression(1, 2), 12).exact_rational() == mpq_class(4251528),
           tuple(1, 2, 12) + " value");
  std::ostringstream os;
  for (u64 r : {2, 3}) {
    const Progression prog(1, r);
    const u64 n = g.th_n;
    const u64 ks = k_star(prog, n);
    const BoundValue best = bound_multi_prime(prog, n, ks);
    const BoundValue th = bound_tan_hong_optimized(prog, n);
    c.expect(exact_compare(best, th) == std::strong_ordering::greater, tuple(1, r, n));
    os << "r=" << r << ": " << format_real(best.log_value) << " vs " << format_real(th.log_value) << "; ";
  }
  c.detail(os.str());
  return c.finish();
}

// ---- asymptotics ---------------------------------------------------------

PropertyResult check_step2(const Grid& g, u64 cap) {
  Check c("step2_exact_reconstruction");
  const std::vector<std::pair<u64, u64>> pairs{{1, 2}, {1, 3}, {2, 3}, {3, 4}, {9, 2}};
  std::size_t exact_points = 0;
  u64 top = 0;
  for (auto [u0, r] : pairs) top = std::max(top, u0 + g.step2_n * r);
  const MangoldtSieve sv(top, cap);
  for (auto [u0, r] : pairs) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.step2_n && c.ok(); ++n) {
      const mpz_class lcm = exact_lcm(prog, n, 0).value;
      c.expect(log_lcm_via_mangoldt(prog, n, sv).reconstruction == lcm, tuple(u0, r, n) + " step1");
      if (!step2_exactness(prog, lcm)) continue;
      ++exact_points;
      c.expect(step2_sum(prog, n, sv).reconstruction == lcm, tuple(u0, r, n) + " step2");
    }
  }
  c.detail(std::to_string(exact_points) + " points with the exactness condition");
  return c.finish();
}

PropertyResult check_step3_step4() {
  Check c("step3_equals_step4_prime_r");
  for (u64 r : sieve(60).primes) {
    c.expect(step3_coefficient(r) == step4_coefficient(r), "r=" + std::to_string(r));
  }
  return c.finish();
}

PropertyResult check_convergence(const Grid& g) {
  Check c("log_lcm_over_step3_converges");
  std::ostringstream os;
  for (u64 r : {2, 3}) {
    const Progression prog(1, r);
    auto deviation = [&](u64 n) {
      return std::fabs(static_cast<double>(log_big(exact_lcm(prog, n, 0).value)) /
                           step3_main_term(prog, n) - 1.0);
    };
    const double lo = deviation(g.conv_lo);
    const double hi = deviation(g.conv_hi);
    c.expect(hi < 0.10 && hi < lo, "r=" + std::to_string(r));
    os << "r=" << r << ": " << format_real(lo) << " -> " << format_real(hi) << "; ";
  }
  c.detail(os.str());
  return c.finish();
}

PropertyResult check_stirling(const Grid& g) {
  Check c("stirling_identities");
  c.expect(std::fabs(exppart_per_n_log(2) - std::log(5.0)) < 1e-9, "exppart r=2");
  for (auto [u0, r] : coprime_grid(g.max_u0, g.max_r, 2)) {
    const Progression prog(u0, r);
    for (u64 n = 0; n <= g.ktilde_n && c.ok(); n += (n < 100 ? 1 : 37)) {
      try {
        const auto sp = stirling_params(prog, n);
        const long double k_tilde = std::max(0.0L, sp.k_tilde);  // k* is clamped at 0
        const u64 ks = k_star(prog, n);
        c.expect(std::fabs(k_tilde - static_cast<long double>(ks)) <= 3.0L, tuple(u0, r, n) + " |k~ - k*|");
      } catch (const IntegrityError&) {
        c.fail(tuple(u0, r, n) + " relation");
      }
    }
  }
  std::ostringstream os;
  for (u64 r : {2, 3}) {
    const Progression prog(1, r);
    const u64 n = g.conv_hi;
    const auto sp = stirling_params(prog, n);
    const u64 k = static_cast<u64>(std::llround(sp.k_tilde));
    const double diff = bound_binomial(prog, n, k).log_value - stirling_log_bound(prog, n);
    c.expect(std::fabs(diff) < 0.05, tuple(1, r, n) + " Stirling accuracy");
    os << "r=" << r << " diff " << format_real(diff) << "; ";
  }
  c.detail(os.str());
  return c.finish();
}

PropertyResult check_sharpness(const Grid& g) {
  Check c("sharpness_large_u0");
  for (u64 n = 2; n <= g.sharp_n && c.ok(); ++n) {
    const mpz_class u0 = coprime_part(lcm_up_to(n), 2);
    const Progression prog(u0.get_ui(), 2);
    const mpz_class a = a_value(prog, n, 0);
    c.expect(a == smooth_part_of_factorial(n, 2), tuple(u0.get_ui(), 2, n) + " A");
    const mpz_class lcm = exact_lcm(prog, n, 0).value;
    // L_n <= (n+1) * bound
    c.expect(exact_compare(bound_large_u0_corrected(prog, n).scaled(mpq_class(mpz_class(n + 1))), lcm) !=
                 std::strong_ordering::less,
             tuple(u0.get_ui(), 2, n) + " ratio");
  }
  return c.finish();
}

PropertyResult check_gamma_gap(const Grid& g, u64 cap) {
  Check c("gamma_gap");
  const double coeff_gap = linear_term_coefficient(101) - std::log(101.0) - static_cast<double>(kEulerGamma);
  c.expect(coeff_gap > 0 && coeff_gap < 0.10, "r=101 coefficient gap");
  std::ostringstream os;
  os << "r=101: " << format_real(coeff_gap);
  const Progression prog(1, 2);
  const u64 n = g.conv_hi == 5000 ? 2000 : 1000;
  const MangoldtSieve sv(prog.term(static_cast<std::int64_t>(n)).get_ui(), cap);
  const auto rep = gamma_gap_report(prog, n, sv);
  const double target = 2.0 - std::log(5.0);
  c.expect(rep.gap_per_n && std::fabs(*rep.gap_per_n - target) < 0.02, tuple(1, 2, n) + " gap_per_n");
  os << "; r=2 n=" << n << " gap " << (rep.gap_per_n ? format_real(*rep.gap_per_n) : "n/a");
  c.detail(os.str());
  return c.finish();
}

}  // namespace

std::vector<PropertyResult> run_verify(const VerifyOptions& options) {
  const Grid g = grid_for(options.quick);
  const MultiPrimeFn& multi = options.multi_prime;
  // Each job builds its own Check; a thrown exception is reported under its index.
  std::vector<std::function<PropertyResult()>> jobs{
      [&] { return check_sieve(g); },
      [&] { return check_factorize(g); },
      [&] { return check_factorial_valuation(g); },
      [&] { return check_digit_sum(g); },
      [&] { return check_legendre_upper(g); },
      [&] { return check_lemma_l1(g); },
      [&] { return check_c_denominator(g); },
      [&] { return check_a_prime_support(g); },
      [&] { return check_a_smooth_factorial(g); },
      [&] { return check_lcm_growth(g); },
      [&] { return check_bound_validity(g, multi); },
      [&] { return check_equality_witness(multi); },
      [&] { return check_prime_agreement(g, multi); },
      [&] { return check_dominance(g, multi); },
      [&] { return check_unimodal_and_kstar(g); },
      [&] { return check_factor_growth(); },
      [&] { return check_cor33(g); },
      [&] { return check_tan_hong(g); },
      [&] { return check_step2(g, options.sieve_cap); },
      [&] { return check_step3_step4(); },
      [&] { return check_convergence(g); },
      [&] { return check_stirling(g); },
      [&] { return check_sharpness(g); },
      [&] { return check_gamma_gap(g, options.sieve_cap); },
  };
  std::vector<PropertyResult> results;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    PropertyResult res;
    try {
      res = jobs[i]();
    } catch (const std::exception& e) {
      res.name = "property_" + std::to_string(i);
      res.passed = false;
      res.repro = std::string("exception: ") + e.what();
    }
    if (options.on_result) options.on_result(res);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace lcmb
