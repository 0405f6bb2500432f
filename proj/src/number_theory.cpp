#include "lcmb/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lcmb/errors.hpp"

namespace lcmb {

bool PrimeTable::contains(u64 p) const {
  return std::binary_search(primes.begin(), primes.end(), p);
}

PrimeTable sieve(u64 limit, u64 max_limit) {
  if (limit > max_limit) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds maximum " +
                        std::to_string(max_limit));
  }
  PrimeTable table;
  table.limit = limit;
  if (limit < 2) return table;

  // odd-only bitmap: index i represents 2i+1
  std::vector<bool> composite(limit / 2 + 1, false);
  table.primes.push_back(2);
  for (u64 i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    table.primes.push_back(p);
    for (u64 q = p * p; q <= limit; q += 2 * p) composite[q / 2] = true;
  }
  return table;
}

bool is_prime(u64 m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  if (m % 3 == 0) return m == 3;
  for (u64 d = 5; d <= m / d; d += 6) {
    if (m % d == 0 || m % (d + 2) == 0) return false;
  }
  return true;
}

u64 Factorization::multiply_back() const {
  u64 value = 1;
  for (const auto& f : factors) {
    for (unsigned e = 0; e < f.exponent; ++e) value *= f.prime;
  }
  return value;
}

std::vector<u64> Factorization::primes() const {
  std::vector<u64> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

namespace {

// Divides out d completely, recording it if it occurs.
void strip(u64& rest, u64 d, Factorization& out) {
  if (rest % d != 0) return;
  PrimePower pp{d, 0};
  while (rest % d == 0) {
    rest /= d;
    ++pp.exponent;
  }
  out.factors.push_back(pp);
}

}  // namespace

Factorization factorize(u64 m) {
  Factorization out;
  out.base = m;
  if (m <= 1) return out;
  u64 rest = m;
  strip(rest, 2, out);
  strip(rest, 3, out);
  for (u64 d = 5; d <= rest / d; d += 6) {
    strip(rest, d, out);
    strip(rest, d + 2, out);
  }
  if (rest > 1) out.factors.push_back({rest, 1});
  return out;
}

Factorization factorize(u64 m, const PrimeTable& table) {
  Factorization out;
  out.base = m;
  if (m <= 1) return out;
  u64 rest = m;
  bool covered = false;
  for (u64 p : table.primes) {
    if (p > rest / p) {
      covered = true;
      break;
    }
    strip(rest, p, out);
  }
  if (!covered) {
    // table ran out below sqrt(rest)
    u64 d = table.primes.empty() ? 2 : table.primes.back() + 1;
    if (d == 2) {
      strip(rest, 2, out);
      d = 3;
    }
    if (d % 2 == 0) ++d;
    for (; d <= rest / d; d += 2) strip(rest, d, out);
  }
  if (rest > 1) out.factors.push_back({rest, 1});
  return out;
}

u64 legendre_valuation(u64 p, u64 m) {
  if (!is_prime(p)) throw DomainError("legendre_valuation: " + std::to_string(p) + " is not prime");
  u64 total = 0;
  for (u64 q = m / p; q > 0; q /= p) total += q;
  return total;
}

u64 digitsum(u64 m, u64 s) {
  if (s < 2) throw DomainError("digitsum: base must be >= 2");
  u64 total = 0;
  for (; m > 0; m /= s) total += m % s;
  return total;
}

FactorialValuation factorial_valuation(u64 s, u64 m) {
  if (s < 2) throw DomainError("factorial_valuation: s must be >= 2, got " + std::to_string(s));
  FactorialValuation fv;
  fv.s = s;
  fv.m = m;
  for (u64 q = m / s; q > 0; q /= s) fv.lemma_exponent += q;

  bool first = true;
  for (const auto& [p, e] : factorize(s).factors) {
    const u64 a = legendre_valuation(p, m) / e;
    fv.max_exponent = first ? a : std::min(fv.max_exponent, a);
    first = false;
  }
  fv.analytic_floor = static_cast<double>(m) / static_cast<double>(s - 1) -
                      std::log(static_cast<double>(m) + 1.0) / std::log(static_cast<double>(s));
  return fv;
}

bool analytic_floor_holds(const FactorialValuation& fv) {
  const mpz_class slack = mpz_class(fv.m) - mpz_class(fv.s - 1) * fv.lemma_exponent;
  if (sgn(slack) <= 0) return true;
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), fv.s, slack.get_ui());
  mpz_ui_pow_ui(rhs.get_mpz_t(), fv.m + 1, fv.s - 1);
  return lhs <= rhs;
}

double MangoldtValue::value() const {
  return is_zero() ? 0.0 : std::log(static_cast<double>(prime));
}

MangoldtValue von_mangoldt(u64 d) {
  if (d < 2) return {};
  const auto f = factorize(d);
  if (f.factors.size() != 1) return {};
  return {f.factors.front().prime, f.factors.front().exponent};
}

u64 euler_phi(u64 r) {
  u64 phi = r;
  for (const auto& f : factorize(r).factors) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

u64 mod_inverse(u64 a, u64 r) {
  if (r < 2) throw DomainError("mod_inverse: modulus must be >= 2");
  using i128 = __int128;
  i128 old_r = static_cast<i128>(a % r), cur_r = r;
  i128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const i128 q = old_r / cur_r;
    old_r -= q * cur_r;
    std::swap(old_r, cur_r);
    old_s -= q * cur_s;
    std::swap(old_s, cur_s);
  }
  if (old_r != 1) {
    throw DomainError("mod_inverse: gcd(" + std::to_string(a) + ", " + std::to_string(r) +
                      ") != 1");
  }
  i128 inv = old_s % static_cast<i128>(r);
  if (inv < 0) inv += r;
  return static_cast<u64>(inv);
}

mpq_class harmonic(u64 m) {
  mpq_class h = 0;
  for (u64 j = 1; j <= m; ++j) h += mpq_class(1, j);
  return h;
}

mpz_class coprime_part(const mpz_class& m, u64 r) {
  mpz_class out = m;
  for (const auto& f : factorize(r).factors) {
    const mpz_class p = f.prime;
    while (out != 0 && mpz_divisible_p(out.get_mpz_t(), p.get_mpz_t())) out /= p;
  }
  return out;
}

mpz_class smooth_part_of_factorial(u64 m, u64 r) {
  mpz_class out = 1;
  for (const auto& f : factorize(r).factors) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), f.prime, legendre_valuation(f.prime, m));
    out *= pk;
  }
  return out;
}

mpz_class factorial(u64 m) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), m);
  return out;
}

mpz_class lcm_up_to(u64 n) {
  mpz_class out = 1;
  for (u64 j = 2; j <= n; ++j) mpz_lcm_ui(out.get_mpz_t(), out.get_mpz_t(), j);
  return out;
}

}  // namespace lcmb
