#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace lcmb {

using u64 = std::uint64_t;

inline constexpr u64 kDefaultSieveMax = 100'000'000;

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;  // strictly increasing, all primes <= limit

  /// Membership test; only meaningful for p <= limit.
  bool contains(u64 p) const;
};

/// Sieve of Eratosthenes. Throws ResourceError when limit > max_limit.
PrimeTable sieve(u64 limit, u64 max_limit = kDefaultSieveMax);

/// Deterministic trial-division primality test.
bool is_prime(u64 m);

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 base = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  u64 multiply_back() const;
  std::vector<u64> primes() const;
};

/// Trial division up to sqrt(m). Inputs in this project are bounded by u_n,
/// so this stays well under a millisecond.
Factorization factorize(u64 m);

/// Same, but divides by the table's primes first.
Factorization factorize(u64 m, const PrimeTable& table);

/// v_p(m!) by Legendre's formula. Throws DomainError if p is not prime.
u64 legendre_valuation(u64 p, u64 m);

/// Exponents of s dividing m!.
struct FactorialValuation {
  u64 s = 2;
  u64 m = 0;
  u64 lemma_exponent = 0;  // sum_i floor(m / s^i)
  u64 max_exponent = 0;    // largest a with s^a | m!
  double analytic_floor = 0.0;  // m/(s-1) - log_s(m+1)
};

/// Throws DomainError for s <= 1.
FactorialValuation factorial_valuation(u64 s, u64 m);

/// lemma_exponent >= m/(s-1) - log_s(m+1), decided in integers:
/// s^{m - (s-1)a} <= (m+1)^{s-1}.
bool analytic_floor_holds(const FactorialValuation& fv);

/// Sum of base-s digits of m. Throws DomainError for s <= 1.
u64 digitsum(u64 m, u64 s);

/// Lambda(d) in exact form: prime == 0 encodes the value 0, otherwise
/// d = prime^exponent and Lambda(d) = log(prime).
struct MangoldtValue {
  u64 prime = 0;
  unsigned exponent = 0;

  bool is_zero() const { return prime == 0; }
  double value() const;

  friend bool operator==(const MangoldtValue&, const MangoldtValue&) = default;
};

MangoldtValue von_mangoldt(u64 d);

u64 euler_phi(u64 r);

/// b in [1, r-1] with a*b = 1 mod r. Throws DomainError when r < 2 or gcd(a, r) != 1.
u64 mod_inverse(u64 a, u64 r);

/// H_m as an exact rational; H_0 = 0.
mpq_class harmonic(u64 m);

/// Largest divisor of m coprime to r.
mpz_class coprime_part(const mpz_class& m, u64 r);

/// Largest divisor of m! whose prime factors all divide r.
mpz_class smooth_part_of_factorial(u64 m, u64 r);

mpz_class factorial(u64 m);

/// lcm(1, ..., n); equals 1 for n = 0.
mpz_class lcm_up_to(u64 n);

}  // namespace lcmb
