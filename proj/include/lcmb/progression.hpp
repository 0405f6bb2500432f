#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "lcmb/number_theory.hpp"

namespace lcmb {

/// The arithmetic progression u_k = u0 + k*r with gcd(u0, r) = 1.
class Progression {
 public:
  /// Throws DomainError unless u0 >= 1, r >= 1 and gcd(u0, r) = 1.
  Progression(u64 u0, u64 r);

  u64 u0() const { return u0_; }
  u64 r() const { return r_; }

  /// u_k; k = -1 is allowed and gives u0 - r, which may be <= 0.
  mpz_class term(std::int64_t k) const;

  friend bool operator==(const Progression&, const Progression&) = default;

 private:
  u64 u0_;
  u64 r_;
};

/// L_{n,k} = lcm(u_k, ..., u_n).
struct ExactLcm {
  Progression progression;
  u64 n;
  u64 k;
  mpz_class value;
};

/// L_{n,k} = A_{n,k} * C_{n,k}.
struct QuotientDecomposition {
  mpq_class c;
  mpz_class a;
};

/// Left fold of pairwise lcm over u_k..u_n. Throws DomainError if k > n.
ExactLcm exact_lcm(const Progression& prog, u64 n, u64 k);

/// L_{n,k} for every k in [0, n], index k. One right-to-left pass.
std::vector<mpz_class> tail_lcms(const Progression& prog, u64 n);

/// C_{n,k} = u_k...u_n / (n-k)!, reduced.
mpq_class c_value(const Progression& prog, u64 n, u64 k);

/// A_{n,k} = L_{n,k} / C_{n,k}. Throws IntegrityError if the quotient is not an integer.
mpz_class a_value(const Progression& prog, u64 n, u64 k);

QuotientDecomposition decompose(const Progression& prog, u64 n, u64 k);

/// Same as decompose() but reuses a precomputed L_{n,k}.
QuotientDecomposition decompose(const Progression& prog, u64 n, u64 k, const mpz_class& lcm_nk);

}  // namespace lcmb
