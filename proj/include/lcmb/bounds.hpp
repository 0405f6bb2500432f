#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "lcmb/progression.hpp"

namespace lcmb {

/// Largest intermediate (in bits) exact_compare may build before refusing.
inline constexpr std::size_t kDefaultBitBudget = std::size_t{1} << 28;

/// value = mantissa * base^exponent, with a natural-log mirror for reporting.
/// Exponents are rational so roots like r^{1/(r-1)} stay exact.
struct BoundValue {
  mpq_class mantissa{1};
  mpz_class base{1};
  mpq_class exponent{0};
  double log_value = 0.0;

  /// Canonicalizes and fills log_value.
  static BoundValue make(mpq_class mantissa, mpz_class base, mpq_class exponent);

  BoundValue scaled(const mpq_class& factor) const;

  /// The exact value when the exponent is an integer.
  std::optional<mpq_class> exact_rational() const;

  /// Full integer when integral, otherwise "mantissa*base^(p/q)".
  std::string to_string() const;
};

enum class Variant {
  multi_prime,         // product over primes p | r
  single_r,            // single factor r^{(n-k)/(r-1)}
  binomial_printed,    // r^{(n-k)r/(r-1)} * binom(u_{k-1}/r + n-k+1, n-k+1)
  binomial_corrected,  // r * binomial_printed
  tan_hong_optimized,  // prior bound with a = r, l = r+1
};

inline constexpr std::array<Variant, 4> kNewVariants = {
    Variant::multi_prime, Variant::single_r, Variant::binomial_printed,
    Variant::binomial_corrected};

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Falling-factorial binomial prod_{j=1..m} (x - m + j) / j for rational x.
mpq_class generalized_binomial(const mpq_class& top, u64 bottom);

BoundValue bound_multi_prime(const Progression& prog, u64 n, u64 k);

/// Throws DomainError for r = 1.
BoundValue bound_single_r(const Progression& prog, u64 n, u64 k);
BoundValue bound_binomial(const Progression& prog, u64 n, u64 k);
BoundValue bound_binomial_corrected(const Progression& prog, u64 n, u64 k);

/// Dispatch by variant. tan_hong_optimized ignores k.
BoundValue evaluate(Variant v, const Progression& prog, u64 n, u64 k);

/// The variant at every k in [0, n] (index k), built incrementally.
std::vector<BoundValue> bound_sequence(Variant v, const Progression& prog, u64 n);

/// Closed-form optimal k for the binomial bound. r >= 2.
u64 k_star(const Progression& prog, u64 n);

/// Exhaustive argmax over k in [0, n] under exact comparison, ties to smaller k.
u64 k_argmax(const Progression& prog, u64 n, Variant v);

BoundValue bound_large_u0(const Progression& prog, u64 n);
BoundValue bound_large_u0_corrected(const Progression& prog, u64 n);

struct TanHongParams {
  u64 a = 2;
  u64 ell = 2;
  u64 alpha = 2;
};

/// u0 * r^{(l-1)alpha + a - l} * (r+1)^n. Throws HypothesisError unless
/// a, l >= 2, alpha >= a, r >= max(a, l-1), n >= l*alpha*r.
BoundValue bound_tan_hong(const Progression& prog, u64 n, const TanHongParams& params);

/// a = r, l = r+1, alpha = floor(n/(r(r+1))). Needs n >= r^2(r+1).
BoundValue bound_tan_hong_optimized(const Progression& prog, u64 n);

/// Exact ordering of b against m; raises both sides to the exponent's
/// denominator so no rounding enters. Throws ResourceError past bit_budget.
std::strong_ordering exact_compare(const BoundValue& b, const mpz_class& m,
                                   std::size_t bit_budget = kDefaultBitBudget);
std::strong_ordering exact_compare(const BoundValue& a, const BoundValue& b,
                                   std::size_t bit_budget = kDefaultBitBudget);

struct VariantRecord {
  Variant variant;
  std::optional<u64> k;               // absent for Tan-Hong
  std::optional<BoundValue> value;    // absent when the variant does not apply
  std::optional<bool> valid;          // value <= L_n, decided exactly
  std::string error;
};

struct BoundReport {
  Progression progression;
  u64 n = 0;
  mpz_class lcm;
  std::optional<u64> k_star;
  std::optional<u64> k_argmax;  // of single_r, or multi_prime when r = 1
  std::vector<VariantRecord> records;
  std::optional<std::size_t> best;  // index into records
  std::optional<double> sharpness_ratio;  // L_n / best bound

  bool all_valid() const;
};

BoundReport full_report(const Progression& prog, u64 n);

}  // namespace lcmb
