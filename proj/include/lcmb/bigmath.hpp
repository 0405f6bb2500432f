#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace lcmb {

/// Natural log of a positive big integer from its top 64 bits and bit length,
/// evaluated in long double. Relative error is around 1e-19 regardless of size.
long double log_big(const mpz_class& x);

/// log(num) - log(den) for a positive rational.
long double log_big(const mpq_class& x);

/// base^exponent for a non-negative integer exponent.
mpz_class pow_big(const mpz_class& base, unsigned long exponent);
mpq_class pow_big(const mpq_class& base, unsigned long exponent);

/// Balanced product of all factors; 1 for an empty list.
mpz_class product_tree(std::vector<mpz_class> factors);

/// Total bits of numerator and denominator.
std::size_t bit_size(const mpq_class& x);

/// "%.12g" rendering used in every report.
std::string format_real(double x);

}  // namespace lcmb
