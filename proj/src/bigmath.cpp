#include "lcmb/bigmath.hpp"

#include <cmath>
#include <cstdio>

#include "lcmb/errors.hpp"

namespace lcmb {

namespace {
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
}

long double log_big(const mpz_class& x) {
  if (sgn(x) <= 0) throw DomainError("log_big: argument must be positive");
  const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  if (bits <= 64) {
    return std::log(static_cast<long double>(mpz_get_ui(x.get_mpz_t())));
  }
  const std::size_t shift = bits - 64;
  mpz_class top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), x.get_mpz_t(), shift);
  return std::log(static_cast<long double>(mpz_get_ui(top.get_mpz_t()))) +
         static_cast<long double>(shift) * kLn2;
}

long double log_big(const mpq_class& x) {
  return log_big(mpz_class(x.get_num())) - log_big(mpz_class(x.get_den()));
}

mpz_class pow_big(const mpz_class& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

mpq_class pow_big(const mpq_class& base, unsigned long exponent) {
  mpq_class out(pow_big(mpz_class(base.get_num()), exponent),
                pow_big(mpz_class(base.get_den()), exponent));
  // num and den of a canonical rational stay coprime under powers
  return out;
}

mpz_class product_tree(std::vector<mpz_class> factors) {
  if (factors.empty()) return 1;
  while (factors.size() > 1) {
    std::vector<mpz_class> next;
    next.reserve((factors.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(factors[i] * factors[i + 1]);
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return factors.front();
}

std::size_t bit_size(const mpq_class& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace lcmb
