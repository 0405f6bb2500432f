#include "lcmb/progression.hpp"

#include <numeric>
#include <string>

#include "lcmb/errors.hpp"

namespace lcmb {

namespace {

void require_k_le_n(u64 n, u64 k) {
  if (k > n) {
    throw DomainError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
}

mpz_class to_mpz(u64 v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
  return z;
}

}  // namespace

Progression::Progression(u64 u0, u64 r) : u0_(u0), r_(r) {
  if (u0 == 0 || r == 0) throw DomainError("progression requires u0 >= 1 and r >= 1");
  if (std::gcd(u0, r) != 1) {
    throw DomainError("gcd(u0, r) = gcd(" + std::to_string(u0) + ", " + std::to_string(r) +
                      ") != 1");
  }
}

mpz_class Progression::term(std::int64_t k) const {
  mpz_class step = to_mpz(r_);
  if (k >= 0) {
    step *= static_cast<unsigned long>(k);
    return to_mpz(u0_) + step;
  }
  step *= static_cast<unsigned long>(-k);
  return to_mpz(u0_) - step;
}

ExactLcm exact_lcm(const Progression& prog, u64 n, u64 k) {
  require_k_le_n(n, k);
  mpz_class value = prog.term(static_cast<std::int64_t>(k));
  for (u64 j = k + 1; j <= n; ++j) {
    const mpz_class u = prog.term(static_cast<std::int64_t>(j));
    mpz_lcm(value.get_mpz_t(), value.get_mpz_t(), u.get_mpz_t());
  }
  return {prog, n, k, value};
}

std::vector<mpz_class> tail_lcms(const Progression& prog, u64 n) {
  std::vector<mpz_class> out(n + 1);
  out[n] = prog.term(static_cast<std::int64_t>(n));
  for (u64 j = n; j-- > 0;) {
    const mpz_class u = prog.term(static_cast<std::int64_t>(j));
    mpz_lcm(out[j].get_mpz_t(), out[j + 1].get_mpz_t(), u.get_mpz_t());
  }
  return out;
}

mpq_class c_value(const Progression& prog, u64 n, u64 k) {
  require_k_le_n(n, k);
  mpz_class product = 1;
  for (u64 j = k; j <= n; ++j) product *= prog.term(static_cast<std::int64_t>(j));
  mpq_class c(product, factorial(n - k));
  c.canonicalize();
  return c;
}

QuotientDecomposition decompose(const Progression& prog, u64 n, u64 k, const mpz_class& lcm_nk) {
  QuotientDecomposition d;
  d.c = c_value(prog, n, k);
  const mpq_class quotient = mpq_class(lcm_nk) / d.c;
  if (quotient.get_den() != 1) {
    throw IntegrityError("A_{n,k} is not an integer for u0=" + std::to_string(prog.u0()) +
                         " r=" + std::to_string(prog.r()) + " n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
  }
  d.a = quotient.get_num();
  return d;
}

QuotientDecomposition decompose(const Progression& prog, u64 n, u64 k) {
  return decompose(prog, n, k, exact_lcm(prog, n, k).value);
}

mpz_class a_value(const Progression& prog, u64 n, u64 k) { return decompose(prog, n, k).a; }

}  // namespace lcmb
