#include "lcmb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcmb/bigmath.hpp"
#include "lcmb/errors.hpp"

namespace lcmb {

BoundValue BoundValue::make(mpq_class mantissa, mpz_class base, mpq_class exponent) {
  mantissa.canonicalize();
  exponent.canonicalize();
  BoundValue b;
  b.mantissa = std::move(mantissa);
  b.base = std::move(base);
  b.exponent = std::move(exponent);
  if (sgn(b.mantissa) <= 0 || sgn(b.base) <= 0) {
    b.log_value = std::nan("");
    return b;
  }
  long double lv = log_big(b.mantissa);
  if (b.base != 1 && sgn(b.exponent) != 0) {
    const long double e = static_cast<long double>(mpz_get_d(b.exponent.get_num_mpz_t())) /
                          static_cast<long double>(mpz_get_d(b.exponent.get_den_mpz_t()));
    lv += e * log_big(b.base);
  }
  b.log_value = static_cast<double>(lv);
  return b;
}

BoundValue BoundValue::scaled(const mpq_class& factor) const {
  return make(mantissa * factor, base, exponent);
}

std::optional<mpq_class> BoundValue::exact_rational() const {
  if (exponent.get_den() != 1 || sgn(exponent) < 0) return std::nullopt;
  return mantissa * mpq_class(pow_big(base, mpz_get_ui(exponent.get_num_mpz_t())));
}

std::string BoundValue::to_string() const {
  if (auto v = exact_rational()) return v->get_str();
  return mantissa.get_str() + "*" + base.get_str() + "^(" + exponent.get_str() + ")";
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::multi_prime: return "multi_prime";
    case Variant::single_r: return "single_r";
    case Variant::binomial_printed: return "binomial_printed";
    case Variant::binomial_corrected: return "binomial_corrected";
    case Variant::tan_hong_optimized: return "tan_hong_optimized";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : {Variant::multi_prime, Variant::single_r, Variant::binomial_printed,
                    Variant::binomial_corrected, Variant::tan_hong_optimized}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

mpq_class generalized_binomial(const mpq_class& top, u64 bottom) {
  mpq_class out = 1;
  for (u64 j = 1; j <= bottom; ++j) {
    out *= top - mpq_class(mpz_class(bottom)) + mpq_class(mpz_class(j));
    out /= mpq_class(mpz_class(j));
  }
  return out;
}

namespace {

void require_k_le_n(u64 n, u64 k) {
  if (k > n) throw DomainError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
}

void require_r_ge_2(const Progression& prog, std::string_view what) {
  if (prog.r() < 2) throw DomainError(std::string(what) + " needs r >= 2 (divides by r-1)");
}

// prod_{p | r} p^{m/(p-1)} == base^{m/q} with q = lcm{p-1}.
struct MultiPrimeShape {
  mpz_class base{1};
  u64 q = 1;
  unsigned omega = 0;
};

MultiPrimeShape multi_prime_shape(u64 r) {
  MultiPrimeShape s;
  const auto primes = factorize(r).primes();
  for (u64 p : primes) s.q = std::lcm(s.q, p - 1);
  for (u64 p : primes) s.base *= pow_big(mpz_class(p), s.q / (p - 1));
  s.omega = static_cast<unsigned>(primes.size());
  return s;
}

BoundValue multi_prime_from(const mpz_class& product, const mpz_class& fact, u64 m,
                            const MultiPrimeShape& s) {
  const mpz_class den = fact * pow_big(mpz_class(m + 1), s.omega);
  return BoundValue::make(mpq_class(product, den), s.base, mpq_class(mpz_class(m), mpz_class(s.q)));
}

BoundValue single_r_from(const mpz_class& product, const mpz_class& fact, u64 m, u64 r) {
  return BoundValue::make(mpq_class(product, fact * (m + 1)), mpz_class(r),
                          mpq_class(mpz_class(m), mpz_class(r - 1)));
}

BoundValue binomial_from(const mpq_class& binom, u64 m, u64 r) {
  return BoundValue::make(binom, mpz_class(r), mpq_class(mpz_class(m * r), mpz_class(r - 1)));
}

mpz_class tail_product(const Progression& prog, u64 n, u64 k) {
  std::vector<mpz_class> terms;
  terms.reserve(n - k + 1);
  for (u64 j = k; j <= n; ++j) terms.push_back(prog.term(static_cast<std::int64_t>(j)));
  return product_tree(std::move(terms));
}

}  // namespace

BoundValue bound_multi_prime(const Progression& prog, u64 n, u64 k) {
  require_k_le_n(n, k);
  return multi_prime_from(tail_product(prog, n, k), factorial(n - k), n - k,
                          multi_prime_shape(prog.r()));
}

BoundValue bound_single_r(const Progression& prog, u64 n, u64 k) {
  require_k_le_n(n, k);
  require_r_ge_2(prog, "bound_single_r");
  return single_r_from(tail_product(prog, n, k), factorial(n - k), n - k, prog.r());
}

BoundValue bound_binomial(const Progression& prog, u64 n, u64 k) {
  require_k_le_n(n, k);
  require_r_ge_2(prog, "bound_binomial");
  const u64 r = prog.r();
  const u64 m = n - k + 1;
  const mpq_class top = mpq_class(prog.term(static_cast<std::int64_t>(k) - 1), mpz_class(r)) +
                        mpq_class(mpz_class(m));
  return binomial_from(generalized_binomial(top, m), n - k, r);
}

BoundValue bound_binomial_corrected(const Progression& prog, u64 n, u64 k) {
  return bound_binomial(prog, n, k).scaled(mpq_class(mpz_class(prog.r())));
}

BoundValue evaluate(Variant v, const Progression& prog, u64 n, u64 k) {
  switch (v) {
    case Variant::multi_prime: return bound_multi_prime(prog, n, k);
    case Variant::single_r: return bound_single_r(prog, n, k);
    case Variant::binomial_printed: return bound_binomial(prog, n, k);
    case Variant::binomial_corrected: return bound_binomial_corrected(prog, n, k);
    case Variant::tan_hong_optimized: return bound_tan_hong_optimized(prog, n);
  }
  throw DomainError("unknown variant");
}

std::vector<BoundValue> bound_sequence(Variant v, const Progression& prog, u64 n) {
  const u64 r = prog.r();
  if (v == Variant::tan_hong_optimized) {
    return std::vector<BoundValue>(n + 1, bound_tan_hong_optimized(prog, n));
  }
  if (v != Variant::multi_prime) require_r_ge_2(prog, variant_name(v));

  const MultiPrimeShape shape = multi_prime_shape(r);
  // top of the binomial is u_{k-1}/r + (n-k+1) = u0/r + n for every k
  const mpq_class top = mpq_class(mpz_class(prog.u0()), mpz_class(r)) + mpq_class(mpz_class(n));
  std::vector<BoundValue> out(n + 1);
  mpz_class product = 1;
  mpz_class fact = 1;
  mpq_class binom = 1;
  for (u64 k = n + 1; k-- > 0;) {
    const u64 m = n - k;
    product *= prog.term(static_cast<std::int64_t>(k));
    if (m > 0) fact *= m;
    binom *= (top - mpq_class(mpz_class(m))) / mpq_class(mpz_class(m + 1));
    switch (v) {
      case Variant::multi_prime: out[k] = multi_prime_from(product, fact, m, shape); break;
      case Variant::single_r: out[k] = single_r_from(product, fact, m, r); break;
      case Variant::binomial_printed: out[k] = binomial_from(binom, m, r); break;
      case Variant::binomial_corrected:
        out[k] = binomial_from(binom * mpq_class(mpz_class(r)), m, r);
        break;
      case Variant::tan_hong_optimized: break;
    }
  }
  return out;
}

u64 k_star(const Progression& prog, u64 n) {
  require_r_ge_2(prog, "k_star");
  const u64 r = prog.r();
  const u64 u0 = prog.u0();

  // ceil(x) <= j  <=>  r^{1/(r-1)} (j r + u0) >= n + 1 - j; raise to r-1 to clear the root.
  auto satisfies = [&](u64 j) {
    if (j >= n + 1) return true;
    const mpz_class lhs = mpz_class(r) * pow_big(mpz_class(mpz_class(j) * r + u0), r - 1);
    const mpz_class rhs = pow_big(mpz_class(n + 1 - j), r - 1);
    return lhs >= rhs;
  };

  const long double c = std::pow(static_cast<long double>(r), 1.0L / static_cast<long double>(r - 1));
  const long double x = (static_cast<long double>(n) + 1.0L - static_cast<long double>(u0) * c) /
                        (static_cast<long double>(r) * c + 1.0L);
  u64 j = x <= 0 ? 0 : static_cast<u64>(std::min<long double>(std::ceil(x), static_cast<long double>(n + 1)));
  while (j > 0 && satisfies(j - 1)) --j;
  while (!satisfies(j)) ++j;
  return j;
}

u64 k_argmax(const Progression& prog, u64 n, Variant v) {
  if (v == Variant::tan_hong_optimized) return 0;
  const auto seq = bound_sequence(v, prog, n);
  u64 best = 0;
  for (u64 k = 1; k <= n; ++k) {
    if (exact_compare(seq[k], seq[best]) == std::strong_ordering::greater) best = k;
  }
  return best;
}

BoundValue bound_large_u0(const Progression& prog, u64 n) { return bound_binomial(prog, n, 0); }

BoundValue bound_large_u0_corrected(const Progression& prog, u64 n) {
  return bound_binomial_corrected(prog, n, 0);
}

BoundValue bound_tan_hong(const Progression& prog, u64 n, const TanHongParams& p) {
  const u64 r = prog.r();
  if (p.a < 2 || p.ell < 2) throw HypothesisError("Tan-Hong: a and l must be >= 2");
  if (p.alpha < p.a) throw HypothesisError("Tan-Hong: alpha must be >= a");
  if (r < std::max(p.a, p.ell - 1)) throw HypothesisError("Tan-Hong: r must be >= max(a, l-1)");
  if (n < p.ell * p.alpha * r) throw HypothesisError("Tan-Hong: n must be >= l*alpha*r");
  const u64 r_exp = (p.ell - 1) * p.alpha + p.a - p.ell;
  const mpz_class value = mpz_class(prog.u0()) * pow_big(mpz_class(r), r_exp) *
                          pow_big(mpz_class(r + 1), n);
  return BoundValue::make(mpq_class(value), mpz_class(1), mpq_class(0));
}

BoundValue bound_tan_hong_optimized(const Progression& prog, u64 n) {
  require_r_ge_2(prog, "bound_tan_hong_optimized");
  const u64 r = prog.r();
  if (n < r * r * (r + 1)) {
    throw HypothesisError("Tan-Hong optimized: n = " + std::to_string(n) + " < r^2(r+1) = " +
                          std::to_string(r * r * (r + 1)));
  }
  return bound_tan_hong(prog, n, {r, r + 1, n / (r * (r + 1))});
}

namespace {

void check_budget(std::size_t bits, std::size_t budget) {
  if (bits > budget) {
    throw ResourceError("exact_compare would need ~" + std::to_string(bits) +
                        " bits, budget is " + std::to_string(budget));
  }
}

std::size_t bits_of(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

// mantissa^q * base^p as an exact rational, after a budget check.
mpq_class raise(const mpq_class& mantissa, const mpz_class& base, unsigned long q, unsigned long p,
                std::size_t budget) {
  check_budget(q * bit_size(mantissa) + p * bits_of(base), budget);
  mpq_class out = pow_big(mantissa, q);
  if (p > 0 && base != 1) out *= mpq_class(pow_big(base, p));
  return out;
}

std::strong_ordering to_ordering(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering exact_compare(const BoundValue& b, const mpz_class& m, std::size_t budget) {
  const int sb = sgn(b.mantissa);
  const int sm = sgn(m);
  if (sb <= 0 || sm <= 0) {
    if (sb <= 0 && sm <= 0 && (sb != 0 || sm != 0)) {
      throw DomainError("exact_compare: both sides non-positive");
    }
    return to_ordering(sb - sm);
  }
  const unsigned long q = mpz_get_ui(b.exponent.get_den_mpz_t());
  const mpz_class& p_signed = b.exponent.get_num();
  const unsigned long p = mpz_get_ui(mpz_class(abs(p_signed)).get_mpz_t());
  if (sgn(p_signed) >= 0) {
    const mpq_class lhs = raise(b.mantissa, b.base, q, p, budget);
    check_budget(q * bits_of(m), budget);
    return to_ordering(cmp(lhs, mpq_class(pow_big(m, q))));
  }
  const mpq_class lhs = pow_big(b.mantissa, q);
  const mpq_class rhs = raise(mpq_class(m), b.base, q, p, budget);
  return to_ordering(cmp(lhs, rhs));
}

std::strong_ordering exact_compare(const BoundValue& a, const BoundValue& b, std::size_t budget) {
  const int sa = sgn(a.mantissa);
  const int sb = sgn(b.mantissa);
  if (sa <= 0 || sb <= 0) {
    if (sa <= 0 && sb <= 0) throw DomainError("exact_compare: both sides non-positive");
    return to_ordering(sa - sb);
  }
  if (a.base == b.base || a.base == 1 || b.base == 1) {
    // One base: compare a.mantissa * base^(ea - eb) against b.mantissa.
    const mpz_class& base = a.base == 1 ? b.base : a.base;
    const mpq_class ea = a.base == 1 ? mpq_class(0) : a.exponent;
    const mpq_class eb = b.base == 1 ? mpq_class(0) : b.exponent;
    const mpq_class diff = ea - eb;
    const unsigned long q = mpz_get_ui(diff.get_den_mpz_t());
    const unsigned long p = mpz_get_ui(mpz_class(abs(diff.get_num())).get_mpz_t());
    if (sgn(diff) >= 0) {
      return to_ordering(cmp(raise(a.mantissa, base, q, p, budget), raise(b.mantissa, 1, q, 0, budget)));
    }
    return to_ordering(cmp(raise(a.mantissa, 1, q, 0, budget), raise(b.mantissa, base, q, p, budget)));
  }
  if (sgn(a.exponent) < 0 || sgn(b.exponent) < 0) {
    throw DomainError("exact_compare: negative exponent with distinct bases");
  }
  const unsigned long qa = mpz_get_ui(a.exponent.get_den_mpz_t());
  const unsigned long qb = mpz_get_ui(b.exponent.get_den_mpz_t());
  const unsigned long q = std::lcm(qa, qb);
  const unsigned long pa = mpz_get_ui(a.exponent.get_num_mpz_t()) * (q / qa);
  const unsigned long pb = mpz_get_ui(b.exponent.get_num_mpz_t()) * (q / qb);
  return to_ordering(cmp(raise(a.mantissa, a.base, q, pa, budget), raise(b.mantissa, b.base, q, pb, budget)));
}

bool BoundReport::all_valid() const {
  return std::all_of(records.begin(), records.end(),
                     [](const VariantRecord& r) { return r.valid.value_or(true); });
}

BoundReport full_report(const Progression& prog, u64 n) {
  BoundReport rep{prog, n, exact_lcm(prog, n, 0).value, {}, {}, {}, {}, {}};
  const u64 r = prog.r();
  if (r >= 2) {
    rep.k_star = k_star(prog, n);
    rep.k_argmax = k_argmax(prog, n, Variant::single_r);
  } else {
    rep.k_argmax = k_argmax(prog, n, Variant::multi_prime);
  }

  std::vector<u64> ks{0};
  if (rep.k_star) ks.push_back(*rep.k_star);
  if (rep.k_argmax) ks.push_back(*rep.k_argmax);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  auto fill = [&](VariantRecord& rec, auto&& compute) {
    try {
      rec.value = compute();
      rec.valid = exact_compare(*rec.value, rep.lcm) != std::strong_ordering::greater;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  };

  for (Variant v : kNewVariants) {
    for (u64 k : ks) {
      VariantRecord rec{v, k, {}, {}, {}};
      fill(rec, [&] { return evaluate(v, prog, n, k); });
      rep.records.push_back(std::move(rec));
    }
  }
  VariantRecord th{Variant::tan_hong_optimized, std::nullopt, {}, {}, {}};
  fill(th, [&] { return bound_tan_hong_optimized(prog, n); });
  rep.records.push_back(std::move(th));

  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    if (!rep.records[i].value) continue;
    if (!rep.best ||
        exact_compare(*rep.records[i].value, *rep.records[*rep.best].value) ==
            std::strong_ordering::greater) {
      rep.best = i;
    }
  }
  if (rep.best) {
    const long double diff = log_big(rep.lcm) - rep.records[*rep.best].value->log_value;
    rep.sharpness_ratio = static_cast<double>(std::exp(diff));
  }
  return rep;
}

}  // namespace lcmb
