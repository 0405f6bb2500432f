#include "lcmb/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <numbers>
#include <unordered_map>

#include "lcmb/bigmath.hpp"
#include "lcmb/errors.hpp"

namespace lcmb {

u64 default_sieve_cap() {
  if (const char* env = std::getenv("LCMB_SIEVE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSieveCap;
}

MangoldtSieve::MangoldtSieve(u64 limit, u64 cap) : limit_(limit) {
  if (limit > cap) {
    throw ResourceError("Mangoldt sieve limit " + std::to_string(limit) + " exceeds cap " +
                        std::to_string(cap) + " (raise --sieve-cap or LCMB_SIEVE_CAP)");
  }
  const PrimeTable table = sieve(limit, std::max(cap, limit));
  for (u64 p : table.primes) {
    u64 pk = p;
    for (unsigned e = 1;; ++e) {
      entries_.push_back({pk, p, e});
      if (pk > limit / p) break;
      pk *= p;
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const PrimePowerEntry& a, const PrimePowerEntry& b) { return a.value < b.value; });
}

MangoldtValue MangoldtSieve::at(u64 d) const {
  if (d > limit_) throw DomainError("MangoldtSieve::at beyond sieve limit");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                             [](const PrimePowerEntry& e, u64 v) { return e.value < v; });
  if (it == entries_.end() || it->value != d) return {};
  return {it->prime, it->exponent};
}

namespace {

u64 last_term(const Progression& prog, u64 n, const MangoldtSieve& sieve) {
  const mpz_class un = prog.term(static_cast<std::int64_t>(n));
  if (!un.fits_ulong_p() || un.get_ui() > sieve.limit()) {
    throw ResourceError("u_n = " + un.get_str() + " exceeds the sieve limit " +
                        std::to_string(sieve.limit()));
  }
  return un.get_ui();
}

// Accumulates Lambda(d) and the largest exponent seen per prime.
class Collector {
 public:
  void add(const PrimePowerEntry& e) {
    sum_ += std::log(static_cast<long double>(e.prime));
    unsigned& slot = max_exp_[e.prime];
    slot = std::max(slot, e.exponent);
  }

  MangoldtSum finish() const {
    std::vector<std::pair<u64, unsigned>> items(max_exp_.begin(), max_exp_.end());
    std::sort(items.begin(), items.end());
    std::vector<mpz_class> factors;
    factors.reserve(items.size());
    for (const auto& [p, e] : items) factors.push_back(pow_big(mpz_class(p), e));
    return {sum_, product_tree(std::move(factors))};
  }

 private:
  long double sum_ = 0;
  std::unordered_map<u64, unsigned> max_exp_;
};

}  // namespace

MangoldtSum log_lcm_via_mangoldt(const Progression& prog, u64 n, const MangoldtSieve& sieve) {
  const u64 un = last_term(prog, n, sieve);
  const u64 u0 = prog.u0();
  const u64 r = prog.r();
  Collector acc;
  for (const auto& e : sieve.prime_powers()) {
    const u64 d = e.value;
    if (d > un) break;
    if (r % e.prime == 0) continue;  // p | r never divides a term
    // smallest k >= 0 with d | u0 + k r
    const unsigned __int128 neg_u0 = (d - u0 % d) % d;
    const u64 k0 = static_cast<u64>(neg_u0 * mod_inverse(r % d, d) % d);
    if (k0 <= n) acc.add(e);
  }
  return acc.finish();
}

MangoldtSum step2_sum(const Progression& prog, u64 n, const MangoldtSieve& sieve) {
  const u64 r = prog.r();
  if (r < 2) throw DomainError("step2_sum needs r >= 2");
  const u64 un = last_term(prog, n, sieve);
  const u64 u0_mod = prog.u0() % r;
  Collector acc;
  for (u64 ell = 1; ell < r; ++ell) {
    if (std::gcd(ell, r) != 1) continue;
    const u64 residue = static_cast<u64>(static_cast<unsigned __int128>(u0_mod) *
                                         mod_inverse(ell, r) % r);
    for (const auto& e : sieve.prime_powers()) {
      if (e.value > un / ell) break;  // closed boundary: d * l <= u_n
      if (e.value % r == residue) acc.add(e);
    }
  }
  return acc.finish();
}

bool step2_exactness(const Progression& prog, const mpz_class& lcm) {
  const u64 u0 = prog.u0();
  const u64 r = prog.r();
  for (u64 m = u0; m > r;) {
    m -= r;
    if (!mpz_divisible_ui_p(lcm.get_mpz_t(), m)) return false;
  }
  return true;
}

bool step2_exactness(const Progression& prog, u64 n) {
  return step2_exactness(prog, exact_lcm(prog, n, 0).value);
}

mpq_class step3_coefficient(u64 r) {
  if (r < 2) throw DomainError("step3 needs r >= 2");
  mpq_class sum = 0;
  for (u64 ell = 1; ell < r; ++ell) {
    if (std::gcd(ell, r) == 1) sum += mpq_class(1, ell);
  }
  return sum / mpq_class(mpz_class(euler_phi(r)));
}

double step3_main_term(const Progression& prog, u64 n) {
  const mpq_class v = mpq_class(prog.term(static_cast<std::int64_t>(n))) * step3_coefficient(prog.r());
  return v.get_d();
}

mpq_class step4_coefficient(u64 r) {
  if (!is_prime(r)) throw DomainError("step4 needs prime r, got " + std::to_string(r));
  return harmonic(r - 1) / mpq_class(mpz_class(r - 1));
}

double step4_main_term(const Progression& prog, u64 n) {
  const mpq_class v = mpq_class(prog.term(static_cast<std::int64_t>(n))) * step4_coefficient(prog.r());
  return v.get_d();
}

namespace {

long double alpha_of(u64 r) {
  const long double rl = static_cast<long double>(r);
  return std::pow(rl, -rl / (rl - 1.0L));
}

}  // namespace

StirlingParams stirling_params(const Progression& prog, u64 n) {
  const u64 r = prog.r();
  if (r < 2) throw DomainError("stirling_params needs r >= 2");
  const long double rl = static_cast<long double>(r);
  const long double nl = static_cast<long double>(n);
  const long double u0 = static_cast<long double>(prog.u0());
  StirlingParams sp;
  sp.alpha = alpha_of(r);
  const long double big_r = std::pow(rl, rl / (rl - 1.0L));
  sp.k_tilde = 1.0L + nl / (big_r + 1.0L) - u0 / (rl * (sp.alpha + 1.0L));
  sp.mu = (u0 + nl * rl) / rl;

  const long double lhs = (sp.alpha + 1.0L) * (nl - sp.k_tilde + 1.0L);
  if (std::fabs(lhs - sp.mu) > 1e-9L * std::max(1.0L, std::fabs(sp.mu))) {
    throw IntegrityError("(alpha+1)(n - k~ + 1) != mu");
  }
  return sp;
}

double stirling_log_bound(const Progression& prog, u64 n) {
  const StirlingParams sp = stirling_params(prog, n);
  const long double rl = static_cast<long double>(prog.r());
  const long double nl = static_cast<long double>(n);
  const long double m = nl - sp.k_tilde + 1.0L;
  if (sp.mu <= 0 || m <= 0) throw DomainError("Stirling form undefined: n - k~ + 1 <= 0");
  const long double a = sp.alpha;
  const long double per_mu =
      std::log(1.0L + a) / (1.0L + a) + (a / (1.0L + a)) * std::log((1.0L + a) / a);
  const long double value = (nl - sp.k_tilde) * rl / (rl - 1.0L) * std::log(rl) +
                            std::log(1.0L + a) -
                            0.5L * std::log(2.0L * std::numbers::pi_v<long double> * sp.mu * a) +
                            sp.mu * per_mu;
  return static_cast<double>(value);
}

double exppart_per_n_log(u64 r) {
  if (r < 2) throw DomainError("exppart needs r >= 2");
  const long double rl = static_cast<long double>(r);
  const long double a = alpha_of(r);
  const long double v = rl / ((1.0L + a) * (rl - 1.0L)) * std::log(rl) +
                        std::log(1.0L + a) / (1.0L + a) +
                        (a / (1.0L + a)) * std::log((1.0L + a) / a);
  return static_cast<double>(v);
}

double linear_term_coefficient(u64 r) {
  return mpq_class(step4_coefficient(r) * mpq_class(mpz_class(r))).get_d();
}

AsymptoticsReport gamma_gap_report(const Progression& prog, u64 n, const MangoldtSieve& sieve) {
  const u64 r = prog.r();
  if (r < 2) throw DomainError("gamma_gap_report needs r >= 2");
  AsymptoticsReport rep;
  rep.n = n;
  const mpz_class lcm = exact_lcm(prog, n, 0).value;
  rep.exact_log_lcm = static_cast<double>(log_big(lcm));
  rep.step2_sum = static_cast<double>(step2_sum(prog, n, sieve).log_sum);
  rep.exactness = step2_exactness(prog, lcm);
  rep.step3_main_term = step3_main_term(prog, n);
  rep.exppart_per_n_log = exppart_per_n_log(r);
  if (is_prime(r)) {
    rep.step4_main_term = step4_main_term(prog, n);
    rep.linear_term_coefficient = linear_term_coefficient(r);
    rep.linear_gap = *rep.linear_term_coefficient - rep.exppart_per_n_log;
  }
  try {
    rep.stirling_log_bound = stirling_log_bound(prog, n);
  } catch (const DomainError& e) {
    rep.note = e.what();
  }
  if (n == 0) {
    rep.note = "gap undefined at n = 0";
  } else if (rep.stirling_log_bound) {
    rep.gap_per_n = (rep.exact_log_lcm - *rep.stirling_log_bound) / static_cast<double>(n);
  }
  return rep;
}

}  // namespace lcmb
