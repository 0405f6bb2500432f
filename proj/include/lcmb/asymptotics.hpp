#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lcmb/number_theory.hpp"
#include "lcmb/progression.hpp"

namespace lcmb {

inline constexpr long double kEulerGamma = 0.57721566490153286061L;
inline constexpr u64 kDefaultSieveCap = 2'000'000;

/// kDefaultSieveCap, or LCMB_SIEVE_CAP from the environment when set.
u64 default_sieve_cap();

struct PrimePowerEntry {
  u64 value;
  u64 prime;
  unsigned exponent;
};

/// All prime powers up to a limit, i.e. the support of Lambda on [1, limit].
class MangoldtSieve {
 public:
  /// Throws ResourceError when limit > cap.
  explicit MangoldtSieve(u64 limit, u64 cap = default_sieve_cap());

  u64 limit() const { return limit_; }

  /// Increasing by value.
  const std::vector<PrimePowerEntry>& prime_powers() const { return entries_; }

  /// Lambda(d) for d <= limit.
  MangoldtValue at(u64 d) const;

 private:
  u64 limit_;
  std::vector<PrimePowerEntry> entries_;
};

/// Sum of Lambda(d) over a set of prime powers, plus the integer prod p^{max e}
/// those prime powers generate.
struct MangoldtSum {
  long double log_sum = 0;
  mpz_class reconstruction{1};
};

/// Prime powers d <= u_n dividing some u_k, 0 <= k <= n, found by residue
/// arithmetic. The reconstruction always equals L_n.
MangoldtSum log_lcm_via_mangoldt(const Progression& prog, u64 n, const MangoldtSieve& sieve);

/// Sum over units l mod r of Lambda(d) for d = u0 * l^{-1} (mod r) with d*l <= u_n.
/// Equals log L_n whenever step2_exactness holds. r >= 2.
MangoldtSum step2_sum(const Progression& prog, u64 n, const MangoldtSieve& sieve);

/// True iff every positive m < u0 with m = u0 (mod r) divides L_n.
bool step2_exactness(const Progression& prog, const mpz_class& lcm);
bool step2_exactness(const Progression& prog, u64 n);

/// (1/phi(r)) * sum_{0<l<r, gcd(l,r)=1} 1/l
mpq_class step3_coefficient(u64 r);
double step3_main_term(const Progression& prog, u64 n);

/// H_{r-1}/(r-1). Throws DomainError for composite r.
mpq_class step4_coefficient(u64 r);
double step4_main_term(const Progression& prog, u64 n);

struct StirlingParams {
  long double k_tilde;
  long double alpha;  // r^{-r/(r-1)}
  long double mu;     // u_n / r
};

/// Throws IntegrityError if (alpha+1)(n - k_tilde + 1) = mu fails to 1e-9 relative.
StirlingParams stirling_params(const Progression& prog, u64 n);

/// Log of the Stirling form of the binomial bound at k = k_tilde.
/// Throws DomainError when mu <= 0 or n - k_tilde + 1 <= 0.
double stirling_log_bound(const Progression& prog, u64 n);

/// Per-n log of the exponential part of the Stirling form.
double exppart_per_n_log(u64 r);

/// r * H_{r-1} / (r-1) for prime r, the linear coefficient of log L_n.
double linear_term_coefficient(u64 r);

struct AsymptoticsReport {
  u64 n = 0;
  double exact_log_lcm = 0;
  double step2_sum = 0;
  bool exactness = false;
  double step3_main_term = 0;
  std::optional<double> step4_main_term;      // prime r only
  std::optional<double> stirling_log_bound;
  double exppart_per_n_log = 0;
  std::optional<double> gap_per_n;            // undefined at n = 0
  std::optional<double> linear_term_coefficient;  // prime r only
  std::optional<double> linear_gap;  // linear_term_coefficient - exppart_per_n_log
  std::string note;
};

/// r >= 2. Composite r leaves the prime-only fields empty.
AsymptoticsReport gamma_gap_report(const Progression& prog, u64 n, const MangoldtSieve& sieve);

}  // namespace lcmb
