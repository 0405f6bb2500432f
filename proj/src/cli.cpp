#include "lcmb/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <csignal>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "lcmb/bigmath.hpp"
#include "lcmb/errors.hpp"

namespace lcmb::cli {

using nlohmann::json;

namespace {

volatile std::sig_atomic_t g_stop = 0;

using Row = std::vector<json>;

json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_real(x));
}

json real(const std::optional<double>& x) { return x ? real(*x) : json(nullptr); }

json opt(const std::optional<u64>& x) { return x ? json(*x) : json(nullptr); }

std::string csv_cell(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "";
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::number_unsigned: return std::to_string(v.get<u64>());
    case json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case json::value_t::number_float: return format_real(v.get<double>());
    case json::value_t::string: {
      const auto& s = v.get_ref<const std::string&>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      return quoted + "\"";
    }
    default: return v.dump();
  }
}

// Streams rows as CSV or JSON; buffers them for the aligned table.
class RowWriter {
 public:
  RowWriter(std::ostream& os, OutputFormat fmt, std::vector<std::string> columns, std::string command)
      : os_(os), fmt_(fmt), columns_(std::move(columns)) {
    if (fmt_ == OutputFormat::csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    } else if (fmt_ == OutputFormat::json) {
      os_ << "{\"schema_version\":" << kJsonSchemaVersion << ",\"command\":" << json(command).dump()
          << ",\"rows\":[";
    }
    os_.flush();
  }

  void write(const Row& row) {
    switch (fmt_) {
      case OutputFormat::csv:
        for (std::size_t i = 0; i < row.size(); ++i) os_ << (i ? "," : "") << csv_cell(row[i]);
        os_ << '\n';
        break;
      case OutputFormat::json: {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
        os_ << (rows_ ? "," : "") << '\n' << obj.dump();
        break;
      }
      case OutputFormat::table:
        buffered_.push_back(row);
        break;
    }
    ++rows_;
    os_.flush();
  }

  void finish() {
    if (fmt_ == OutputFormat::json) {
      os_ << (rows_ ? "\n" : "") << "]}\n";
    } else if (fmt_ == OutputFormat::table) {
      std::vector<std::size_t> width(columns_.size());
      for (std::size_t i = 0; i < columns_.size(); ++i) width[i] = columns_[i].size();
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : buffered_) {
        auto& out = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
          out.push_back(row[i].is_null() ? "-" : csv_cell(row[i]));
          width[i] = std::max(width[i], out.back().size());
        }
      }
      auto line = [&](const std::vector<std::string>& items) {
        for (std::size_t i = 0; i < items.size(); ++i) {
          os_ << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << items[i];
        }
        os_ << '\n';
      };
      line(columns_);
      std::vector<std::string> rule;
      for (auto w : width) rule.emplace_back(w, '-');
      line(rule);
      for (const auto& c : cells) line(c);
    }
    os_.flush();
  }

 private:
  std::ostream& os_;
  OutputFormat fmt_;
  std::vector<std::string> columns_;
  std::vector<Row> buffered_;
  std::size_t rows_ = 0;
};

// Computes one row per n; rows are written in n order whatever the worker count.
template <class F>
bool emit_rows(const std::vector<u64>& ns, unsigned workers, RowWriter& writer, F compute) {
  if (workers <= 1 || ns.size() <= 1) {
    for (u64 n : ns) {
      if (stop_requested()) return false;
      writer.write(compute(n));
    }
    return true;
  }
  std::vector<std::optional<Row>> rows(ns.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ns.size() || stop_requested()) return;
      try {
        rows[i] = compute(ns[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(ns.size()));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& row : rows) {
    if (!row) break;
    writer.write(*row);
  }
  if (failure) std::rethrow_exception(failure);
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.has_value(); });
}

std::optional<Progression> make_progression(const RunConfig& config, std::ostream& err) {
  if (config.u0 == 0 || config.r == 0 || std::gcd(config.u0, config.r) != 1) {
    err << "warning: skipping u0=" << config.u0 << " r=" << config.r
        << " (requires u0, r >= 1 and gcd(u0, r) = 1)\n";
    return std::nullopt;
  }
  return Progression(config.u0, config.r);
}

OutputFormat format_or(const RunConfig& config, OutputFormat fallback) {
  return config.format.value_or(fallback);
}

}  // namespace

void request_stop() { g_stop = 1; }
bool stop_requested() { return g_stop != 0; }
void reset_stop() { g_stop = 0; }

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "table") return OutputFormat::table;
  return std::nullopt;
}

std::vector<u64> n_values(const RunConfig& config) {
  const bool range = config.n_from || config.n_to;
  if (config.n && range) throw DomainError("use either --n or --n-from/--n-to, not both");
  if (config.n) return {*config.n};
  if (!range) throw DomainError("missing --n (or --n-from/--n-to)");
  if (config.step == 0) throw DomainError("--step must be >= 1");
  const u64 from = config.n_from.value_or(0);
  const u64 to = config.n_to.value_or(from);
  std::vector<u64> out;
  for (u64 n = from; n <= to; n += config.step) {
    out.push_back(n);
    if (to - n < config.step) break;
  }
  return out;
}

// ---- bounds --------------------------------------------------------------

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto prog = make_progression(config, err);
  if (!prog) return kExitUsage;
  const auto ns = n_values(config);
  const OutputFormat fmt = format_or(config, OutputFormat::table);

  bool all_valid = true;
  const std::vector<std::string> columns{"u0", "r", "n", "lcm", "k_star", "k_argmax", "variant",
                                         "k", "log_value", "exact", "valid", "sharpness_ratio", "note"};
  const std::vector<std::string> table_columns{"variant", "k", "log_value", "exact", "valid", "note"};
  std::optional<RowWriter> flat;
  if (fmt != OutputFormat::table) flat.emplace(out, fmt, columns, "bounds");

  for (u64 n : ns) {
    const BoundReport rep = full_report(*prog, n);
    all_valid = all_valid && rep.all_valid();
    std::optional<RowWriter> table;
    if (fmt == OutputFormat::table) {
      out << "u0=" << prog->u0() << " r=" << prog->r() << " n=" << n << '\n'
          << "L_n = " << rep.lcm.get_str() << '\n'
          << "k_star = " << (rep.k_star ? std::to_string(*rep.k_star) : "-")
          << "  k_argmax = " << (rep.k_argmax ? std::to_string(*rep.k_argmax) : "-") << '\n';
      if (rep.sharpness_ratio) {
        out << "sharpness ratio L_n / best = " << format_real(*rep.sharpness_ratio) << " (best: "
            << variant_name(rep.records[*rep.best].variant) << ")\n";
      }
      table.emplace(out, fmt, table_columns, "bounds");
    }
    for (const auto& rec : rep.records) {
      if (config.variant && rec.variant != *config.variant) continue;
      const json log_value = rec.value ? real(rec.value->log_value) : json(nullptr);
      const json exact = rec.value ? json(rec.value->to_string()) : json(nullptr);
      const json valid = rec.valid ? json(*rec.valid) : json(nullptr);
      if (table) {
        table->write({std::string(variant_name(rec.variant)), opt(rec.k), log_value, exact, valid, rec.error});
      } else {
        flat->write({prog->u0(), prog->r(), n, rep.lcm.get_str(), opt(rep.k_star), opt(rep.k_argmax),
                     std::string(variant_name(rec.variant)), opt(rec.k), log_value, exact, valid,
                     real(rep.sharpness_ratio), rec.error});
      }
    }
    if (table) {
      table->finish();
      out << (rep.all_valid() ? "all verdicts valid" : "INVALID verdict found") << "\n\n";
    }
  }
  if (flat) flat->finish();
  if (!all_valid) err << "error: a bound exceeded L_n\n";
  return all_valid ? kExitOk : kExitFailure;
}

// ---- scan ----------------------------------------------------------------

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto prog = make_progression(config, err);
  if (!prog) return kExitUsage;
  const auto ns = n_values(config);
  const Variant argmax_variant =
      config.variant.value_or(prog->r() >= 2 ? Variant::single_r : Variant::multi_prime);
  if (prog->r() < 2 && argmax_variant != Variant::multi_prime) {
    throw DomainError("r = 1 supports only --variant multi_prime");
  }

  RowWriter writer(out, format_or(config, OutputFormat::csv),
                   {"n", "log_lcm", "log_bound_multi", "log_bound_single", "log_bound_binomial_printed",
                    "log_bound_binomial_corrected", "k_star", "k_argmax", "log_tan_hong_opt", "ratio_log"},
                   "scan");
  const bool complete = emit_rows(ns, config.workers, writer, [&](u64 n) -> Row {
    const double log_lcm = static_cast<double>(log_big(exact_lcm(*prog, n, 0).value));
    const u64 ka = k_argmax(*prog, n, argmax_variant);
    std::optional<u64> ks;
    std::optional<double> multi, single, printed, corrected, tan_hong;
    if (prog->r() >= 2) {
      ks = k_star(*prog, n);
      multi = bound_multi_prime(*prog, n, *ks).log_value;
      single = bound_single_r(*prog, n, *ks).log_value;
      printed = bound_binomial(*prog, n, *ks).log_value;
      corrected = bound_binomial_corrected(*prog, n, *ks).log_value;
      try {
        tan_hong = bound_tan_hong_optimized(*prog, n).log_value;
      } catch (const HypothesisError&) {
      }
    } else {
      multi = bound_multi_prime(*prog, n, ka).log_value;
    }
    double best = -INFINITY;
    for (const auto& v : {multi, single, printed, corrected, tan_hong}) {
      if (v) best = std::max(best, *v);
    }
    return {n, real(log_lcm), real(multi), real(single), real(printed), real(corrected),
            opt(ks), ka, real(tan_hong), real(log_lcm - best)};
  });
  writer.finish();
  if (!complete) {
    err << "interrupted: partial output\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---- sharpness -----------------------------------------------------------

int cmd_sharpness(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!is_prime(config.r)) throw DomainError("sharpness needs prime r, got " + std::to_string(config.r));
  const u64 r = config.r;
  const auto ns = n_values(config);
  RowWriter writer(out, format_or(config, OutputFormat::table),
                   {"n", "r", "u0", "lcm", "a_n0", "r_smooth_factorial", "a_equals_smooth",
                    "ratio_corrected", "within_n_plus_1", "ratio_printed", "within_r_times_n_plus_1"},
                   "sharpness");
  bool ok = true;
  for (u64 n : ns) {
    if (stop_requested()) break;
    const mpz_class u0_big = coprime_part(lcm_up_to(n), r);
    if (!u0_big.fits_ulong_p()) throw ResourceError("u0 = coprime part of lcm(1..n) does not fit 64 bits");
    const Progression prog(u0_big.get_ui(), r);
    const mpz_class lcm = exact_lcm(prog, n, 0).value;
    const mpz_class a = a_value(prog, n, 0);
    const mpz_class smooth = smooth_part_of_factorial(n, r);
    const BoundValue corrected = bound_large_u0_corrected(prog, n);
    const BoundValue printed = bound_large_u0(prog, n);
    const bool within = exact_compare(corrected.scaled(mpq_class(mpz_class(n + 1))), lcm) !=
                        std::strong_ordering::less;
    const bool within_printed = exact_compare(printed.scaled(mpq_class(mpz_class(r * (n + 1)))), lcm) !=
                                std::strong_ordering::less;
    const long double log_l = log_big(lcm);
    ok = ok && a == smooth && within && within_printed;
    writer.write({n, r, prog.u0(), lcm.get_str(), a.get_str(), smooth.get_str(), a == smooth,
                  real(static_cast<double>(std::exp(log_l - corrected.log_value))), within,
                  real(static_cast<double>(std::exp(log_l - printed.log_value))), within_printed});
  }
  writer.finish();
  if (!ok) err << "error: sharpness claim failed\n";
  return ok ? kExitOk : kExitFailure;
}

// ---- asympt --------------------------------------------------------------

int cmd_asympt(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto prog = make_progression(config, err);
  if (!prog) return kExitUsage;
  if (prog->r() < 2) throw DomainError("asympt needs r >= 2");
  const auto ns = n_values(config);
  const u64 top = ns.empty() ? 0 : ns.back();
  const mpz_class un = prog->term(static_cast<std::int64_t>(top));
  if (!un.fits_ulong_p()) throw ResourceError("u_n too large");
  const MangoldtSieve sieve(un.get_ui(), config.sieve_cap);

  RowWriter writer(out, format_or(config, OutputFormat::csv),
                   {"n", "exact_log_lcm", "step2_sum", "exactness_flag", "step3", "step4",
                    "stirling_log_bound", "gap_per_n", "exppart_per_n_log"},
                   "asympt");
  const bool complete = emit_rows(ns, config.workers, writer, [&](u64 n) -> Row {
    const AsymptoticsReport rep = gamma_gap_report(*prog, n, sieve);
    return {n, real(rep.exact_log_lcm), real(rep.step2_sum), rep.exactness, real(rep.step3_main_term),
            real(rep.step4_main_term), real(rep.stirling_log_bound), real(rep.gap_per_n),
            real(rep.exppart_per_n_log)};
  });
  writer.finish();
  if (!complete) {
    err << "interrupted: partial output\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---- compare -------------------------------------------------------------

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto prog = make_progression(config, err);
  if (!prog) return kExitUsage;
  if (prog->r() < 2) throw DomainError("compare needs r >= 2");
  const auto ns = n_values(config);
  RowWriter writer(out, format_or(config, OutputFormat::table),
                   {"n", "k_star", "printed_over_single", "corrected_equals_single", "log_best_new",
                    "log_tan_hong_opt", "log_new_minus_tan_hong", "new_beats_tan_hong"},
                   "compare");
  const bool complete = emit_rows(ns, config.workers, writer, [&](u64 n) -> Row {
    const u64 ks = k_star(*prog, n);
    const BoundValue printed = bound_binomial(*prog, n, ks);
    const BoundValue single = bound_single_r(*prog, n, ks);
    const BoundValue corrected = bound_binomial_corrected(*prog, n, ks);
    // printed / single is rational: both carry base r with exponents differing by an integer
    const BoundValue ratio = BoundValue::make(printed.mantissa / single.mantissa, mpz_class(prog->r()),
                                              printed.exponent - single.exponent);
    const std::string ratio_str = ratio.exact_rational() ? ratio.exact_rational()->get_str() : ratio.to_string();
    BoundValue best = bound_multi_prime(*prog, n, ks);
    for (const BoundValue& b : {single, corrected}) {
      if (exact_compare(b, best) == std::strong_ordering::greater) best = b;
    }
    std::optional<double> th_log, diff;
    json beats = nullptr;
    try {
      const BoundValue th = bound_tan_hong_optimized(*prog, n);
      th_log = th.log_value;
      diff = best.log_value - th.log_value;
      beats = exact_compare(best, th) == std::strong_ordering::greater;
    } catch (const HypothesisError&) {
    }
    return {n, ks, ratio_str, exact_compare(corrected, single) == std::strong_ordering::equal,
            real(best.log_value), real(th_log), real(diff), beats};
  });
  writer.finish();
  if (!complete) {
    err << "interrupted: partial output\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err,
               const MultiPrimeFn& multi_prime) {
  const OutputFormat fmt = format_or(config, OutputFormat::table);
  VerifyOptions options;
  options.quick = config.quick;
  options.sieve_cap = config.sieve_cap;
  options.multi_prime = multi_prime;
  if (fmt == OutputFormat::table) {
    options.on_result = [&out](const PropertyResult& res) {
      out << (res.passed ? "PASS " : "FAIL ") << res.name << " [" << std::fixed << std::setprecision(2)
          << res.seconds << "s]" << std::defaultfloat;
      if (!res.detail.empty()) out << "  " << res.detail;
      if (!res.passed) out << "\n     reproduce: " << res.repro;
      out << std::endl;
    };
  }
  const auto results = run_verify(options);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  if (fmt == OutputFormat::table) {
    out << results.size() - failed << "/" << results.size() << " properties passed\n";
  } else {
    RowWriter writer(out, fmt, {"property", "passed", "seconds", "detail", "repro"}, "verify");
    for (const auto& res : results) {
      writer.write({res.name, res.passed, real(res.seconds), res.detail, res.repro});
    }
    writer.finish();
  }
  if (failed) {
    for (const auto& res : results) {
      if (!res.passed) err << "FAIL " << res.name << ": " << res.repro << '\n';
    }
  }
  return failed ? kExitFailure : kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return cmd_verify(config, out, err, bound_multi_prime);
}

// ---- dispatch ------------------------------------------------------------

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* target = &out;
  if (!config.out_path.empty()) {
    file.open(config.out_path);
    if (!file) {
      err << "error: cannot open " << config.out_path << '\n';
      return kExitUsage;
    }
    target = &file;
  }
  try {
    const std::string& cmd = config.subcommand;
    if (cmd == "bounds") return cmd_bounds(config, *target, err);
    if (cmd == "scan") return cmd_scan(config, *target, err);
    if (cmd == "sharpness") return cmd_sharpness(config, *target, err);
    if (cmd == "asympt") return cmd_asympt(config, *target, err);
    if (cmd == "verify") return cmd_verify(config, *target, err);
    if (cmd == "compare") return cmd_compare(config, *target, err);
    err << "error: unknown subcommand '" << cmd << "'\n";
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lcmb::cli
