#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "core_dist.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "output.hpp"
#include "rational.hpp"
#include "sampler.hpp"
#include "sequences.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 domain
// error, 3 oracle mismatch.
namespace spacings::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitMismatch = 3;

// Bad command-line input that parsed but does not fit the grammar.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decimal ("0.25") or fraction ("1/4").
inline double parse_probability(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    try {
      return to_double(parse_rational(text));
    } catch (const DomainError& e) {
      throw UsageError(std::string("--p: ") + e.what());
    }
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--p: cannot parse '" + text + "' as a probability");
  }
  if (used != text.size()) throw UsageError("--p: cannot parse '" + text + "' as a probability");
  return value;
}

inline unsigned threads_from_env() {
  const char* raw = std::getenv("SPACINGS_THREADS");
  if (raw == nullptr || *raw == '\0') return default_threads();
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1) return default_threads();
  return static_cast<unsigned>(v);
}

struct Options {
  std::int64_t n = 0;
  std::string p_text;
  std::int64_t i = 1;
  std::optional<std::int64_t> d_max;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  bool closed_form = false;
  std::optional<std::int64_t> order;
  std::optional<double> alpha;
  std::optional<std::int64_t> count;
  std::vector<std::int64_t> n_list;
};

namespace detail {

inline void require_flag(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

inline output::Table pmf_rows(const Options& o, double p, bool with_pmf) {
  require_flag(o.n >= 1, "--n must be >= 1");
  require_flag(o.i >= 1 && o.i <= o.n, "--i must satisfy 1 <= i <= n");
  const ModelParams params(o.n, p, o.i);
  const std::int64_t upto = std::min(o.n, o.d_max.value_or(o.n));
  require_flag(upto >= 1, "--d-max must be >= 1");

  if (!with_pmf && o.closed_form) {
    require_flag(o.i == 1, "--closed-form requires --i 1");
    output::Table t({"d", "cdf", "limit_cdf"});
    for (std::int64_t d = 1; d <= upto; ++d) {
      t.add_row({d, cdf_scaled_closed_i1(o.n, p, d), limit_cdf(p, d)});
    }
    return t;
  }
  const auto table = pmf_table(params);
  output::Table t(with_pmf ? std::vector<std::string>{"d", "pmf", "cdf", "limit_cdf"}
                           : std::vector<std::string>{"d", "cdf", "limit_cdf"});
  for (std::int64_t d = 1; d <= upto; ++d) {
    if (with_pmf) {
      t.add_row({d, table.mass(d), table.cdf(d), limit_cdf(p, d)});
    } else {
      t.add_row({d, table.cdf(d), limit_cdf(p, d)});
    }
  }
  return t;
}

}  // namespace detail

/// Parses argv, runs one subcommand, writes records to `out` and
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spacing statistics of Bernoulli-thinned point sets", "spacings"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_nip = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Grid size")->required();
    sub->add_option("--p", o.p_text, "Survival probability (decimal or a/b)")->required();
    sub->add_option("--i", o.i, "Spacing index")->required();
  };

  auto* pmf = app.add_subcommand("pmf", "Exact pmf/cdf table of the scaled spacing");
  add_nip(pmf);
  pmf->add_option("--d-max", o.d_max, "Last d to print");
  add_format(pmf);

  auto* cdf = app.add_subcommand("cdf", "Exact cdf table of the scaled spacing");
  add_nip(cdf);
  cdf->add_option("--d-max", o.d_max, "Last d to print");
  cdf->add_flag("--closed-form", o.closed_form, "Use the i = 1 closed form");
  add_format(cdf);

  auto* limit = app.add_subcommand("limit", "Geometric limit law");
  limit->add_option("--p", o.p_text, "Survival probability")->required();
  limit->add_option("--d-max", o.d_max, "Last d to print")->required();
  add_format(limit);

  auto* sample = app.add_subcommand("sample", "Monte Carlo histogram of the scaled spacing on a grid");
  add_nip(sample);
  sample->add_option("--trials", o.trials, "Number of thinnings")->required();
  sample->add_option("--seed", o.seed, "RNG seed");
  add_format(sample);

  auto* stream = app.add_subcommand("stream", "Inter-arrival times of a Bernoulli process");
  stream->add_option("--p", o.p_text, "Survival probability")->required();
  stream->add_option("--count", o.count, "Number of inter-arrival times")->required();
  stream->add_option("--seed", o.seed, "RNG seed");
  add_format(stream);

  auto* sweep = app.add_subcommand("sweep", "Exact distance to the limit law across n");
  sweep->add_option("--p", o.p_text, "Survival probability")->required();
  sweep->add_option("--i", o.i, "Spacing index")->required();
  sweep->add_option("--n-list", o.n_list, "Comma-separated grid sizes")->required()->delimiter(',');
  sweep->add_option("--d-max", o.d_max, "Largest d in the sup")->required();
  sweep->add_flag("--closed-form", o.closed_form, "Use the i = 1 closed form");
  add_format(sweep);

  auto* orc = app.add_subcommand("oracle", "Exact enumeration vs closed form in rationals");
  add_nip(orc);
  add_format(orc);

  auto* seq = app.add_subcommand("seq-sample", "Thin a Farey or rotation sequence, compare to exponential");
  auto* q_opt = seq->add_option("--Q", o.order, "Farey order");
  auto* a_opt = seq->add_option("--alpha", o.alpha, "Rotation angle");
  seq->add_option("--count", o.count, "Rotation length");
  seq->add_option("--p", o.p_text, "Survival probability")->required();
  seq->add_option("--seed", o.seed, "RNG seed");
  q_opt->excludes(a_opt);
  add_format(seq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto format = o.format == "json" ? output::Format::kJson : output::Format::kCsv;
  try {
    if (orc->parsed()) {
      if (o.p_text.find_first_of(".eE") != std::string::npos) {
        throw UsageError("--p: oracle needs an exact fraction such as 1/2");
      }
      Rational p;
      try {
        p = parse_rational(o.p_text);
      } catch (const DomainError& e) {
        throw UsageError(std::string("--p: ") + e.what());
      }
      detail::require_flag(p > 0 && p <= 1, "--p must lie in (0, 1], got " + o.p_text);
      detail::require_flag(o.n >= 1 && o.n <= oracle::kMaxEnumerationN, "--n must satisfy 1 <= n <= 16 for oracle");
      detail::require_flag(o.i >= 1 && o.i <= o.n, "--i must satisfy 1 <= i <= n");
      const auto enumerated = oracle::enumerate_conditional_pmf(o.n, p, o.i);
      const auto closed = oracle::exact_closed_form_pmf(o.n, p, o.i);
      const bool match = enumerated.masses == closed.masses;
      output::Table t({"d", "mass"});
      for (std::int64_t d = 1; d <= o.n; ++d) t.add_row({d, to_string(enumerated.mass(d))});
      t.write(out, format);
      if (format == output::Format::kCsv) {
        out << (match ? "MATCH" : "MISMATCH") << '\n';
      } else {
        err << (match ? "MATCH" : "MISMATCH") << '\n';
      }
      return match ? kExitOk : kExitMismatch;
    }

    const double p = parse_probability(o.p_text);
    detail::require_flag(p > 0.0 && p <= 1.0, "--p must lie in (0, 1], got " + o.p_text);
    if (pmf->parsed() || cdf->parsed()) {
      detail::pmf_rows(o, p, pmf->parsed()).write(out, format);
    } else if (limit->parsed()) {
      detail::require_flag(*o.d_max >= 1, "--d-max must be >= 1");
      output::Table t({"d", "limit_pmf", "limit_cdf"});
      for (std::int64_t d = 1; d <= *o.d_max; ++d) t.add_row({d, limit_pmf(p, d), limit_cdf(p, d)});
      t.write(out, format);
    } else if (sample->parsed()) {
      detail::require_flag(o.n >= 1, "--n must be >= 1");
      detail::require_flag(o.i >= 1 && o.i <= o.n, "--i must satisfy 1 <= i <= n");
      detail::require_flag(o.trials >= 1, "--trials must be >= 1");
      const auto emp = collect_empirical(o.n, p, o.i, o.trials, RngSeed{o.seed}, threads_from_env());
      output::Table t({"d", "count", "empirical_mass", "limit_pmf"});
      for (const auto& [d, c] : emp.counts) t.add_row({d, c, emp.mass(d), limit_pmf(p, d)});
      t.write(out, format);
      err << "retained " << emp.total << " discarded " << emp.discarded;
      if (emp.total > 0) {
        const auto report = diagnostics::ks_to_geometric(emp, p);
        err << " ks " << output::format_double(report.ks) << " tv " << output::format_double(report.tv);
      }
      err << '\n';
    } else if (stream->parsed()) {
      detail::require_flag(*o.count >= 1, "--count must be >= 1");
      const auto ms = inter_arrival_stream(p, RngSeed{o.seed}, *o.count);
      output::Table t({"k", "inter_arrival"});
      for (std::size_t k = 0; k < ms.size(); ++k) t.add_row({static_cast<std::int64_t>(k + 1), ms[k]});
      t.write(out, format);
    } else if (sweep->parsed()) {
      detail::require_flag(o.i >= 1, "--i must be >= 1");
      const auto method = o.closed_form ? diagnostics::SweepMethod::kClosedForm : diagnostics::SweepMethod::kSummed;
      const auto rows = diagnostics::convergence_sweep(p, o.i, o.n_list, *o.d_max, method);
      output::Table t({"n", "sup_distance"});
      for (const auto& r : rows) t.add_row({r.n, r.sup_distance});
      t.write(out, format);
    } else if (seq->parsed()) {
      PointSet points;
      if (o.order) {
        detail::require_flag(*o.order >= 1, "--Q must be >= 1");
        points = farey(*o.order);
      } else if (o.alpha) {
        if (!o.count) throw UsageError("--count is required with --alpha");
        detail::require_flag(*o.count >= 1, "--count must be >= 1");
        points = rotation(*o.alpha, *o.count);
      } else {
        throw UsageError("seq-sample needs --Q or --alpha");
      }
      const auto run = sample_subset(points, p, RngSeed{o.seed});
      const auto report = diagnostics::scaled_mean_exponential_check(run.spacings);
      const double mean = numeric::compensated_sum(run.spacings) / static_cast<double>(run.spacings.size());
      output::Table t({"sequence", "points", "survivors", "spacings", "mean_spacing", "ks_exponential"});
      t.add_row({describe(points.descriptor), static_cast<std::uint64_t>(points.size()),
                 static_cast<std::uint64_t>(run.survivors.size()), static_cast<std::uint64_t>(run.spacings.size()),
                 mean, report.ks});
      t.write(out, format);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace spacings::cli
