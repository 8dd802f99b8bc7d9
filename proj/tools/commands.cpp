#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sortlab/atomic_file.hpp"
#include "sortlab/dataset_io.hpp"
#include "sortlab/doe.hpp"
#include "sortlab/errors.hpp"
#include "sortlab/glm.hpp"
#include "sortlab/randgen.hpp"
#include "sortlab/reference_tables.hpp"
#include "sortlab/report.hpp"
#include "sortlab/runner.hpp"
#include "sortlab/special.hpp"

namespace sortlab::cli {

namespace {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

Response response_or_throw(const std::string& name) {
  auto r = parse_response(name);
  if (!r) throw ValidationError("unknown response column '" + name + "'");
  return *r;
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_file_atomic(*path, text);
  } else {
    out << text;
  }
}

Dataset load_dataset(const std::filesystem::path& path) {
  try {
    return parse_dataset_csv(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::optional<Format> parse_format(const std::string& text) {
  if (text == "text") return Format::text;
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  return std::nullopt;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto plan = parse_plan_json(read_file(args.plan_path));
    if (args.seed) plan = plan.with_master_seed(*args.seed);
    if (plan.replicates() == 1) {
      err << "warning: replicates = 1 leaves 0 error degrees of freedom; F and P will be undefined\n";
    }
    std::filesystem::create_directories(args.output_dir);
    RunOptions options;
    options.timing = args.timing;
    const auto result = run_experiment(plan, options);
    for (const auto& [algorithm, ds] : result.datasets) {
      const auto path = args.output_dir / (std::string(to_string(algorithm)) + ".csv");
      write_file_atomic(path, write_dataset_csv(ds));
      out << "wrote " << path.string() << " (" << ds.observations.size() << " observations)\n";
    }
    return kExitOk;
  });
}

int cmd_anova(const AnovaArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto response = response_or_throw(args.response);
    const auto ds = load_dataset(args.dataset_path);
    const auto table = anova(ds, response);
    std::string text;
    switch (args.format) {
      case Format::text:
        text = render_anova(table);
        break;
      case Format::csv:
        text = export_csv(table);
        break;
      case Format::json:
        text = anova_to_json(table);
        break;
    }
    emit(args.output_path, text, out);
    return kExitOk;
  });
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto response = response_or_throw(args.response);
    const auto a = load_dataset(args.dataset_a);
    const auto b = load_dataset(args.dataset_b);
    if (!a.plan.same_shape(b.plan)) {
      throw ValidationError("datasets do not share a plan shape (factors, levels, replicates)");
    }
    const auto rows = sensitivity_summary(anova(a, response), anova(b, response), args.alpha);
    const std::string label_a(to_string(a.algorithm));
    const std::string label_b(to_string(b.algorithm));
    std::string text;
    switch (args.format) {
      case Format::text:
        text = render_sensitivity(rows, label_a, label_b, args.alpha);
        break;
      case Format::csv:
        text = export_csv(rows);
        break;
      case Format::json:
        text = sensitivity_to_json(rows, label_a, label_b, args.alpha);
        break;
    }
    emit(args.output_path, text, out);
    return kExitOk;
  });
}

int cmd_fprob(double f, int d1, int d2, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double p = f_tail_prob(f, d1, d2);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << buf << "\n";
    return kExitOk;
  });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto values = normal_sample(GenSpec{args.n, args.m, args.s, args.seed});
    std::string text = "value\n";
    for (double v : values) text += format_double(v) + "\n";
    emit(args.output_path, text, out);
    return kExitOk;
  });
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool ok = true;
    auto check = [&](bool pass, const std::string& what) {
      out << (pass ? "PASS  " : "FAIL  ") << what << "\n";
      ok = ok && pass;
    };
    char buf[256];
    for (const auto* table : {&reference::insertion_table(), &reference::shift_insertion_table()}) {
      for (const auto& row : table->rows) {
        const double p = f_tail_prob(row.f, row.df, table->error_df);
        const bool pass = row.p == 0.0 ? p < 0.0005 : std::fabs(p - row.p) <= 0.0005;
        std::snprintf(buf, sizeof buf, "%s %s: F=%.2f df=(%d,%d) p=%.6f printed %.3f",
                      std::string(table->algorithm).c_str(), std::string(row.source).c_str(), row.f,
                      row.df, table->error_df, p, row.p);
        check(pass, buf);
      }
      const auto stats = summary_stats(table->error_ss, table->error_df, table->total_ss, table->total_df);
      std::snprintf(buf, sizeof buf, "%s footer: S=%.7f R-Sq=%.2f%% R-Sq(adj)=%.2f%%",
                    std::string(table->algorithm).c_str(), stats.s_root_mse, 100 * stats.r_sq,
                    100 * stats.r_sq_adj);
      check(std::fabs(stats.s_root_mse - table->s) <= 1e-5 &&
                std::fabs(100 * stats.r_sq - table->r_sq_pct) <= 0.01 &&
                std::fabs(100 * stats.r_sq_adj - table->r_sq_adj_pct) <= 0.01,
            buf);
      const auto& n_row = table->rows[0];
      const double f_n = (n_row.ss / n_row.df) / (table->error_ss / table->error_df);
      std::snprintf(buf, sizeof buf, "%s F(n) from SS: %.1f vs printed %.2f",
                    std::string(table->algorithm).c_str(), f_n, n_row.f);
      check(std::fabs(f_n - n_row.f) <= 1e-3 * n_row.f, buf);
    }
    out << (ok ? "selftest passed\n" : "selftest FAILED\n");
    return ok ? kExitOk : kExitNumerical;
  });
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sortlab: insertion-sort variants, factorial timing experiments and ANOVA"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::uint64_t run_seed = 0;
  bool no_timing = false;
  auto* run = app.add_subcommand("run", "Run every cell of a plan; write one dataset CSV per algorithm");
  run->add_option("--plan", run_args.plan_path, "Plan JSON file")->required();
  run->add_option("--out", run_args.output_dir, "Output directory")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "Override the plan's master seed");
  run->add_flag("--no-timing", no_timing, "Skip wall-clock measurement (counters only)");

  AnovaArgs anova_args;
  std::string anova_format = "text";
  std::string anova_out;
  auto* anova_cmd = app.add_subcommand("anova", "Fixed-effects ANOVA of one dataset");
  anova_cmd->add_option("dataset", anova_args.dataset_path, "Dataset CSV")->required();
  anova_cmd->add_option("--response", anova_args.response, "time_seconds | comparisons | writes");
  anova_cmd->add_option("--format", anova_format, "text | csv | json");
  anova_cmd->add_option("--out", anova_out, "Write to file instead of stdout");

  CompareArgs cmp_args;
  std::string cmp_format = "text";
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Compare two algorithms' sensitivity to each source");
  compare->add_option("dataset_a", cmp_args.dataset_a, "First dataset CSV")->required();
  compare->add_option("dataset_b", cmp_args.dataset_b, "Second dataset CSV")->required();
  compare->add_option("--response", cmp_args.response, "time_seconds | comparisons | writes");
  compare->add_option("--alpha", cmp_args.alpha, "Significance level");
  compare->add_option("--format", cmp_format, "text | csv | json");
  compare->add_option("--out", cmp_out, "Write to file instead of stdout");

  double f_value = 0.0;
  int d1 = 1, d2 = 1;
  auto* fprob = app.add_subcommand("fprob", "Upper-tail probability of the F distribution");
  fprob->add_option("f", f_value, "Variance ratio")->required();
  fprob->add_option("d1", d1, "Numerator degrees of freedom")->required();
  fprob->add_option("d2", d2, "Denominator degrees of freedom")->required();

  GenArgs gen_args;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Dump a normal sample as one-column CSV");
  gen->add_option("-n,--count", gen_args.n, "Sample size")->required();
  gen->add_option("-m,--mean", gen_args.m, "Mean");
  gen->add_option("-s,--sd", gen_args.s, "Standard deviation");
  gen->add_option("--seed", gen_args.seed, "Seed");
  gen->add_option("--out", gen_out, "Write to file instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Check F/p and footer statistics against the reference tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? kExitOk : kExitValidation;
  }

  auto format_or = [&](const std::string& text, Format& target) {
    auto f = parse_format(text);
    if (!f) {
      err << "error: unknown format '" << text << "' (expected text, csv or json)\n";
      return false;
    }
    target = *f;
    return true;
  };

  if (run->parsed()) {
    if (*seed_opt) run_args.seed = run_seed;
    run_args.timing = !no_timing;
    return cmd_run(run_args, out, err);
  }
  if (anova_cmd->parsed()) {
    if (!format_or(anova_format, anova_args.format)) return kExitValidation;
    if (!anova_out.empty()) anova_args.output_path = anova_out;
    return cmd_anova(anova_args, out, err);
  }
  if (compare->parsed()) {
    if (!format_or(cmp_format, cmp_args.format)) return kExitValidation;
    if (!cmp_out.empty()) cmp_args.output_path = cmp_out;
    return cmd_compare(cmp_args, out, err);
  }
  if (fprob->parsed()) return cmd_fprob(f_value, d1, d2, out, err);
  if (gen->parsed()) {
    if (!gen_out.empty()) gen_args.output_path = gen_out;
    return cmd_gen(gen_args, out, err);
  }
  if (selftest->parsed()) return cmd_selftest(out, err);
  return kExitValidation;
}

}  // namespace sortlab::cli
