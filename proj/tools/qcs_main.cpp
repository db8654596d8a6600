// qcs: quantile-conditional statistics toolkit.
//
// Subcommands: qq, tailstat, mc-null, backtest, recover-cov.
// Exit codes: 0 success, 2 usage/configuration error, 1 data or numeric
// failure.

#include "qcs/backtest.hpp"
#include "qcs/conditional.hpp"
#include "qcs/data.hpp"
#include "qcs/manifest.hpp"
#include "qcs/markowitz.hpp"
#include "qcs/normal.hpp"
#include "qcs/qq.hpp"
#include "qcs/serialize.hpp"
#include "qcs/tail.hpp"
#include "qcs/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qcs;

QuantileWindow window_from_p(double p) {
  // Symmetric windows only on the CLI; q is forced to 1-p.
  return QuantileWindow(p, 1.0 - p);
}

ReturnKind parse_kind(const std::string& kind) {
  if (kind == "simple") return ReturnKind::simple;
  if (kind == "log") return ReturnKind::log_return;
  throw domain_error("unknown return kind '" + kind + "' (expected simple|log)");
}

Frequency parse_frequency(const std::string& freq) {
  if (freq == "daily") return Frequency::daily;
  if (freq == "weekly") return Frequency::weekly;
  if (freq == "monthly") return Frequency::monthly;
  throw domain_error("unknown frequency '" + freq + "' (expected daily|weekly|monthly)");
}

Index column_index(const std::vector<std::string>& names, const std::string& wanted) {
  const auto it = std::find(names.begin(), names.end(), wanted);
  if (it == names.end())
    throw data_error("column '" + wanted + "' not found in input");
  return static_cast<Index>(it - names.begin());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write output: " + path.string());
  out << text;
}

BenchmarkSeries index_returns(const std::filesystem::path& path, ReturnKind kind,
                              Frequency freq) {
  const PriceTable prices = load_prices(path);
  if (prices.tickers.size() != 1)
    throw data_error("benchmark file must have exactly one value column, got " +
                     std::to_string(prices.tickers.size()));
  const ReturnPanel panel = compute_returns(prices, kind, freq);
  BenchmarkSeries bench;
  bench.dates = panel.dates;
  bench.values = panel.returns.col(0);
  bench.source = BenchmarkSource::external_index;
  return bench;
}

// --- qq ---------------------------------------------------------------

struct QqArgs {
  std::string input, ticker, out;
  std::string freq = "daily", kind = "simple";
  double p = 0.198, level = 0.95;
};

int run_qq(const QqArgs& args) {
  const QuantileWindow window = window_from_p(args.p);
  const PriceTable prices = load_prices(args.input);
  const ReturnPanel panel =
      compute_returns(prices, parse_kind(args.kind), parse_frequency(args.freq));
  const Index col = column_index(panel.tickers, args.ticker);
  const Vec values = panel.returns.col(col);

  const QqDataset data = qq_dataset(values, /*standardize=*/true, args.level, window);

  std::ostringstream csv;
  write_qq_csv(csv, data);
  write_text(args.out + ".csv", csv.str());
  json meta = qq_metadata_json(data);
  meta["ticker"] = args.ticker;
  meta["frequency"] = args.freq;
  meta["return_kind"] = args.kind;
  write_text(args.out + ".meta.json", meta.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "qq";
  manifest.config = json{{"input", args.input}, {"ticker", args.ticker},
                         {"freq", args.freq},   {"kind", args.kind},
                         {"p", args.p},         {"level", args.level},
                         {"out", args.out}};
  manifest.add_input(args.input);
  manifest.write(args.out + ".manifest.json");

  std::cout << "wrote " << args.out << ".csv (" << data.points.size() << " points, "
            << data.band.size() << " band rows)\n";
  return 0;
}

// --- tailstat ---------------------------------------------------------

struct TailArgs {
  std::string input, column, null_table;
  double p;
};

int run_tailstat(const TailArgs& args) {
  const QuantileWindow window = window_from_p(args.p);
  const ValueTable table = load_value_table(args.input);
  const Index col = column_index(table.columns, args.column);
  const Vec values = table.values.col(col);

  const TailStatResult result = tail_statistic(values, window);
  std::cout << "S_n = " << result.s_n << "\n"
            << "n = " << result.n << "\n"
            << "window = [" << result.window.p << ", " << result.window.q << "]\n"
            << "sigma_hat2 = " << result.sigma_hat2 << "\n"
            << "sigma_bar2 = " << result.sigma_bar2 << "\n";

  if (!args.null_table.empty()) {
    const NullTable null = load_null_table(args.null_table);
    const NullComparison cmp = compare_to_null(result, null);
    std::cout << "z_score = " << cmp.z_score << "\n"
              << "percentile = " << cmp.percentile << "\n";
  }
  return 0;
}

// --- mc-null ----------------------------------------------------------

struct McNullArgs {
  std::string dist = "normal", out;
  double df = 0.0;
  bool has_df = false;
  long long n = 0, reps = 10000;
  std::uint64_t seed = 42;
  double p;
};

int run_mc_null(const McNullArgs& args) {
  const QuantileWindow window = window_from_p(args.p);
  NullDistribution dist;
  if (args.dist == "normal") {
    dist = NullDistribution::normal;
  } else if (args.dist == "t") {
    dist = NullDistribution::student_t;
    if (!args.has_df) throw domain_error("--dist t requires --df");
  } else {
    throw domain_error("unknown distribution '" + args.dist + "' (expected normal|t)");
  }

  const NullTable table = mc_null_table(dist, args.df, args.n, args.reps, window, args.seed);
  write_text(args.out, null_table_to_json(table).dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "mc-null";
  manifest.config = json{{"dist", args.dist}, {"n", args.n},   {"reps", args.reps},
                         {"p", args.p},       {"out", args.out}};
  if (args.has_df) manifest.config["df"] = args.df;
  manifest.seed = args.seed;
  manifest.write(args.out + ".manifest.json");

  std::cout << "wrote " << args.out << " (mean = " << table.mean << ", sd = " << table.sd
            << ")\n";
  return 0;
}

// --- backtest ---------------------------------------------------------

struct BacktestArgs {
  std::string prices, index, out_dir;
  long long learn = 120, hold = 60;
  std::string methods = "m,cm";
  double p;
};

int run_backtest_cmd(const BacktestArgs& args) {
  BacktestConfig config;
  config.learn_days = args.learn;
  config.hold_days = args.hold;
  config.window = window_from_p(args.p);
  config.run_classical = false;
  config.run_conditional = false;
  std::stringstream methods(args.methods);
  std::string method;
  while (std::getline(methods, method, ',')) {
    std::transform(method.begin(), method.end(), method.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (method == "m")
      config.run_classical = true;
    else if (method == "cm")
      config.run_conditional = true;
    else
      throw domain_error("unknown method '" + method + "' (expected m|cm)");
  }

  const PriceTable prices = load_prices(args.prices);
  const ReturnPanel panel = compute_returns(prices, ReturnKind::simple, Frequency::daily);
  const BenchmarkSeries index =
      index_returns(args.index, ReturnKind::simple, Frequency::daily);
  const auto [aligned_panel, aligned_index] = align(panel, index);

  const BacktestReport report = run_backtest(aligned_panel, aligned_index, config);

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  write_text(dir / "report.json", report_to_json(report).dump(2) + "\n");
  std::ostringstream csv;
  write_cumulative_csv(csv, report);
  write_text(dir / "cumulative.csv", csv.str());

  RunManifest manifest;
  manifest.command = "backtest";
  manifest.config = json{{"prices", args.prices}, {"index", args.index},
                         {"learn", args.learn},   {"hold", args.hold},
                         {"methods", args.methods}, {"p", args.p},
                         {"out_dir", args.out_dir}};
  manifest.add_input(args.prices);
  manifest.add_input(args.index);
  manifest.write(dir / "manifest.json");

  for (const auto& s : report.strategies) {
    std::cout << s.method << ": " << s.rebalances.size() << " rebalances";
    if (s.sharpe) std::cout << ", sharpe = " << *s.sharpe;
    if (!s.skipped.empty()) std::cout << ", skipped " << s.skipped.size() << " blocks";
    std::cout << "\n";
  }
  return 0;
}

// --- recover-cov ------------------------------------------------------

struct RecoverArgs {
  std::string input, benchmark, out;
  double p;
};

int run_recover_cov(const RecoverArgs& args) {
  const QuantileWindow window = window_from_p(args.p);
  window.require_interior();

  const PriceTable prices = load_prices(args.input);
  ReturnPanel panel = compute_returns(prices, ReturnKind::simple, Frequency::daily);

  BenchmarkSeries bench;
  std::vector<std::string> extra_inputs;
  if (args.benchmark.rfind("external:", 0) == 0) {
    const std::string path = args.benchmark.substr(9);
    bench = index_returns(path, ReturnKind::simple, Frequency::daily);
    std::tie(panel, bench) = align(panel, bench);
    extra_inputs.push_back(path);
  } else if (args.benchmark.rfind("weights:", 0) == 0) {
    std::stringstream ss(args.benchmark.substr(8));
    std::vector<double> loadings;
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        loadings.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw domain_error("invalid loading '" + item + "' in --benchmark");
      }
    }
    bench = weighted_benchmark(panel,
                               Eigen::Map<const Vec>(loadings.data(),
                                                     static_cast<Index>(loadings.size())));
  } else {
    throw domain_error("--benchmark must be external:<file> or weights:<w1,w2,...>");
  }

  const ConditionalEstimates est = conditional_estimates(panel, bench, window);
  const ReconstructedCovariance rec = reconstruct_covariance(est);
  const Moments classical = sample_moments(panel.returns);

  json out = estimates_to_json(est, &rec);
  out["tickers"] = panel.tickers;
  out["classical"] = json{{"mean", to_json(classical.mean)}, {"cov", to_json(classical.cov)}};
  write_text(args.out, out.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "recover-cov";
  manifest.config = json{{"input", args.input}, {"benchmark", args.benchmark},
                         {"p", args.p},         {"out", args.out}};
  manifest.add_input(args.input);
  for (const auto& path : extra_inputs) manifest.add_input(path);
  manifest.write(args.out + ".manifest.json");

  std::cout << "wrote " << args.out << " (window count = " << est.count << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantile-conditional statistics toolkit"};
  app.set_version_flag("--version", std::string("qcs ") + qcs::kVersion);
  app.require_subcommand(1);

  const double default_p = qcs::rule_split_quantile();

  QqArgs qq;
  auto* cmd_qq = app.add_subcommand("qq", "Q-Q plot data with confidence band and split markers");
  cmd_qq->add_option("--input", qq.input, "price CSV")->required();
  cmd_qq->add_option("--ticker", qq.ticker, "ticker column to analyze")->required();
  cmd_qq->add_option("--freq", qq.freq, "daily|weekly|monthly (default daily)");
  cmd_qq->add_option("--kind", qq.kind, "simple|log (default simple)");
  cmd_qq->add_option("--p", qq.p, "lower quantile; q = 1-p (default 0.198)");
  cmd_qq->add_option("--level", qq.level, "band confidence level (default 0.95)");
  cmd_qq->add_option("--out", qq.out, "output prefix")->required();

  TailArgs tail;
  tail.p = default_p;
  auto* cmd_tail = app.add_subcommand("tailstat", "tail-heaviness statistic S_n of one column");
  cmd_tail->add_option("--input", tail.input, "date-indexed CSV of sample values")->required();
  cmd_tail->add_option("--column", tail.column, "column to analyze")->required();
  cmd_tail->add_option("--p", tail.p, "lower quantile; q = 1-p (default 20/60/20 split)");
  cmd_tail->add_option("--null-table", tail.null_table, "null table JSON for comparison");

  McNullArgs mc;
  mc.p = default_p;
  auto* cmd_mc = app.add_subcommand("mc-null", "Monte Carlo null distribution of S_n");
  cmd_mc->add_option("--dist", mc.dist, "normal|t")->required();
  auto* df_opt = cmd_mc->add_option("--df", mc.df, "degrees of freedom for t");
  cmd_mc->add_option("--n", mc.n, "sample length per replication")->required();
  cmd_mc->add_option("--reps", mc.reps, "replications (default 10000)");
  cmd_mc->add_option("--seed", mc.seed, "stream seed (default 42)");
  cmd_mc->add_option("--p", mc.p, "lower quantile; q = 1-p (default 20/60/20 split)");
  cmd_mc->add_option("--out", mc.out, "output table JSON")->required();

  BacktestArgs bt;
  bt.p = default_p;
  auto* cmd_bt = app.add_subcommand("backtest", "rolling-window M vs CM backtest");
  cmd_bt->add_option("--prices", bt.prices, "asset price CSV")->required();
  cmd_bt->add_option("--index", bt.index, "benchmark index price CSV (single column)")->required();
  cmd_bt->add_option("--learn", bt.learn, "learning period in days (default 120)");
  cmd_bt->add_option("--hold", bt.hold, "holding period in days (default 60)");
  cmd_bt->add_option("--methods", bt.methods, "comma list of m,cm (default m,cm)");
  cmd_bt->add_option("--p", bt.p, "lower quantile; q = 1-p (default 20/60/20 split)");
  cmd_bt->add_option("--out-dir", bt.out_dir, "output directory")->required();

  RecoverArgs rc;
  rc.p = default_p;
  auto* cmd_rc = app.add_subcommand("recover-cov", "reconstruct covariance from the central window");
  cmd_rc->add_option("--input", rc.input, "asset price CSV")->required();
  cmd_rc->add_option("--benchmark", rc.benchmark,
                     "external:<file> or weights:<w1,w2,...>")->required();
  cmd_rc->add_option("--p", rc.p, "lower quantile; q = 1-p (default 20/60/20 split)");
  cmd_rc->add_option("--out", rc.out, "output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_qq) return run_qq(qq);
    if (*cmd_tail) return run_tailstat(tail);
    if (*cmd_mc) {
      mc.has_df = df_opt->count() > 0;
      return run_mc_null(mc);
    }
    if (*cmd_bt) return run_backtest_cmd(bt);
    if (*cmd_rc) return run_recover_cov(rc);
  } catch (const qcs::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
