#pragma once

#include "qcs/types.hpp"

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qcs {

/// Calendar date. Comparison is field-wise (year, month, day), which
/// coincides with chronological order.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static Date parse(const std::string& iso);  // YYYY-MM-DD
  std::string iso() const;

  /// Days since 1970-01-01 (proleptic Gregorian).
  long serial() const noexcept;
  static Date from_serial(long days) noexcept;

  auto operator<=>(const Date&) const = default;
};

/// ISO-8601 day of week, 1 = Monday .. 7 = Sunday.
int iso_weekday(const Date& d) noexcept;

/// ISO-8601 (week-year, week-number) pair.
std::pair<int, int> iso_week(const Date& d) noexcept;

enum class ReturnKind { simple, log_return };
enum class Frequency { daily, weekly, monthly };

struct PriceTable {
  std::vector<Date> dates;          // strictly increasing
  std::vector<std::string> tickers;
  Mat prices;                       // dates x tickers, all > 0
};

struct ReturnPanel {
  std::vector<Date> dates;
  std::vector<std::string> tickers;
  Mat returns;  // n x d
  ReturnKind kind = ReturnKind::simple;
  Frequency frequency = Frequency::daily;

  Index n() const noexcept { return returns.rows(); }
  Index d() const noexcept { return returns.cols(); }
};

enum class BenchmarkSource { external_index, weighted };

struct BenchmarkSeries {
  std::vector<Date> dates;
  Vec values;
  BenchmarkSource source = BenchmarkSource::external_index;
  Vec loadings;  // nonempty only for weighted benchmarks
};

/// Date-indexed CSV with arbitrary finite values (no positivity check).
/// Shared representation behind price and raw-value loading.
struct ValueTable {
  std::vector<Date> dates;
  std::vector<std::string> columns;
  Mat values;
};

/// Parses a date-indexed CSV: header row `date,<name>,...`, ISO dates,
/// one value per cell. Rows are sorted by date; duplicate dates, blank
/// cells, and malformed rows are rejected with the offending line number.
ValueTable read_value_table(std::istream& in, const std::string& name);
ValueTable load_value_table(const std::filesystem::path& path);

PriceTable load_prices(const std::filesystem::path& path);
PriceTable read_prices(std::istream& in, const std::string& name);

ReturnPanel compute_returns(const PriceTable& prices, ReturnKind kind, Frequency freq);

/// Restricts both inputs to the intersection of their dates (kept in
/// ascending order). Throws data_error when the intersection is empty.
std::pair<ReturnPanel, BenchmarkSeries> align(const ReturnPanel& panel,
                                              const BenchmarkSeries& bench);

/// Benchmark Y_k = sum_i a_i * X_{k,i}; all loadings must be > 0.
BenchmarkSeries weighted_benchmark(const ReturnPanel& panel, const Vec& loadings);

/// Re-serializes a panel in the input CSV format.
void write_panel_csv(std::ostream& out, const ReturnPanel& panel);

}  // namespace qcs
