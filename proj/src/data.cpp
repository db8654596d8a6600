#include "qcs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qcs {

namespace {

// Howard Hinnant's civil-calendar algorithms.
long days_from_civil(int y, int m, int d) noexcept {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                       static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

Date civil_from_days(long z) noexcept {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

bool is_leap(int y) noexcept { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) noexcept {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : lengths[m - 1];
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw data_error("invalid integer field '" + std::string(s) + "'");
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Date Date::parse(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
    throw data_error("invalid date '" + iso + "', expected YYYY-MM-DD");
  Date d;
  try {
    d.year = parse_int(std::string_view(iso).substr(0, 4));
    d.month = parse_int(std::string_view(iso).substr(5, 2));
    d.day = parse_int(std::string_view(iso).substr(8, 2));
  } catch (const data_error&) {
    throw data_error("invalid date '" + iso + "', expected YYYY-MM-DD");
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
    throw data_error("invalid calendar date '" + iso + "'");
  return d;
}

std::string Date::iso() const {
  char buf[11];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

long Date::serial() const noexcept { return days_from_civil(year, month, day); }

Date Date::from_serial(long days) noexcept { return civil_from_days(days); }

int iso_weekday(const Date& d) noexcept {
  // 1970-01-01 was a Thursday (ISO weekday 4).
  long wd = (d.serial() + 3) % 7;
  if (wd < 0) wd += 7;
  return static_cast<int>(wd) + 1;
}

std::pair<int, int> iso_week(const Date& d) noexcept {
  // The ISO week of a date is the week of the Thursday in the same
  // Monday-based week.
  const long thursday = d.serial() + (4 - iso_weekday(d));
  const Date th = civil_from_days(thursday);
  const long jan1 = days_from_civil(th.year, 1, 1);
  const int week = static_cast<int>((thursday - jan1) / 7) + 1;
  return {th.year, week};
}

ValueTable read_value_table(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw data_error(name + ": empty file");

  auto header = split_csv_line(line);
  for (auto& h : header) h = trim(h);
  if (header.size() < 2 || header[0] != "date")
    throw data_error(name + ": header must be 'date,<column>,...', got '" + line + "'");
  for (std::size_t j = 1; j < header.size(); ++j)
    if (header[j].empty()) throw data_error(name + ": empty column name in header");

  const std::size_t ncols = header.size() - 1;
  std::vector<Date> dates;
  std::vector<std::vector<double>> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != ncols + 1)
      throw data_error(name + ": line " + std::to_string(line_no) + ": expected " +
                       std::to_string(ncols + 1) + " fields, got " +
                       std::to_string(fields.size()));
    Date date;
    try {
      date = Date::parse(trim(fields[0]));
    } catch (const data_error& e) {
      throw data_error(name + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    std::vector<double> row(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      const std::string cell = trim(fields[j + 1]);
      if (cell.empty())
        throw data_error(name + ": line " + std::to_string(line_no) + ": blank cell for " +
                         header[j + 1] + " on " + date.iso());
      try {
        std::size_t used = 0;
        row[j] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw data_error(name + ": line " + std::to_string(line_no) + ": invalid value '" +
                         cell + "' for " + header[j + 1]);
      }
      if (!std::isfinite(row[j]))
        throw data_error(name + ": line " + std::to_string(line_no) + ": non-finite value for " +
                         header[j + 1]);
    }
    dates.push_back(date);
    rows.push_back(std::move(row));
  }
  if (dates.empty()) throw data_error(name + ": no data rows");

  std::vector<std::size_t> order(dates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dates[a] < dates[b]; });

  ValueTable table;
  table.columns.assign(header.begin() + 1, header.end());
  table.dates.resize(dates.size());
  table.values.resize(static_cast<Index>(dates.size()), static_cast<Index>(ncols));
  for (std::size_t i = 0; i < order.size(); ++i) {
    table.dates[i] = dates[order[i]];
    if (i > 0 && !(table.dates[i - 1] < table.dates[i]))
      throw data_error(name + ": duplicate date " + table.dates[i].iso());
    for (std::size_t j = 0; j < ncols; ++j)
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[order[i]][j];
  }
  return table;
}

ValueTable load_value_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path.string());
  return read_value_table(in, path.filename().string());
}

PriceTable read_prices(std::istream& in, const std::string& name) {
  ValueTable table = read_value_table(in, name);
  for (Index i = 0; i < table.values.rows(); ++i)
    for (Index j = 0; j < table.values.cols(); ++j)
      if (!(table.values(i, j) > 0.0))
        throw data_error(name + ": non-positive price for " +
                         table.columns[static_cast<std::size_t>(j)] + " on " +
                         table.dates[static_cast<std::size_t>(i)].iso());
  return PriceTable{std::move(table.dates), std::move(table.columns), std::move(table.values)};
}

PriceTable load_prices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path.string());
  return read_prices(in, path.filename().string());
}

ReturnPanel compute_returns(const PriceTable& prices, ReturnKind kind, Frequency freq) {
  const std::size_t n = prices.dates.size();

  // Keep the last trading date of each aggregation bucket.
  std::vector<std::size_t> keep;
  if (freq == Frequency::daily) {
    keep.resize(n);
    std::iota(keep.begin(), keep.end(), 0);
  } else {
    auto key = [&](const Date& d) -> std::pair<int, int> {
      return freq == Frequency::weekly ? iso_week(d) : std::pair<int, int>{d.year, d.month};
    };
    for (std::size_t i = 0; i < n; ++i)
      if (i + 1 == n || key(prices.dates[i]) != key(prices.dates[i + 1])) keep.push_back(i);
  }
  if (keep.size() < 2)
    throw data_error("need at least 2 observations after aggregation, got " +
                     std::to_string(keep.size()));

  ReturnPanel panel;
  panel.tickers = prices.tickers;
  panel.kind = kind;
  panel.frequency = freq;
  const Index m = static_cast<Index>(keep.size()) - 1;
  const Index d = prices.prices.cols();
  panel.dates.resize(static_cast<std::size_t>(m));
  panel.returns.resize(m, d);
  for (Index t = 0; t < m; ++t) {
    panel.dates[static_cast<std::size_t>(t)] = prices.dates[keep[static_cast<std::size_t>(t) + 1]];
    const auto prev = prices.prices.row(static_cast<Index>(keep[static_cast<std::size_t>(t)]));
    const auto cur = prices.prices.row(static_cast<Index>(keep[static_cast<std::size_t>(t) + 1]));
    if (kind == ReturnKind::simple)
      panel.returns.row(t) = cur.cwiseQuotient(prev).array() - 1.0;
    else
      panel.returns.row(t) = cur.cwiseQuotient(prev).array().log();
  }
  return panel;
}

std::pair<ReturnPanel, BenchmarkSeries> align(const ReturnPanel& panel,
                                              const BenchmarkSeries& bench) {
  std::vector<Index> prows, brows;
  std::size_t i = 0, j = 0;
  while (i < panel.dates.size() && j < bench.dates.size()) {
    if (panel.dates[i] < bench.dates[j]) {
      ++i;
    } else if (bench.dates[j] < panel.dates[i]) {
      ++j;
    } else {
      prows.push_back(static_cast<Index>(i));
      brows.push_back(static_cast<Index>(j));
      ++i;
      ++j;
    }
  }
  if (prows.empty()) throw data_error("panel and benchmark dates do not overlap");

  ReturnPanel p2;
  p2.tickers = panel.tickers;
  p2.kind = panel.kind;
  p2.frequency = panel.frequency;
  p2.dates.reserve(prows.size());
  p2.returns.resize(static_cast<Index>(prows.size()), panel.returns.cols());
  BenchmarkSeries b2;
  b2.source = bench.source;
  b2.loadings = bench.loadings;
  b2.dates.reserve(brows.size());
  b2.values.resize(static_cast<Index>(brows.size()));
  for (std::size_t k = 0; k < prows.size(); ++k) {
    p2.dates.push_back(panel.dates[static_cast<std::size_t>(prows[k])]);
    p2.returns.row(static_cast<Index>(k)) = panel.returns.row(prows[k]);
    b2.dates.push_back(bench.dates[static_cast<std::size_t>(brows[k])]);
    b2.values[static_cast<Index>(k)] = bench.values[brows[k]];
  }
  return {std::move(p2), std::move(b2)};
}

BenchmarkSeries weighted_benchmark(const ReturnPanel& panel, const Vec& loadings) {
  if (loadings.size() != panel.d())
    throw domain_error("loading vector length " + std::to_string(loadings.size()) +
                       " does not match panel width " + std::to_string(panel.d()));
  for (Index i = 0; i < loadings.size(); ++i)
    if (!(loadings[i] > 0.0))
      throw domain_error("benchmark loadings must be strictly positive");
  BenchmarkSeries bench;
  bench.dates = panel.dates;
  bench.values = panel.returns * loadings;
  bench.source = BenchmarkSource::weighted;
  bench.loadings = loadings;
  return bench;
}

void write_panel_csv(std::ostream& out, const ReturnPanel& panel) {
  out << "date";
  for (const auto& t : panel.tickers) out << ',' << t;
  out << '\n';
  out.precision(17);
  for (Index i = 0; i < panel.n(); ++i) {
    out << panel.dates[static_cast<std::size_t>(i)].iso();
    for (Index j = 0; j < panel.d(); ++j) out << ',' << panel.returns(i, j);
    out << '\n';
  }
}

}  // namespace qcs
