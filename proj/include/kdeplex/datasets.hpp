#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kdeplex/sample.hpp"

namespace kdeplex {

enum class SimDistribution { gaussian, mixture, student5 };

std::string_view to_string(SimDistribution dist);
SimDistribution parse_sim_distribution(std::string_view name);

struct SimSpec {
    SimDistribution dist = SimDistribution::gaussian;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
};

// Draws n observations. gaussian: N(0, 1); mixture: N(-1.25, 1) with
// probability 0.6, else N(1.25, 1); student5: Student t with 5 degrees of
// freedom, as Z / sqrt(chi2_5 / 5). Bit-reproducible for a fixed spec.
std::vector<double> simulate_values(const SimSpec& spec);
Sample simulate(const SimSpec& spec);

double true_pdf(SimDistribution dist, double x);

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

enum class ReturnKind { log, simple };

struct IngestConfig {
    std::string date_column = "Date";
    std::string price_column = "Close";
    ReturnKind kind = ReturnKind::log;
};

// Dated returns, each stamped with the later of its two price dates.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> returns;
    std::string source;
};

struct IngestResult {
    ReturnSeries series;
    std::size_t dropped_rows = 0;  // missing or non-positive prices
};

// Parses a price CSV (header row required). Rows are sorted by date; rows
// whose price is empty, "null", "NA" or non-positive are dropped and
// counted. Throws ParseError for unparseable fields (with the row number),
// duplicate dates, or fewer than 2 usable rows.
IngestResult ingest_prices(std::string_view csv, const IngestConfig& config = {}, std::string source = {});

// Returns dated in `year`, in date order. Throws InvalidInput when the
// year has no returns.
Sample slice_by_year(const ReturnSeries& series, int year);
std::vector<double> year_returns(const ReturnSeries& series, int year);

// Log-price path of `year` rebuilt from its log returns, starting at 0.
std::vector<double> year_log_prices(const ReturnSeries& series, int year);

std::vector<int> years(const ReturnSeries& series);

// Decimal with 17 significant digits; round-trips exactly.
std::string format_real(double value);
double parse_real(std::string_view text);

// "date,return" CSV.
std::string write_return_series_csv(const ReturnSeries& series);
ReturnSeries read_return_series_csv(std::string_view csv, std::string source = {});

// "index,value" CSV. The reader takes the "value" column, or the only
// column of a single-column file.
std::string write_sample_csv(std::span<const double> values);
std::vector<double> read_sample_csv(std::string_view csv);

} // namespace kdeplex
