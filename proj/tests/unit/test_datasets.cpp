#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <string>

#include "kdeplex/datasets.hpp"
#include "kdeplex/errors.hpp"

using namespace kdeplex;
using std::chrono::sys_days;
using std::chrono::year;

namespace {

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size());
}

// Gap-free daily closes from `first` for `days` days.
std::string daily_prices(Date first, int days) {
    std::string csv = "Date,Open,Close\n";
    sys_days day{first};
    for (int i = 0; i < days; ++i, day += std::chrono::days{1}) {
        const double close = 100.0 * std::exp(0.01 * std::sin(0.3 * i));
        csv += format_date(Date{day}) + ",1," + format_real(close) + "\n";
    }
    return csv;
}

} // namespace

TEST(Simulate, LawOfLargeNumbers) {
    const auto g = simulate_values({SimDistribution::gaussian, 100000, 1});
    EXPECT_NEAR(mean_of(g), 0.0, 0.02);
    EXPECT_NEAR(std::sqrt(variance_of(g)), 1.0, 0.02);

    const auto mix = simulate_values({SimDistribution::mixture, 100000, 2});
    EXPECT_NEAR(mean_of(mix), -0.25, 0.02);

    const auto t = simulate_values({SimDistribution::student5, 100000, 3});
    EXPECT_NEAR(variance_of(t), 5.0 / 3.0, 0.1);
}

TEST(Simulate, BitReproducible) {
    for (auto dist : {SimDistribution::gaussian, SimDistribution::mixture, SimDistribution::student5}) {
        EXPECT_EQ(simulate_values({dist, 500, 42}), simulate_values({dist, 500, 42}));
        EXPECT_NE(simulate_values({dist, 500, 42}), simulate_values({dist, 500, 43}));
    }
    EXPECT_EQ(simulate({SimDistribution::gaussian, 10, 0}).size(), 10u);
    EXPECT_THROW(simulate_values({SimDistribution::gaussian, 1, 0}), InvalidInput);
}

TEST(Simulate, Names) {
    EXPECT_EQ(parse_sim_distribution("student5"), SimDistribution::student5);
    EXPECT_EQ(to_string(SimDistribution::mixture), "mixture");
    EXPECT_THROW(parse_sim_distribution("cauchy"), InvalidInput);
}

TEST(TruePdf, ClosedForms) {
    EXPECT_NEAR(true_pdf(SimDistribution::gaussian, 0.0), 0.398942, 1e-6);
    EXPECT_NEAR(true_pdf(SimDistribution::mixture, 0.0), 0.182650, 1e-6);
    EXPECT_NEAR(true_pdf(SimDistribution::student5, 0.0), 0.379607, 1e-6);
    EXPECT_NEAR(true_pdf(SimDistribution::mixture, -1.25), 0.6 * 0.398942 + 0.4 * std::exp(-1.25 * 1.25 * 2) * 0.398942, 1e-6);
}

TEST(Dates, StrictParsing) {
    EXPECT_EQ(parse_date("2020-02-29"), Date{year{2020} / 2 / 29});
    EXPECT_EQ(format_date(Date{year{2019} / 1 / 5}), "2019-01-05");
    EXPECT_THROW(parse_date("2019-02-29"), InvalidInput);
    EXPECT_THROW(parse_date("2019-1-05"), InvalidInput);
    EXPECT_THROW(parse_date("2019-01-05T00:00"), InvalidInput);
}

TEST(Ingest, SingleLogReturn) {
    const IngestResult r = ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,110\n");
    ASSERT_EQ(r.series.returns.size(), 1u);
    EXPECT_NEAR(r.series.returns[0], 0.0953102, 1e-7);
    EXPECT_EQ(r.series.dates[0], Date{year{2020} / 1 / 2});
    EXPECT_EQ(r.dropped_rows, 0u);

    IngestConfig simple;
    simple.kind = ReturnKind::simple;
    EXPECT_NEAR(ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,110\n", simple).series.returns[0], 0.1, 1e-15);
}

TEST(Ingest, OrderDoesNotMatter) {
    const auto sorted = ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,110\n2020-01-03,99\n").series;
    const auto shuffled = ingest_prices("Date,Close\n2020-01-03,99\n2020-01-01,100\n2020-01-02,110\n").series;
    EXPECT_EQ(sorted.dates, shuffled.dates);
    EXPECT_EQ(sorted.returns, shuffled.returns);
}

TEST(Ingest, DropsMissingAndNonPositivePrices) {
    const IngestResult r = ingest_prices(
        "Date,Close\n2020-01-01,100\n2020-01-02,null\n2020-01-03,\n2020-01-04,-5\n2020-01-05,0\n2020-01-06,121\n");
    EXPECT_EQ(r.dropped_rows, 4u);
    ASSERT_EQ(r.series.returns.size(), 1u);
    EXPECT_NEAR(r.series.returns[0], std::log(1.21), 1e-15);
}

TEST(Ingest, Errors) {
    try {
        ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,1\n2020-01-01,3\n2020-01-02,4\n");
        FAIL();
    } catch (const ParseError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("2020-01-01"), std::string::npos);
        EXPECT_NE(what.find("2020-01-02"), std::string::npos);
    }
    try {
        ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,abc\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
    }
    EXPECT_THROW(ingest_prices("Date,Close\n2020-01-01,100\n2020-01-02,NA\n"), ParseError);
    EXPECT_THROW(ingest_prices("Date,Price\n2020-01-01,100\n2020-01-02,101\n"), ParseError);
    EXPECT_THROW(ingest_prices("Date,Close\n2020-13-01,100\n2020-01-02,101\n"), ParseError);

    IngestConfig renamed;
    renamed.price_column = "Price";
    EXPECT_NO_THROW(ingest_prices("Date,Price\n2020-01-01,100\n2020-01-02,101\n", renamed));
}

TEST(Slicing, YearsAndLeapYear) {
    const ReturnSeries s = ingest_prices(daily_prices(Date{year{2018} / 12 / 31}, 366 + 365 + 2)).series;
    EXPECT_EQ(kdeplex::years(s), (std::vector<int>{2019, 2020, 2021}));
    EXPECT_EQ(slice_by_year(s, 2019).size(), 365u);
    EXPECT_EQ(slice_by_year(s, 2020).size(), 366u);
    EXPECT_THROW(slice_by_year(s, 2024), InvalidInput);

    std::size_t total = 0;
    for (int y : kdeplex::years(s)) total += year_returns(s, y).size();
    EXPECT_EQ(total, s.returns.size());

    const auto path = year_log_prices(s, 2019);
    const auto r = year_returns(s, 2019);
    ASSERT_EQ(path.size(), r.size() + 1);
    EXPECT_EQ(path.front(), 0.0);
    EXPECT_NEAR(path.back(), std::accumulate(r.begin(), r.end(), 0.0), 1e-12);
}

TEST(Slicing, SingleYearSeriesIsWhole) {
    const ReturnSeries s = ingest_prices(daily_prices(Date{year{2019} / 1 / 1}, 365)).series;
    const auto slice = year_returns(s, 2019);
    EXPECT_EQ(slice, s.returns);
}

TEST(Csv, RealRoundTrip) {
    for (double v : {0.1, -1e-300, 1.0 / 3.0, 6.02214076e23, 5e-324}) EXPECT_EQ(parse_real(format_real(v)), v);
    EXPECT_THROW(parse_real("1.0x"), InvalidInput);
}

TEST(Csv, ReturnSeriesRoundTrip) {
    const ReturnSeries s = ingest_prices(daily_prices(Date{year{2020} / 1 / 1}, 40)).series;
    const ReturnSeries back = read_return_series_csv(write_return_series_csv(s));
    EXPECT_EQ(back.dates, s.dates);
    EXPECT_EQ(back.returns, s.returns);
}

TEST(Csv, SampleRoundTrip) {
    const auto v = simulate_values({SimDistribution::student5, 200, 8});
    EXPECT_EQ(read_sample_csv(write_sample_csv(v)), v);
    EXPECT_EQ(read_sample_csv("x\n1.5\n-2\n"), (std::vector<double>{1.5, -2.0}));
    EXPECT_THROW(read_sample_csv("index,value\n0,oops\n"), ParseError);
}
