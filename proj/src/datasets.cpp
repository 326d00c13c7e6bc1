#include "kdeplex/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "kdeplex/errors.hpp"
#include "kdeplex/normal.hpp"

namespace kdeplex {
namespace {

constexpr double kMixtureWeight = 0.6;
constexpr double kMixtureShift = 1.25;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == ',' && !quoted) {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    fields.push_back(trim(line.substr(start)));
    return fields;
}

struct CsvLine {
    std::size_t row;  // 1-based, header is row 1
    std::vector<std::string_view> fields;
};

// Splits into non-empty lines; the first is the header.
std::vector<CsvLine> split_csv(std::string_view csv) {
    if (csv.starts_with("\xEF\xBB\xBF")) csv.remove_prefix(3);
    std::vector<CsvLine> lines;
    std::size_t row = 0;
    while (!csv.empty()) {
        const std::size_t end = csv.find('\n');
        const std::string_view line = csv.substr(0, end);
        ++row;
        if (!trim(line).empty()) lines.push_back({row, split_fields(line)});
        if (end == std::string_view::npos) break;
        csv.remove_prefix(end + 1);
    }
    if (lines.empty()) throw ParseError("CSV input is empty", 0);
    return lines;
}

std::size_t column_index(const CsvLine& header, std::string_view name) {
    const auto it = std::find(header.fields.begin(), header.fields.end(), name);
    if (it == header.fields.end()) throw ParseError("missing column '" + std::string(name) + "'", header.row);
    return static_cast<std::size_t>(std::distance(header.fields.begin(), it));
}

std::string_view field(const CsvLine& line, std::size_t index) {
    if (index >= line.fields.size()) throw ParseError("too few fields", line.row);
    return line.fields[index];
}

bool is_missing(std::string_view v) {
    return v.empty() || v == "null" || v == "NULL" || v == "NA" || v == "N/A" || v == "NaN" || v == "nan";
}

int year_of(const Date& d) { return static_cast<int>(d.year()); }

} // namespace

std::string_view to_string(SimDistribution dist) {
    switch (dist) {
    case SimDistribution::gaussian: return "gaussian";
    case SimDistribution::mixture: return "mixture";
    case SimDistribution::student5: return "student5";
    }
    return "unknown";
}

SimDistribution parse_sim_distribution(std::string_view name) {
    if (name == "gaussian") return SimDistribution::gaussian;
    if (name == "mixture") return SimDistribution::mixture;
    if (name == "student5") return SimDistribution::student5;
    throw InvalidInput("unknown distribution '" + std::string(name) + "' (expected gaussian, mixture or student5)");
}

std::vector<double> simulate_values(const SimSpec& spec) {
    if (spec.n < 2) throw InvalidInput("simulation size must be at least 2");
    std::mt19937_64 engine(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(spec.n);
    switch (spec.dist) {
    case SimDistribution::gaussian:
        for (auto& v : out) v = normal(engine);
        break;
    case SimDistribution::mixture: {
        std::bernoulli_distribution left(kMixtureWeight);
        for (auto& v : out) {
            const double centre = left(engine) ? -kMixtureShift : kMixtureShift;
            v = centre + normal(engine);
        }
        break;
    }
    case SimDistribution::student5:
        for (auto& v : out) {
            const double z = normal(engine);
            double chi2 = 0.0;
            for (int k = 0; k < 5; ++k) {
                const double g = normal(engine);
                chi2 += g * g;
            }
            v = z / std::sqrt(chi2 / 5.0);
        }
        break;
    }
    return out;
}

Sample simulate(const SimSpec& spec) { return Sample(simulate_values(spec)); }

double true_pdf(SimDistribution dist, double x) {
    switch (dist) {
    case SimDistribution::gaussian: return normal_pdf(x);
    case SimDistribution::mixture:
        return kMixtureWeight * normal_pdf(x + kMixtureShift) + (1.0 - kMixtureWeight) * normal_pdf(x - kMixtureShift);
    case SimDistribution::student5: {
        // Gamma(3) / (sqrt(5 pi) Gamma(5/2)) (1 + x^2/5)^-3
        const double norm = std::exp(std::lgamma(3.0) - std::lgamma(2.5)) / std::sqrt(5.0 * std::numbers::pi);
        return norm * std::pow(1.0 + x * x / 5.0, -3.0);
    }
    }
    return 0.0;
}

Date parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto parse_part = [&](std::string_view part, auto& out) {
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && ptr == part.data() + part.size();
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_part(text.substr(0, 4), y) ||
        !parse_part(text.substr(5, 2), m) || !parse_part(text.substr(8, 2), d)) {
        throw InvalidInput("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw InvalidInput("invalid calendar date '" + std::string(text) + "'");
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    const int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    return value;
}

IngestResult ingest_prices(std::string_view csv, const IngestConfig& config, std::string source) {
    const auto lines = split_csv(csv);
    const std::size_t date_col = column_index(lines.front(), config.date_column);
    const std::size_t price_col = column_index(lines.front(), config.price_column);

    struct Row {
        Date date;
        double price;
    };
    std::vector<Row> rows;
    IngestResult result;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        Date date;
        try {
            date = parse_date(field(line, date_col));
        } catch (const InvalidInput& e) {
            throw ParseError(e.what(), line.row);
        }
        const std::string_view price_text = field(line, price_col);
        if (is_missing(price_text)) {
            ++result.dropped_rows;
            continue;
        }
        double price = 0.0;
        try {
            price = parse_real(price_text);
        } catch (const InvalidInput& e) {
            throw ParseError(e.what(), line.row);
        }
        if (!std::isfinite(price) || !(price > 0.0)) {
            ++result.dropped_rows;
            continue;
        }
        rows.push_back({date, price});
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    std::string duplicates;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date && (i < 2 || rows[i - 2].date != rows[i].date)) {
            duplicates += (duplicates.empty() ? "" : ", ") + format_date(rows[i].date);
        }
    }
    if (!duplicates.empty()) throw ParseError("duplicate dates: " + duplicates, 0);
    if (rows.size() < 2) throw ParseError("fewer than 2 usable price rows", 0);

    result.series.source = std::move(source);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ratio = rows[i].price / rows[i - 1].price;
        result.series.dates.push_back(rows[i].date);
        result.series.returns.push_back(config.kind == ReturnKind::log ? std::log(ratio) : ratio - 1.0);
    }
    return result;
}

std::vector<double> year_returns(const ReturnSeries& series, int year) {
    std::vector<double> out;
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        if (year_of(series.dates[i]) == year) out.push_back(series.returns[i]);
    }
    if (out.empty()) throw InvalidInput("no returns in year " + std::to_string(year));
    return out;
}

Sample slice_by_year(const ReturnSeries& series, int year) { return Sample(year_returns(series, year)); }

std::vector<double> year_log_prices(const ReturnSeries& series, int year) {
    const std::vector<double> r = year_returns(series, year);
    std::vector<double> path(r.size() + 1, 0.0);
    std::partial_sum(r.begin(), r.end(), path.begin() + 1);
    return path;
}

std::vector<int> years(const ReturnSeries& series) {
    std::set<int> found;
    for (const auto& d : series.dates) found.insert(year_of(d));
    return {found.begin(), found.end()};
}

std::string write_return_series_csv(const ReturnSeries& series) {
    std::string out = "date,return\n";
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        out += format_date(series.dates[i]) + "," + format_real(series.returns[i]) + "\n";
    }
    return out;
}

ReturnSeries read_return_series_csv(std::string_view csv, std::string source) {
    const auto lines = split_csv(csv);
    const std::size_t date_col = column_index(lines.front(), "date");
    const std::size_t value_col = column_index(lines.front(), "return");
    ReturnSeries series;
    series.source = std::move(source);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        try {
            series.dates.push_back(parse_date(field(lines[i], date_col)));
            series.returns.push_back(parse_real(field(lines[i], value_col)));
        } catch (const InvalidInput& e) {
            throw ParseError(e.what(), lines[i].row);
        }
        if (series.dates.size() > 1 && !(series.dates[series.dates.size() - 2] < series.dates.back()))
            throw ParseError("dates must be strictly ascending", lines[i].row);
    }
    return series;
}

std::string write_sample_csv(std::span<const double> values) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i) + "," + format_real(values[i]) + "\n";
    return out;
}

std::vector<double> read_sample_csv(std::string_view csv) {
    const auto lines = split_csv(csv);
    std::size_t col = 0;
    if (lines.front().fields.size() > 1) col = column_index(lines.front(), "value");
    std::vector<double> values;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        try {
            values.push_back(parse_real(field(lines[i], col)));
        } catch (const InvalidInput& e) {
            throw ParseError(e.what(), lines[i].row);
        }
    }
    return values;
}

} // namespace kdeplex
