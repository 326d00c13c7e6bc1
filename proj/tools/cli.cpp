#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "kdeplex/classic_bandwidth.hpp"
#include "kdeplex/complexity.hpp"
#include "kdeplex/datasets.hpp"
#include "kdeplex/efficiency.hpp"
#include "kdeplex/errors.hpp"
#include "kdeplex/kde.hpp"

#ifndef KDEPLEX_VERSION
#define KDEPLEX_VERSION "unknown"
#endif

namespace kdeplex::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Readers never see a half-written file.
void write_atomic(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << data;
        out.close();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

json make_manifest(std::string_view command, json config) {
    json m;
    m["command"] = command;
    m["version"] = KDEPLEX_VERSION;
    m["config"] = std::move(config);
    return m;
}

void write_sidecar(const std::string& out_path, const json& manifest) {
    write_atomic(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

void emit_report(const json& report, const std::string& out_path, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        write_atomic(out_path, text);
    }
}

std::string shortest(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
};

GridSpec parse_grid(const std::string& text, std::string_view flag) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) throw UsageError(std::string(flag) + " expects LO:HI:N");
    GridSpec g;
    try {
        g.lo = parse_real(std::string_view(text).substr(0, first));
        g.hi = parse_real(std::string_view(text).substr(first + 1, second - first - 1));
    } catch (const InvalidInput&) {
        throw UsageError(std::string(flag) + " has a non-numeric bound: " + text);
    }
    const std::string_view count = std::string_view(text).substr(second + 1);
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.n);
    if (ec != std::errc() || ptr != count.data() + count.size() || g.n < 2 || !(g.lo < g.hi))
        throw UsageError(std::string(flag) + " expects LO < HI and N >= 2, got " + text);
    return g;
}

std::vector<double> linear_points(const GridSpec& g) {
    std::vector<double> xs(g.n);
    const double step = (g.hi - g.lo) / static_cast<double>(g.n - 1);
    for (std::size_t i = 0; i < g.n; ++i) xs[i] = g.lo + step * static_cast<double>(i);
    xs.back() = g.hi;
    return xs;
}

std::vector<double> geometric_points(const GridSpec& g) {
    std::vector<double> xs(g.n);
    const double ratio = std::log(g.hi / g.lo) / static_cast<double>(g.n - 1);
    for (std::size_t i = 0; i < g.n; ++i) xs[i] = g.lo * std::exp(ratio * static_cast<double>(i));
    xs.back() = g.hi;
    return xs;
}

// Either a sample CSV, or a price CSV sliced to one calendar year.
struct InputOptions {
    std::string path;
    std::optional<int> year;
    std::string date_column = "Date";
    std::string price_column = "Close";
    std::string return_kind = "log";

    void add_to(CLI::App& cmd, bool year_required = false) {
        cmd.add_option("--input", path, "sample CSV, or price CSV when --year is given")->required()->check(CLI::ExistingFile);
        auto* y = cmd.add_option("--year", year, "calendar year of a price CSV");
        if (year_required) y->required();
        cmd.add_option("--date-column", date_column, "date column of a price CSV")->capture_default_str();
        cmd.add_option("--price-column", price_column, "closing-price column of a price CSV")->capture_default_str();
        cmd.add_option("--return-kind", return_kind, "log or simple returns")
            ->check(CLI::IsMember({"log", "simple"}))
            ->capture_default_str();
    }

    IngestConfig ingest() const {
        return {date_column, price_column, return_kind == "simple" ? ReturnKind::simple : ReturnKind::log};
    }

    IngestResult prices() const { return ingest_prices(read_file(path), ingest(), path); }

    Sample sample() const {
        if (year) return slice_by_year(prices().series, *year);
        return Sample(read_sample_csv(read_file(path)));
    }

    json describe() const {
        json j;
        j["input"] = path;
        if (year) {
            j["year"] = *year;
            j["date_column"] = date_column;
            j["price_column"] = price_column;
            j["return_kind"] = return_kind;
        }
        return j;
    }
};

int cmd_simulate(const std::string& dist, std::size_t n, std::uint64_t seed, const std::string& out_path) {
    const SimSpec spec{parse_sim_distribution(dist), n, seed};
    write_atomic(out_path, write_sample_csv(simulate_values(spec)));
    write_sidecar(out_path, make_manifest("simulate", {{"dist", dist}, {"n", n}, {"seed", seed}}));
    return kExitOk;
}

struct SelectOptions {
    InputOptions input;
    std::string validation;
    std::string methods = "c";
    std::size_t grid_points = 200;
    std::size_t curve_points = 500;
    std::size_t nu = 22;
    std::string out;
};

std::optional<ValidationSet> load_validation(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return ValidationSet(read_sample_csv(read_file(path)));
}

std::vector<BandwidthMethod> parse_methods(const std::string& text) {
    std::vector<BandwidthMethod> methods;
    for (const auto& name : split_list(text)) {
        try {
            methods.push_back(parse_bandwidth_method(name));
        } catch (const InvalidInput& e) {
            throw UsageError(e.what());
        }
    }
    if (methods.empty()) throw UsageError("--methods is empty");
    return methods;
}

bool needs_validation(BandwidthMethod m) { return m == BandwidthMethod::lik || m == BandwidthMethod::pit; }

BandwidthResult select_one(BandwidthMethod method, const Sample& sample, const std::optional<ValidationSet>& validation,
                           const ComplexityCurve& curve, const ComplexityConfig& ccfg, const SearchConfig& search,
                           std::size_t nu) {
    switch (method) {
    case BandwidthMethod::complexity:
        return select_h_c(sample, curve, ccfg);
    case BandwidthMethod::amise:
        return select_amise_plugin(sample);
    case BandwidthMethod::lik:
        return select_likelihood(sample, *validation, search);
    case BandwidthMethod::pit:
        return select_pit(sample, *validation, PitConfig{nu}, search);
    }
    throw std::logic_error("unhandled bandwidth method");
}

int cmd_select(const SelectOptions& o, std::ostream& out) {
    const auto methods = parse_methods(o.methods);
    const bool want_validation = std::any_of(methods.begin(), methods.end(), needs_validation);
    if (want_validation && o.validation.empty()) throw UsageError("methods pit and lik require --validation");

    const Sample sample = o.input.sample();
    const auto validation = load_validation(o.validation);

    ComplexityConfig ccfg;
    ccfg.border_search.grid_points = o.grid_points;
    ccfg.curve_points = o.curve_points;
    SearchConfig search;
    search.grid_points = o.grid_points;

    const ComplexityCurve curve = build_complexity_curve(sample, ccfg);

    json config = o.input.describe();
    config["validation"] = o.validation.empty() ? json() : json(o.validation);
    config["methods"] = o.methods;
    config["grid_points"] = o.grid_points;
    config["curve_points"] = o.curve_points;
    config["h_min"] = 1e-3 * sample.ml_std();
    config["search_rel_tol"] = search.rel_tol;
    config["refine_rel_tol"] = ccfg.refine_rel_tol;
    config["quadrature_points"] = ccfg.quad.points;
    config["nu"] = o.nu;

    json report;
    report["manifest"] = make_manifest("select", config);
    report["n"] = sample.size();
    report["h_p"] = curve.h_p;
    report["c_at_h_p"] = complexity_at(sample, curve.h_p, curve.scaling(), ccfg.quad);
    report["e_max"] = curve.e_max;
    report["p_max"] = curve.p_max;
    json rows = json::array();
    for (BandwidthMethod m : methods) {
        const BandwidthResult r = select_one(m, sample, validation, curve, ccfg, search, o.nu);
        json row;
        row["method"] = to_string(m);
        row["bandwidth"] = r.bandwidth;
        row["complexity"] = complexity_at(sample, r.bandwidth, curve.scaling(), ccfg.quad);
        row["objective"] = r.objective;
        row["beyond_hp"] = r.bandwidth > curve.h_p;
        if (m == BandwidthMethod::complexity) row["grid_bandwidth"] = curve.h_c;
        rows.push_back(std::move(row));
    }
    report["selections"] = std::move(rows);
    emit_report(report, o.out, out);
    return kExitOk;
}

struct CurveOptions {
    InputOptions input;
    std::size_t points = 500;
    std::size_t grid_points = 200;
    std::size_t extension_points = 0;
    double extension_factor = 2.0;
    std::string out;
};

int cmd_curve(const CurveOptions& o) {
    const Sample sample = o.input.sample();
    ComplexityConfig ccfg;
    ccfg.curve_points = o.points;
    ccfg.border_search.grid_points = o.grid_points;
    ccfg.extension_points = o.extension_points;
    ccfg.extension_factor = o.extension_factor;
    const ComplexityCurve curve = build_complexity_curve(sample, ccfg);

    std::string csv = "h,E_h,P_h,C_h,beyond_hp\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        csv += format_real(curve.grid[i]) + ',' + format_real(curve.e_values[i]) + ',' + format_real(curve.p_values[i]) +
               ',' + format_real(curve.c_values[i]) + ',' + (curve.beyond_hp[i] ? "1" : "0") + '\n';
    }
    write_atomic(o.out, csv);

    json config = o.input.describe();
    config["points"] = o.points;
    config["grid_points"] = o.grid_points;
    config["h_min"] = 1e-3 * sample.ml_std();
    config["extension_points"] = o.extension_points;
    config["extension_factor"] = o.extension_factor;
    config["quadrature_points"] = ccfg.quad.points;
    json manifest = make_manifest("curve", config);
    manifest["h_p"] = curve.h_p;
    manifest["h_c_grid"] = curve.h_c;
    write_sidecar(o.out, manifest);
    return kExitOk;
}

struct DensityOptions {
    InputOptions input;
    std::optional<double> bandwidth;
    std::string method;
    std::string validation;
    std::size_t nu = 22;
    std::string grid;
    std::string true_dist;
    std::string out;
};

int cmd_density(const DensityOptions& o) {
    if (o.bandwidth.has_value() == !o.method.empty()) throw UsageError("give exactly one of --bandwidth and --method");
    const Sample sample = o.input.sample();

    double h = 0.0;
    std::string method_name = "fixed";
    if (o.bandwidth) {
        h = *o.bandwidth;
    } else {
        const auto methods = parse_methods(o.method);
        if (methods.size() != 1) throw UsageError("--method takes a single method");
        if (needs_validation(methods[0]) && o.validation.empty())
            throw UsageError("methods pit and lik require --validation");
        const auto validation = load_validation(o.validation);
        const ComplexityConfig ccfg;
        std::optional<ComplexityCurve> curve;
        if (methods[0] == BandwidthMethod::complexity) curve = build_complexity_curve(sample, ccfg);
        h = select_one(methods[0], sample, validation, curve.value_or(ComplexityCurve{}), ccfg, SearchConfig{}, o.nu)
                .bandwidth;
        method_name = std::string(to_string(methods[0]));
    }

    GridSpec g;
    if (o.grid.empty()) {
        g = {sample.min() - 10.0 * h, sample.max() + 10.0 * h, 2001};
    } else {
        g = parse_grid(o.grid, "--grid");
    }
    std::optional<SimDistribution> truth;
    if (!o.true_dist.empty()) truth = parse_sim_distribution(o.true_dist);

    const KernelDensity kd(sample.values(), h);
    const std::vector<double> xs = linear_points(g);
    const std::vector<double> fs = kd.pdf(xs);
    std::string csv = truth ? "x,density,true_density\n" : "x,density\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        csv += format_real(xs[i]) + ',' + format_real(fs[i]);
        if (truth) csv += ',' + format_real(true_pdf(*truth, xs[i]));
        csv += '\n';
    }
    write_atomic(o.out, csv);

    json config = o.input.describe();
    config["method"] = method_name;
    config["bandwidth"] = h;
    config["validation"] = o.validation.empty() ? json() : json(o.validation);
    config["nu"] = o.nu;
    config["grid"] = {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}};
    config["true_dist"] = o.true_dist.empty() ? json() : json(o.true_dist);
    write_sidecar(o.out, make_manifest("density", config));
    return kExitOk;
}

struct EfficiencyOptions {
    InputOptions input;
    std::string stats = "posprob,info,hurst";
    std::string h_grid;
    std::size_t null_trials = 10000;
    std::uint64_t seed = 0;
    std::string out;
    std::string curve_out;
};

int cmd_efficiency(const EfficiencyOptions& o, std::ostream& out) {
    bool posprob = false;
    bool info = false;
    bool hurst = false;
    for (const auto& s : split_list(o.stats)) {
        if (s == "posprob") {
            posprob = true;
        } else if (s == "info") {
            info = true;
        } else if (s == "hurst") {
            hurst = true;
        } else {
            throw UsageError("unknown statistic '" + s + "' (expected posprob, info or hurst)");
        }
    }
    if (!posprob && !info && !hurst) throw UsageError("--stats is empty");

    const IngestResult ingested = o.input.prices();
    const int year = *o.input.year;
    const Sample sample = slice_by_year(ingested.series, year);

    const GridSpec g = o.h_grid.empty() ? GridSpec{1e-3 * sample.ml_std(), 2.0 * sample.ml_std(), 60}
                                        : parse_grid(o.h_grid, "--h-grid");
    if (!(g.lo > 0.0)) throw UsageError("--h-grid bandwidths must be positive");
    const std::vector<double> hs = geometric_points(g);

    json config = o.input.describe();
    config["stats"] = o.stats;
    config["h_grid"] = {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}, {"spacing", "geometric"}};
    config["null_trials"] = o.null_trials;
    config["seed"] = o.seed;
    const HurstConfig hcfg;
    config["hurst"] = {{"min_window", hcfg.min_window},
                       {"max_window_divisor", hcfg.max_window_divisor},
                       {"growth", hcfg.growth}};

    json report;
    report["manifest"] = make_manifest("efficiency", config);
    report["year"] = year;
    report["n"] = sample.size();
    report["dropped_rows"] = ingested.dropped_rows;
    report["h"] = hs;

    std::vector<double> pos;
    std::vector<double> bits;
    if (posprob) {
        for (double h : hs) pos.push_back(prob_positive(KernelDensity(sample.values(), h)));
        report["prob_positive"] = pos;
    }
    if (info) {
        for (double h : hs) bits.push_back(market_information(sample, h).info_bits);
        report["info_bits"] = bits;
        const NullBands bands = null_bands(sample.size(), o.null_trials, o.seed);
        json q;
        for (const auto& [level, value] : bands.quantiles) q[shortest(level)] = value;
        report["null_bands"] = q;
    }
    if (hurst) {
        const HurstResult hr = hurst_exponent(year_log_prices(ingested.series, year), hcfg);
        report["hurst"] = {{"exponent", hr.exponent},
                           {"r_squared", hr.r_squared},
                           {"window_sizes", hr.window_sizes},
                           {"rs_values", hr.rs_values}};
    }

    if (!o.curve_out.empty()) {
        std::string csv = "h";
        if (posprob) csv += ",prob_positive";
        if (info) csv += ",info_bits";
        csv += '\n';
        for (std::size_t i = 0; i < hs.size(); ++i) {
            csv += format_real(hs[i]);
            if (posprob) csv += ',' + format_real(pos[i]);
            if (info) csv += ',' + format_real(bits[i]);
            csv += '\n';
        }
        write_atomic(o.curve_out, csv);
        write_sidecar(o.curve_out, report["manifest"]);
    }
    emit_report(report, o.out, out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kernel density bandwidth selection and market-efficiency statistics", "kdeplex"};
    app.set_version_flag("--version", std::string(KDEPLEX_VERSION));
    app.require_subcommand(1);

    std::string sim_dist;
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "draw a simulated sample");
    simulate->add_option("--dist", sim_dist, "gaussian, mixture or student5")
        ->required()
        ->check(CLI::IsMember({"gaussian", "mixture", "student5"}));
    simulate->add_option("--n", sim_n, "sample size")->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))->capture_default_str();
    simulate->add_option("--seed", sim_seed, "random seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "output sample CSV")->required();

    SelectOptions sel;
    auto* select = app.add_subcommand("select", "select bandwidths (one column of the comparison table)");
    sel.input.add_to(*select);
    select->add_option("--validation", sel.validation, "validation sample CSV (needed by pit and lik)")->check(CLI::ExistingFile);
    select->add_option("--methods", sel.methods, "comma list of c, amise, pit, lik")->capture_default_str();
    select->add_option("--grid-points", sel.grid_points, "coarse search grid size")->check(CLI::Range(3, 1000000))->capture_default_str();
    select->add_option("--curve-points", sel.curve_points, "complexity curve size")->check(CLI::Range(3, 1000000))->capture_default_str();
    select->add_option("--nu", sel.nu, "largest PIT lag")->capture_default_str();
    select->add_option("--out", sel.out, "JSON report path (default: standard output)");

    CurveOptions cur;
    auto* curve = app.add_subcommand("curve", "complexity curve as CSV");
    cur.input.add_to(*curve);
    curve->add_option("--points", cur.points, "grid points on (h_min, h_p]")->check(CLI::Range(3, 1000000))->capture_default_str();
    curve->add_option("--grid-points", cur.grid_points, "coarse grid size of the h_p search")->check(CLI::Range(3, 1000000))->capture_default_str();
    curve->add_option("--extension-points", cur.extension_points, "points past h_p, flagged beyond_hp")->capture_default_str();
    curve->add_option("--extension-factor", cur.extension_factor, "extension reaches factor * h_p")->check(CLI::Range(1.0 + 1e-9, 1e6))->capture_default_str();
    curve->add_option("--out", cur.out, "output CSV")->required();

    DensityOptions den;
    auto* density = app.add_subcommand("density", "kernel density on a grid");
    den.input.add_to(*density);
    auto* bw = density->add_option("--bandwidth", den.bandwidth, "fixed bandwidth")->check(CLI::PositiveNumber);
    density->add_option("--method", den.method, "select the bandwidth by c, amise, pit or lik")->excludes(bw);
    density->add_option("--validation", den.validation, "validation sample CSV (needed by pit and lik)")->check(CLI::ExistingFile);
    density->add_option("--nu", den.nu, "largest PIT lag")->capture_default_str();
    density->add_option("--grid", den.grid, "LO:HI:N evaluation grid (default: data range +- 10h, 2001 points)");
    density->add_option("--true-dist", den.true_dist, "add the analytic density of a simulated distribution")
        ->check(CLI::IsMember({"gaussian", "mixture", "student5"}));
    density->add_option("--out", den.out, "output CSV")->required();

    EfficiencyOptions eff;
    auto* efficiency = app.add_subcommand("efficiency", "positive-return probability, market information and Hurst exponent");
    eff.input.add_to(*efficiency, true);
    efficiency->add_option("--stats", eff.stats, "comma list of posprob, info, hurst")->capture_default_str();
    efficiency->add_option("--h-grid", eff.h_grid, "LO:HI:N geometric bandwidth grid (default: 1e-3 sd to 2 sd, 60 points)");
    efficiency->add_option("--null-trials", eff.null_trials, "Monte Carlo trials for the null bands")->check(CLI::Range(1000, 100000000))->capture_default_str();
    efficiency->add_option("--seed", eff.seed, "seed of the null bands")->capture_default_str();
    efficiency->add_option("--out", eff.out, "JSON report path (default: standard output)");
    efficiency->add_option("--curve-out", eff.curve_out, "also write the per-bandwidth table as CSV");

    std::vector<const char*> argv{"kdeplex"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim_dist, sim_n, sim_seed, sim_out);
        if (*select) return cmd_select(sel, out);
        if (*curve) return cmd_curve(cur);
        if (*density) return cmd_density(den);
        if (*efficiency) return cmd_efficiency(eff, out);
    } catch (const UsageError& e) {
        err << "kdeplex: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "kdeplex: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

} // namespace kdeplex::cli
