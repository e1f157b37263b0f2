#include "stablefit/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "stablefit/errors.hpp"
#include "stablefit/stable_rng.hpp"

namespace stablefit {

namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDull;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ull;
    x ^= x >> 33;
    return x;
}

struct Outcome {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool clamped = false;
};

struct Column {
    EstimatorConfig estimator;
    bool sweep = false;
};

int column_points(const Column& c) {
    switch (c.estimator.method) {
        case Method::infinite_ls:
            return c.estimator.K;
        case Method::kogon_williams:
            return 10;
        case Method::koutrouvelis:
            return c.estimator.koutrouvelis_points;
    }
    return 0;
}

// Runs `replications` independent replications of one (alpha, n) cell for
// every column. outcomes[r * columns + c] is written by exactly one worker.
std::vector<Outcome> run_cell(const SimConfig& config, double alpha, int n,
                              const std::vector<Column>& columns) {
    const std::size_t reps = config.replications;
    const std::size_t width = columns.size();
    std::vector<Outcome> outcomes(reps * width);
    const StableParams params(alpha, config.sigma);
    const std::uint64_t seed = cell_seed(config.base_seed, alpha, n);

    auto replicate = [&](std::size_t r) {
        StableSampler sampler(params, replicate_seed(seed, r));
        std::vector<double> draws = sampler.draw_values(static_cast<std::size_t>(n));
        if (!std::all_of(draws.begin(), draws.end(), [](double x) { return std::isfinite(x); })) {
            return;  // all columns stay NaN and count as failures
        }
        const Sample sample(std::move(draws));
        for (std::size_t c = 0; c < width; ++c) {
            try {
                const Estimate est = estimate(sample, columns[c].estimator);
                const double v = config.target == Target::alpha ? est.alpha_hat : est.sigma_hat;
                if (std::isfinite(v)) {
                    outcomes[r * width + c] = {v, est.slope_clamped};
                }
            } catch (const EstimationError&) {
                // counted as a failure
            }
        }
    };

    unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(reps)));
    if (threads == 1) {
        for (std::size_t r = 0; r < reps; ++r) {
            replicate(r);
        }
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
                    try {
                        replicate(r);
                    } catch (...) {
                        const std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                        next.store(reps);
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return outcomes;
}

SimRow aggregate(const std::vector<Outcome>& outcomes, std::size_t column, std::size_t width,
                 std::size_t reps) {
    SimRow row;
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const Outcome& o = outcomes[r * width + column];
        if (std::isnan(o.value)) {
            ++row.failures;
            continue;
        }
        ++row.successes;
        sum += o.value;
    }
    if (row.successes == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.mean = row.bias = row.mse = row.variance = row.clamp_rate = nan;
        return row;
    }
    const auto count = static_cast<double>(row.successes);
    row.mean = sum / count;
    return row;
}

void finish_moments(SimRow& row, const std::vector<Outcome>& outcomes, std::size_t column,
                    std::size_t width, std::size_t reps) {
    if (row.failed()) {
        return;
    }
    double sq_truth = 0.0;
    double sq_mean = 0.0;
    std::size_t clamped = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        const Outcome& o = outcomes[r * width + column];
        if (std::isnan(o.value)) {
            continue;
        }
        sq_truth += (o.value - row.true_value) * (o.value - row.true_value);
        sq_mean += (o.value - row.mean) * (o.value - row.mean);
        clamped += o.clamped ? 1 : 0;
    }
    const auto count = static_cast<double>(row.successes);
    row.bias = row.mean - row.true_value;
    row.mse = sq_truth / count;
    row.variance = sq_mean / count;
    row.clamp_rate = static_cast<double>(clamped) / count;
}

SimReport run_columns(const SimConfig& config,
                      const std::function<std::vector<Column>(double, int)>& make_columns) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    SimReport report;
    report.config = config;
    for (double alpha : config.alphas) {
        for (int n : config.sample_sizes) {
            const std::vector<Column> columns = make_columns(alpha, n);
            const auto outcomes = run_cell(config, alpha, n, columns);
            for (std::size_t c = 0; c < columns.size(); ++c) {
                SimRow row = aggregate(outcomes, c, columns.size(), config.replications);
                row.method = columns[c].estimator.method;
                row.points = column_points(columns[c]);
                row.sweep = columns[c].sweep;
                row.alpha_true = alpha;
                row.n = n;
                row.target = config.target;
                row.true_value = config.target == Target::alpha ? alpha : config.sigma;
                finish_moments(row, outcomes, c, columns.size(), config.replications);
                report.rows.push_back(row);
            }
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    if (std::isnan(v)) {
        return "n/a";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string emit_csv(const SimReport& report) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& row : report.rows) {
        out << row.label() << ',' << format_full(row.alpha_true) << ',' << row.n << ','
            << target_name(row.target) << ',' << format_full(row.mean) << ','
            << format_full(row.bias) << ',' << format_full(row.mse) << ','
            << format_full(row.clamp_rate) << ',' << row.failures << '\n';
    }
    return out.str();
}

// One table per (n, target): alpha down the rows, one Mean | Bias | MSE
// column group per method or sweep setting.
std::string emit_markdown(const SimReport& report) {
    std::vector<std::pair<int, Target>> blocks;
    std::vector<std::string> labels;
    for (const auto& row : report.rows) {
        const std::pair<int, Target> key{row.n, row.target};
        if (std::find(blocks.begin(), blocks.end(), key) == blocks.end()) {
            blocks.push_back(key);
        }
        if (std::find(labels.begin(), labels.end(), row.label()) == labels.end()) {
            labels.push_back(row.label());
        }
    }

    std::ostringstream out;
    for (const auto& [n, target] : blocks) {
        const std::string estimate_col = target == Target::alpha ? "mean alpha_hat" : "mean sigma_hat";
        out << "### " << (target == Target::alpha ? "alpha" : "sigma") << " estimation, n = " << n
            << ", replications = " << report.config.replications << "\n\n";
        out << "| alpha |";
        for (const auto& label : labels) {
            out << ' ' << label << ' ' << estimate_col << " | " << label << " bias | " << label
                << " MSE |";
        }
        out << "\n|---|";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out << "---|---|---|";
        }
        out << '\n';

        std::vector<double> alphas;
        for (const auto& row : report.rows) {
            if (row.n == n && row.target == target
                && std::find(alphas.begin(), alphas.end(), row.alpha_true) == alphas.end()) {
                alphas.push_back(row.alpha_true);
            }
        }
        for (double alpha : alphas) {
            out << "| " << format_short(alpha).substr(0, 6) << " |";
            for (const auto& label : labels) {
                const auto it = std::find_if(report.rows.begin(), report.rows.end(), [&](const SimRow& r) {
                    return r.n == n && r.target == target && r.alpha_true == alpha && r.label() == label;
                });
                if (it == report.rows.end()) {
                    out << " | | |";
                } else {
                    out << ' ' << format_short(it->mean) << " | " << format_short(it->bias) << " | "
                        << format_short(it->mse) << " |";
                }
            }
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> split_commas(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return fields;
}

double parse_double_field(const std::string& s, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ConfigError("csv line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
    return v;
}

}  // namespace

std::string_view target_name(Target target) noexcept {
    return target == Target::alpha ? "alpha" : "sigma";
}

Target parse_target(std::string_view name) {
    if (name == "alpha") {
        return Target::alpha;
    }
    if (name == "sigma") {
        return Target::sigma;
    }
    throw ConfigError("target must be 'alpha' or 'sigma', got '" + std::string(name) + "'");
}

void SimConfig::validate() const {
    if (alphas.empty() || sample_sizes.empty() || methods.empty()) {
        throw ConfigError("alphas, sample sizes and methods must all be non-empty");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a <= 2.0)) {
            throw ConfigError("alpha values must lie in (0, 2]");
        }
    }
    for (int n : sample_sizes) {
        if (n < 2) {
            throw ConfigError("sample sizes must be >= 2");
        }
    }
    if (replications < 1) {
        throw ConfigError("replications must be >= 1");
    }
    if (!(x0 > 0.0) || !(d > 0.0) || K < 2) {
        throw ConfigError("grid needs x0 > 0, d > 0 and K >= 2");
    }
    if (!(sigma > 0.0)) {
        throw ConfigError("sigma must be > 0");
    }
    if (koutrouvelis_default < 2) {
        throw ConfigError("koutrouvelis point count must be >= 2");
    }
    for (const auto& [key, points] : koutrouvelis_points) {
        if (points < 2) {
            throw ConfigError("koutrouvelis point count must be >= 2");
        }
    }
}

int SimConfig::koutrouvelis_points_for(double alpha, int n) const {
    const auto it = koutrouvelis_points.find({alpha, n});
    return it == koutrouvelis_points.end() ? koutrouvelis_default : it->second;
}

std::string SimRow::label() const {
    std::string out(method_name(method));
    if (sweep) {
        out += "@K=" + std::to_string(points);
    }
    return out;
}

std::uint64_t cell_seed(std::uint64_t base_seed, double alpha, int n) noexcept {
    std::uint64_t h = mix64(base_seed ^ 0x5DEECE66Dull);
    h = mix64(h ^ std::bit_cast<std::uint64_t>(alpha));
    h = mix64(h ^ static_cast<std::uint64_t>(n));
    return h;
}

SimReport run_simulation(const SimConfig& config) {
    return run_columns(config, [&](double alpha, int n) {
        std::vector<Column> columns;
        for (Method m : config.methods) {
            EstimatorConfig est;
            est.method = m;
            est.x0 = config.x0;
            est.d = config.d;
            est.K = config.K;
            est.koutrouvelis_points = config.koutrouvelis_points_for(alpha, n);
            columns.push_back({est, false});
        }
        return columns;
    });
}

SimReport k_sweep(const SimConfig& config, std::span<const int> k_values) {
    if (std::find(config.methods.begin(), config.methods.end(), Method::infinite_ls)
        == config.methods.end()) {
        throw ConfigError("a K sweep needs infinite-ls among the methods");
    }
    if (k_values.empty()) {
        throw ConfigError("a K sweep needs at least one K value");
    }
    for (int k : k_values) {
        if (k < 2) {
            throw ConfigError("K values must be >= 2");
        }
    }
    std::vector<int> ks(k_values.begin(), k_values.end());
    return run_columns(config, [&](double, int) {
        std::vector<Column> columns;
        for (int k : ks) {
            EstimatorConfig est;
            est.method = Method::infinite_ls;
            est.x0 = config.x0;
            est.d = config.d;
            est.K = k;
            columns.push_back({est, true});
        }
        return columns;
    });
}

std::string emit_report(const SimReport& report, ReportFormat format) {
    return format == ReportFormat::csv ? emit_csv(report) : emit_markdown(report);
}

std::vector<CsvRow> parse_csv_report(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (line != kCsvHeader) {
                throw ConfigError("csv report has an unexpected header");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_commas(line);
        if (f.size() != 9) {
            throw ConfigError("csv line " + std::to_string(line_no) + " has " + std::to_string(f.size())
                              + " fields, expected 9");
        }
        CsvRow row;
        row.method = f[0];
        row.alpha_true = parse_double_field(f[1], line_no);
        row.n = static_cast<int>(parse_double_field(f[2], line_no));
        row.target = f[3];
        row.mean = parse_double_field(f[4], line_no);
        row.bias = parse_double_field(f[5], line_no);
        row.mse = parse_double_field(f[6], line_no);
        row.clamp_rate = parse_double_field(f[7], line_no);
        row.failures = static_cast<std::size_t>(parse_double_field(f[8], line_no));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace stablefit
