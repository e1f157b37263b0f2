#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablefit/estimators.hpp"

namespace stablefit {

enum class Target { alpha, sigma };

[[nodiscard]] std::string_view target_name(Target target) noexcept;
/// Throws ConfigError for anything but "alpha" or "sigma".
[[nodiscard]] Target parse_target(std::string_view name);

inline constexpr std::size_t kDefaultReplications = 2000;
inline constexpr std::uint64_t kDefaultBaseSeed = 20240501;

struct SimConfig {
    std::vector<double> alphas;
    std::vector<int> sample_sizes;
    std::size_t replications = kDefaultReplications;
    std::vector<Method> methods;
    double x0 = kDefaultX0;
    double d = kDefaultWidth;
    int K = kDefaultGridIntervals;
    /// Optional tuned Koutrouvelis point counts keyed by (alpha, n).
    std::map<std::pair<double, int>, int> koutrouvelis_points;
    int koutrouvelis_default = kDefaultKoutrouvelisPoints;
    std::uint64_t base_seed = kDefaultBaseSeed;
    Target target = Target::alpha;
    double sigma = 1.0;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws ConfigError on empty lists, out-of-range values or bad grids.
    void validate() const;
    [[nodiscard]] int koutrouvelis_points_for(double alpha, int n) const;
};

/// Aggregates for one (method, alpha, n) cell.
struct SimRow {
    Method method = Method::infinite_ls;
    /// Grid intervals (infinite-ls) or number of regression points.
    int points = 0;
    /// True when the row belongs to a K sweep; the csv label then carries K.
    bool sweep = false;
    double alpha_true = 0.0;
    int n = 0;
    Target target = Target::alpha;
    double true_value = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double mse = 0.0;
    double variance = 0.0;
    double clamp_rate = 0.0;
    std::size_t successes = 0;
    std::size_t failures = 0;

    [[nodiscard]] bool failed() const noexcept { return successes == 0; }
    /// "infinite-ls", or "infinite-ls@K=300" for sweep rows.
    [[nodiscard]] std::string label() const;
};

struct SimReport {
    SimConfig config;
    std::vector<SimRow> rows;
    double wall_seconds = 0.0;
};

/// Runs every (alpha, n, method) cell. Replication r of the cell (alpha, n)
/// draws its sample from replicate_seed(cell_seed(alpha, n), r), so all methods
/// see the same samples and results do not depend on the thread count.
[[nodiscard]] SimReport run_simulation(const SimConfig& config);

/// Infinite-ls only, one row per K in k_values for every (alpha, n).
/// Throws ConfigError if infinite-ls is not among config.methods.
[[nodiscard]] SimReport k_sweep(const SimConfig& config, std::span<const int> k_values);

/// Seed shared by all replications of one (alpha, n) cell.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t base_seed, double alpha, int n) noexcept;

enum class ReportFormat { csv, markdown };

inline constexpr std::string_view kCsvHeader =
    "method,alpha_true,n,target,mean,bias,mse,clamp_rate,failures";

[[nodiscard]] std::string emit_report(const SimReport& report, ReportFormat format);

/// One parsed csv line.
struct CsvRow {
    std::string method;
    double alpha_true = 0.0;
    int n = 0;
    std::string target;
    double mean = 0.0;
    double bias = 0.0;
    double mse = 0.0;
    double clamp_rate = 0.0;
    std::size_t failures = 0;
};

/// Parses emit_report(..., csv) output. Throws ConfigError on a malformed line.
[[nodiscard]] std::vector<CsvRow> parse_csv_report(std::string_view text);

}  // namespace stablefit
