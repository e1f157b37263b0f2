#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "stablefit/stablefit.hpp"

namespace stablefit::cli {

namespace {

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot write '" + path + "'");
    }
    out << text;
}

const std::vector<std::string> kMethodNames = {"infinite-ls", "kogon-williams", "koutrouvelis"};

struct EstimateArgs {
    std::string input;
    std::string method = "infinite-ls";
    double x0 = kDefaultX0;
    double d = kDefaultWidth;
    int K = kDefaultGridIntervals;
    int points = kDefaultKoutrouvelisPoints;
    double prescale = 1.0;
};

struct SampleArgs {
    double alpha = 0.0;
    double sigma = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string out;
};

struct DesignArgs {
    double x0 = kDefaultX0;
    double d = kDefaultWidth;
    std::string model = "log";
    int degree = 1;
};

struct SimulateArgs {
    std::string config;
    std::optional<std::string> alphas;
    std::optional<std::string> ns;
    std::optional<std::size_t> reps;
    std::optional<std::string> methods;
    std::optional<double> x0;
    std::optional<double> d;
    std::optional<int> K;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> target;
    std::optional<std::string> k_values;
    bool markdown = false;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
    const Sample sample(read_values(a.input));
    EstimatorConfig config;
    config.method = parse_method(a.method);
    config.x0 = a.x0;
    config.d = a.d;
    config.K = a.K;
    config.koutrouvelis_points = a.points;
    config.prescale = a.prescale;
    const Estimate est = estimate(sample, config);

    std::size_t evaluated = est.grid.points.size();
    if (est.method == Method::infinite_ls) {
        evaluated = static_cast<std::size_t>(est.grid.intervals) + 1;
    }
    out << "method         " << method_name(est.method) << '\n'
        << "n              " << sample.size() << '\n'
        << "alpha_hat      " << fixed4(est.alpha_hat) << '\n'
        << "sigma_hat      " << fixed4(est.sigma_hat) << '\n'
        << "alpha_se       " << fixed4(est.alpha_standard_error()) << '\n'
        << "s_squared      " << fixed4(est.s_squared) << '\n'
        << "intercept      " << fixed4(est.intercept) << '\n'
        << "clamped_values " << est.clamp_count << " of " << evaluated << '\n'
        << "slope_clamped  " << (est.slope_clamped ? "yes (raw slope " + fixed4(est.raw_slope) + ")" : "no")
        << '\n';
    return kOk;
}

int cmd_sample(const SampleArgs& a, std::ostream& out) {
    StableSampler sampler(StableParams(a.alpha, a.sigma), a.seed, a.stream);
    const auto values = sampler.draw_values(a.n);
    std::ostringstream text;
    for (double v : values) {
        text << full(v) << '\n';
    }
    if (a.out.empty()) {
        out << text.str();
    } else {
        write_text(a.out, text.str());
    }
    return kOk;
}

int cmd_design(const DesignArgs& a, std::ostream& out) {
    const IntervalDesign design(a.x0, a.d);
    DesignMoments m;
    if (a.model == "log") {
        if (!(a.x0 > 0.0)) {
            throw DomainError("the log model needs x0 > 0: its moments integrate log t over [x0, x0 + d]");
        }
        m = build_log_design(design);
    } else if (a.model == "linear") {
        m = build_poly_design(design, 1);
    } else {
        m = build_poly_design(design, a.degree);
    }
    out << "model       " << a.model;
    if (a.model == "poly") {
        out << " (degree " << a.degree << ")";
    }
    char interval[96];
    std::snprintf(interval, sizeof interval, "[%.10g, %.10g]", a.x0, a.x0 + a.d);
    out << "\ninterval    " << interval << "\nmatrix\n";
    for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
        out << "  ";
        for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%16.10g", m.matrix(i, j));
            out << buf;
        }
        out << '\n';
    }
    out << "determinant " << full(m.determinant()) << '\n'
        << "condition   " << full(m.condition_estimate()) << '\n';
    return kOk;
}

RunFile load_run(const SimulateArgs& a) {
    RunFile run = parse_run_file(read_text(a.config));
    auto set = [&](std::string_view key, const std::string& value) { apply_run_setting(run, key, value); };
    if (a.alphas) set("alphas", *a.alphas);
    if (a.ns) set("ns", *a.ns);
    if (a.methods) set("methods", *a.methods);
    if (a.target) set("target", *a.target);
    if (a.k_values) set("k_values", *a.k_values);
    if (a.reps) run.config.replications = *a.reps;
    if (a.x0) run.config.x0 = *a.x0;
    if (a.d) run.config.d = *a.d;
    if (a.K) run.config.K = *a.K;
    if (a.seed) run.config.base_seed = *a.seed;
    if (a.threads) run.config.threads = *a.threads;
    if (a.out) run.output = *a.out;
    if (a.markdown) run.markdown = true;
    return run;
}

int cmd_simulate(const SimulateArgs& a, bool force_sweep, std::ostream& out, std::ostream& err) {
    if (!std::filesystem::exists(a.config)) {
        throw DomainError("config file '" + a.config + "' does not exist");
    }
    const RunFile run = load_run(a);
    if (force_sweep && run.k_values.empty()) {
        err << "error: ksweep needs K values (--k-values or k_values in the config)\n";
        return kUsageError;
    }
    const SimReport report =
        run.k_values.empty() ? run_simulation(run.config) : k_sweep(run.config, run.k_values);

    const std::string csv = emit_report(report, ReportFormat::csv);
    const std::string md = emit_report(report, ReportFormat::markdown);
    if (run.output.empty()) {
        out << csv;
    } else {
        write_text(run.output, csv);
        out << "wrote " << run.output << '\n';
        if (run.markdown) {
            const auto md_path = std::filesystem::path(run.output).replace_extension(".md").string();
            write_text(md_path, md);
            out << "wrote " << md_path << '\n';
        }
    }
    out << '\n' << md;
    out << report.rows.size() << " cells, " << report.config.replications << " replications each, seed "
        << report.config.base_seed << ", " << fixed4(report.wall_seconds) << " s\n";
    return kOk;
}

void add_simulate_options(CLI::App& sub, SimulateArgs& a) {
    sub.add_option("config", a.config, "Run file (key = value lines)")->required();
    sub.add_option("--alphas", a.alphas, "Comma-separated alpha values");
    sub.add_option("--ns", a.ns, "Comma-separated sample sizes");
    sub.add_option("--reps", a.reps, "Replications per cell");
    sub.add_option("--methods", a.methods, "Comma-separated methods");
    sub.add_option("--x0", a.x0, "Grid start");
    sub.add_option("--d", a.d, "Grid width");
    sub.add_option("--K", a.K, "Grid intervals for infinite-ls");
    sub.add_option("--seed", a.seed, "Base seed");
    sub.add_option("--threads", a.threads, "Worker threads (0 = all cores)");
    sub.add_option("--out", a.out, "CSV output path");
    sub.add_option("--target", a.target, "alpha or sigma");
    sub.add_flag("--markdown", a.markdown, "Also write a .md table next to the csv");
}

}  // namespace

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw DomainError("line " + std::to_string(line_no) + ": '" + token
                              + "' is not a finite number");
        }
        values.push_back(v);
    }
    if (values.size() < 2) {
        throw DomainError("need at least 2 observations, '" + path + "' has "
                          + std::to_string(values.size()));
    }
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index and scale estimation for symmetric stable samples"};
    app.name("stablefit");
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate_cmd = app.add_subcommand("estimate", "Estimate alpha and sigma from a data file");
    estimate_cmd->add_option("input", est.input, "One observation per line")->required();
    estimate_cmd->add_option("--method", est.method, "Estimator")
        ->check(CLI::IsMember(kMethodNames))
        ->capture_default_str();
    estimate_cmd->add_option("--x0", est.x0, "Grid start")->capture_default_str();
    estimate_cmd->add_option("--d", est.d, "Grid width")->capture_default_str();
    estimate_cmd->add_option("--K", est.K, "Grid intervals (infinite-ls)")->capture_default_str();
    estimate_cmd->add_option("--points", est.points, "Number of pi k / 25 points (koutrouvelis)")
        ->capture_default_str();
    estimate_cmd->add_option("--prescale", est.prescale, "Divide data by this before fitting")
        ->capture_default_str();

    SampleArgs smp;
    auto* sample_cmd = app.add_subcommand("sample", "Draw symmetric stable variates");
    sample_cmd->add_option("--alpha", smp.alpha, "Index in (0, 2]")->required();
    sample_cmd->add_option("--sigma", smp.sigma, "Scale")->capture_default_str();
    sample_cmd->add_option("--n", smp.n, "Number of draws")->required();
    sample_cmd->add_option("--seed", smp.seed, "Seed")->capture_default_str();
    sample_cmd->add_option("--stream", smp.stream, "Stream id")->capture_default_str();
    sample_cmd->add_option("--out", smp.out, "Output file (stdout if omitted)");

    DesignArgs des;
    auto* design_cmd = app.add_subcommand("design", "Print a continuum design moment matrix");
    design_cmd->add_option("--x0", des.x0, "Interval start")->capture_default_str();
    design_cmd->add_option("--d", des.d, "Interval width")->capture_default_str();
    design_cmd->add_option("--model", des.model, "log, linear or poly")
        ->check(CLI::IsMember({"log", "linear", "poly"}))
        ->capture_default_str();
    design_cmd->add_option("--degree", des.degree, "Polynomial degree (poly)")->capture_default_str();

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a Monte Carlo bias/MSE study");
    add_simulate_options(*simulate_cmd, sim);
    simulate_cmd->add_option("--k-values", sim.k_values, "Run a K sweep over these values");

    SimulateArgs sweep;
    auto* ksweep_cmd = app.add_subcommand("ksweep", "Infinite-ls bias/MSE as a function of K");
    add_simulate_options(*ksweep_cmd, sweep);
    ksweep_cmd->add_option("--k-values", sweep.k_values, "Comma-separated K values");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (estimate_cmd->parsed()) return cmd_estimate(est, out);
        if (sample_cmd->parsed()) return cmd_sample(smp, out);
        if (design_cmd->parsed()) return cmd_design(des, out);
        if (simulate_cmd->parsed()) return cmd_simulate(sim, false, out, err);
        if (ksweep_cmd->parsed()) return cmd_simulate(sweep, true, out, err);
    } catch (const UnknownKeyError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

}  // namespace stablefit::cli
