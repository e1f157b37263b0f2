#include "stablefit/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "stablefit/errors.hpp"

namespace stablefit {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto pos = value.find(',', start);
        const auto item = trim(value.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (!item.empty()) {
            items.push_back(item);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return items;
}

double to_double(std::string_view key, std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ConfigError("'" + std::string(key) + "': '" + s + "' is not a number");
    }
    return v;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("'" + std::string(key) + "': '" + std::string(text) + "' is not an integer");
    }
    return v;
}

bool to_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "no" || text == "0") {
        return false;
    }
    throw ConfigError("'" + std::string(key) + "': expected true or false");
}

}  // namespace

const std::vector<std::string>& run_file_keys() {
    static const std::vector<std::string> keys = {
        "alphas", "ns",     "reps",   "methods", "x0",       "d",
        "K",      "seed",   "target", "output",  "sigma",    "threads",
        "markdown", "k_values", "koutrouvelis_default", "koutrouvelis_points"};
    return keys;
}

void apply_run_setting(RunFile& run, std::string_view key, std::string_view value) {
    SimConfig& c = run.config;
    if (key == "alphas") {
        c.alphas.clear();
        for (auto item : split_list(value)) {
            c.alphas.push_back(to_double(key, item));
        }
    } else if (key == "ns") {
        c.sample_sizes.clear();
        for (auto item : split_list(value)) {
            c.sample_sizes.push_back(to_integer<int>(key, item));
        }
    } else if (key == "reps") {
        c.replications = to_integer<std::size_t>(key, value);
    } else if (key == "methods") {
        c.methods.clear();
        for (auto item : split_list(value)) {
            try {
                c.methods.push_back(parse_method(item));
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        }
    } else if (key == "x0") {
        c.x0 = to_double(key, value);
    } else if (key == "d") {
        c.d = to_double(key, value);
    } else if (key == "K") {
        c.K = to_integer<int>(key, value);
    } else if (key == "seed") {
        c.base_seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "target") {
        c.target = parse_target(value);
    } else if (key == "output") {
        run.output = std::string(value);
    } else if (key == "sigma") {
        c.sigma = to_double(key, value);
    } else if (key == "threads") {
        c.threads = to_integer<unsigned>(key, value);
    } else if (key == "markdown") {
        run.markdown = to_bool(key, value);
    } else if (key == "k_values") {
        run.k_values.clear();
        for (auto item : split_list(value)) {
            run.k_values.push_back(to_integer<int>(key, item));
        }
    } else if (key == "koutrouvelis_default") {
        c.koutrouvelis_default = to_integer<int>(key, value);
    } else if (key == "koutrouvelis_points") {
        c.koutrouvelis_points.clear();
        for (auto item : split_list(value)) {
            const auto colon = item.find(':');
            const auto eq = item.find('=');
            if (colon == std::string_view::npos || eq == std::string_view::npos || eq < colon) {
                throw ConfigError("koutrouvelis_points entries look like alpha:n=points, got '"
                                  + std::string(item) + "'");
            }
            const double alpha = to_double(key, trim(item.substr(0, colon)));
            const int n = to_integer<int>(key, trim(item.substr(colon + 1, eq - colon - 1)));
            const int points = to_integer<int>(key, trim(item.substr(eq + 1)));
            c.koutrouvelis_points[{alpha, n}] = points;
        }
    } else {
        std::string valid;
        for (const auto& k : run_file_keys()) {
            valid += (valid.empty() ? "" : ", ") + k;
        }
        throw UnknownKeyError("unknown key '" + std::string(key) + "'; valid keys: " + valid);
    }
}

RunFile parse_run_file(std::string_view text) {
    RunFile run;
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
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            apply_run_setting(run, key, value);
        } catch (const UnknownKeyError& e) {
            throw UnknownKeyError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return run;
}

}  // namespace stablefit
