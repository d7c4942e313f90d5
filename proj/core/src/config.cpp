#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mnsim/errors.hpp"
#include "mnsim/experiment.hpp"

namespace mnsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

struct Cursor {
    std::string name;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
    }
};

double parse_double(const std::string& v, const Cursor& at) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) at.fail("trailing characters in number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        at.fail("expected a number, got '" + v + "'");
    }
}

/// Accepts plain decimals and p/q fractions (the CP ratio is quoted as 1/16).
double parse_ratio(const std::string& v, const Cursor& at) {
    const std::size_t slash = v.find('/');
    if (slash == std::string::npos) {
        return parse_double(v, at);
    }
    const double num = parse_double(trim(v.substr(0, slash)), at);
    const double den = parse_double(trim(v.substr(slash + 1)), at);
    if (den == 0.0) at.fail("zero denominator in '" + v + "'");
    return num / den;
}

long long parse_int(const std::string& v, const Cursor& at) {
    long long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        at.fail("expected an integer, got '" + v + "'");
    }
    return x;
}

std::uint64_t parse_u64(const std::string& v, const Cursor& at) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        at.fail("expected an unsigned integer, got '" + v + "'");
    }
    return x;
}

std::vector<int> parse_int_list(const std::string& v, const Cursor& at) {
    std::vector<int> out;
    for (const std::string& item : split(v, ',')) {
        out.push_back(static_cast<int>(parse_int(item, at)));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& v, const Cursor& at) {
    std::vector<double> out;
    for (const std::string& item : split(v, ',')) {
        out.push_back(parse_double(item, at));
    }
    return out;
}

SchedulerAlgorithm parse_algorithm(const std::string& v, const Cursor& at) {
    if (v == "random") return SchedulerAlgorithm::Random;
    if (v == "algo1") return SchedulerAlgorithm::EdgeFairness;
    if (v == "algo2") return SchedulerAlgorithm::OverallFairness;
    at.fail("unknown algorithm '" + v + "' (expected random, algo1 or algo2)");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& name) {
    ExperimentConfig cfg;
    // Track sizing keys so d/e and explicit lists can appear in any order.
    int d_key = -1;
    int e_key = -1;
    bool subc1_given = false, subc2_given = false;
    bool powers1_given = false, powers2_given = false;

    std::string section;
    std::string raw;
    Cursor at{name, 0};
    while (std::getline(in, raw)) {
        ++at.line;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') at.fail("malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "numerology" && section != "ues" && section != "power" &&
                section != "mc" && section != "scheduler" && section != "cdf" &&
                section != "case" && section != "output") {
                at.fail("unknown section [" + section + "]");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) at.fail("key '" + key + "' outside any section");

        if (section == "numerology") {
            if (key == "delta_f_ref_khz") cfg.delta_f_ref_khz = parse_double(value, at);
            else if (key == "k") cfg.k = static_cast<int>(parse_int(value, at));
            else if (key == "n_ref") cfg.n_ref = static_cast<int>(parse_int(value, at));
            else if (key == "cp_ratio") cfg.cp_ratio = parse_ratio(value, at);
            else if (key == "guard_bins") cfg.guard_bins = static_cast<int>(parse_int(value, at));
            else at.fail("unknown key '" + key + "' in [numerology]");
        } else if (section == "ues") {
            if (key == "d") d_key = static_cast<int>(parse_int(value, at));
            else if (key == "e") e_key = static_cast<int>(parse_int(value, at));
            else if (key == "subcarriers1") { cfg.subcarriers1 = parse_int_list(value, at); subc1_given = true; }
            else if (key == "subcarriers2") { cfg.subcarriers2 = parse_int_list(value, at); subc2_given = true; }
            else at.fail("unknown key '" + key + "' in [ues]");
        } else if (section == "power") {
            if (key == "mode") {
                if (value == "fixed") cfg.power_mode = PowerMode::Fixed;
                else if (value == "uniform") cfg.power_mode = PowerMode::UniformRandom;
                else at.fail("unknown power mode '" + value + "' (expected fixed or uniform)");
            } else if (key == "fixed1") { cfg.powers1 = parse_double_list(value, at); powers1_given = true; }
            else if (key == "fixed2") { cfg.powers2 = parse_double_list(value, at); powers2_given = true; }
            else if (key == "uniform_lo_db") cfg.uniform_lo_db = parse_double(value, at);
            else if (key == "uniform_hi_db") cfg.uniform_hi_db = parse_double(value, at);
            else at.fail("unknown key '" + key + "' in [power]");
        } else if (section == "mc") {
            if (key == "trials") cfg.trials = static_cast<int>(parse_int(value, at));
            else if (key == "seed") cfg.seed = parse_u64(value, at);
            else if (key == "threads") cfg.threads = static_cast<int>(parse_int(value, at));
            else at.fail("unknown key '" + key + "' in [mc]");
        } else if (section == "scheduler") {
            if (key == "algorithms") {
                cfg.algorithms.clear();
                for (const std::string& a : split(value, ',')) {
                    cfg.algorithms.push_back(parse_algorithm(a, at));
                }
            } else if (key == "r") cfg.r = parse_double(value, at);
            else if (key == "pl_average") {
                if (value == "db") cfg.pl_average = PowerAverage::Decibel;
                else if (value == "linear") cfg.pl_average = PowerAverage::Linear;
                else at.fail("unknown pl_average '" + value + "' (expected db or linear)");
            } else at.fail("unknown key '" + key + "' in [scheduler]");
        } else if (section == "cdf") {
            if (key == "instances") cfg.cdf_instances = static_cast<int>(parse_int(value, at));
            else if (key == "inner_trials") cfg.cdf_inner_trials = static_cast<int>(parse_int(value, at));
            else at.fail("unknown key '" + key + "' in [cdf]");
        } else if (section == "case") {
            if (key == "boost_db") cfg.case_boost_db = parse_double(value, at);
            else at.fail("unknown key '" + key + "' in [case]");
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "figure_label") cfg.figure_label = value;
            else at.fail("unknown key '" + key + "' in [output]");
        }
    }

    Cursor whole{name, at.line};
    auto resize_or_check = [&](std::vector<int>& list, bool given, int count, const char* what) {
        if (count < 0) return;
        if (count < 1) whole.fail(std::string(what) + " UE count must be >= 1");
        if (given) {
            if (static_cast<int>(list.size()) != count) {
                whole.fail(std::string("subcarrier list length does not match ") + what +
                           " UE count");
            }
        } else {
            list.assign(count, 120);
        }
    };
    resize_or_check(cfg.subcarriers1, subc1_given, d_key, "d");
    resize_or_check(cfg.subcarriers2, subc2_given, e_key, "e");
    if (!powers1_given) cfg.powers1.assign(cfg.subcarriers1.size(), 0.0);
    if (!powers2_given) cfg.powers2.assign(cfg.subcarriers2.size(), 0.0);

    // Range validation.
    if (cfg.k < 0) whole.fail("k must be >= 0");
    if (cfg.n_ref < 1) whole.fail("n_ref must be >= 1");
    if (cfg.guard_bins < 0) whole.fail("guard_bins must be >= 0");
    if (cfg.subcarriers1.empty() || cfg.subcarriers2.empty()) {
        whole.fail("both numerologies need at least one UE");
    }
    for (int c : cfg.subcarriers1) {
        if (c < 1) whole.fail("subcarriers1 entries must be >= 1");
    }
    for (int c : cfg.subcarriers2) {
        if (c < 1) whole.fail("subcarriers2 entries must be >= 1");
    }
    if (static_cast<int>(cfg.powers1.size()) != cfg.d()) {
        whole.fail("fixed1 must list one power per NUM-1 UE");
    }
    if (static_cast<int>(cfg.powers2.size()) != cfg.e()) {
        whole.fail("fixed2 must list one power per NUM-2 UE");
    }
    for (double p : cfg.powers1) {
        if (!std::isfinite(p)) whole.fail("fixed1 powers must be finite");
    }
    for (double p : cfg.powers2) {
        if (!std::isfinite(p)) whole.fail("fixed2 powers must be finite");
    }
    if (cfg.uniform_hi_db < cfg.uniform_lo_db) {
        whole.fail("uniform_hi_db must be >= uniform_lo_db");
    }
    if (cfg.trials < 1) whole.fail("trials must be >= 1");
    if (cfg.threads < 0) whole.fail("threads must be >= 0");
    if (!(cfg.r >= 1.0)) whole.fail("r must be >= 1");
    if (cfg.cdf_instances < 1) whole.fail("cdf instances must be >= 1");
    if (cfg.cdf_inner_trials < 1) whole.fail("cdf inner_trials must be >= 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in, path);
}

}  // namespace mnsim
