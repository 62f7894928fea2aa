#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qssy/errors.hpp"
#include "qssy/solvers/common.hpp"

namespace qssy::cli {

enum class ProblemKind { matrix_market, lorenz_filter, blur_multichannel, blur_motion, random_dense };
enum class SolverKind { qnherlq, qnherqr, qgmres };

inline const char* to_string(ProblemKind p) {
    switch (p) {
    case ProblemKind::matrix_market: return "matrix_market";
    case ProblemKind::lorenz_filter: return "lorenz_filter";
    case ProblemKind::blur_multichannel: return "blur_multichannel";
    case ProblemKind::blur_motion: return "blur_motion";
    case ProblemKind::random_dense: return "random_dense";
    }
    return "?";
}

inline const char* to_string(SolverKind s) {
    switch (s) {
    case SolverKind::qnherlq: return "qnherlq";
    case SolverKind::qnherqr: return "qnherqr";
    case SolverKind::qgmres: return "qgmres";
    }
    return "?";
}

inline ProblemKind parse_problem(const std::string& s) {
    for (auto p : {ProblemKind::matrix_market, ProblemKind::lorenz_filter, ProblemKind::blur_multichannel,
                   ProblemKind::blur_motion, ProblemKind::random_dense})
        if (s == to_string(p)) return p;
    throw std::invalid_argument("unknown problem '" + s + "'");
}

inline SolverKind parse_solver(const std::string& s) {
    for (auto k : {SolverKind::qnherlq, SolverKind::qnherqr, SolverKind::qgmres})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown solver '" + s + "'");
}

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::random_dense;
    std::vector<SolverKind> solvers{SolverKind::qnherlq, SolverKind::qnherqr};
    double tol = 1e-6;
    std::size_t maxit = 5000;
    std::optional<ResidualMode> residual_mode;
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    std::string matrix_path;
    std::string image_path;
    bool image_rgba = false;
    std::array<double, 3> scale{1.5, 2.0, 0.5};

    std::size_t n = 16;
    double sigma = 1.0;
    std::size_t r = 4;
    std::size_t s = 7;
    std::size_t len = 9;

    std::size_t p = 99, q = 99;
    std::optional<double> noise_sigma; // unset: 0.01 x RMS of the clean signal
    double t_end = 20.0;
    double dt = 0.01;

    void validate() const {
        if (solvers.empty()) throw std::invalid_argument("config: at least one solver is required");
        if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
        if (maxit < 1) throw std::invalid_argument("config: maxit must be at least 1");
        if (problem == ProblemKind::matrix_market && matrix_path.empty())
            throw std::invalid_argument("config: matrix_market needs 'matrix'");
        if (problem == ProblemKind::blur_multichannel && image_path.empty() && n < 2)
            throw std::invalid_argument("config: blur_multichannel needs 'image' or n >= 2");
    }
};

// Flat TOML subset: `key = value` lines with strings, numbers, booleans and
// one-level arrays; `#` starts a comment outside strings. Tables are rejected.
using ConfigScalar = std::variant<std::string, double, bool>;
struct ConfigValue {
    std::vector<ConfigScalar> items;
    bool is_array = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

inline ConfigScalar parse_scalar(const std::string& raw, std::size_t line) {
    const std::string t = trim(raw);
    if (t.empty()) throw parse_error(line, "missing value");
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') throw parse_error(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            if (t[i] == '\\' && i + 2 < t.size()) ++i;
            out += t[i];
        }
        return out;
    }
    if (t == "true") return true;
    if (t == "false") return false;
    std::string digits;
    for (char c : t)
        if (c != '_') digits += c;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(digits, &used);
    } catch (const std::exception&) {
        throw parse_error(line, "cannot parse value '" + t + "'");
    }
    if (used != digits.size()) throw parse_error(line, "cannot parse value '" + t + "'");
    return v;
}

inline ConfigValue parse_value(const std::string& raw, std::size_t line) {
    const std::string t = trim(raw);
    ConfigValue v;
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw parse_error(line, "unterminated array");
        v.is_array = true;
        std::string body = t.substr(1, t.size() - 2), item;
        bool in_string = false;
        for (char c : body) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!trim(item).empty()) v.items.push_back(parse_scalar(item, line));
                item.clear();
            } else {
                item += c;
            }
        }
        if (!trim(item).empty()) v.items.push_back(parse_scalar(item, line));
        return v;
    }
    v.items.push_back(parse_scalar(t, line));
    return v;
}

inline std::string as_string(const ConfigValue& v, const std::string& key, std::size_t line) {
    if (v.is_array || !std::holds_alternative<std::string>(v.items.at(0)))
        throw parse_error(line, "'" + key + "' expects a string");
    return std::get<std::string>(v.items[0]);
}

inline double as_number(const ConfigScalar& s, const std::string& key, std::size_t line) {
    if (!std::holds_alternative<double>(s)) throw parse_error(line, "'" + key + "' expects a number");
    return std::get<double>(s);
}

inline double as_number(const ConfigValue& v, const std::string& key, std::size_t line) {
    if (v.is_array) throw parse_error(line, "'" + key + "' expects a number");
    return as_number(v.items.at(0), key, line);
}

inline std::size_t as_count(const ConfigValue& v, const std::string& key, std::size_t line) {
    const double d = as_number(v, key, line);
    if (d < 0.0 || d != std::floor(d)) throw parse_error(line, "'" + key + "' expects a nonnegative integer");
    return std::size_t(d);
}

} // namespace detail

// Resolves relative paths against base_dir (the config file's directory).
inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const ConfigValue& v, std::size_t line,
                          const std::filesystem::path& base_dir = {}) {
    using namespace detail;
    auto path = [&](const std::string& p) {
        const std::filesystem::path fp(p);
        return (fp.is_absolute() || base_dir.empty() ? fp : base_dir / fp).lexically_normal().string();
    };
    try {
        if (key == "problem") cfg.problem = parse_problem(as_string(v, key, line));
        else if (key == "solvers" || key == "solver") {
            cfg.solvers.clear();
            for (const auto& item : v.items) {
                if (!std::holds_alternative<std::string>(item)) throw parse_error(line, "'" + key + "' expects strings");
                cfg.solvers.push_back(parse_solver(std::get<std::string>(item)));
            }
        } else if (key == "tol") cfg.tol = as_number(v, key, line);
        else if (key == "maxit") cfg.maxit = as_count(v, key, line);
        else if (key == "residual_mode") {
            const std::string m = as_string(v, key, line);
            if (m == "recomputed") cfg.residual_mode = ResidualMode::recomputed;
            else if (m == "recurrence") cfg.residual_mode = ResidualMode::recurrence;
            else if (m == "default") cfg.residual_mode.reset();
            else throw parse_error(line, "unknown residual_mode '" + m + "'");
        } else if (key == "seed") cfg.seed = as_count(v, key, line);
        else if (key == "out") cfg.out_dir = path(as_string(v, key, line));
        else if (key == "matrix") cfg.matrix_path = path(as_string(v, key, line));
        else if (key == "image") cfg.image_path = path(as_string(v, key, line));
        else if (key == "image_mode") {
            const std::string m = as_string(v, key, line);
            if (m != "rgb_pure" && m != "rgba_full") throw parse_error(line, "unknown image_mode '" + m + "'");
            cfg.image_rgba = m == "rgba_full";
        } else if (key == "scale") {
            if (!v.is_array || v.items.size() != 3) throw parse_error(line, "'scale' expects three numbers");
            for (int i = 0; i < 3; ++i) cfg.scale[i] = as_number(v.items[i], key, line);
        } else if (key == "n") cfg.n = as_count(v, key, line);
        else if (key == "sigma") cfg.sigma = as_number(v, key, line);
        else if (key == "r") cfg.r = as_count(v, key, line);
        else if (key == "s") cfg.s = as_count(v, key, line);
        else if (key == "len") cfg.len = as_count(v, key, line);
        else if (key == "p") cfg.p = as_count(v, key, line);
        else if (key == "q") cfg.q = as_count(v, key, line);
        else if (key == "noise_sigma") cfg.noise_sigma = as_number(v, key, line);
        else if (key == "t_end") cfg.t_end = as_number(v, key, line);
        else if (key == "dt") cfg.dt = as_number(v, key, line);
        else throw parse_error(line, "unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
        throw parse_error(line, e.what());
    }
}

inline ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
    ExperimentConfig cfg;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string t = detail::trim(detail::strip_comment(raw));
        if (t.empty()) continue;
        if (t.front() == '[') throw parse_error(line, "tables are not supported; use flat key = value lines");
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw parse_error(line, "expected 'key = value'");
        const std::string key = detail::trim(t.substr(0, eq));
        if (key.empty()) throw parse_error(line, "missing key");
        apply_setting(cfg, key, detail::parse_value(t.substr(eq + 1), line), line, base_dir);
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config '" + path + "'");
    return parse_config(in, std::filesystem::path(path).parent_path());
}

} // namespace qssy::cli
