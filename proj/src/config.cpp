#include "invlag/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace invlag {
namespace {

struct Entry {
    std::string value;
    int line;
};

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& text, const std::string& key, int line) {
    const std::string t = strip(text);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' has malformed number '" + t + "'",
                          line);
    }
    if (used != t.size())
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' has trailing characters in '" + t + "'",
                          line);
    return value;
}

int parse_int(const std::string& text, const std::string& key, int line) {
    const double value = parse_double(text, key, line);
    if (value != std::floor(value) || std::abs(value) > 1e9)
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' must be an integer",
                          line);
    return static_cast<int>(value);
}

Polynomial parse_poly(const std::string& text, const std::string& key, int line) {
    std::vector<double> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        coeffs.push_back(parse_double(item, key, line));
    return Polynomial(std::move(coeffs));
}

AxisSpec parse_axis(const std::string& text, const std::string& key, int line) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3)
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' must be lo:hi:n",
                          line);
    AxisSpec axis;
    axis.lo = parse_double(parts[0], key, line);
    axis.hi = parse_double(parts[1], key, line);
    axis.n = parse_int(parts[2], key, line);
    axis.set = true;
    if (axis.n < 1)
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' needs n >= 1",
                          line);
    if (!(axis.lo <= axis.hi))
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                              "' bounds must be ordered",
                          line);
    return axis;
}

const char* const kKnownKeys[] = {
    "mass",       "alpha2",      "U",           "gamma",        "preset",
    "lambda",     "gamma_const", "c",           "x0",           "v0",
    "dt",         "t_end",       "grid_x",      "grid_v",       "grid_p",
    "N",          "mode",        "tol_kernel_pde", "tol_invariant_pde",
    "tol_euler_lagrange", "tol_limit_slope", "tol_roundtrip"};

bool known_key(const std::string& key) {
    for (const char* k : kKnownKeys)
        if (key == k) return true;
    return false;
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "derive") return Command::derive;
    if (name == "simulate") return Command::simulate;
    if (name == "hamiltonian") return Command::hamiltonian;
    if (name == "invert") return Command::invert;
    if (name == "verify") return Command::verify;
    if (name == "limits") return Command::limits;
    throw std::invalid_argument("unknown command '" + name + "'");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);

    std::map<std::string, Entry> entries;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'",
                              line_no);
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (!known_key(key))
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'",
                              line_no);
        if (entries.count(key))
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "' (first set on line " +
                                  std::to_string(entries[key].line) + ")",
                              line_no);
        entries[key] = {value, line_no};
    }

    const auto take = [&](const char* key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    RunConfig config;

    const double mass = take("mass") ? parse_double(take("mass")->value, "mass", take("mass")->line) : 1.0;
    if (const Entry* preset = take("preset")) {
        if (preset->value != "constant-force")
            throw ConfigError("config line " + std::to_string(preset->line) +
                                  ": unknown preset '" + preset->value + "'",
                              preset->line);
        for (const char* banned : {"U", "gamma", "alpha2"})
            if (const Entry* e = take(banned))
                throw ConfigError("config line " + std::to_string(e->line) + ": key '" +
                                      std::string(banned) + "' conflicts with preset",
                                  e->line);
        const Entry* lambda = take("lambda");
        const Entry* gamma_const = take("gamma_const");
        const Entry* c = take("c");
        if (!lambda || !gamma_const || !c)
            throw ConfigError("preset = constant-force requires lambda, gamma_const and c",
                              preset->line);
        try {
            config.spec = SystemSpec::constant_force(
                mass, parse_double(lambda->value, "lambda", lambda->line),
                parse_double(gamma_const->value, "gamma_const", gamma_const->line),
                parse_double(c->value, "c", c->line));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("invalid preset parameters: ") + err.what(),
                              preset->line);
        }
    } else {
        for (const char* banned : {"lambda", "gamma_const", "c"})
            if (const Entry* e = take(banned))
                throw ConfigError("config line " + std::to_string(e->line) + ": key '" +
                                      std::string(banned) + "' requires preset = constant-force",
                                  e->line);
        const double alpha2 =
            take("alpha2") ? parse_double(take("alpha2")->value, "alpha2", take("alpha2")->line)
                           : 0.0;
        const Polynomial U =
            take("U") ? parse_poly(take("U")->value, "U", take("U")->line) : Polynomial{};
        const Polynomial gamma = take("gamma")
                                     ? parse_poly(take("gamma")->value, "gamma", take("gamma")->line)
                                     : Polynomial{};
        try {
            config.spec = SystemSpec::make(mass, alpha2, U, gamma);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("invalid system parameters: ") + err.what(), 0);
        }
    }

    if (const Entry* e = take("x0")) config.x0 = parse_double(e->value, "x0", e->line);
    if (const Entry* e = take("v0")) config.v0 = parse_double(e->value, "v0", e->line);
    if (const Entry* e = take("dt")) {
        config.dt = parse_double(e->value, "dt", e->line);
        if (!(config.dt > 0.0))
            throw ConfigError("config line " + std::to_string(e->line) + ": dt must be > 0",
                              e->line);
    }
    if (const Entry* e = take("t_end")) {
        config.t_end = parse_double(e->value, "t_end", e->line);
        if (!(config.t_end > 0.0))
            throw ConfigError("config line " + std::to_string(e->line) + ": t_end must be > 0",
                              e->line);
    }
    if (const Entry* e = take("grid_x")) config.grid_x = parse_axis(e->value, "grid_x", e->line);
    if (const Entry* e = take("grid_v")) config.grid_v = parse_axis(e->value, "grid_v", e->line);
    if (const Entry* e = take("grid_p")) config.grid_p = parse_axis(e->value, "grid_p", e->line);
    if (const Entry* e = take("N")) {
        config.n_terms = parse_int(e->value, "N", e->line);
        if (config.n_terms < 1)
            throw ConfigError("config line " + std::to_string(e->line) + ": N must be >= 1",
                              e->line);
    }
    if (const Entry* e = take("mode")) config.mode = e->value;
    if (const Entry* e = take("tol_kernel_pde"))
        config.tol_kernel_pde = parse_double(e->value, "tol_kernel_pde", e->line);
    if (const Entry* e = take("tol_invariant_pde"))
        config.tol_invariant_pde = parse_double(e->value, "tol_invariant_pde", e->line);
    if (const Entry* e = take("tol_euler_lagrange"))
        config.tol_euler_lagrange = parse_double(e->value, "tol_euler_lagrange", e->line);
    if (const Entry* e = take("tol_limit_slope"))
        config.tol_limit_slope = parse_double(e->value, "tol_limit_slope", e->line);
    if (const Entry* e = take("tol_roundtrip"))
        config.tol_roundtrip = parse_double(e->value, "tol_roundtrip", e->line);

    if (!config.grid_v.set) {
        const double vmax =
            config.spec.alpha2() > 0.0 ? 0.9 / std::sqrt(config.spec.alpha2()) : 0.9;
        config.grid_v = {-vmax, vmax, 21, false};
    }
    return config;
}

} // namespace invlag
