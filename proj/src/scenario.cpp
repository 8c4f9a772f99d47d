#include "sim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sim/constants.hpp"
#include "sim/errors.hpp"
#include "sim/phys_core.hpp"

namespace sim {

namespace {

enum class Kind { freq, rate, time, mass, temp, dipole, dimensionless, integer, boolean, string };

struct KeyInfo {
    Kind kind;
};

const std::map<std::string, KeyInfo>& key_table() {
    static const std::map<std::string, KeyInfo> table = {
        {"omega_eg", {Kind::freq}},    {"gamma", {Kind::rate}},
        {"dipole_moment", {Kind::dipole}}, {"mass", {Kind::mass}},
        {"omega_T", {Kind::freq}},     {"omega_x", {Kind::freq}},
        {"omega_y", {Kind::freq}},     {"omega_z", {Kind::freq}},
        {"delta", {Kind::dimensionless}}, {"omega_M", {Kind::freq}},
        {"state", {Kind::string}},     {"nbar", {Kind::dimensionless}},
        {"temperature", {Kind::temp}}, {"r", {Kind::dimensionless}},
        {"phi", {Kind::dimensionless}}, {"alpha_re", {Kind::dimensionless}},
        {"alpha_im", {Kind::dimensionless}},
        {"t0", {Kind::time}},          {"gamma_dt", {Kind::dimensionless}},
        {"grid_min", {Kind::dimensionless}}, {"grid_max", {Kind::dimensionless}},
        {"grid_points", {Kind::integer}},
        {"mc_samples", {Kind::integer}}, {"antithetic", {Kind::boolean}},
        {"quad_tol", {Kind::dimensionless}}, {"mathieu_tol", {Kind::dimensionless}},
        {"sweep_variable", {Kind::string}}, {"x_param", {Kind::dimensionless}},
        {"eta0", {Kind::dimensionless}},
        {"out", {Kind::string}},       {"verify", {Kind::boolean}},
        {"seed", {Kind::integer}},
    };
    return table;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || end != t.c_str() + t.size())
        fail(line, "key '" + key + "': cannot parse number from '" + t + "'");
    return v;
}

// Splits "480 kHz" into the number and the suffix (possibly empty).
void split_unit(const std::string& value, std::string& num, std::string& unit) {
    std::size_t i = 0;
    while (i < value.size() &&
           (std::isdigit(static_cast<unsigned char>(value[i])) ||
            value[i] == '+' || value[i] == '-' || value[i] == '.' ||
            value[i] == 'e' || value[i] == 'E')) {
        // 'e'/'E' only counts as part of the number when followed by a digit
        // or a sign, so "4 K" vs "4e3" disambiguate.
        if ((value[i] == 'e' || value[i] == 'E') &&
            !(i + 1 < value.size() &&
              (std::isdigit(static_cast<unsigned char>(value[i + 1])) ||
               value[i + 1] == '+' || value[i + 1] == '-')))
            break;
        ++i;
    }
    num = value.substr(0, i);
    unit = trim(value.substr(i));
}

double parse_with_unit(Kind kind, const std::string& key,
                       const std::string& value, int line) {
    std::string num, unit;
    split_unit(trim(value), num, unit);
    if (num.empty()) fail(line, "key '" + key + "': missing numeric value");
    const double v = parse_number(num, line, key);

    const auto require_unit = [&](std::initializer_list<std::pair<const char*, double>> table,
                                  const char* expected) -> double {
        for (const auto& [name, factor] : table)
            if (unit == name) return v * factor;
        fail(line, "key '" + key + "': unit '" + unit + "' invalid, expected " +
                       expected);
    };

    switch (kind) {
        case Kind::freq:
            return require_unit({{"rad/s", 1.0},
                                 {"Hz", constants::two_pi},
                                 {"kHz", constants::two_pi * 1e3},
                                 {"MHz", constants::two_pi * 1e6},
                                 {"GHz", constants::two_pi * 1e9}},
                                "rad/s, Hz, kHz, MHz or GHz");
        case Kind::rate:
            return require_unit({{"1/s", 1.0}}, "1/s");
        case Kind::time:
            return require_unit({{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}},
                                "s, ms, us or ns");
        case Kind::mass:
            return require_unit({{"u", constants::atomic_mass_unit}, {"kg", 1.0}},
                                "u or kg");
        case Kind::temp:
            return require_unit({{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}},
                                "K, mK or uK");
        case Kind::dipole:
            return require_unit({{"C*m", 1.0}, {"Cm", 1.0}}, "C*m");
        default:
            if (!unit.empty() && unit != "rad")
                fail(line, "key '" + key + "': unexpected unit '" + unit +
                               "' on dimensionless value");
            return v;
    }
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "key '" + key + "': expected true/false");
}

} // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> v;
    v.reserve(points);
    if (points == 1) {
        v.push_back(min);
        return v;
    }
    for (int i = 0; i < points; ++i)
        v.push_back(min + (max - min) * static_cast<double>(i) /
                              static_cast<double>(points - 1));
    return v;
}

double Scenario::require(const std::optional<double>& field, const char* key) const {
    if (!field) throw config_error(std::string("missing required key '") + key + "'");
    return *field;
}

GridSpec Scenario::grid_or(double def_min, double def_max, int def_points) const {
    GridSpec g;
    g.min = grid_min.value_or(def_min);
    g.max = grid_max.value_or(def_max);
    g.points = static_cast<int>(grid_points.value_or(def_points));
    if (g.points < 1) throw config_error("grid_points must be >= 1");
    if (g.points > 1 && !(g.max > g.min))
        throw config_error("non-monotone grid: grid_max must exceed grid_min");
    if (!std::isfinite(g.min) || !std::isfinite(g.max))
        throw config_error("grid bounds must be finite");
    return g;
}

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::map<std::string, int> seen_line;

    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "key '" + key + "': empty value");

        const auto info = key_table().find(key);
        if (info == key_table().end()) fail(line_no, "unknown key '" + key + "'");
        if (const auto prev = seen_line.find(key); prev != seen_line.end())
            fail(line_no, "duplicate key '" + key + "' (first set on line " +
                              std::to_string(prev->second) + ")");
        seen_line[key] = line_no;
        sc.raw[key] = value;

        const Kind kind = info->second.kind;
        const auto num = [&] { return parse_with_unit(kind, key, value, line_no); };
        if (key == "omega_eg") sc.omega_eg = num();
        else if (key == "gamma") sc.gamma = num();
        else if (key == "dipole_moment") sc.dipole_moment = num();
        else if (key == "mass") sc.mass = num();
        else if (key == "omega_T") sc.omega_T = num();
        else if (key == "omega_x") sc.omega_x = num();
        else if (key == "omega_y") sc.omega_y = num();
        else if (key == "omega_z") sc.omega_z = num();
        else if (key == "delta") sc.delta = num();
        else if (key == "omega_M") sc.omega_M = num();
        else if (key == "state") {
            const std::string v = trim(value);
            if (v != "ground" && v != "thermal" && v != "thermal_doppler" &&
                v != "squeezed" && v != "squeezed_thermal" && v != "coherent")
                fail(line_no, "unknown state constructor '" + v + "'");
            sc.state = v;
        } else if (key == "nbar") sc.nbar = num();
        else if (key == "temperature") sc.temperature = num();
        else if (key == "r") sc.r = num();
        else if (key == "phi") sc.phi = num();
        else if (key == "alpha_re") sc.alpha_re = num();
        else if (key == "alpha_im") sc.alpha_im = num();
        else if (key == "t0") sc.t0 = num();
        else if (key == "gamma_dt") sc.gamma_dt = num();
        else if (key == "grid_min") sc.grid_min = num();
        else if (key == "grid_max") sc.grid_max = num();
        else if (key == "grid_points")
            sc.grid_points = static_cast<std::int64_t>(parse_number(value, line_no, key));
        else if (key == "mc_samples")
            sc.mc_samples = static_cast<std::int64_t>(parse_number(value, line_no, key));
        else if (key == "antithetic") sc.antithetic = parse_bool(value, line_no, key);
        else if (key == "quad_tol") sc.quad_tol = num();
        else if (key == "mathieu_tol") sc.mathieu_tol = num();
        else if (key == "sweep_variable") {
            const std::string v = trim(value);
            if (v != "eta0" && v != "r" && v != "x_param")
                fail(line_no, "sweep_variable must be eta0, r or x_param");
            sc.sweep_variable = v;
        } else if (key == "x_param") sc.x_param = num();
        else if (key == "eta0") sc.eta0 = num();
        else if (key == "out") sc.out = trim(value);
        else if (key == "verify") sc.verify = parse_bool(value, line_no, key);
        else if (key == "seed")
            sc.seed = static_cast<std::uint64_t>(
                std::strtoull(trim(value).c_str(), nullptr, 10));
    }

    if (sc.gamma && sc.dipole_moment && sc.omega_eg) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "gamma given directly; value from dipole_moment would be "
                      "%.6g 1/s and is ignored",
                      spontaneous_rate(*sc.dipole_moment, *sc.omega_eg));
        sc.warnings.emplace_back(buf);
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace sim
