#pragma once

// Run configuration of the command-line tool and its text form: one
// `key=value` per line, keys equal to the long flag names.  The same lines,
// prefixed with "# ", head every CSV the tool writes.

#include <algorithm>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermitrap/couplings.hpp"
#include "fermitrap/csv.hpp"

namespace fermitrap::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command = "figures";
    int N = 14;
    std::string model = "im1"; // im1 | im2 | free
    double alpha_bar_1 = -1.0;
    std::optional<double> r;   // IM2 decay; default 1/sqrt(N), 0.3 at N = 14
    std::optional<int> p_max;  // fixed table window; unset: grown until tails < 1e-10
    std::optional<int> m_max;
    std::optional<double> grid_step;  // unset: 2001 points
    std::optional<double> grid_range; // half range; unset: L_F + 6
    std::optional<double> tolerance;  // quadrature rel_tolerance override
    std::string out_dir = ".";        // not part of the recorded configuration

    std::optional<double> gamma_bar_0; // edge; unset: taken from the IM2 couplings

    double mu_bohr = 6.0;
    double mass_u = 53.0;
    double omega_ell = 6283.1853071795865; // 2 pi * 1 kHz
    std::optional<double> omega_t;
    std::optional<double> filling; // F; default 0.01 when omega_t is unset

    double decay() const { return r.value_or(figure_decay(N)); }

    /// Defaults that depend on other fields made explicit.
    RunConfig resolved() const {
        RunConfig c = *this;
        c.r = decay();
        if (!c.omega_t && !c.filling) c.filling = 0.01;
        return c;
    }

    bool same_settings(const RunConfig& o) const {
        return command == o.command && N == o.N && model == o.model && alpha_bar_1 == o.alpha_bar_1 && r == o.r &&
               p_max == o.p_max && m_max == o.m_max && grid_step == o.grid_step && grid_range == o.grid_range &&
               tolerance == o.tolerance && gamma_bar_0 == o.gamma_bar_0 && mu_bohr == o.mu_bohr &&
               mass_u == o.mass_u && omega_ell == o.omega_ell && omega_t == o.omega_t && filling == o.filling;
    }

    void validate() const {
        static const std::vector<std::string> commands = {"couplings", "table", "occupation", "density",
                                                          "momentum",  "edge",  "dipole",     "figures"};
        if (std::find(commands.begin(), commands.end(), command) == commands.end())
            throw ConfigError("unknown command '" + command + "'");
        if (N < 2) throw ConfigError("--N must be at least 2 (particles per component)");
        if (model != "im1" && model != "im2" && model != "free")
            throw ConfigError("--model must be one of im1, im2, free (got '" + model + "')");
        if (!(alpha_bar_1 <= 0.0))
            throw ConfigError("--alpha-bar-1 must be <= 0: the effective coupling is attractive");
        if (r && !(*r > 0.0)) throw ConfigError("--r must be positive");
        if (p_max && *p_max < 0) throw ConfigError("--p-max must be non-negative");
        if (m_max && *m_max < 1) throw ConfigError("--m-max must be positive");
        if (grid_step && !(*grid_step > 0.0)) throw ConfigError("--grid-step must be positive");
        if (grid_range && !(*grid_range > 0.0)) throw ConfigError("--grid-range must be positive");
        if (tolerance && !(*tolerance > 0.0)) throw ConfigError("--tolerance must be positive");
        if (gamma_bar_0 && !(*gamma_bar_0 >= 0.0)) throw ConfigError("--gamma-bar-0 must be non-negative");
        if (!(mu_bohr > 0.0) || !(mass_u > 0.0) || !(omega_ell > 0.0))
            throw ConfigError("--mu-bohr, --mass-u and --omega-ell must be positive");
        if (omega_t && filling) throw ConfigError("give either --omega-t or --F, not both");
        if (omega_t && !(*omega_t > 0.0)) throw ConfigError("--omega-t must be positive");
        if (filling && !(*filling > 0.0)) throw ConfigError("--F must be positive");
    }
};

namespace detail {

inline std::string number(double v) { return csv::format(v); }

inline double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("header key '" + key + "': '" + text + "' is not a number");
    }
}

inline int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("header key '" + key + "': '" + text + "' is not an integer");
    }
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace detail

/// `key=value` lines for every set field, in a fixed order.
inline std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    auto put = [&](const char* key, const std::string& value) { os << key << '=' << value << '\n'; };
    auto put_num = [&](const char* key, const std::optional<double>& v) {
        if (v) put(key, detail::number(*v));
    };
    auto put_int = [&](const char* key, const std::optional<int>& v) {
        if (v) put(key, std::to_string(*v));
    };
    put("command", c.command);
    put("N", std::to_string(c.N));
    put("model", c.model);
    put("alpha-bar-1", detail::number(c.alpha_bar_1));
    put_num("r", c.r);
    put_int("p-max", c.p_max);
    put_int("m-max", c.m_max);
    put_num("grid-step", c.grid_step);
    put_num("grid-range", c.grid_range);
    put_num("tolerance", c.tolerance);
    put_num("gamma-bar-0", c.gamma_bar_0);
    put("mu-bohr", detail::number(c.mu_bohr));
    put("mass-u", detail::number(c.mass_u));
    put("omega-ell", detail::number(c.omega_ell));
    put_num("omega-t", c.omega_t);
    put_num("F", c.filling);
    return os.str();
}

/// Comment header of every output file: a title line, then the configuration.
inline void write_header(std::ostream& os, const RunConfig& c, const std::string& content) {
    os << "# fermitrap " << kVersion << '\n';
    os << "# content: " << content << '\n';
    csv::write_comment(os, to_text(c));
}

/// Reads the configuration back from a header (or any `key=value` text).
/// A leading "#" is stripped; the title and content lines, and lines
/// without '=', are skipped.
inline RunConfig parse_header(std::istream& is) {
    RunConfig c;
    c.r.reset();
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '#') break; // end of header
        const std::string body = detail::trim(line.empty() ? line : line.substr(1));
        if (body.rfind("content:", 0) == 0 || body.rfind("fermitrap ", 0) == 0) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = detail::trim(body.substr(0, eq));
        const std::string value = detail::trim(body.substr(eq + 1));
        if (key == "command")
            c.command = value;
        else if (key == "N")
            c.N = detail::parse_int(key, value);
        else if (key == "model")
            c.model = value;
        else if (key == "alpha-bar-1")
            c.alpha_bar_1 = detail::parse_double(key, value);
        else if (key == "r")
            c.r = detail::parse_double(key, value);
        else if (key == "p-max")
            c.p_max = detail::parse_int(key, value);
        else if (key == "m-max")
            c.m_max = detail::parse_int(key, value);
        else if (key == "grid-step")
            c.grid_step = detail::parse_double(key, value);
        else if (key == "grid-range")
            c.grid_range = detail::parse_double(key, value);
        else if (key == "tolerance")
            c.tolerance = detail::parse_double(key, value);
        else if (key == "gamma-bar-0")
            c.gamma_bar_0 = detail::parse_double(key, value);
        else if (key == "mu-bohr")
            c.mu_bohr = detail::parse_double(key, value);
        else if (key == "mass-u")
            c.mass_u = detail::parse_double(key, value);
        else if (key == "omega-ell")
            c.omega_ell = detail::parse_double(key, value);
        else if (key == "omega-t")
            c.omega_t = detail::parse_double(key, value);
        else if (key == "F")
            c.filling = detail::parse_double(key, value);
        else
            throw ConfigError("unknown header key '" + key + "'");
    }
    return c;
}

inline RunConfig parse_header(const std::string& text) {
    std::istringstream is(text);
    return parse_header(is);
}

} // namespace fermitrap::cli
