#include "zeno/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno::cli {

namespace {

constexpr std::array<const char*, 4> kDiagonalCoefficients = {"t_up", "t_down", "r_up", "r_down"};
constexpr std::array<const char*, 8> kSpinFlipCoefficients = {"t_uu", "t_ud", "t_du", "t_dd",
                                                              "r_uu", "r_ud", "r_du", "r_dd"};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_real(const KeyValues& kv, const std::string& key) {
    const std::string& text = kv.at(key);
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse '" + text + "' as a real number");
    }
    if (consumed != text.size()) {
        throw ConfigError("field '" + key + "': cannot parse '" + text + "' as a real number");
    }
    return value;
}

long parse_integer(const KeyValues& kv, const std::string& key) {
    const std::string& text = kv.at(key);
    std::size_t consumed = 0;
    long value = 0;
    try {
        value = std::stol(text, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse '" + text + "' as an integer");
    }
    if (consumed != text.size()) {
        throw ConfigError("field '" + key + "': cannot parse '" + text + "' as an integer");
    }
    return value;
}

// Complex coefficient named q, encoded either as (q2, q_phase) with q2 the
// squared modulus, or as (q_re, q_im). Phase/imaginary part default to 0.
std::optional<Complex> parse_coefficient(const KeyValues& kv, const std::string& q) {
    const bool has_mod2 = kv.count(q + "2") > 0;
    const bool has_phase = kv.count(q + "_phase") > 0;
    const bool has_re = kv.count(q + "_re") > 0;
    const bool has_im = kv.count(q + "_im") > 0;
    if ((has_mod2 || has_phase) && (has_re || has_im)) {
        throw ConfigError("coefficient '" + q + "': mixed (modulus^2, phase) and (re, im) encodings");
    }
    if (has_phase && !has_mod2) {
        throw ConfigError("field '" + q + "_phase' given without '" + q + "2'");
    }
    if (has_im && !has_re) {
        throw ConfigError("field '" + q + "_im' given without '" + q + "_re'");
    }
    if (has_mod2) {
        const double mod2 = parse_real(kv, q + "2");
        if (mod2 < 0.0) {
            throw ConfigError("field '" + q + "2': squared modulus must be >= 0");
        }
        const double phase = has_phase ? parse_real(kv, q + "_phase") : 0.0;
        return std::polar(std::sqrt(mod2), phase);
    }
    if (has_re) {
        return Complex{parse_real(kv, q + "_re"), has_im ? parse_real(kv, q + "_im") : 0.0};
    }
    return std::nullopt;
}

template <std::size_t N>
bool any_coefficient_present(const KeyValues& kv, const std::array<const char*, N>& names) {
    for (const char* q : names) {
        for (const char* suffix : {"2", "_phase", "_re", "_im"}) {
            if (kv.count(std::string(q) + suffix) > 0) return true;
        }
    }
    return false;
}

std::optional<MirrorModel> parse_mirror(const KeyValues& kv) {
    const bool any_diagonal = any_coefficient_present(kv, kDiagonalCoefficients);
    const bool any_flip = any_coefficient_present(kv, kSpinFlipCoefficients);
    if (any_diagonal && any_flip) {
        throw ConfigError("mirror: diagonal and spin-flip coefficients cannot be mixed");
    }

    std::string kind;
    if (kv.count("mirror") > 0) {
        kind = kv.at("mirror");
        if (kind != "ideal" && kind != "diagonal" && kind != "spinflip") {
            throw ConfigError("field 'mirror': expected ideal, diagonal, or spinflip, got '" +
                              kind + "'");
        }
        if (kind == "ideal" && (any_diagonal || any_flip)) {
            throw ConfigError("mirror: ideal mirror takes no coefficients");
        }
        if (kind == "diagonal" && any_flip) {
            throw ConfigError("mirror: spin-flip coefficients given for a diagonal mirror");
        }
        if (kind == "spinflip" && any_diagonal) {
            throw ConfigError("mirror: diagonal coefficients given for a spin-flip mirror");
        }
    } else if (any_flip) {
        kind = "spinflip";
    } else if (any_diagonal) {
        kind = "diagonal";
    } else {
        return std::nullopt;
    }

    if (kind == "ideal") {
        return MirrorModel{IdealMirror{}};
    }
    if (kind == "diagonal") {
        const auto t_up = parse_coefficient(kv, "t_up");
        if (!t_up) {
            throw ConfigError("mirror: 't_up2' (or 't_up_re') is required for a diagonal mirror");
        }
        const Complex t_down = parse_coefficient(kv, "t_down").value_or(Complex{0.0, 0.0});
        const auto completed = [](Complex t) {
            return std::sqrt(std::max(0.0, 1.0 - std::norm(t)));
        };
        const Complex r_up = parse_coefficient(kv, "r_up").value_or(Complex{completed(*t_up), 0.0});
        const Complex r_down =
            parse_coefficient(kv, "r_down").value_or(Complex{completed(t_down), 0.0});
        return MirrorModel{DiagonalMirror{*t_up, t_down, r_up, r_down}};
    }
    // spinflip: all eight entries must be spelled out
    std::array<Complex, 8> entries{};
    for (std::size_t i = 0; i < kSpinFlipCoefficients.size(); ++i) {
        const auto value = parse_coefficient(kv, kSpinFlipCoefficients[i]);
        if (!value) {
            throw ConfigError(std::string("mirror: coefficient '") + kSpinFlipCoefficients[i] +
                              "' is required for a spin-flip mirror");
        }
        entries[i] = *value;
    }
    const Operator2 t{entries[0], entries[1], entries[2], entries[3]};
    const Operator2 r{entries[4], entries[5], entries[6], entries[7]};
    return MirrorModel{SpinFlipMirror{t, r}};
}

LossModel parse_loss_model(const KeyValues& kv, double* theta_out) {
    for (const char* key : {"a", "tau_z"}) {
        if (kv.count(key) == 0) {
            throw ConfigError(std::string("field '") + key + "' is required by command 'general'");
        }
    }
    const double a = parse_real(kv, "a");
    const double b = kv.count("b") ? parse_real(kv, "b") : 0.0;
    const double c = kv.count("c") ? parse_real(kv, "c") : 0.0;
    const double tau_z = parse_real(kv, "tau_z");

    const bool has_a1 = kv.count("alpha1") > 0;
    const bool has_a2 = kv.count("alpha2") > 0;
    if (!has_a1 && !has_a2) {
        throw ConfigError("field 'alpha1' (or 'alpha2') is required by command 'general'");
    }
    double alpha1 = has_a1 ? parse_real(kv, "alpha1") : 1.0 - parse_real(kv, "alpha2");
    double alpha2 = has_a2 ? parse_real(kv, "alpha2") : 1.0 - alpha1;
    if (has_a1 && has_a2 && std::abs(alpha1 + alpha2 - 1.0) > 1e-12) {
        throw ConfigError("fields 'alpha1'/'alpha2': must sum to 1");
    }

    const bool has_t = kv.count("t_total") > 0;
    const bool has_theta = kv.count("theta") > 0;
    if (has_t && has_theta) {
        throw ConfigError("fields 't_total' and 'theta': give one or the other, not both");
    }
    if (!has_t && !has_theta) {
        throw ConfigError("field 't_total' (or 'theta') is required by command 'general'");
    }
    const double t_total = has_t ? parse_real(kv, "t_total") : parse_real(kv, "theta") * tau_z;
    *theta_out = t_total / tau_z;
    return {a, b, c, tau_z, alpha1, alpha2, t_total};
}

std::set<std::string> allowed_keys(Command cmd) {
    std::set<std::string> keys = {"theta", "out", "format"};
    const auto add_coefficients = [&keys](const auto& names) {
        for (const char* q : names) {
            for (const char* suffix : {"2", "_phase", "_re", "_im"}) {
                keys.insert(std::string(q) + suffix);
            }
        }
    };
    switch (cmd) {
        case Command::Sweep:
            keys.insert("mirror");
            keys.insert("n_min");
            keys.insert("n_max");
            add_coefficients(kDiagonalCoefficients);
            add_coefficients(kSpinFlipCoefficients);
            break;
        case Command::Opt:
            keys.insert("mirror");
            keys.insert("n_max");
            add_coefficients(kDiagonalCoefficients);
            add_coefficients(kSpinFlipCoefficients);
            break;
        case Command::Table1:
            break;
        case Command::General:
            for (const char* key : {"a", "b", "c", "tau_z", "alpha1", "alpha2", "t_total"}) {
                keys.insert(key);
            }
            break;
    }
    return keys;
}

OutputFormat parse_format(const KeyValues& kv, Command cmd) {
    const bool report_only = (cmd == Command::Opt || cmd == Command::General);
    if (kv.count("format") == 0) {
        return report_only ? OutputFormat::Json : OutputFormat::Csv;
    }
    const std::string& text = kv.at("format");
    if (text == "csv") {
        if (report_only) {
            throw ConfigError(std::string("field 'format': command '") + command_name(cmd) +
                              "' emits json only");
        }
        return OutputFormat::Csv;
    }
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("field 'format': expected csv or json, got '" + text + "'");
}

} // namespace

const char* command_name(Command cmd) noexcept {
    switch (cmd) {
        case Command::Sweep: return "sweep";
        case Command::Opt: return "opt";
        case Command::Table1: return "table1";
        case Command::General: return "general";
    }
    return "?";
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    KeyValues kv;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        kv[key] = value;
    }
    return kv;
}

RunConfig build_run_config(Command cmd, const KeyValues& kv) {
    const auto allowed = allowed_keys(cmd);
    for (const auto& [key, value] : kv) {
        if (allowed.count(key) == 0) {
            throw ConfigError("field '" + key + "' is not accepted by command '" +
                              std::string(command_name(cmd)) + "'");
        }
    }

    RunConfig cfg;
    cfg.command = cmd;
    cfg.theta_given = kv.count("theta") > 0;
    cfg.theta = cfg.theta_given ? parse_real(kv, "theta") : std::numbers::pi / 2;
    cfg.output_path = kv.count("out") ? kv.at("out") : "";
    cfg.format = parse_format(kv, cmd);

    switch (cmd) {
        case Command::Sweep: {
            cfg.mirror = parse_mirror(kv);
            if (!cfg.mirror) {
                throw ConfigError("command 'sweep' requires a mirror "
                                  "(mirror=ideal, or t_up2/... coefficients)");
            }
            for (const char* key : {"n_min", "n_max"}) {
                if (kv.count(key) == 0) {
                    throw ConfigError(std::string("field '") + key +
                                      "' is required by command 'sweep'");
                }
            }
            cfg.n_min = parse_integer(kv, "n_min");
            cfg.n_max = parse_integer(kv, "n_max");
            if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) {
                throw ConfigError("fields 'n_min'/'n_max': need 1 <= n_min <= n_max");
            }
            break;
        }
        case Command::Opt: {
            cfg.mirror = parse_mirror(kv);
            if (!cfg.mirror) {
                throw ConfigError("command 'opt' requires a mirror "
                                  "(mirror=ideal, or t_up2/... coefficients)");
            }
            if (kv.count("n_max") > 0) {
                const long ceiling = parse_integer(kv, "n_max");
                if (ceiling < 1) {
                    throw ConfigError("field 'n_max': must be >= 1");
                }
                cfg.search_ceiling = ceiling;
            }
            break;
        }
        case Command::Table1:
            break;
        case Command::General: {
            double theta = 0.0;
            cfg.loss_model = parse_loss_model(kv, &theta);
            cfg.theta = theta;
            break;
        }
    }
    return cfg;
}

} // namespace zeno::cli
