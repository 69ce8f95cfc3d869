#include "statecap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "statecap/capacity.hpp"
#include "statecap/montecarlo.hpp"
#include "statecap/optimize.hpp"

namespace statecap::cli {

namespace {

using nlohmann::json;

// Presentation is the only place units exist; the library is all nats.
double out_unit(double nats, Unit unit) {
    return unit == Unit::bits ? nats / std::numbers::ln2 : nats;
}

const char* unit_name(Unit unit) { return unit == Unit::bits ? "bits" : "nats"; }

// Numbers leave the tool either finite or as the literal token "inf";
// a NaN here is a bug upstream, never something to print.
std::string fmt_num(double v) {
    if (std::isnan(v)) throw std::logic_error("NaN reached the output layer");
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json json_num(double v) {
    if (std::isnan(v)) throw std::logic_error("NaN reached the output layer");
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    return v;
}

json params_json(const ChannelParams& p) {
    return json{{"p", p.p},           {"q1", p.q1},
                {"q2", p.q2},         {"n", p.n},
                {"rho_xs1", p.rho_xs1}, {"rho_s2z", p.rho_s2z}};
}

json record_head(const char* command, const ChannelConfig& config) {
    json j;
    j["command"] = command;
    j["version"] = std::string(kVersion);
    j["unit"] = unit_name(config.unit);
    if (!config.label.empty()) j["label"] = config.label;
    j["params"] = params_json(config.params);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename Fn>
CommandOutcome guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const IndeterminateCapacity& e) {
        return CommandOutcome{kExitIndeterminate, "",
                              std::string("error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return CommandOutcome{kExitInvalidInput, "",
                              std::string("error: ") + e.what() + "\n"};
    } catch (const std::invalid_argument& e) {
        return CommandOutcome{kExitInvalidInput, "",
                              std::string("error: ") + e.what() + "\n"};
    }
}

double require_number(const json& value, const std::string& key) {
    if (!value.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return value.get<double>();
}

// Limiting value of the optimizing coefficient; well defined whenever the
// channel is not doubly degenerate.
double alpha_star_limit(const ChannelParams& params) {
    const DerivedMoments m = derived_moments(params);
    return (params.q2 * m.d_q2 - m.a1 * m.d_pq1) /
           (params.q2 * m.d_q2 + params.q1 * m.d_pq1);
}

}  // namespace

Unit parse_unit(const std::string& text) {
    if (text == "bits") return Unit::bits;
    if (text == "nats") return Unit::nats;
    throw ConfigError("unit must be 'bits' or 'nats', got '" + text + "'");
}

Format parse_format(const std::string& text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw ConfigError("format must be 'json' or 'csv', got '" + text + "'");
}

ChannelConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    ChannelConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "p") cfg.params.p = require_number(value, key);
        else if (key == "q1") cfg.params.q1 = require_number(value, key);
        else if (key == "q2") cfg.params.q2 = require_number(value, key);
        else if (key == "n") cfg.params.n = require_number(value, key);
        else if (key == "rho_xs1") cfg.params.rho_xs1 = require_number(value, key);
        else if (key == "rho_s2z") cfg.params.rho_s2z = require_number(value, key);
        else if (key == "unit") {
            if (!value.is_string()) throw ConfigError("'unit' must be a string");
            cfg.unit = parse_unit(value.get<std::string>());
        } else if (key == "label") {
            if (!value.is_string()) throw ConfigError("'label' must be a string");
            cfg.label = value.get<std::string>();
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    return cfg;
}

ChannelConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

CommandOutcome run_capacity(const ChannelConfig& config, Format format) {
    return guarded([&]() -> CommandOutcome {
        const ChannelParams params = validate(config.params);
        const CapacityResult cap = channel_capacity(params);
        const double astar = alpha_star_limit(params);
        const double costa = costa_capacity(params.p, params.n);

        const double value = out_unit(cap.value, config.unit);
        const double achievability = out_unit(cap.achievability, config.unit);
        const double converse = out_unit(cap.converse, config.unit);
        const double costa_ref = out_unit(costa, config.unit);

        if (format == Format::csv) {
            std::ostringstream os;
            os << "capacity,achievability,converse,alpha_star,costa_reference,unit\n"
               << fmt_num(value) << ',' << fmt_num(achievability) << ','
               << fmt_num(converse) << ',' << fmt_num(astar) << ','
               << fmt_num(costa_ref) << ',' << unit_name(config.unit) << '\n';
            return CommandOutcome{kExitOk, os.str(), ""};
        }
        json j = record_head("capacity", config);
        j["results"] = json{{"capacity", json_num(value)},
                            {"achievability", json_num(achievability)},
                            {"converse", json_num(converse)},
                            {"alpha_star", json_num(astar)},
                            {"costa_reference", json_num(costa_ref)}};
        return CommandOutcome{kExitOk, dump(j), ""};
    });
}

CommandOutcome run_rate_curve(const ChannelConfig& config, double alpha_lo,
                              double alpha_hi, int steps, Format format) {
    return guarded([&]() -> CommandOutcome {
        const ChannelParams params = validate(config.params);
        if (!(alpha_lo < alpha_hi) || steps < 2)
            throw InvalidBracket("rate-curve needs alpha_lo < alpha_hi and steps >= 2");

        std::vector<std::pair<double, double>> points;
        points.reserve(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i) {
            const double alpha =
                alpha_lo + (alpha_hi - alpha_lo) * i / (steps - 1);
            points.emplace_back(
                alpha, out_unit(achievable_rate(params, alpha).rate, config.unit));
        }

        if (format == Format::csv) {
            std::ostringstream os;
            os << "alpha,rate,unit\n";
            for (const auto& [alpha, rate] : points)
                os << fmt_num(alpha) << ',' << fmt_num(rate) << ','
                   << unit_name(config.unit) << '\n';
            return CommandOutcome{kExitOk, os.str(), ""};
        }
        json arr = json::array();
        for (const auto& [alpha, rate] : points)
            arr.push_back(json{{"alpha", alpha}, {"rate", json_num(rate)}});
        json j = record_head("rate-curve", config);
        j["results"] = json{{"points", arr}};
        return CommandOutcome{kExitOk, dump(j), ""};
    });
}

CommandOutcome run_sweep(const ChannelConfig& config,
                         const std::string& parameter, double from, double to,
                         int steps, Format format) {
    return guarded([&]() -> CommandOutcome {
        SweepParameter sweep_parameter;
        if (parameter == "rho_s2z") sweep_parameter = SweepParameter::rho_s2z;
        else if (parameter == "rho_xs1") sweep_parameter = SweepParameter::rho_xs1;
        else if (parameter == "snr") sweep_parameter = SweepParameter::snr;
        else
            throw ConfigError("parameter must be rho_s2z, rho_xs1 or snr, got '" +
                              parameter + "'");
        const ChannelParams base = validate(config.params);
        if (!(from < to) || steps < 2)
            throw InvalidBracket("sweep needs from < to and steps >= 2");

        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i)
            grid.push_back(from + (to - from) * i / (steps - 1));
        const std::vector<SweepPoint> points =
            sweep_capacity(base, sweep_parameter, grid);

        if (format == Format::csv) {
            std::ostringstream os;
            os << "parameter,x,capacity,unit\n";
            for (const SweepPoint& pt : points)
                os << parameter << ',' << fmt_num(pt.x) << ','
                   << fmt_num(out_unit(pt.y, config.unit)) << ','
                   << unit_name(config.unit) << '\n';
            return CommandOutcome{kExitOk, os.str(), ""};
        }
        json arr = json::array();
        for (const SweepPoint& pt : points)
            arr.push_back(json{{"x", pt.x},
                               {"capacity", json_num(out_unit(pt.y, config.unit))}});
        json j = record_head("sweep", config);
        j["results"] = json{{"parameter", parameter}, {"points", arr}};
        return CommandOutcome{kExitOk, dump(j), ""};
    });
}

CommandOutcome run_verify(const ChannelConfig& config,
                          std::optional<double> alpha, std::size_t samples,
                          std::uint64_t seed, Format format) {
    return guarded([&]() -> CommandOutcome {
        const ChannelParams params = validate(config.params);
        const double a = alpha ? *alpha : alpha_star(params);
        const VerificationReport report = mc_verify(params, a, samples, seed);
        const int exit_code = report.all_pass() ? kExitOk : kExitVerifyFailed;

        if (format == Format::csv) {
            std::ostringstream os;
            os << "quantity,expected,estimate,std_error,pass,unit\n";
            for (const VerificationCheck& c : report.checks)
                os << c.quantity << ',' << fmt_num(out_unit(c.expected, config.unit))
                   << ',' << fmt_num(out_unit(c.estimate.value, config.unit)) << ','
                   << fmt_num(out_unit(c.estimate.std_error, config.unit)) << ','
                   << (c.pass ? "true" : "false") << ',' << unit_name(config.unit)
                   << '\n';
            return CommandOutcome{exit_code, os.str(), ""};
        }
        json checks = json::array();
        for (const VerificationCheck& c : report.checks)
            checks.push_back(
                json{{"quantity", c.quantity},
                     {"expected", json_num(out_unit(c.expected, config.unit))},
                     {"estimate", json_num(out_unit(c.estimate.value, config.unit))},
                     {"std_error",
                      json_num(out_unit(c.estimate.std_error, config.unit))},
                     {"pass", c.pass}});
        json j = record_head("verify", config);
        j["results"] = json{{"alpha", report.alpha},
                            {"samples", report.n},
                            {"seed", report.seed},
                            {"checks", checks},
                            {"all_pass", report.all_pass()}};
        return CommandOutcome{exit_code, dump(j), ""};
    });
}

}  // namespace statecap::cli
