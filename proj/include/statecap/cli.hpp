#ifndef STATECAP_CLI_HPP
#define STATECAP_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "statecap/errors.hpp"
#include "statecap/model.hpp"

namespace statecap::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIndeterminate = 3;

enum class Unit { bits, nats };
enum class Format { json, csv };

// A channel definition plus presentation choices, as read from a JSON
// config file and/or command-line flags (flags win).
struct ChannelConfig {
    ChannelParams params;      // defaults: all-unit channel, zero correlations
    Unit unit = Unit::bits;
    std::string label;         // free text, empty = absent
};

// Malformed config file: unreadable, bad JSON, unknown key, wrong type.
struct ConfigError : Error { using Error::Error; };

Unit parse_unit(const std::string& text);      // ConfigError on anything else
Format parse_format(const std::string& text);  // ConfigError on anything else

ChannelConfig parse_config_json(const std::string& text);
ChannelConfig load_config_file(const std::string& path);

// What a subcommand produced: the process exit code, the stdout payload and
// an optional one-line stderr diagnostic.
struct CommandOutcome {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

CommandOutcome run_capacity(const ChannelConfig& config, Format format);

CommandOutcome run_rate_curve(const ChannelConfig& config, double alpha_lo,
                              double alpha_hi, int steps, Format format);

CommandOutcome run_sweep(const ChannelConfig& config,
                         const std::string& parameter, double from, double to,
                         int steps, Format format);

CommandOutcome run_verify(const ChannelConfig& config,
                          std::optional<double> alpha, std::size_t samples,
                          std::uint64_t seed, Format format);

}  // namespace statecap::cli

#endif
