#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "dpsi/bounds.hpp"
#include "dpsi/verifier.hpp"

namespace dpsi {

enum class OutputFormat { Csv, Json, Table };

const char* format_name(OutputFormat f);
OutputFormat parse_format(const std::string& s);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::uint64_t sieve_limit = 0; // 0: derived from the command
    std::size_t n_max = 100'000;
    StridePolicy stride;
    OutputFormat format = OutputFormat::Table;
    std::string output; // empty: stdout
    bool escalate = true;
    std::string cache_dir; // empty: no cache
    unsigned workers = 1;
    std::uint64_t champion_limit = 1'000'000;
    std::size_t reduction_samples = 10'000;
    std::uint64_t seed = VerifyConfig{}.seed;

    VerifyConfig verify_config() const;
    SieveOptions sieve_options() const;
};

// One source of settings; unset fields defer to the layer below.
struct ConfigLayer {
    std::optional<std::uint64_t> sieve_limit;
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> stride_dense_until;
    std::optional<double> stride_ratio;
    std::optional<OutputFormat> format;
    std::optional<std::string> output;
    std::optional<bool> escalate;
    std::optional<std::string> cache_dir;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> champion_limit;
    std::optional<std::size_t> reduction_samples;
    std::optional<std::uint64_t> seed;
};

// Keys as in ConfigLayer; unknown keys are rejected.
ConfigLayer layer_from_json(const Json& j);
ConfigLayer layer_from_file(const std::string& path);
// DPSI_SIEVE_LIMIT, DPSI_N_MAX, DPSI_STRIDE_DENSE_UNTIL, DPSI_STRIDE_RATIO,
// DPSI_FORMAT, DPSI_OUTPUT, DPSI_ESCALATE, DPSI_CACHE_DIR, DPSI_WORKERS,
// DPSI_CHAMPION_LIMIT, DPSI_REDUCTION_SAMPLES, DPSI_SEED.
ConfigLayer layer_from_env(const std::function<const char*(const char*)>& lookup);

// Precedence: flags > environment > config file > built-in defaults.
// Throws ConfigError when the result is invalid.
RunConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& flags);

} // namespace dpsi
