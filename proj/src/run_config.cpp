#include "dpsi/run_config.hpp"

#include <charconv>
#include <fstream>

namespace dpsi {

const char* format_name(OutputFormat f)
{
    switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Table: return "table";
    }
    return "?";
}

OutputFormat parse_format(const std::string& s)
{
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "json")
        return OutputFormat::Json;
    if (s == "table")
        return OutputFormat::Table;
    throw ConfigError("output format must be csv, json or table (got '" + s + "')");
}

VerifyConfig RunConfig::verify_config() const
{
    VerifyConfig v;
    v.champion_limit = champion_limit;
    v.n_max = n_max;
    v.reduction_samples = reduction_samples;
    v.seed = seed;
    v.escalate = escalate;
    v.workers = workers;
    return v;
}

SieveOptions RunConfig::sieve_options() const
{
    SieveOptions s;
    s.workers = workers;
    return s;
}

namespace {

template <class T>
T parse_number(const std::string& text, const char* what)
{
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError(std::string(what) + ": cannot parse '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const char* what)
{
    if (text == "1" || text == "true" || text == "yes" || text == "on")
        return true;
    if (text == "0" || text == "false" || text == "no" || text == "off")
        return false;
    throw ConfigError(std::string(what) + ": expected a boolean, got '" + text + "'");
}

template <class T>
void merge(std::optional<T>& dst, const std::optional<T>& src)
{
    if (src)
        dst = src;
}

} // namespace

ConfigLayer layer_from_json(const Json& j)
{
    if (!j.is_object())
        throw ConfigError("config file: top level must be an object");
    ConfigLayer l;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "sieve_limit") l.sieve_limit = value.get<std::uint64_t>();
            else if (key == "n_max") l.n_max = value.get<std::size_t>();
            else if (key == "stride_dense_until") l.stride_dense_until = value.get<std::size_t>();
            else if (key == "stride_ratio") l.stride_ratio = value.get<double>();
            else if (key == "format") l.format = parse_format(value.get<std::string>());
            else if (key == "output") l.output = value.get<std::string>();
            else if (key == "escalate") l.escalate = value.get<bool>();
            else if (key == "cache_dir") l.cache_dir = value.get<std::string>();
            else if (key == "workers") l.workers = value.get<unsigned>();
            else if (key == "champion_limit") l.champion_limit = value.get<std::uint64_t>();
            else if (key == "reduction_samples") l.reduction_samples = value.get<std::size_t>();
            else if (key == "seed") l.seed = value.get<std::uint64_t>();
            else throw ConfigError("config file: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    return l;
}

ConfigLayer layer_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ConfigError("config file " + path + " is not valid JSON");
    return layer_from_json(j);
}

ConfigLayer layer_from_env(const std::function<const char*(const char*)>& lookup)
{
    ConfigLayer l;
    auto get = [&](const char* name) -> std::optional<std::string> {
        const char* v = lookup(name);
        if (!v || !*v)
            return std::nullopt;
        return std::string(v);
    };
    if (auto v = get("DPSI_SIEVE_LIMIT")) l.sieve_limit = parse_number<std::uint64_t>(*v, "DPSI_SIEVE_LIMIT");
    if (auto v = get("DPSI_N_MAX")) l.n_max = parse_number<std::size_t>(*v, "DPSI_N_MAX");
    if (auto v = get("DPSI_STRIDE_DENSE_UNTIL"))
        l.stride_dense_until = parse_number<std::size_t>(*v, "DPSI_STRIDE_DENSE_UNTIL");
    if (auto v = get("DPSI_STRIDE_RATIO")) l.stride_ratio = parse_number<double>(*v, "DPSI_STRIDE_RATIO");
    if (auto v = get("DPSI_FORMAT")) l.format = parse_format(*v);
    if (auto v = get("DPSI_OUTPUT")) l.output = *v;
    if (auto v = get("DPSI_ESCALATE")) l.escalate = parse_bool(*v, "DPSI_ESCALATE");
    if (auto v = get("DPSI_CACHE_DIR")) l.cache_dir = *v;
    if (auto v = get("DPSI_WORKERS")) l.workers = parse_number<unsigned>(*v, "DPSI_WORKERS");
    if (auto v = get("DPSI_CHAMPION_LIMIT"))
        l.champion_limit = parse_number<std::uint64_t>(*v, "DPSI_CHAMPION_LIMIT");
    if (auto v = get("DPSI_REDUCTION_SAMPLES"))
        l.reduction_samples = parse_number<std::size_t>(*v, "DPSI_REDUCTION_SAMPLES");
    if (auto v = get("DPSI_SEED")) l.seed = parse_number<std::uint64_t>(*v, "DPSI_SEED");
    return l;
}

RunConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& flags)
{
    ConfigLayer m;
    for (const ConfigLayer* layer : {&file, &env, &flags}) {
        merge(m.sieve_limit, layer->sieve_limit);
        merge(m.n_max, layer->n_max);
        merge(m.stride_dense_until, layer->stride_dense_until);
        merge(m.stride_ratio, layer->stride_ratio);
        merge(m.format, layer->format);
        merge(m.output, layer->output);
        merge(m.escalate, layer->escalate);
        merge(m.cache_dir, layer->cache_dir);
        merge(m.workers, layer->workers);
        merge(m.champion_limit, layer->champion_limit);
        merge(m.reduction_samples, layer->reduction_samples);
        merge(m.seed, layer->seed);
    }
    RunConfig c;
    c.sieve_limit = m.sieve_limit.value_or(c.sieve_limit);
    c.n_max = m.n_max.value_or(c.n_max);
    c.stride.dense_until = m.stride_dense_until.value_or(c.stride.dense_until);
    c.stride.ratio = m.stride_ratio.value_or(c.stride.ratio);
    c.format = m.format.value_or(c.format);
    c.output = m.output.value_or(c.output);
    c.escalate = m.escalate.value_or(c.escalate);
    c.cache_dir = m.cache_dir.value_or(c.cache_dir);
    c.workers = m.workers.value_or(c.workers);
    c.champion_limit = m.champion_limit.value_or(c.champion_limit);
    c.reduction_samples = m.reduction_samples.value_or(c.reduction_samples);
    c.seed = m.seed.value_or(c.seed);

    if (m.sieve_limit && c.sieve_limit < 2)
        throw ConfigError("sieve limit must be at least 2");
    if (c.n_max == 0)
        throw ConfigError("n_max must be positive");
    if (c.workers == 0)
        throw ConfigError("workers must be positive");
    if (c.champion_limit == 0)
        throw ConfigError("champion limit must be positive");
    if (!(c.stride.ratio >= 1.0))
        throw ConfigError("stride ratio must be at least 1");
    return c;
}

} // namespace dpsi
