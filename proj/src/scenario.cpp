#include "rankint/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rankint/errors.hpp"

namespace rankint {

using nlohmann::json;

std::string_view to_string(Technique t) {
    switch (t) {
        case Technique::Beamforming: return "bf";
        case Technique::SpatialMultiplexing: return "sm";
        case Technique::Ostbc: return "ostbc";
    }
    return "?";
}

std::string_view to_string(OwnMode m) {
    return m == OwnMode::Beamforming ? "bf" : "ostbc";
}

double db_to_linear(double x_db) {
    if (!std::isfinite(x_db)) throw InvalidArgument("db_to_linear: non-finite input");
    return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("linear_to_db: input must be positive and finite");
    return 10.0 * std::log10(x);
}

double ScenarioConfig::own_power() const { return noise_power * db_to_linear(snr_db); }

double ScenarioConfig::interferer_power(std::size_t i) const {
    return noise_power * db_to_linear(interferers.at(i).inr_db);
}

int ScenarioConfig::total_layers() const {
    int n = 0;
    for (const auto& it : interferers) n += it.layers;
    return n;
}

double RateSet::sum() const {
    double s = 0.0;
    for (double r : rates) s += r;
    return s;
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.n_r < 1 || cfg.n_t < 1) throw InvalidArgument("antenna counts must be >= 1");
    if (!(cfg.noise_power > 0.0) || !std::isfinite(cfg.noise_power))
        throw InvalidArgument("noise_power must be positive and finite");
    if (!std::isfinite(cfg.snr_db)) throw InvalidArgument("snr_db must be finite");
    const int max_layers = std::min(cfg.n_r, cfg.n_t);
    for (std::size_t i = 0; i < cfg.interferers.size(); ++i) {
        const auto& it = cfg.interferers[i];
        if (!std::isfinite(it.inr_db))
            throw InvalidArgument("interferer " + std::to_string(i) + ": inr_db must be finite");
        if (it.technique == Technique::SpatialMultiplexing) {
            if (it.layers < 1 || it.layers > max_layers)
                throw InvalidArgument("interferer " + std::to_string(i) + ": layers must lie in [1, " +
                                      std::to_string(max_layers) + "]");
        } else if (it.layers != 1) {
            throw InvalidArgument("interferer " + std::to_string(i) + ": " +
                                  std::string(to_string(it.technique)) + " transmits exactly one layer");
        }
    }
}

RateSet build_rate_set(const ScenarioConfig& cfg) {
    validate(cfg);
    RateSet out;
    const double s2 = cfg.noise_power;
    const double nt = cfg.n_t;
    for (std::size_t i = 0; i < cfg.interferers.size(); ++i) {
        const auto& it = cfg.interferers[i];
        const double p = cfg.interferer_power(i);
        const double nl = it.layers;
        if (cfg.own_mode == OwnMode::Beamforming) {
            if (it.technique == Technique::Ostbc) {
                out.rates.push_back(p / (nt * s2));
            } else {
                for (int m = 0; m < it.layers; ++m) out.rates.push_back(p / (nl * s2));
            }
        } else {
            const int count = cfg.n_t * it.layers;
            for (int m = 0; m < count; ++m) out.rates.push_back(p / (nt * nt * nl * s2));
        }
    }
    return out;
}

double own_numerator_scale(const ScenarioConfig& cfg) {
    validate(cfg);
    const double rho = cfg.own_power() / cfg.noise_power;
    if (cfg.own_mode == OwnMode::Beamforming) return rho;
    return rho / (static_cast<double>(cfg.n_t) * cfg.n_t);
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + where + key + "'");
    }
}

template <class T>
T required(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError("missing key '" + where + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("wrong type for key '" + where + key + "'");
    }
}

Technique technique_from(const std::string& s, const std::string& where) {
    if (s == "bf") return Technique::Beamforming;
    if (s == "sm") return Technique::SpatialMultiplexing;
    if (s == "ostbc") return Technique::Ostbc;
    throw ConfigError("bad value '" + s + "' for key '" + where + "technique'");
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(j, {"n_r", "n_t", "noise_power", "snr_db", "own_mode", "interferers"}, "");
    ScenarioConfig cfg;
    cfg.n_r = required<int>(j, "n_r", "");
    cfg.n_t = required<int>(j, "n_t", "");
    cfg.noise_power = required<double>(j, "noise_power", "");
    cfg.snr_db = required<double>(j, "snr_db", "");
    const auto mode = required<std::string>(j, "own_mode", "");
    if (mode == "bf") {
        cfg.own_mode = OwnMode::Beamforming;
    } else if (mode == "ostbc") {
        cfg.own_mode = OwnMode::Ostbc;
    } else {
        throw ConfigError("bad value '" + mode + "' for key 'own_mode'");
    }
    if (j.contains("interferers")) {
        const auto& arr = j.at("interferers");
        if (!arr.is_array()) throw ConfigError("wrong type for key 'interferers'");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "interferers[" + std::to_string(i) + "].";
            const auto& e = arr[i];
            if (!e.is_object()) throw ConfigError("wrong type for key 'interferers[" + std::to_string(i) + "]'");
            reject_unknown(e, {"technique", "layers", "inr_db"}, where);
            InterfererSpec spec;
            spec.technique = technique_from(required<std::string>(e, "technique", where), where);
            spec.layers = e.contains("layers") ? required<int>(e, "layers", where) : 1;
            spec.inr_db = required<double>(e, "inr_db", where);
            cfg.interferers.push_back(spec);
        }
    }
    try {
        validate(cfg);
    } catch (const InvalidArgument& ex) {
        throw ConfigError(ex.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ConfigError("malformed JSON in '" + path + "': " + ex.what());
    }
    return config_from_json(j);
}

json config_to_json(const ScenarioConfig& cfg) {
    json arr = json::array();
    for (const auto& it : cfg.interferers) {
        arr.push_back({{"technique", to_string(it.technique)}, {"layers", it.layers}, {"inr_db", it.inr_db}});
    }
    return {{"n_r", cfg.n_r},
            {"n_t", cfg.n_t},
            {"noise_power", cfg.noise_power},
            {"snr_db", cfg.snr_db},
            {"own_mode", to_string(cfg.own_mode)},
            {"interferers", arr}};
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    const std::string text = config_to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

ScenarioConfig reference_scenario(OwnMode mode) {
    ScenarioConfig cfg;
    cfg.n_r = 2;
    cfg.n_t = 2;
    cfg.noise_power = 1.0;
    cfg.snr_db = 15.0;
    cfg.own_mode = mode;
    cfg.interferers = {{Technique::Ostbc, 1, 6.0},
                       {Technique::Beamforming, 1, 8.0},
                       {Technique::SpatialMultiplexing, 2, 10.0}};
    return cfg;
}

}  // namespace rankint
