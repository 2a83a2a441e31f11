#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rankint {

enum class Technique { Beamforming, SpatialMultiplexing, Ostbc };
enum class OwnMode { Beamforming, Ostbc };

std::string_view to_string(Technique t);
std::string_view to_string(OwnMode m);

struct InterfererSpec {
    Technique technique = Technique::Beamforming;
    int layers = 1;
    double inr_db = 0.0;
};

struct ScenarioConfig {
    int n_r = 2;
    int n_t = 2;
    double noise_power = 1.0;
    double snr_db = 15.0;
    std::vector<InterfererSpec> interferers;
    OwnMode own_mode = OwnMode::Beamforming;

    double own_power() const;                 // P_0, linear
    double interferer_power(std::size_t i) const;  // P_i, linear
    int total_layers() const;

    /// Full-rate orthogonal codes only exist for two transmit antennas; larger
    /// n_T in OSTBC mode is an extrapolation and results carry this flag.
    bool ostbc_extrapolated() const { return own_mode == OwnMode::Ostbc && n_t > 2; }
};

/// One exponential scale per interference layer contribution, in config order
/// (interferer index, then layer index).
struct RateSet {
    std::vector<double> rates;

    bool empty() const { return rates.empty(); }
    std::size_t size() const { return rates.size(); }
    double sum() const;
};

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Throws InvalidArgument on any broken invariant.
void validate(const ScenarioConfig& cfg);

RateSet build_rate_set(const ScenarioConfig& cfg);

/// Scale of the desired-signal statistic: P_0/σ² for beamforming,
/// P_0/(n_T² σ²) for OSTBC.
double own_numerator_scale(const ScenarioConfig& cfg);

// JSON config I/O. Unknown keys and type mismatches raise ConfigError naming the key.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

/// FNV-1a over the canonical JSON dump; stable across platforms.
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// The reference setup: 2x2, σ²=1, SNR 15 dB, iBSs at {6, 8, 10} dB
/// performing OSTBC, beamforming and two-layer spatial multiplexing.
ScenarioConfig reference_scenario(OwnMode mode);

}  // namespace rankint
