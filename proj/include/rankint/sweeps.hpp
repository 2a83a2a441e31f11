#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankint/closed_form_bf.hpp"
#include "rankint/closed_form_ostbc.hpp"
#include "rankint/scenario.hpp"

namespace rankint {

inline constexpr double kDefaultTargetOutage = 0.01;

/// Closed-form model for either receiver mode.
class AnalyticModel {
public:
    explicit AnalyticModel(const ScenarioConfig& cfg);

    double pdf(double gamma) const;
    double outage(double gamma0) const;
    double threshold(double p_target) const;
    const std::vector<std::string>& warnings() const { return warnings_; }
    OwnMode mode() const { return mode_; }
    const std::optional<MixtureSpec>& mixture() const;

private:
    OwnMode mode_;
    std::optional<BfAnalytic> bf_;
    std::optional<OstbcAnalytic> ostbc_;
    std::vector<std::string> warnings_;
};

/// Copy of cfg with interferer `index` switched to rank `layers`:
/// beamforming for 1, spatial multiplexing otherwise.
ScenarioConfig with_interferer_rank(const ScenarioConfig& cfg, std::size_t index, int layers);

/// Rank of the designated interferer used as the high-rank case of a gain
/// computation: its layer count, which must be at least 2.
int designated_rank(const ScenarioConfig& cfg, std::size_t index = 0);

struct GainPoint {
    double x = 0.0;  // swept parameter (dB, or interferer count)
    double gamma0_rank1_db = 0.0;
    double gamma0_rankr_db = 0.0;
    double gain_db = 0.0;
};

/// γ₀(rank r) − γ₀(rank 1) in dB at the target outage, all other interferers unchanged.
GainPoint rank_gain(const ScenarioConfig& cfg, double p_target = kDefaultTargetOutage, std::size_t index = 0);

std::vector<GainPoint> sweep_snr(const ScenarioConfig& cfg, const std::vector<double>& snr_db,
                                 double p_target = kDefaultTargetOutage);
std::vector<GainPoint> sweep_inr(const ScenarioConfig& cfg, const std::vector<double>& inr_db,
                                 double p_target = kDefaultTargetOutage);

/// k equal-power copies of the designated interferer sharing the total linear
/// interference power of 10^(total_inr_db/10).
ScenarioConfig split_interference(const ScenarioConfig& cfg, int count, double total_inr_db);
std::vector<GainPoint> sweep_num_interferers(const ScenarioConfig& cfg, const std::vector<int>& counts,
                                             double total_inr_db, double p_target = kDefaultTargetOutage);

struct Crossing {
    double gamma0_db = 0.0;
    double outage = 0.0;
};

/// Sign changes of outage(a) − outage(b) over a dB grid, refined by bisection.
/// Differences below `floor` are rounding noise and never count as a side.
std::vector<Crossing> find_crossings(const AnalyticModel& a, const AnalyticModel& b,
                                     const std::vector<double>& grid_db, double floor = 1e-9);

}  // namespace rankint
