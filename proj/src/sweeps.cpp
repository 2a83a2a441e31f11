#include "rankint/sweeps.hpp"

#include <cmath>

#include "rankint/errors.hpp"

namespace rankint {

AnalyticModel::AnalyticModel(const ScenarioConfig& cfg) : mode_(cfg.own_mode) {
    if (mode_ == OwnMode::Beamforming) {
        bf_ = make_bf_model(cfg);
        warnings_ = bf_->warnings;
    } else {
        ostbc_ = make_ostbc_model(cfg);
        warnings_ = ostbc_->warnings;
    }
}

double AnalyticModel::pdf(double gamma) const {
    return bf_ ? sinr_pdf_bf(gamma, *bf_) : sinr_pdf_ostbc(gamma, *ostbc_);
}

double AnalyticModel::outage(double gamma0) const {
    return bf_ ? outage_bf(gamma0, *bf_) : outage_ostbc(gamma0, *ostbc_);
}

double AnalyticModel::threshold(double p_target) const {
    return bf_ ? threshold_at_outage(p_target, *bf_) : threshold_at_outage(p_target, *ostbc_);
}

const std::optional<MixtureSpec>& AnalyticModel::mixture() const { return bf_ ? bf_->mixture : ostbc_->mixture; }

ScenarioConfig with_interferer_rank(const ScenarioConfig& cfg, std::size_t index, int layers) {
    if (index >= cfg.interferers.size()) throw InvalidArgument("no interferer at index " + std::to_string(index));
    ScenarioConfig out = cfg;
    auto& it = out.interferers[index];
    it.layers = layers;
    it.technique = layers == 1 ? Technique::Beamforming : Technique::SpatialMultiplexing;
    validate(out);
    return out;
}

int designated_rank(const ScenarioConfig& cfg, std::size_t index) {
    if (index >= cfg.interferers.size()) throw InvalidArgument("gain needs at least one interferer");
    const auto& it = cfg.interferers[index];
    if (it.technique != Technique::SpatialMultiplexing || it.layers < 2)
        throw InvalidArgument("gain needs the designated interferer to use spatial multiplexing with >= 2 layers");
    return it.layers;
}

GainPoint rank_gain(const ScenarioConfig& cfg, double p_target, std::size_t index) {
    const int r = designated_rank(cfg, index);
    const AnalyticModel low(with_interferer_rank(cfg, index, 1));
    const AnalyticModel high(with_interferer_rank(cfg, index, r));
    GainPoint g;
    g.gamma0_rank1_db = linear_to_db(low.threshold(p_target));
    g.gamma0_rankr_db = linear_to_db(high.threshold(p_target));
    g.gain_db = g.gamma0_rankr_db - g.gamma0_rank1_db;
    return g;
}

std::vector<GainPoint> sweep_snr(const ScenarioConfig& cfg, const std::vector<double>& snr_db, double p_target) {
    std::vector<GainPoint> out;
    for (double s : snr_db) {
        ScenarioConfig c = cfg;
        c.snr_db = s;
        auto g = rank_gain(c, p_target);
        g.x = s;
        out.push_back(g);
    }
    return out;
}

std::vector<GainPoint> sweep_inr(const ScenarioConfig& cfg, const std::vector<double>& inr_db, double p_target) {
    designated_rank(cfg);
    std::vector<GainPoint> out;
    for (double i : inr_db) {
        ScenarioConfig c = cfg;
        c.interferers[0].inr_db = i;
        auto g = rank_gain(c, p_target);
        g.x = i;
        out.push_back(g);
    }
    return out;
}

ScenarioConfig split_interference(const ScenarioConfig& cfg, int count, double total_inr_db) {
    if (count < 1) throw InvalidArgument("interferer count must be >= 1");
    if (cfg.interferers.empty()) throw InvalidArgument("need a template interferer");
    ScenarioConfig out = cfg;
    InterfererSpec each = cfg.interferers.front();
    each.inr_db = total_inr_db - linear_to_db(static_cast<double>(count));
    out.interferers.assign(static_cast<std::size_t>(count), each);
    return out;
}

std::vector<GainPoint> sweep_num_interferers(const ScenarioConfig& cfg, const std::vector<int>& counts,
                                             double total_inr_db, double p_target) {
    const int r = designated_rank(cfg);
    std::vector<GainPoint> out;
    for (int k : counts) {
        const ScenarioConfig base = split_interference(cfg, k, total_inr_db);
        ScenarioConfig low = base;
        ScenarioConfig high = base;
        for (std::size_t i = 0; i < base.interferers.size(); ++i) {
            low = with_interferer_rank(low, i, 1);
            high = with_interferer_rank(high, i, r);
        }
        GainPoint g;
        g.x = k;
        g.gamma0_rank1_db = linear_to_db(AnalyticModel(low).threshold(p_target));
        g.gamma0_rankr_db = linear_to_db(AnalyticModel(high).threshold(p_target));
        g.gain_db = g.gamma0_rankr_db - g.gamma0_rank1_db;
        out.push_back(g);
    }
    return out;
}

std::vector<Crossing> find_crossings(const AnalyticModel& a, const AnalyticModel& b,
                                     const std::vector<double>& grid_db, double floor) {
    auto diff = [&](double db) {
        const double g = db_to_linear(db);
        return a.outage(g) - b.outage(g);
    };
    std::vector<Crossing> out;
    bool have_side = false;
    double side_db = 0.0;
    bool side_positive = false;
    for (double db : grid_db) {
        const double d = diff(db);
        if (std::abs(d) <= floor) continue;
        const bool positive = d > 0.0;
        if (have_side && positive != side_positive) {
            double lo = side_db;
            double hi = db;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = diff(mid);
                if (std::abs(dm) <= floor) {
                    lo = hi = mid;
                    break;
                }
                if ((dm > 0.0) == side_positive) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double at = 0.5 * (lo + hi);
            const double g = db_to_linear(at);
            out.push_back({at, 0.5 * (a.outage(g) + b.outage(g))});
        }
        have_side = true;
        side_db = db;
        side_positive = positive;
    }
    return out;
}

}  // namespace rankint
