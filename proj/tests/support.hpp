#pragma once

#include <string>

#include "rankint/scenario.hpp"

namespace testing {

inline std::string source_path(const std::string& rel) { return std::string(RANKINT_SOURCE_DIR) + "/" + rel; }

inline rankint::ScenarioConfig single_sm(int n_r, int n_t, int layers, double inr_db, rankint::OwnMode mode,
                                         double snr_db = 15.0) {
    rankint::ScenarioConfig c;
    c.n_r = n_r;
    c.n_t = n_t;
    c.snr_db = snr_db;
    c.own_mode = mode;
    c.interferers = {{rankint::Technique::SpatialMultiplexing, layers, inr_db}};
    return c;
}

inline rankint::ScenarioConfig noise_only(int n_r, int n_t, double snr_db, rankint::OwnMode mode) {
    rankint::ScenarioConfig c;
    c.n_r = n_r;
    c.n_t = n_t;
    c.snr_db = snr_db;
    c.own_mode = mode;
    return c;
}

}  // namespace testing
