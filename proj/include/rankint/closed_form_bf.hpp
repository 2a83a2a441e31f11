#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankint/mixture.hpp"
#include "rankint/scenario.hpp"
#include "rankint/wishart.hpp"

namespace rankint {

/// Analytic SINR model of an eigen-beamforming link with MRC reception.
struct BfAnalytic {
    EigenWeightTable table;
    std::optional<MixtureSpec> mixture;  // empty: noise only
    double rho_bar = 1.0;                // P_0/σ²
    std::vector<double> kappa;           // ρ̄/ρ_i per group
    std::vector<std::string> warnings;
};

BfAnalytic make_bf_model(EigenWeightTable table, std::optional<MixtureSpec> mixture, double rho_bar);

/// Requires own_mode == Beamforming.
BfAnalytic make_bf_model(const ScenarioConfig& cfg, double rel_tol = kDefaultGroupingTolerance);

double sinr_pdf_bf(double gamma, const BfAnalytic& model);
double outage_bf(double gamma0, const BfAnalytic& model);

/// Single-group closed form evaluated from (ρ_1, β_1) without Ξ; the model
/// must carry exactly one group.
double sinr_pdf_bf_single_group(double gamma, const BfAnalytic& model);
double outage_bf_single_group(double gamma0, const BfAnalytic& model);

/// Ξ-weighted form for any group count (needs a non-empty mixture).
double sinr_pdf_bf_general(double gamma, const BfAnalytic& model);
double outage_bf_general(double gamma0, const BfAnalytic& model);

/// γ₀ with outage_bf(γ₀) = p_target, to 1e-10 relative precision.
double threshold_at_outage(double p_target, const BfAnalytic& model);

}  // namespace rankint
