#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankint/mixture.hpp"
#include "rankint/scenario.hpp"

namespace rankint {

/// Approximate SINR model of an OSTBC link: the numerator is exactly
/// gamma(n_R n_T, ρ̄), each interference term is taken as exponential.
struct OstbcAnalytic {
    int shape = 1;                       // n_R·n_T
    double rho_bar = 1.0;                // P_0/(n_T² σ²)
    std::optional<MixtureSpec> mixture;  // empty: noise only
    bool extrapolated = false;           // n_T > 2, no full-rate code exists
    std::vector<std::string> warnings;
};

OstbcAnalytic make_ostbc_model(int shape, std::optional<MixtureSpec> mixture, double rho_bar);

/// Requires own_mode == Ostbc.
OstbcAnalytic make_ostbc_model(const ScenarioConfig& cfg, double rel_tol = kDefaultGroupingTolerance);

double sinr_pdf_ostbc(double gamma, const OstbcAnalytic& model);
double outage_ostbc(double gamma0, const OstbcAnalytic& model);

double sinr_pdf_ostbc_single_group(double gamma, const OstbcAnalytic& model);
double outage_ostbc_single_group(double gamma0, const OstbcAnalytic& model);
double sinr_pdf_ostbc_general(double gamma, const OstbcAnalytic& model);
double outage_ostbc_general(double gamma0, const OstbcAnalytic& model);

double threshold_at_outage(double p_target, const OstbcAnalytic& model);

/// Outage when the interference is spatially white: the numerator statistic
/// with noise inflated by (1 + inr_linear).
double white_interference_outage(double gamma0, int shape, double rho_bar, double inr_linear);

/// White-interference reference for `model`, inflating the noise by the mean
/// of its interference statistic Y.
double white_interference_outage(double gamma0, const OstbcAnalytic& model);

}  // namespace rankint
