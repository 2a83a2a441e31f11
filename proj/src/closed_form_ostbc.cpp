#include "rankint/closed_form_ostbc.hpp"

#include <cmath>

#include "rankint/errors.hpp"
#include "rankint/numerics.hpp"
#include "sinr_kernel.hpp"

namespace rankint {

namespace {

// gamma(N, ρ̄) is the single Erlang term with ψ = 1, a = 1/ρ̄, l = N-1.
std::vector<detail::ErlangTerm> numerator_terms(const OstbcAnalytic& m) {
    return {{1.0, 1.0 / m.rho_bar, m.shape - 1}};
}

const MixtureGroup& only_group(const OstbcAnalytic& m) {
    if (!m.mixture || m.mixture->group_count() != 1)
        throw InvalidArgument("single-group form needs a mixture with exactly one group");
    return m.mixture->groups.front();
}

double noise_only_pdf(double gamma, const OstbcAnalytic& m) {
    if (gamma == 0.0) return m.shape == 1 ? 1.0 / m.rho_bar : 0.0;
    return std::exp((m.shape - 1) * std::log(gamma) - gamma / m.rho_bar - log_factorial(m.shape - 1) -
                    m.shape * std::log(m.rho_bar));
}

}  // namespace

OstbcAnalytic make_ostbc_model(int shape, std::optional<MixtureSpec> mixture, double rho_bar) {
    if (shape < 1) throw InvalidArgument("numerator shape must be >= 1");
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar)) throw InvalidArgument("rho_bar must be positive");
    OstbcAnalytic m;
    m.shape = shape;
    m.rho_bar = rho_bar;
    if (mixture) {
        if (!mixture->has_coefficients()) *mixture = xi_coefficients(*mixture);
        m.warnings = mixture->warnings;
    }
    m.mixture = std::move(mixture);
    return m;
}

OstbcAnalytic make_ostbc_model(const ScenarioConfig& cfg, double rel_tol) {
    validate(cfg);
    if (cfg.own_mode != OwnMode::Ostbc) throw InvalidArgument("make_ostbc_model: scenario is not in ostbc mode");
    const RateSet rates = build_rate_set(cfg);
    std::optional<MixtureSpec> mix;
    if (!rates.empty()) mix = build_mixture(rates, rel_tol);
    auto m = make_ostbc_model(cfg.n_r * cfg.n_t, std::move(mix), own_numerator_scale(cfg));
    m.extrapolated = cfg.ostbc_extrapolated();
    if (m.extrapolated)
        m.warnings.push_back("n_t > 2 in ostbc mode: no full-rate orthogonal code exists; results are extrapolated");
    return m;
}

double sinr_pdf_ostbc(double gamma, const OstbcAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_ostbc: gamma must be >= 0");
    if (!model.mixture) return noise_only_pdf(gamma, model);
    if (model.mixture->group_count() == 1) return sinr_pdf_ostbc_single_group(gamma, model);
    return sinr_pdf_ostbc_general(gamma, model);
}

double outage_ostbc(double gamma0, const OstbcAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_ostbc: gamma0 must be > 0");
    if (std::isinf(gamma0)) return 1.0;
    if (!model.mixture) return gamma_p(model.shape, gamma0 / model.rho_bar);
    if (model.mixture->group_count() == 1) return outage_ostbc_single_group(gamma0, model);
    return outage_ostbc_general(gamma0, model);
}

double sinr_pdf_ostbc_single_group(double gamma, const OstbcAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_ostbc: gamma must be >= 0");
    const auto& g = only_group(model);
    return detail::single_group_pdf(gamma, numerator_terms(model), g.rate, g.multiplicity);
}

double outage_ostbc_single_group(double gamma0, const OstbcAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_ostbc: gamma0 must be > 0");
    const auto& g = only_group(model);
    return detail::checked_probability(
        detail::single_group_outage(gamma0, numerator_terms(model), g.rate, g.multiplicity), "outage_ostbc");
}

double sinr_pdf_ostbc_general(double gamma, const OstbcAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_ostbc: gamma must be >= 0");
    if (!model.mixture) throw EmptyMixture("general form needs interference");
    return detail::general_pdf(gamma, numerator_terms(model), *model.mixture);
}

double outage_ostbc_general(double gamma0, const OstbcAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_ostbc: gamma0 must be > 0");
    if (!model.mixture) throw EmptyMixture("general form needs interference");
    return detail::checked_probability(detail::general_outage(gamma0, numerator_terms(model), *model.mixture),
                                       "outage_ostbc");
}

double threshold_at_outage(double p_target, const OstbcAnalytic& model) {
    return detail::invert_outage([&](double g) { return outage_ostbc(g, model); }, p_target,
                                 model.rho_bar * model.shape);
}

double white_interference_outage(double gamma0, int shape, double rho_bar, double inr_linear) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("white_interference_outage: gamma0 must be > 0");
    if (!(inr_linear >= 0.0)) throw InvalidArgument("white_interference_outage: inr must be >= 0");
    return gamma_p(shape, gamma0 * (1.0 + inr_linear) / rho_bar);
}

double white_interference_outage(double gamma0, const OstbcAnalytic& model) {
    const double inr = model.mixture ? model.mixture->mean() : 0.0;
    return white_interference_outage(gamma0, model.shape, model.rho_bar, inr);
}

}  // namespace rankint
