#include "rankint/closed_form_bf.hpp"

#include <cmath>

#include "rankint/errors.hpp"
#include "sinr_kernel.hpp"

namespace rankint {

namespace {

std::vector<detail::ErlangTerm> numerator_terms(const BfAnalytic& m) {
    std::vector<detail::ErlangTerm> terms;
    terms.reserve(m.table.weights.size());
    for (const auto& w : m.table.weights) terms.push_back({w.value, w.k / m.rho_bar, w.l});
    return terms;
}

const MixtureGroup& only_group(const BfAnalytic& m) {
    if (!m.mixture || m.mixture->group_count() != 1)
        throw InvalidArgument("single-group form needs a mixture with exactly one group");
    return m.mixture->groups.front();
}

}  // namespace

BfAnalytic make_bf_model(EigenWeightTable table, std::optional<MixtureSpec> mixture, double rho_bar) {
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar)) throw InvalidArgument("rho_bar must be positive");
    BfAnalytic m;
    m.table = std::move(table);
    m.rho_bar = rho_bar;
    if (mixture) {
        if (!mixture->has_coefficients()) *mixture = xi_coefficients(*mixture);
        for (const auto& g : mixture->groups) m.kappa.push_back(rho_bar / g.rate);
        m.warnings = mixture->warnings;
    }
    m.mixture = std::move(mixture);
    return m;
}

BfAnalytic make_bf_model(const ScenarioConfig& cfg, double rel_tol) {
    validate(cfg);
    if (cfg.own_mode != OwnMode::Beamforming) throw InvalidArgument("make_bf_model: scenario is not in bf mode");
    const RateSet rates = build_rate_set(cfg);
    std::optional<MixtureSpec> mix;
    if (!rates.empty()) mix = build_mixture(rates, rel_tol);
    return make_bf_model(compute_weights(cfg.n_r, cfg.n_t), std::move(mix), own_numerator_scale(cfg));
}

double sinr_pdf_bf(double gamma, const BfAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_bf: gamma must be >= 0");
    if (!model.mixture) return pdf_lambda_max(gamma, model.table, model.rho_bar);
    const auto terms = numerator_terms(model);
    if (model.mixture->group_count() == 1) {
        const auto& g = model.mixture->groups.front();
        return detail::single_group_pdf(gamma, terms, g.rate, g.multiplicity);
    }
    return detail::general_pdf(gamma, terms, *model.mixture);
}

double outage_bf(double gamma0, const BfAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_bf: gamma0 must be > 0");
    if (std::isinf(gamma0)) return 1.0;
    if (!model.mixture) return cdf_lambda_max(gamma0, model.table, model.rho_bar);
    const auto terms = numerator_terms(model);
    double p = 0.0;
    if (model.mixture->group_count() == 1) {
        const auto& g = model.mixture->groups.front();
        p = detail::single_group_outage(gamma0, terms, g.rate, g.multiplicity);
    } else {
        p = detail::general_outage(gamma0, terms, *model.mixture);
    }
    return detail::checked_probability(p, "outage_bf");
}

double sinr_pdf_bf_single_group(double gamma, const BfAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_bf: gamma must be >= 0");
    const auto& g = only_group(model);
    return detail::single_group_pdf(gamma, numerator_terms(model), g.rate, g.multiplicity);
}

double outage_bf_single_group(double gamma0, const BfAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_bf: gamma0 must be > 0");
    const auto& g = only_group(model);
    return detail::checked_probability(
        detail::single_group_outage(gamma0, numerator_terms(model), g.rate, g.multiplicity), "outage_bf");
}

double sinr_pdf_bf_general(double gamma, const BfAnalytic& model) {
    if (!(gamma >= 0.0)) throw InvalidArgument("sinr_pdf_bf: gamma must be >= 0");
    if (!model.mixture) throw EmptyMixture("general form needs interference");
    return detail::general_pdf(gamma, numerator_terms(model), *model.mixture);
}

double outage_bf_general(double gamma0, const BfAnalytic& model) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("outage_bf: gamma0 must be > 0");
    if (!model.mixture) throw EmptyMixture("general form needs interference");
    return detail::checked_probability(detail::general_outage(gamma0, numerator_terms(model), *model.mixture),
                                       "outage_bf");
}

double threshold_at_outage(double p_target, const BfAnalytic& model) {
    return detail::invert_outage([&](double g) { return outage_bf(g, model); }, p_target, model.rho_bar);
}

}  // namespace rankint
