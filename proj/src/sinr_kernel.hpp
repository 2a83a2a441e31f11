#pragma once

// Shared sums for SINR = X/(Y+1) when X is a combination of Erlang terms
// ψ·x^l/l!·a^{l+1}e^{-ax} and Y is a gamma mixture.

#include <vector>

#include "rankint/errors.hpp"
#include "rankint/mixture.hpp"
#include "rankint/numerics.hpp"

namespace rankint::detail {

struct ErlangTerm {
    double weight;  // ψ
    double rate;    // a = k/ρ̄
    int order;      // l
};

/// Density at γ of one (term, component) pair, excluding the ψ and Ξ weights.
double pdf_term(double gamma, const ErlangTerm& t, double rho_i, int j);

/// e^{-aγ0}(1/ρ_i)^j ΣΣ C(r,s)Γ(s+j)/(r!Γ(j)) (aγ0)^r (aγ0+1/ρ_i)^{-(j+s)}:
/// the complementary outage of one (term, component) pair, excluding ψ and Ξ.
double survival_term(double gamma0, const ErlangTerm& t, double rho_i, int j);

double general_pdf(double gamma, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix);
double general_outage(double gamma0, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix);

// Single-group forms, written against (ρ_1, β_1) directly.
double single_group_pdf(double gamma, const std::vector<ErlangTerm>& terms, double rho_1, int beta_1);
double single_group_outage(double gamma0, const std::vector<ErlangTerm>& terms, double rho_1, int beta_1);

/// Rejects values outside [-1e-12, 1+1e-12], clamps the rest into [0, 1].
double checked_probability(double p, const char* what);

/// Inverse of a nondecreasing outage function at p_target.
template <class Outage>
double invert_outage(const Outage& outage, double p_target, double scale_hint) {
    if (!(p_target > 0.0 && p_target < 1.0)) throw InvalidArgument("target outage must lie in (0, 1)");
    double lo = scale_hint * 1e-3;
    double hi = scale_hint;
    int guard = 0;
    while (outage(lo) >= p_target) {
        lo /= 10.0;
        if (++guard > 300) throw NumericError("threshold_at_outage: cannot bracket from below");
    }
    guard = 0;
    while (outage(hi) < p_target) {
        hi *= 10.0;
        if (++guard > 300) throw NumericError("threshold_at_outage: cannot bracket from above");
    }
    return bisect_log(outage, p_target, lo, hi, 1e-11);
}

}  // namespace rankint::detail
