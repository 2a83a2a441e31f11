#include "sinr_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

// Terms are accumulated in long double, or in 50 digits when the mixture keeps
// unrounded Ξ: the coefficients alternate in sign and can be large, so the
// double rounding of individual terms would not cancel cleanly.

namespace rankint::detail {

namespace {

using Ext = long double;
using Wide = WideReal;

Ext lgamma_of(Ext x) { return std::lgamma(x); }
Wide lgamma_of(const Wide& x) { return boost::math::lgamma(x); }

template <class T>
T lfact(int n) { return lgamma_of(T(n + 1)); }
template <class T>
T lgam(int n) { return lgamma_of(T(n)); }
template <class T>
T lbinom(int n, int k) { return lfact<T>(n) - lfact<T>(k) - lfact<T>(n - k); }

template <class T>
T pdf_term_t(double gamma, const ErlangTerm& t, double rho_i, int j) {
    using std::exp;
    using std::log;
    if (gamma == 0.0 && t.order > 0) return T(0);
    const int l = t.order;
    const T g = gamma;
    const T a = t.rate;
    const T rho = rho_i;
    const T log_gamma_pow = (l == 0) ? T(0) : T(l * log(g));
    const T log_mix = log(a * g + 1 / rho);
    const T base = log_gamma_pow - a * g + (l + 1) * log(a) - j * log(rho) - lfact<T>(l) - lgam<T>(j);
    T s = 0;
    for (int r = 0; r <= l + 1; ++r) s += exp(base + lbinom<T>(l + 1, r) + lgam<T>(r + j) - (r + j) * log_mix);
    return s;
}

template <class T>
T survival_term_t(double gamma0, const ErlangTerm& t, double rho_i, int j) {
    using std::exp;
    using std::log;
    const T u = T(t.rate) * gamma0;
    const T rho = rho_i;
    const T log_u = log(u);
    const T log_mix = log(u + 1 / rho);
    const T base = -u - j * log(rho) - lgam<T>(j);
    T s = 0;
    for (int r = 0; r <= t.order; ++r) {
        const T log_r = base + r * log_u - lfact<T>(r);
        for (int q = 0; q <= r; ++q) s += exp(log_r + lbinom<T>(r, q) + lgam<T>(q + j) - (j + q) * log_mix);
    }
    return s;
}

template <class T, class Xi>
double mixture_pdf(double gamma, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix, const Xi& coeff) {
    T s = 0;
    for (std::size_t i = 0; i < mix.groups.size(); ++i) {
        const double rho = mix.groups[i].rate;
        for (std::size_t jj = 0; jj < coeff[i].size(); ++jj) {
            const T xi = coeff[i][jj];
            if (xi == 0) continue;
            for (const auto& t : terms) s += xi * t.weight * pdf_term_t<T>(gamma, t, rho, static_cast<int>(jj) + 1);
        }
    }
    return std::max(0.0, static_cast<double>(s));
}

template <class T, class Xi>
double mixture_outage(double gamma0, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix, const Xi& coeff) {
    T s = 0;
    for (std::size_t i = 0; i < mix.groups.size(); ++i) {
        const double rho = mix.groups[i].rate;
        for (std::size_t jj = 0; jj < coeff[i].size(); ++jj) {
            const T xi = coeff[i][jj];
            if (xi == 0) continue;
            for (const auto& t : terms)
                s += xi * t.weight * (1 - survival_term_t<T>(gamma0, t, rho, static_cast<int>(jj) + 1));
        }
    }
    return static_cast<double>(s);
}

}  // namespace

double pdf_term(double gamma, const ErlangTerm& t, double rho_i, int j) {
    return static_cast<double>(pdf_term_t<Ext>(gamma, t, rho_i, j));
}

double survival_term(double gamma0, const ErlangTerm& t, double rho_i, int j) {
    return static_cast<double>(survival_term_t<Ext>(gamma0, t, rho_i, j));
}

double general_pdf(double gamma, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix) {
    if (mix.needs_wide()) return mixture_pdf<Wide>(gamma, terms, mix, mix.xi_wide);
    return mixture_pdf<Ext>(gamma, terms, mix, mix.xi);
}

double general_outage(double gamma0, const std::vector<ErlangTerm>& terms, const MixtureSpec& mix) {
    if (mix.needs_wide()) return mixture_outage<Wide>(gamma0, terms, mix, mix.xi_wide);
    return mixture_outage<Ext>(gamma0, terms, mix, mix.xi);
}

double single_group_pdf(double gamma, const std::vector<ErlangTerm>& terms, double rho_1, int beta_1) {
    Ext s = 0.0L;
    for (const auto& t : terms) s += t.weight * pdf_term_t<Ext>(gamma, t, rho_1, beta_1);
    return std::max(0.0, static_cast<double>(s));
}

double single_group_outage(double gamma0, const std::vector<ErlangTerm>& terms, double rho_1, int beta_1) {
    Ext s = 0.0L;
    for (const auto& t : terms) s += t.weight * (1.0L - survival_term_t<Ext>(gamma0, t, rho_1, beta_1));
    return static_cast<double>(s);
}

double checked_probability(double p, const char* what) {
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
        throw NumericError(std::string(what) + ": closed form left [0, 1] (value " + std::to_string(p) +
                           "); mixture coefficients are ill-conditioned");
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace rankint::detail
