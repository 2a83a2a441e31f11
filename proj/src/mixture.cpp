#include "rankint/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rankint/errors.hpp"
#include "rankint/numerics.hpp"

namespace rankint {

namespace {

using Wide = WideReal;

Wide wide_binomial(int n, int k) {
    Wide r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

void check_group_index(int i, int j, const MixtureSpec& spec) {
    if (i < 1 || i > spec.group_count())
        throw InvalidArgument("group index " + std::to_string(i) + " out of range");
    const int beta = spec.groups[static_cast<std::size_t>(i - 1)].multiplicity;
    if (j < 1 || j > beta) throw InvalidArgument("coefficient index " + std::to_string(j) + " out of range");
}

}  // namespace

double MixtureSpec::mean() const {
    CompensatedSum s;
    for (const auto& g : groups) s += g.multiplicity * g.rate;
    return s.value();
}

MixtureSpec group_rates(const RateSet& rates, double rel_tol) {
    if (rates.empty()) throw EmptyMixture("no interference layers; use the noise-only path");
    if (!(rel_tol > 0.0 && rel_tol < 0.1)) throw InvalidArgument("rel_tol must lie in (0, 0.1)");
    std::vector<double> sorted = rates.rates;
    for (double r : sorted) {
        if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("rates must be positive and finite");
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    MixtureSpec spec;
    std::size_t start = 0;
    while (start < sorted.size()) {
        const double head = sorted[start];
        std::size_t end = start + 1;
        while (end < sorted.size() && (head - sorted[end]) <= rel_tol * head) ++end;
        double power = 0.0;
        double weighted = 0.0;
        for (std::size_t t = start; t < end; ++t) {
            power += sorted[t];
            weighted += sorted[t] * sorted[t];
        }
        spec.groups.push_back({weighted / power, static_cast<int>(end - start)});
        start = end;
    }

    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        for (std::size_t k = 0; k < spec.groups.size(); ++k) {
            if (k == i) continue;
            spec.conditioning =
                std::min(spec.conditioning, std::abs(1.0 - spec.groups[k].rate / spec.groups[i].rate));
        }
    }
    if (spec.conditioning < kConditioningWarnThreshold) {
        std::ostringstream msg;
        msg << "mixture rates nearly coincide (min |1 - rho_k/rho_i| = " << spec.conditioning
            << "); coefficients may be ill-conditioned";
        spec.warnings.push_back(msg.str());
    }
    return spec;
}

std::vector<std::vector<int>> enumerate_tuples(int i, int j, const MixtureSpec& spec) {
    check_group_index(i, j, spec);
    const int g = spec.group_count();
    const int total = spec.groups[static_cast<std::size_t>(i - 1)].multiplicity - j;
    std::vector<std::vector<int>> out;
    std::vector<int> tuple(static_cast<std::size_t>(g), 0);

    // Free positions in ascending order; earlier positions take larger parts first.
    std::vector<int> free;
    for (int k = 0; k < g; ++k) {
        if (k != i - 1) free.push_back(k);
    }
    std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int remaining) {
        if (pos + 1 >= free.size()) {
            if (free.empty()) {
                if (remaining == 0) out.push_back(tuple);
                return;
            }
            tuple[static_cast<std::size_t>(free[pos])] = remaining;
            out.push_back(tuple);
            tuple[static_cast<std::size_t>(free[pos])] = 0;
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            tuple[static_cast<std::size_t>(free[pos])] = v;
            fill(pos + 1, remaining - v);
        }
        tuple[static_cast<std::size_t>(free[pos])] = 0;
    };
    fill(0, total);
    return out;
}

MixtureSpec xi_coefficients(MixtureSpec spec) {
    const int g = spec.group_count();
    if (g == 0) throw EmptyMixture("no mixture groups");
    for (int i = 0; i < g; ++i) {
        for (int k = i + 1; k < g; ++k) {
            if (spec.groups[static_cast<std::size_t>(i)].rate == spec.groups[static_cast<std::size_t>(k)].rate)
                throw DegenerateRates("groups " + std::to_string(i + 1) + " and " + std::to_string(k + 1) +
                                      " share a rate; regroup with a larger tolerance");
        }
    }

    std::vector<std::vector<Wide>> wide(static_cast<std::size_t>(g));
    Wide largest = 0;
    for (int i = 1; i <= g; ++i) {
        const auto& gi = spec.groups[static_cast<std::size_t>(i - 1)];
        const Wide rho_i = gi.rate;
        auto& row = wide[static_cast<std::size_t>(i - 1)];
        row.assign(static_cast<std::size_t>(gi.multiplicity), Wide(0));
        for (int j = 1; j <= gi.multiplicity; ++j) {
            Wide sum = 0;
            for (const auto& tuple : enumerate_tuples(i, j, spec)) {
                Wide prod = 1;
                for (int k = 1; k <= g; ++k) {
                    if (k == i) continue;
                    const auto& gk = spec.groups[static_cast<std::size_t>(k - 1)];
                    const int qk = tuple[static_cast<std::size_t>(k - 1)];
                    const Wide ratio = Wide(gk.rate) / rho_i;
                    prod *= wide_binomial(gk.multiplicity + qk - 1, qk) * pow(ratio, qk) /
                            pow(1 - ratio, gk.multiplicity + qk);
                }
                sum += prod;
            }
            if ((gi.multiplicity + j) % 2 != 0) sum = -sum;
            row[static_cast<std::size_t>(j - 1)] = sum;
            largest = std::max(largest, Wide(abs(sum)));
        }
    }
    if (largest > kMaxXiMagnitude) {
        throw DegenerateRates("mixture coefficients reach " + largest.str(3) +
                              "; rates too close to resolve, regroup with a larger tolerance");
    }
    spec.xi.assign(static_cast<std::size_t>(g), {});
    for (std::size_t i = 0; i < wide.size(); ++i)
        for (const auto& v : wide[i]) spec.xi[i].push_back(static_cast<long double>(v));
    spec.xi_wide.clear();
    if (largest > kWideXiThreshold) spec.xi_wide = std::move(wide);
    return spec;
}

MixtureSpec build_mixture(const RateSet& rates, double rel_tol) {
    return xi_coefficients(group_rates(rates, rel_tol));
}

namespace {

long double lgamma_of(long double x) { return std::lgamma(x); }
Wide lgamma_of(const Wide& x) { return boost::math::lgamma(x); }

template <class T, class Xi>
double mixture_pdf(double y, const MixtureSpec& spec, const Xi& xi) {
    using std::exp;
    using std::log;
    T s = 0;
    const T yl = y;
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        const T rho = spec.groups[i].rate;
        for (std::size_t jj = 0; jj < xi[i].size(); ++jj) {
            const int j = static_cast<int>(jj) + 1;
            if (y == 0.0 && j > 1) continue;
            const T power = (j == 1) ? T(0) : T((j - 1) * log(yl));
            s += T(xi[i][jj]) * exp(power - yl / rho - lgamma_of(T(j)) - j * log(rho));
        }
    }
    return std::max(0.0, static_cast<double>(s));
}

template <class T, class Xi>
double mixture_cdf(double y, const MixtureSpec& spec, const Xi& xi) {
    T s = 0;
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        const T x = T(y) / spec.groups[i].rate;
        for (std::size_t jj = 0; jj < xi[i].size(); ++jj)
            s += T(xi[i][jj]) * boost::math::gamma_p(T(static_cast<int>(jj) + 1), x);
    }
    return std::clamp(static_cast<double>(s), 0.0, 1.0);
}

}  // namespace

double pdf_y(double y, const MixtureSpec& spec) {
    if (!(y >= 0.0)) throw InvalidArgument("pdf_y: y must be >= 0");
    if (spec.group_count() == 1) {
        const auto& g = spec.groups.front();
        if (y == 0.0) return g.multiplicity == 1 ? 1.0 / g.rate : 0.0;
        return std::exp((g.multiplicity - 1) * std::log(y) - y / g.rate - log_factorial(g.multiplicity - 1) -
                        g.multiplicity * std::log(g.rate));
    }
    if (!spec.has_coefficients()) throw InvalidArgument("pdf_y: mixture coefficients not computed");
    if (spec.needs_wide()) return mixture_pdf<Wide>(y, spec, spec.xi_wide);
    return mixture_pdf<long double>(y, spec, spec.xi);
}

double cdf_y(double y, const MixtureSpec& spec) {
    if (!(y >= 0.0)) throw InvalidArgument("cdf_y: y must be >= 0");
    if (spec.group_count() == 1) {
        const auto& g = spec.groups.front();
        return gamma_p(g.multiplicity, y / g.rate);
    }
    if (!spec.has_coefficients()) throw InvalidArgument("cdf_y: mixture coefficients not computed");
    if (spec.needs_wide()) return mixture_cdf<Wide>(y, spec, spec.xi_wide);
    return mixture_cdf<long double>(y, spec, spec.xi);
}

}  // namespace rankint
