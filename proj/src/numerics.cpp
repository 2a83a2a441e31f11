#include "rankint/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "rankint/errors.hpp"

namespace rankint {

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(a, x);
}

double integrate(const RealFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol, &err, &l1);
}

double integrate_half_line(const RealFn& f, double scale, double tol) {
    if (!(scale > 0.0)) throw InvalidArgument("integrate_half_line: scale must be positive");
    CompensatedSum total;
    double lo = 0.0;
    double hi = scale;
    int quiet = 0;
    for (int panel = 0; panel < 80; ++panel) {
        const double part = integrate(f, lo, hi, tol);
        total += part;
        if (panel >= 3 && std::abs(part) < 1e-3 * tol) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        lo = hi;
        hi *= 2.0;
    }
    return total.value();
}

double bisect_log(const RealFn& f, double target, double lo, double hi, double rel_tol) {
    if (!(lo > 0.0) || !(hi > lo)) throw InvalidArgument("bisect_log: need 0 < lo < hi");
    if (f(lo) >= target || f(hi) < target) throw NumericError("bisect_log: target not bracketed");
    double a = std::log(lo);
    double b = std::log(hi);
    for (int it = 0; it < 400 && (b - a) > rel_tol; ++it) {
        const double m = 0.5 * (a + b);
        if (f(std::exp(m)) >= target) {
            b = m;
        } else {
            a = m;
        }
    }
    return std::exp(0.5 * (a + b));
}

double ks_statistic(std::span<const double> sorted, const RealFn& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
        throw InvalidArgument("grid must satisfy start <= stop and step > 0");
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
    g.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) g.push_back(start + static_cast<double>(i) * step);
    return g;
}

}  // namespace rankint
