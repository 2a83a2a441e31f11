#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rankint {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_factorial(int n);
double log_binomial(int n, int k);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod on a finite interval. Tolerance is relative to the
/// integral's L1 norm, which is an absolute tolerance for densities.
double integrate(const RealFn& f, double a, double b, double tol = 1e-12);

/// ∫_0^∞ f over geometrically growing panels starting at `scale`.
/// `scale` should be of the order of the bulk of f's mass.
double integrate_half_line(const RealFn& f, double scale, double tol = 1e-12);

/// Smallest x in [lo, hi] with f(x) >= target for nondecreasing f; bisection
/// in log-space to relative precision `rel_tol`.
double bisect_log(const RealFn& f, double target, double lo, double hi, double rel_tol);

/// One-sample Kolmogorov-Smirnov statistic. `sorted` must be ascending.
double ks_statistic(std::span<const double> sorted, const RealFn& cdf);

/// Two-sample Kolmogorov-Smirnov statistic on ascending inputs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Evenly spaced grid start, start+step, ..., inclusive of stop within step/1e6.
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace rankint
