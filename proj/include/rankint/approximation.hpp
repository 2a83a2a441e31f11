#pragma once

#include <vector>

#include "rankint/monte_carlo.hpp"

namespace rankint {

/// E·B with E exponential of rate n_L and B ~ beta(α, β), independent.
/// β = 0 stands for a point mass at 1 (single transmit antenna).
struct ProductDistribution {
    int n_l = 1;
    int alpha = 1;  // n_R
    int beta = 0;   // n_R(n_T − 1)

    double mean() const;  // α/((α+β)·n_L)
};

ProductDistribution make_product_distribution(int n_r, int n_t, int n_l);

/// Density of E·B from the mixing integral ∫₀¹ f_E(x/t) f_B(t)/t dt, to
/// absolute tolerance 1e-10. Infinite at x = 0 when α = 1.
double product_pdf(double x, const ProductDistribution& pd);
double product_cdf(double x, const ProductDistribution& pd);

/// ∫ x·product_pdf(x) dx by nested quadrature.
double product_mean_quadrature(const ProductDistribution& pd);

double exp_approx_pdf(double x, int n_t, int n_l);
double exp_approx_cdf(double x, int n_t, int n_l);

/// Sampled E·B with independent factors.
EmpiricalDistribution simulate_product(const ProductDistribution& pd, const McOptions& opts);

struct ChainReport {
    int n_r = 0, n_t = 0, n_l = 0;
    std::vector<double> x;           // bin centres
    std::vector<double> exact;       // (a) histogram of the jointly simulated term
    std::vector<double> product;     // (b) independence-assumed product density
    std::vector<double> exp_approx;  // (c) mean-matched exponential
    double mean_exact = 0.0, mean_product = 0.0, mean_exp = 0.0;
    double ks_exact_product = 0.0, ks_exact_exp = 0.0, ks_product_exp = 0.0;
    double l1_exact_product = 0.0, l1_exact_exp = 0.0, l1_product_exp = 0.0;
    double factor_correlation = 0.0;  // Pearson correlation of the two factors in (a)
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Compares the exact projection term |h_1ᴴ g|²/‖H₀‖_F² against its product
/// and exponential approximations on [0, x_max] with `points` bins.
ChainReport compare_chain(int n_r, int n_t, int n_l, const McOptions& opts, double x_max = 3.0, int points = 300);

}  // namespace rankint
