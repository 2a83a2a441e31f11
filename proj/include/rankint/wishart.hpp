#pragma once

#include <string>
#include <vector>

namespace rankint {

inline constexpr int kDefaultDimensionCap = 8;

/// One term ψ_kl · x^l/l! · k^{l+1} · e^{-kx} of the unit-scale density of the
/// largest eigenvalue of HᴴH.
struct EigenWeight {
    int k = 1;
    int l = 0;
    double value = 0.0;
    std::string exact;  // reduced rational "num/den" (or integer)
};

struct EigenWeightTable {
    int p = 1;  // min(n_R, n_T)
    int q = 1;  // max(n_R, n_T)
    std::vector<EigenWeight> weights;  // sorted by (k, l), zero terms dropped
    bool exact_sum_is_one = false;     // Σψ == 1 checked in rational arithmetic

    /// ψ_kl, or 0 when the term is absent.
    double weight(int k, int l) const;
    /// E[λ_max] at unit scale.
    double mean() const;
};

/// Exact expansion of d/dx det[γ(q-p+i+j-1, x)] / Π(p-s)!(q-s)!.
/// Throws UnsupportedDimension above `cap`, InvalidArgument below 1.
EigenWeightTable compute_weights(int n_r, int n_t, int cap = kDefaultDimensionCap);

/// Density of ρ̄·λ_max at x.
double pdf_lambda_max(double x, const EigenWeightTable& table, double scale);

/// Distribution function of ρ̄·λ_max at x.
double cdf_lambda_max(double x, const EigenWeightTable& table, double scale);

}  // namespace rankint
