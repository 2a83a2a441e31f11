#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rankint/scenario.hpp"

namespace rankint {

inline constexpr double kDefaultGroupingTolerance = 1e-9;
inline constexpr double kConditioningWarnThreshold = 1e-3;

inline constexpr double kWideXiThreshold = 1e6;
inline constexpr double kMaxXiMagnitude = 1e35;

using WideReal = boost::multiprecision::cpp_bin_float_50;

struct MixtureGroup {
    double rate = 1.0;     // exponential scale ρ_i shared by the group
    int multiplicity = 1;  // β_i
};

/// Normalized interference power Y as a mixture of gamma densities over
/// groups of equal-scale exponential contributions.
struct MixtureSpec {
    std::vector<MixtureGroup> groups;     // strictly descending rates
    std::vector<std::vector<long double>> xi;  // xi[i][j-1] = Ξ_ij; empty until filled
    // Unrounded Ξ, kept only when |Ξ| is large enough that long-double
    // cancellation would show in the densities; evaluation then runs in 50 digits.
    std::vector<std::vector<WideReal>> xi_wide;
    double conditioning = 1.0;            // min_{k≠i} |1 - ρ_k/ρ_i|; 1 for a single group
    std::vector<std::string> warnings;

    int group_count() const { return static_cast<int>(groups.size()); }
    bool has_coefficients() const { return !xi.empty(); }
    bool needs_wide() const { return !xi_wide.empty(); }
    double mean() const;  // Σ_i β_i ρ_i
};

/// Merge rates within `rel_tol` of each other (power-weighted mean rate) and
/// sort groups by descending rate. Throws EmptyMixture on an empty set.
MixtureSpec group_rates(const RateSet& rates, double rel_tol = kDefaultGroupingTolerance);

/// All G-tuples with q_i = 0 and Σq = β_i - j, indices 1-based.
std::vector<std::vector<int>> enumerate_tuples(int i, int j, const MixtureSpec& spec);

/// Fill Ξ_ij. Evaluated in 50-digit binary floating point, then rounded to
/// long double; above kWideXiThreshold in magnitude the 50-digit values are
/// kept as well. Throws DegenerateRates when even 50 digits cannot resolve
/// the cancellation (rates too close for the grouping tolerance in use).
MixtureSpec xi_coefficients(MixtureSpec shell);

/// group_rates followed by xi_coefficients.
MixtureSpec build_mixture(const RateSet& rates, double rel_tol = kDefaultGroupingTolerance);

double pdf_y(double y, const MixtureSpec& spec);
double cdf_y(double y, const MixtureSpec& spec);

}  // namespace rankint
