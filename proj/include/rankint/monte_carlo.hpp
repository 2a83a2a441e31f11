#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rankint/scenario.hpp"

namespace rankint {

inline constexpr const char* kRngId = "mt19937_64+splitmix64-chunk-seeds+box-muller";

/// Seedable generator: 64-bit Mersenne twister, 53-bit uniforms and a
/// hand-rolled Box-Muller so that streams are identical on every platform
/// (std::normal_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double normal();
    /// CN(0, 1): real and imaginary parts each of variance 1/2.
    std::complex<double> cnormal();
    /// Uniform phase on the unit circle.
    std::complex<double> unit_phase();

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk);

enum class SymbolKind { UnitModulus, Gaussian };
enum class OstbcPath { Auto, Alamouti, Component };

struct McOptions {
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t chunk_size = 1 << 16;
    unsigned threads = 0;  // 0: hardware concurrency; never changes the output
    SymbolKind symbols = SymbolKind::UnitModulus;
    OstbcPath ostbc_path = OstbcPath::Auto;  // Auto: Alamouti for n_T = 2
    double eig_tol = 1e-10;
};

/// Post-processing SINR samples (linear), sorted ascending.
struct EmpiricalDistribution {
    std::vector<double> samples;
    std::uint64_t seed = 0;
    std::size_t chunk_size = 0;
    std::uint64_t scenario_hash = 0;
    std::string method;

    std::size_t size() const { return samples.size(); }
    double ecdf(double x) const;  // fraction of samples <= x
};

struct OutageEstimate {
    double p = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/n)
};

OutageEstimate empirical_outage(const EmpiricalDistribution& dist, double gamma0);

/// Histogram on dB-spaced bin edges. Density is per unit of linear SINR so it
/// compares directly with the analytic PDFs.
struct Histogram {
    std::vector<double> edges_db;
    std::vector<double> density;
    std::size_t n = 0;
};

Histogram histogram_db(const EmpiricalDistribution& dist, const std::vector<double>& edges_db);

nlohmann::json metadata_json(const EmpiricalDistribution& dist);

// Building blocks, exposed for tests.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

CMatrix draw_channel(Rng& rng, int rows, int cols);

/// n×k matrix with Haar-distributed orthonormal columns (Gram-Schmidt of a
/// Gaussian matrix).
CMatrix haar_columns(Rng& rng, int n, int k);

/// Unit-norm w with ‖Mw − λ_max w‖ ≤ tol·λ_max for Hermitian PSD M. Power
/// iteration accelerated by repeated squaring, restarted from a fresh random
/// vector when it stalls. Writes λ_max to *lambda if given.
CVector dominant_eigvec(const CMatrix& m, double tol, Rng& rng, double* lambda = nullptr);

/// Runs `draw(rng)` n times over fixed-size chunks with per-chunk seeds and
/// returns the values sorted. Thread count does not affect the result.
EmpiricalDistribution run_chunked(const McOptions& opts, const std::function<double(Rng&)>& draw);

/// Same chunking for paired draws, returned in generation order.
std::vector<std::pair<double, double>> run_chunked_pairs(const McOptions& opts,
                                                         const std::function<std::pair<double, double>(Rng&)>& draw);

EmpiricalDistribution simulate_bf_sinr(const ScenarioConfig& cfg, const McOptions& opts);

/// n_T = 2 (Auto/Alamouti): full Alamouti encoding of the own link and any
/// OSTBC interferer, receive filter applied to the stacked two-slot block.
/// Otherwise: the numerator exactly, and the exact projection terms of every
/// interference layer onto the n_T combining directions.
/// Interference power is averaged over the interferers' symbols, giving the
/// per-symbol SINR of the combined estimate.
EmpiricalDistribution simulate_ostbc_sinr(const ScenarioConfig& cfg, const McOptions& opts);

/// Dispatch on cfg.own_mode.
EmpiricalDistribution simulate_sinr(const ScenarioConfig& cfg, const McOptions& opts);

/// |vᴴ H c|²/‖v‖² for v = H₀w₀ and c a column of an isotropic unit-Frobenius
/// n_L-layer precoder: the normalized interference one layer causes at the
/// beamforming receiver.
EmpiricalDistribution simulate_bf_layer_term(int n_r, int n_t, int n_l, const McOptions& opts);

/// Σ_i ρ_i E_i with E_i i.i.d. unit exponentials.
EmpiricalDistribution simulate_weighted_exponential_sum(const RateSet& rates, const McOptions& opts);

}  // namespace rankint
