#include "rankint/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "rankint/errors.hpp"

namespace rankint {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

std::complex<double> Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::complex<double> Rng::unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
    return splitmix64(splitmix64(seed) ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(chunk) + 1)));
}

double EmpiricalDistribution::ecdf(double x) const {
    if (samples.empty()) return 0.0;
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

OutageEstimate empirical_outage(const EmpiricalDistribution& dist, double gamma0) {
    if (!(gamma0 > 0.0)) throw InvalidArgument("empirical_outage: gamma0 must be > 0");
    if (dist.samples.empty()) throw InvalidArgument("empirical_outage: no samples");
    const double p = dist.ecdf(gamma0);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(dist.size()))};
}

Histogram histogram_db(const EmpiricalDistribution& dist, const std::vector<double>& edges_db) {
    if (edges_db.size() < 2) throw InvalidArgument("histogram needs at least two edges");
    if (!std::is_sorted(edges_db.begin(), edges_db.end())) throw InvalidArgument("histogram edges must ascend");
    Histogram h;
    h.edges_db = edges_db;
    h.n = dist.size();
    const double n = static_cast<double>(dist.size());
    for (std::size_t b = 0; b + 1 < edges_db.size(); ++b) {
        const double lo = db_to_linear(edges_db[b]);
        const double hi = db_to_linear(edges_db[b + 1]);
        const auto first = std::upper_bound(dist.samples.begin(), dist.samples.end(), lo);
        const auto last = std::upper_bound(dist.samples.begin(), dist.samples.end(), hi);
        h.density.push_back(n > 0 ? static_cast<double>(last - first) / (n * (hi - lo)) : 0.0);
    }
    return h;
}

nlohmann::json metadata_json(const EmpiricalDistribution& dist) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(dist.scenario_hash));
    return {{"seed", dist.seed},
            {"n_samples", dist.size()},
            {"chunk_size", dist.chunk_size},
            {"rng", kRngId},
            {"scenario_hash", hash},
            {"method", dist.method}};
}

CMatrix draw_channel(Rng& rng, int rows, int cols) {
    CMatrix h(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) h(r, c) = rng.cnormal();
    return h;
}

CMatrix haar_columns(Rng& rng, int n, int k) {
    if (k < 1 || k > n) throw InvalidArgument("haar_columns: need 1 <= k <= n");
    CMatrix q = draw_channel(rng, n, k);
    for (int c = 0; c < k; ++c) {
        // Two passes of modified Gram-Schmidt keep the columns orthogonal to
        // machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) q.col(c) -= q.col(p).dot(q.col(c)) * q.col(p);
        }
        q.col(c).normalize();
    }
    return q;
}

CVector dominant_eigvec(const CMatrix& m, double tol, Rng& rng, double* lambda) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("dominant_eigvec: need a square matrix");
    if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidArgument("dominant_eigvec: tol must lie in (0, 1e-6]");
    const Eigen::Index n = m.rows();
    const double trace = m.trace().real();
    if (!(trace > 0.0)) {
        if (lambda) *lambda = 0.0;
        CVector e = CVector::Zero(n);
        e(0) = 1.0;
        return e;
    }
    const CMatrix unit = m / trace;

    for (int restart = 0; restart < 8; ++restart) {
        CVector w(n);
        for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.cnormal();
        w.normalize();
        CMatrix a = unit;
        for (int step = 0; step < 64; ++step) {
            CVector x = a * w;
            const double norm = x.norm();
            if (!(norm > 0.0) || !std::isfinite(norm)) break;
            x /= norm;
            const CVector mx = m * x;
            const double lam = x.dot(mx).real();
            if ((mx - lam * x).norm() <= tol * lam) {
                if (lambda) *lambda = lam;
                return x;
            }
            w = x;
            a = a * a;
            const double t = a.trace().real();
            if (!(t > 0.0)) break;
            a /= t;
        }
    }
    throw NumericError("dominant_eigvec: power iteration did not converge");
}

namespace {

template <class T, class Draw>
std::vector<T> chunked(const McOptions& opts, const Draw& draw) {
    if (opts.n_samples == 0) throw InvalidArgument("n_samples must be positive");
    if (opts.chunk_size == 0) throw InvalidArgument("chunk_size must be positive");
    std::vector<T> out(opts.n_samples);
    const std::size_t chunks = (opts.n_samples + opts.chunk_size - 1) / opts.chunk_size;
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        try {
            for (std::size_t c = next++; c < chunks; c = next++) {
                Rng rng(chunk_seed(opts.seed, c));
                const std::size_t begin = c * opts.chunk_size;
                const std::size_t end = std::min(opts.n_samples, begin + opts.chunk_size);
                for (std::size_t i = begin; i < end; ++i) out[i] = draw(rng);
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

EmpiricalDistribution run_chunked(const McOptions& opts, const std::function<double(Rng&)>& draw) {
    EmpiricalDistribution dist;
    dist.samples = chunked<double>(opts, draw);
    dist.seed = opts.seed;
    dist.chunk_size = opts.chunk_size;
    std::sort(dist.samples.begin(), dist.samples.end());
    return dist;
}

std::vector<std::pair<double, double>> run_chunked_pairs(const McOptions& opts,
                                                         const std::function<std::pair<double, double>(Rng&)>& draw) {
    return chunked<std::pair<double, double>>(opts, draw);
}

namespace {

struct Source {
    Technique technique;
    int layers;
    double power;
};

std::vector<Source> sources(const ScenarioConfig& cfg) {
    std::vector<Source> out;
    for (std::size_t i = 0; i < cfg.interferers.size(); ++i)
        out.push_back({cfg.interferers[i].technique, cfg.interferers[i].layers, cfg.interferer_power(i)});
    return out;
}

std::complex<double> draw_symbol(Rng& rng, SymbolKind kind) {
    return kind == SymbolKind::UnitModulus ? rng.unit_phase() : rng.cnormal();
}

// Alamouti effective channel: rows [y(1); conj(y(2))] against [s1; s2].
CMatrix alamouti_effective(const CMatrix& h) {
    const Eigen::Index nr = h.rows();
    CMatrix e(2 * nr, 2);
    e.topLeftCorner(nr, 1) = h.col(0);
    e.topRightCorner(nr, 1) = h.col(1);
    e.bottomLeftCorner(nr, 1) = h.col(1).conjugate();
    e.bottomRightCorner(nr, 1) = -h.col(0).conjugate();
    return e;
}

}  // namespace

EmpiricalDistribution simulate_bf_sinr(const ScenarioConfig& cfg, const McOptions& opts) {
    validate(cfg);
    if (cfg.own_mode != OwnMode::Beamforming) throw InvalidArgument("simulate_bf_sinr: scenario is not in bf mode");
    const auto src = sources(cfg);
    const double p0 = cfg.own_power();
    const double noise = cfg.noise_power;
    const int nr = cfg.n_r;
    const int nt = cfg.n_t;

    auto draw = [&](Rng& rng) {
        const CMatrix h0 = draw_channel(rng, nr, nt);
        const CVector w = dominant_eigvec(h0.adjoint() * h0, opts.eig_tol, rng);
        const CVector v = h0 * w;
        const double vn2 = v.squaredNorm();
        double interference = 0.0;
        for (const auto& s : src) {
            const CMatrix h = draw_channel(rng, nr, nt);
            if (s.technique == Technique::Ostbc) {
                // One time slot of the code: a unit-power symbol vector spread
                // over n_T antennas.
                CVector d(nt);
                for (int a = 0; a < nt; ++a) d(a) = draw_symbol(rng, opts.symbols) / std::sqrt(double(nt));
                const CVector g = h * d / std::sqrt(double(nt));
                interference += s.power * std::norm(v.dot(g));
            } else {
                const CMatrix c = haar_columns(rng, nt, s.layers) / std::sqrt(double(s.layers));
                for (int l = 0; l < s.layers; ++l) {
                    const std::complex<double> sym = draw_symbol(rng, opts.symbols);
                    interference += s.power * std::norm(v.dot(h * c.col(l)) * sym);
                }
            }
        }
        return p0 * vn2 * vn2 / (interference + vn2 * noise);
    };
    auto dist = run_chunked(opts, draw);
    dist.scenario_hash = config_hash(cfg);
    dist.method = "bf";
    return dist;
}

EmpiricalDistribution simulate_ostbc_sinr(const ScenarioConfig& cfg, const McOptions& opts) {
    validate(cfg);
    if (cfg.own_mode != OwnMode::Ostbc) throw InvalidArgument("simulate_ostbc_sinr: scenario is not in ostbc mode");
    const auto src = sources(cfg);
    const double p0 = cfg.own_power();
    const double noise = cfg.noise_power;
    const int nr = cfg.n_r;
    const int nt = cfg.n_t;
    const double ntd = nt;

    bool alamouti = nt == 2;
    if (opts.ostbc_path == OstbcPath::Alamouti) {
        if (nt != 2) throw InvalidArgument("the Alamouti path needs n_t = 2");
        alamouti = true;
    } else if (opts.ostbc_path == OstbcPath::Component) {
        alamouti = false;
    }

    auto alamouti_draw = [&](Rng& rng) {
        const CMatrix h0 = draw_channel(rng, nr, nt);
        const CMatrix e0 = alamouti_effective(h0);
        const CVector f = e0.col(0);  // receive filter for s1 is its conjugate
        const double fro2 = h0.squaredNorm();
        // Per-slot noise of n_T·σ² on the stacked block.
        const double signal = (p0 / ntd) * fro2 * fro2;
        const double noise_out = ntd * noise * fro2;
        double interference = 0.0;
        for (const auto& s : src) {
            const CMatrix h = draw_channel(rng, nr, nt);
            if (s.technique == Technique::Ostbc) {
                const CMatrix ej = alamouti_effective(h);
                interference += (s.power / ntd) * (f.adjoint() * ej).squaredNorm();
            } else {
                const CMatrix c = haar_columns(rng, nt, s.layers) / std::sqrt(double(s.layers));
                for (int l = 0; l < s.layers; ++l) {
                    const CVector g = h * c.col(l);
                    // Symbol of slot 1 enters as [g; 0], symbol of slot 2 as [0; conj(g)].
                    const std::complex<double> a = f.head(nr).dot(g);
                    const std::complex<double> b = f.tail(nr).dot(g.conjugate());
                    interference += s.power * (std::norm(a) + std::norm(b));
                }
            }
        }
        return signal / (noise_out + interference);
    };

    auto component_draw = [&](Rng& rng) {
        const CMatrix h0 = draw_channel(rng, nr, nt);
        const double fro2 = h0.squaredNorm();
        const double x = p0 * fro2 / (ntd * ntd * noise);
        double y = 0.0;
        for (const auto& s : src) {
            if (s.technique == Technique::Ostbc) {
                // The n_T code columns of the interferer project onto the own
                // combining direction as independent CN(0, 1) variables.
                Eigen::Map<const CVector> u(h0.data(), h0.size());
                for (int c = 0; c < nt; ++c) {
                    CVector z(h0.size());
                    for (Eigen::Index t = 0; t < z.size(); ++t) z(t) = rng.cnormal();
                    y += s.power / (ntd * ntd * noise) * std::norm(u.dot(z)) / fro2;
                }
            } else {
                const CMatrix h = draw_channel(rng, nr, nt);
                const CMatrix c = haar_columns(rng, nt, s.layers) / std::sqrt(double(s.layers));
                for (int l = 0; l < s.layers; ++l) {
                    const CVector g = h * c.col(l);
                    for (int m = 0; m < nt; ++m) y += s.power / (ntd * noise) * std::norm(h0.col(m).dot(g)) / fro2;
                }
            }
        }
        return x / (1.0 + y);
    };

    auto dist = alamouti ? run_chunked(opts, alamouti_draw) : run_chunked(opts, component_draw);
    dist.scenario_hash = config_hash(cfg);
    dist.method = alamouti ? "ostbc-alamouti" : "ostbc-component";
    return dist;
}

EmpiricalDistribution simulate_sinr(const ScenarioConfig& cfg, const McOptions& opts) {
    return cfg.own_mode == OwnMode::Beamforming ? simulate_bf_sinr(cfg, opts) : simulate_ostbc_sinr(cfg, opts);
}

EmpiricalDistribution simulate_bf_layer_term(int n_r, int n_t, int n_l, const McOptions& opts) {
    if (n_r < 1 || n_t < 1 || n_l < 1 || n_l > n_t) throw InvalidArgument("simulate_bf_layer_term: bad dimensions");
    auto dist = run_chunked(opts, [&](Rng& rng) {
        const CMatrix h0 = draw_channel(rng, n_r, n_t);
        const CVector v = h0 * dominant_eigvec(h0.adjoint() * h0, opts.eig_tol, rng);
        const CMatrix h = draw_channel(rng, n_r, n_t);
        const CMatrix c = haar_columns(rng, n_t, n_l) / std::sqrt(double(n_l));
        return std::norm(v.dot(h * c.col(0))) / v.squaredNorm();
    });
    dist.method = "bf-layer-term";
    return dist;
}

EmpiricalDistribution simulate_weighted_exponential_sum(const RateSet& rates, const McOptions& opts) {
    auto dist = run_chunked(opts, [&](Rng& rng) {
        double s = 0.0;
        for (double r : rates.rates) s -= r * std::log(1.0 - rng.uniform());
        return s;
    });
    dist.method = "exponential-sum";
    return dist;
}

}  // namespace rankint
