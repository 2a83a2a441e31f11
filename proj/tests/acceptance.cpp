// Acceptance checks: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rankint/approximation.hpp"
#include "rankint/cli.hpp"
#include "rankint/closed_form_bf.hpp"
#include "rankint/closed_form_ostbc.hpp"
#include "rankint/mixture.hpp"
#include "rankint/monte_carlo.hpp"
#include "rankint/numerics.hpp"
#include "rankint/sweeps.hpp"
#include "rankint/wishart.hpp"
#include "support.hpp"

using namespace rankint;
using testing::single_sm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Report {
    int failures = 0;
    std::vector<std::string> details;

    void detail(const char* fmt, auto... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        details.emplace_back(buf);
    }

    void verdict(int id, bool pass, const std::string& title) {
        std::printf("AC%d %s %s\n", id, pass ? "PASS" : "FAIL", title.c_str());
        for (const auto& d : details) std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
        details.clear();
        if (!pass) ++failures;
    }
};

struct Band {
    double lo = 1e300, hi = -1e300;
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

bool ac1(Report& rep) {
    const auto t0 = Clock::now();
    bool exact = true;
    double worst = 0.0;
    for (int a = 1; a <= 6; ++a) {
        for (int b = 1; b <= 6; ++b) {
            const auto t = compute_weights(a, b);
            exact = exact && t.exact_sum_is_one;
            const double total = integrate_half_line([&](double x) { return pdf_lambda_max(x, t, 1.0); }, t.mean());
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    const double elapsed = seconds_since(t0);
    rep.detail("36 tables, sum of psi == 1 in rationals: %s", exact ? "yes" : "no");
    rep.detail("max |integral - 1| = %.3g (limit 1e-9)", worst);
    rep.detail("runtime %.2f s (limit 10 s)", elapsed);
    return exact && worst < 1e-9 && elapsed < 10.0;
}

bool ac2(Report& rep) {
    const auto cfg = reference_scenario(OwnMode::Beamforming);
    const auto t0 = Clock::now();
    const auto dist = simulate_sinr(cfg, McOptions{});
    const AnalyticModel model(cfg);
    double max_d = 0.0, max_at = 0.0, sum = 0.0;
    std::vector<double> deltas;
    for (double db : make_grid(-5.0, 20.0, 0.5)) {
        const double g = db_to_linear(db);
        const double d = std::abs(empirical_outage(dist, g).p - model.outage(g));
        deltas.push_back(d);
        sum += d;
        if (d > max_d) {
            max_d = d;
            max_at = db;
        }
    }
    const double elapsed = seconds_since(t0);
    std::sort(deltas.begin(), deltas.end());
    const double median = deltas[deltas.size() / 2];
    rep.detail("10^6 samples, seed 1: max |delta| = %.4f at %.1f dB (limit 0.01)", max_d, max_at);
    rep.detail("median |delta| = %.5f, mean |delta| = %.5f (typical < 0.005)", median, sum / deltas.size());
    rep.detail("runtime %.1f s (limit 120 s)", elapsed);
    return max_d <= 0.01 && median < 0.005 && elapsed < 120.0;
}

bool ac3(Report& rep) {
    const auto cfg = reference_scenario(OwnMode::Ostbc);
    const auto dist = simulate_sinr(cfg, McOptions{});
    const AnalyticModel model(cfg);
    double max_d = 0.0, max_at = 0.0;
    for (double db : make_grid(-5.0, 20.0, 0.5)) {
        const double g = db_to_linear(db);
        const double d = std::abs(empirical_outage(dist, g).p - model.outage(g));
        if (d > max_d) {
            max_d = d;
            max_at = db;
        }
    }
    // PDF mismatch over 0.5 dB bins against the bin-averaged closed form
    const auto edges = make_grid(-10.0, 25.0, 0.5);
    const auto hist = histogram_db(dist, edges);
    std::vector<double> analytic, centre;
    double sup = 0.0, sup_at = 0.0, peak = 0.0, mode_at = 0.0;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double lo = db_to_linear(edges[b]), hi = db_to_linear(edges[b + 1]);
        analytic.push_back((model.outage(hi) - model.outage(lo)) / (hi - lo));
        centre.push_back(0.5 * (edges[b] + edges[b + 1]));
        const double d = std::abs(analytic.back() - hist.density[b]);
        if (d > sup) {
            sup = d;
            sup_at = centre.back();
        }
        if (analytic.back() > peak) {
            peak = analytic.back();
            mode_at = centre.back();
        }
    }
    // mode region: where the density is at least half its peak
    double region_lo = 1e9, region_hi = -1e9, outside = 0.0;
    for (std::size_t b = 0; b < analytic.size(); ++b) {
        if (analytic[b] >= 0.5 * peak) {
            region_lo = std::min(region_lo, centre[b]);
            region_hi = std::max(region_hi, centre[b]);
        }
    }
    for (std::size_t b = 0; b < analytic.size(); ++b)
        if (centre[b] < region_lo || centre[b] > region_hi)
            outside = std::max(outside, std::abs(analytic[b] - hist.density[b]));
    const bool concentrated = sup_at >= region_lo && sup_at <= region_hi;
    rep.detail("10^6 samples, seed 1: max |delta| = %.4f at %.1f dB (limit 0.03)", max_d, max_at);
    rep.detail("PDF sup-norm %.4f at %.2f dB; analytic mode %.2f dB, half-peak region [%.2f, %.2f] dB", sup, sup_at,
               mode_at, region_lo, region_hi);
    rep.detail("largest mismatch outside the mode region: %.4f", outside);
    return max_d <= 0.03 && concentrated;
}

Band inr_gains(const ScenarioConfig& cfg, double from, double to) {
    Band b;
    for (const auto& p : sweep_inr(cfg, make_grid(from, to, 1.0))) b.add(p.gain_db);
    return b;
}

bool ac4(Report& rep) {
    const auto t0 = Clock::now();
    const Band a = inr_gains(single_sm(4, 4, 4, 0.0, OwnMode::Beamforming), 6.0, 15.0);
    const bool pass_a = a.lo > 2.0;
    rep.detail("(a) 4x4 BF rank 4, INR 6..15 dB: gain in [%.3f, %.3f] dB, need > 2.0 -> %s", a.lo, a.hi,
               pass_a ? "ok" : "FAIL");

    const double b = rank_gain(single_sm(2, 2, 2, 0.0, OwnMode::Beamforming)).gain_db;
    const bool pass_b = b >= 0.25 && b <= 0.55;
    rep.detail("(b) 2x2 BF rank 2, INR 0 dB: gain %.3f dB, need [0.25, 0.55] -> %s", b, pass_b ? "ok" : "FAIL");

    bool pass_c = true;
    struct Case {
        int n_r, n_t, layers;
    };
    for (const Case c : {Case{2, 2, 2}, Case{4, 2, 2}, Case{4, 4, 2}, Case{4, 4, 4}}) {
        const Band g = inr_gains(single_sm(c.n_r, c.n_t, c.layers, 0.0, OwnMode::Ostbc), 0.0, 15.0);
        const bool ok = g.lo > 0.0 && g.hi < 1.0;
        pass_c = pass_c && ok;
        rep.detail("(c) OSTBC n_R=%d n_T=%d rank %d, INR 0..15 dB: gain in [%.3f, %.3f] dB, need (0, 1) -> %s%s",
                   c.n_r, c.n_t, c.layers, g.lo, g.hi, ok ? "ok" : "FAIL",
                   c.n_t > 2 ? " (n_T > 2 extrapolated)" : "");
    }
    rep.detail("runtime %.2f s", seconds_since(t0));
    return pass_a && pass_b && pass_c;
}

bool ac5(Report& rep) {
    bool pass = true;
    struct Case {
        int n_r, n_t, layers;
        OwnMode mode;
    };
    for (const Case c : {Case{2, 2, 2, OwnMode::Beamforming}, Case{4, 2, 2, OwnMode::Beamforming},
                         Case{4, 4, 4, OwnMode::Beamforming}, Case{2, 2, 2, OwnMode::Ostbc},
                         Case{4, 2, 2, OwnMode::Ostbc}}) {
        Band g;
        for (const auto& p : sweep_snr(single_sm(c.n_r, c.n_t, c.layers, 15.0, c.mode), {5, 10, 15, 20, 25}))
            g.add(p.gain_db);
        pass = pass && g.hi - g.lo < 0.1;
        rep.detail("%s n_R=%d n_T=%d rank %d: gain %.4f..%.4f dB, spread %.2e dB (limit 0.1)",
                   c.mode == OwnMode::Beamforming ? "BF" : "OSTBC", c.n_r, c.n_t, c.layers, g.lo, g.hi, g.hi - g.lo);
    }
    return pass;
}

bool ac6(Report& rep) {
    bool pass = true;
    for (auto [nr, nt, layers] : {std::tuple{2, 2, 2}, {4, 2, 2}, {4, 4, 4}}) {
        const auto cfg = single_sm(nr, nt, layers, 10.0, OwnMode::Beamforming);
        const AnalyticModel low(with_interferer_rank(cfg, 0, 1));
        const AnalyticModel high(cfg);
        const auto cross = find_crossings(low, high, make_grid(-20.0, 30.0, 0.25));
        bool ok = !cross.empty();
        std::ostringstream where;
        for (const auto& c : cross) {
            ok = ok && c.outage > 0.1;
            where << " " << c.outage << " (at " << c.gamma0_db << " dB)";
        }
        pass = pass && ok;
        rep.detail("BF n_R=%d n_T=%d rank %d vs 1, SNR 15 INR 10: crossings at outage%s -> %s", nr, nt, layers,
                   cross.empty() ? " none" : where.str().c_str(), ok ? "ok" : "FAIL");
    }
    return pass;
}

bool ac7(Report& rep) {
    double worst = 0.0;
    int count = 0;
    for (int r = 1; r <= 4; ++r) {
        for (int t = 1; t <= 4; ++t) {
            for (int l = 1; l <= t; ++l) {
                const double m = product_mean_quadrature(make_product_distribution(r, t, l));
                worst = std::max(worst, std::abs(m - 1.0 / (t * l)));
                ++count;
            }
        }
    }
    rep.detail("%d (n_R, n_T, n_L) triples: max |mean - 1/(n_T n_L)| = %.3g (limit 1e-9)", count, worst);
    return worst < 1e-9;
}

bool ac8(Report& rep) {
    bool pass = true;
    for (auto mode : {OwnMode::Beamforming, OwnMode::Ostbc}) {
        const auto rates = build_rate_set(reference_scenario(mode));
        const auto mix = build_mixture(rates);
        McOptions o;
        o.seed = 8;
        const auto d = simulate_weighted_exponential_sum(rates, o);
        const double ks = ks_statistic(d.samples, [&](double y) { return cdf_y(y, mix); });
        pass = pass && ks < 0.005;
        rep.detail("reference rate set (%s mode, %zu terms, G=%d): KS %.5f at 10^6 samples (limit 0.005)",
                   std::string(to_string(mode)).c_str(), rates.size(), mix.group_count(), ks);
    }
    double worst = 0.0;
    for (int beta : {1, 2, 3, 8, 16}) {
        for (double rho : {0.3, 2.5, 10.0}) {
            RateSet r;
            r.rates.assign(std::size_t(beta), rho);
            const auto mix = build_mixture(r);
            const boost::math::gamma_distribution<double> g(beta, rho);
            for (double y = 0.05 * rho; y <= 40.0 * rho; y += 0.05 * rho)
                worst = std::max(worst, std::abs(pdf_y(y, mix) - boost::math::pdf(g, y)));
            // boost reports 0 at the origin for every shape; the limit there is 1/ρ for β = 1
            worst = std::max(worst, std::abs(pdf_y(0.0, mix) - (beta == 1 ? 1.0 / rho : 0.0)));
        }
    }
    pass = pass && worst < 1e-12;
    rep.detail("G=1 branch vs gamma density: max pointwise |diff| = %.3g (limit 1e-12)", worst);
    return pass;
}

bool ac9(Report& rep) {
    bool pass = true;
    for (int n : {2, 4}) {
        const auto pts = sweep_num_interferers(single_sm(n, n, n, 15.0, OwnMode::Beamforming), {1, 2, 3, 4, 5, 6}, 15.0);
        bool mono = true;
        std::ostringstream seq;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            seq << (i ? ", " : "") << std::round(pts[i].gain_db * 1000) / 1000;
            if (i > 0 && pts[i].gain_db > pts[i - 1].gain_db) mono = false;
        }
        pass = pass && mono;
        rep.detail("BF %dx%d rank %d, 1..6 iBSs at total INR 15 dB: gains %s dB -> %s", n, n, n, seq.str().c_str(),
                   mono ? "nonincreasing" : "NOT monotone");
    }
    return pass;
}

bool ac10(Report& rep) {
    const std::string ref_bf = testing::source_path("configs/reference_bf.json");
    const std::string ref_st = testing::source_path("configs/reference_ostbc.json");
    const std::vector<std::vector<std::string>> commands{
        {"outage", "--config", ref_bf, "--mc", "--samples", "200000", "--seed", "11"},
        {"pdf", "--config", ref_st, "--mc", "--samples", "200000", "--seed", "12"},
        {"mc-validate", "--config", ref_st, "--samples", "200000", "--seed", "13"},
        {"approx-validate", "--config", ref_bf, "--samples", "200000", "--seed", "14"},
    };
    bool pass = true;
    for (const auto& args : commands) {
        std::ostringstream a, b, c, err;
        run_cli(args, a, err);
        run_cli(args, b, err);
        auto threaded = args;
        threaded.insert(threaded.end(), {"--threads", "3"});
        run_cli(threaded, c, err);
        const bool same = !a.str().empty() && a.str() == b.str() && a.str() == c.str();
        pass = pass && same;
        rep.detail("%-15s x3 (threads default, default, 3): %zu bytes, %s", args[0].c_str(), a.str().size(),
                   same ? "byte-identical" : "DIFFERENT");
    }
    return pass;
}

}  // namespace

int main() {
    Report rep;
    rep.verdict(1, ac1(rep), "weight tables normalize exactly up to 6x6");
    rep.verdict(2, ac2(rep), "beamforming closed form agrees with Monte Carlo");
    rep.verdict(3, ac3(rep), "OSTBC closed form agrees with Monte Carlo, mismatch near the mode");
    rep.verdict(4, ac4(rep), "rank gains at outage 0.01");
    rep.verdict(5, ac5(rep), "gain is flat across SNR at INR 15 dB");
    rep.verdict(6, ac6(rep), "rank-1 and rank-r outage curves cross above outage 0.1");
    rep.verdict(7, ac7(rep), "product distribution mean is 1/(n_T n_L)");
    rep.verdict(8, ac8(rep), "interference mixture matches simulation and the gamma branch");
    rep.verdict(9, ac9(rep), "gain does not grow with the number of equal-power interferers");
    rep.verdict(10, ac10(rep), "Monte Carlo commands are byte-reproducible");
    std::printf("%d of 10 criteria failed\n", rep.failures);
    return rep.failures == 0 ? 0 : 1;
}
