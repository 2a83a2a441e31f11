#include "rankint/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankint/errors.hpp"
#include "rankint/numerics.hpp"

namespace rankint {

namespace {

void check(const ProductDistribution& pd) {
    if (pd.n_l < 1 || pd.alpha < 1 || pd.beta < 0) throw InvalidArgument("invalid product distribution");
}

double log_beta_fn(int a, int b) { return std::lgamma(double(a)) + std::lgamma(double(b)) - std::lgamma(double(a + b)); }

// With t = e^{-u} the mixing integral becomes smooth on u ∈ [0, ∞) and dies
// off doubly exponentially once n_L·x·e^u ≫ 1. `power` selects t^power.
double mixing_integral(double x, const ProductDistribution& pd, int power) {
    const double c = pd.n_l * x;
    const double lb = log_beta_fn(pd.alpha, pd.beta);
    auto f = [&](double u) {
        const double t = std::exp(-u);
        const double one_minus = -std::expm1(-u);
        if (one_minus <= 0.0 && pd.beta > 1) return 0.0;
        const double tail = pd.beta == 1 ? 0.0 : (pd.beta - 1) * std::log(one_minus);
        const double log_w = power * std::log(t) + tail - lb;
        return std::exp(log_w - c * std::exp(u));
    };
    const double knee = std::max(0.0, std::log(1.0 / c));
    const double end = std::log((std::max(c, 1e-300) + 60.0) / c);
    double total = 0.0;
    if (knee > 0.0 && knee < end) {
        total += integrate(f, 0.0, knee, 1e-13);
        total += integrate(f, knee, end, 1e-13);
    } else {
        total += integrate(f, 0.0, end, 1e-13);
    }
    if (!std::isfinite(total)) throw NumericError("product distribution quadrature did not converge");
    return total;
}

// Log-spaced linear interpolation table for a distribution function; a
// quadrature per sample would dominate the KS statistic otherwise.
RealFn tabulate_log(const RealFn& cdf, double lo, double hi, int points = 4000) {
    lo = std::max(lo, 1e-12);
    hi = std::max(hi, lo * 2.0);
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / (points - 1);
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) values[static_cast<std::size_t>(i)] = cdf(std::exp(a + i * step));
    return [=, values = std::move(values)](double x) {
        if (x <= lo) return x <= 0.0 ? 0.0 : values.front() * x / lo;
        const double pos = (std::log(x) - a) / step;
        const auto i = static_cast<std::size_t>(std::min<double>(pos, points - 2));
        const double f = pos - static_cast<double>(i);
        return values[i] + f * (values[i + 1] - values[i]);
    };
}

}  // namespace

double ProductDistribution::mean() const { return double(alpha) / (double(alpha + beta) * n_l); }

ProductDistribution make_product_distribution(int n_r, int n_t, int n_l) {
    if (n_r < 1 || n_t < 1 || n_l < 1) throw InvalidArgument("dimensions must be positive");
    return {n_l, n_r, n_r * (n_t - 1)};
}

double product_pdf(double x, const ProductDistribution& pd) {
    check(pd);
    if (!(x >= 0.0)) throw InvalidArgument("product_pdf: x must be >= 0");
    if (pd.beta == 0) return pd.n_l * std::exp(-pd.n_l * x);
    if (x == 0.0) {
        // n_L·E[1/B]
        if (pd.alpha == 1) return std::numeric_limits<double>::infinity();
        return pd.n_l * double(pd.alpha + pd.beta - 1) / double(pd.alpha - 1);
    }
    // f(x) = ∫ n_L e^{−n_L x/t} f_B(t)/t dt, and dt/t = −du absorbs the 1/t.
    return pd.n_l * mixing_integral(x, pd, pd.alpha - 1);
}

double product_cdf(double x, const ProductDistribution& pd) {
    check(pd);
    if (!(x >= 0.0)) throw InvalidArgument("product_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (pd.beta == 0) return -std::expm1(-pd.n_l * x);
    // P(E·B > x) = E[e^{−n_L x/B}]
    return std::clamp(1.0 - mixing_integral(x, pd, pd.alpha), 0.0, 1.0);
}

double product_mean_quadrature(const ProductDistribution& pd) {
    check(pd);
    return integrate_half_line([&](double x) { return x == 0.0 ? 0.0 : x * product_pdf(x, pd); }, pd.mean(), 1e-12);
}

double exp_approx_pdf(double x, int n_t, int n_l) {
    if (!(x >= 0.0)) throw InvalidArgument("exp_approx_pdf: x must be >= 0");
    const double rate = double(n_t) * n_l;
    return rate * std::exp(-rate * x);
}

double exp_approx_cdf(double x, int n_t, int n_l) {
    if (!(x >= 0.0)) return 0.0;
    return -std::expm1(-double(n_t) * n_l * x);
}

EmpiricalDistribution simulate_product(const ProductDistribution& pd, const McOptions& opts) {
    check(pd);
    auto gamma_int = [](Rng& rng, int shape) {
        double s = 0.0;
        for (int i = 0; i < shape; ++i) s -= std::log(1.0 - rng.uniform());
        return s;
    };
    auto dist = run_chunked(opts, [&](Rng& rng) {
        const double e = -std::log(1.0 - rng.uniform()) / pd.n_l;
        if (pd.beta == 0) return e;
        const double a = gamma_int(rng, pd.alpha);
        const double b = gamma_int(rng, pd.beta);
        return e * a / (a + b);
    });
    dist.method = "exp-beta-product";
    return dist;
}

ChainReport compare_chain(int n_r, int n_t, int n_l, const McOptions& opts, double x_max, int points) {
    if (n_l > n_t) throw InvalidArgument("compare_chain: n_l must not exceed n_t");
    if (!(x_max > 0.0) || points < 2) throw InvalidArgument("compare_chain: bad grid");
    const auto pd = make_product_distribution(n_r, n_t, n_l);

    // Factors |h_1ᴴg|²/‖h_1‖² and ‖h_1‖²/‖H₀‖_F², drawn jointly.
    const auto pairs = run_chunked_pairs(opts, [&](Rng& rng) {
        const CMatrix h0 = draw_channel(rng, n_r, n_t);
        const CMatrix h = draw_channel(rng, n_r, n_t);
        const CMatrix c = haar_columns(rng, n_t, n_l) / std::sqrt(double(n_l));
        const CVector g = h * c.col(0);
        const double col2 = h0.col(0).squaredNorm();
        return std::pair{std::norm(h0.col(0).dot(g)) / col2, col2 / h0.squaredNorm()};
    });

    ChainReport r;
    r.n_r = n_r;
    r.n_t = n_t;
    r.n_l = n_l;
    r.n_samples = pairs.size();
    r.seed = opts.seed;

    EmpiricalDistribution exact;
    exact.samples.reserve(pairs.size());
    double m1 = 0, m2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (const auto& [a, b] : pairs) {
        exact.samples.push_back(a * b);
        m1 += a;
        m2 += b;
    }
    const double n = static_cast<double>(pairs.size());
    m1 /= n;
    m2 /= n;
    for (const auto& [a, b] : pairs) {
        s11 += (a - m1) * (a - m1);
        s22 += (b - m2) * (b - m2);
        s12 += (a - m1) * (b - m2);
    }
    r.factor_correlation = (s11 > 0 && s22 > 0) ? s12 / std::sqrt(s11 * s22) : 0.0;
    CompensatedSum mean;
    for (double v : exact.samples) mean += v;
    r.mean_exact = mean.value() / n;
    std::sort(exact.samples.begin(), exact.samples.end());
    r.mean_product = pd.mean();
    r.mean_exp = 1.0 / (double(n_t) * n_l);

    auto cdf_b = [&](double x) { return product_cdf(x, pd); };
    auto cdf_c = [&](double x) { return exp_approx_cdf(x, n_t, n_l); };
    r.ks_exact_product = ks_statistic(exact.samples, tabulate_log(cdf_b, exact.samples.front(), exact.samples.back()));
    r.ks_exact_exp = ks_statistic(exact.samples, cdf_c);

    const double width = x_max / points;
    double l1_ab = 0, l1_ac = 0;
    for (int b = 0; b < points; ++b) {
        const double lo = b * width;
        const double hi = lo + width;
        const double hist = (exact.ecdf(hi) - exact.ecdf(lo)) / width;
        const double fb = (cdf_b(hi) - cdf_b(lo)) / width;
        const double fc = (cdf_c(hi) - cdf_c(lo)) / width;
        r.x.push_back(0.5 * (lo + hi));
        r.exact.push_back(hist);
        r.product.push_back(product_pdf(r.x.back(), pd));
        r.exp_approx.push_back(exp_approx_pdf(r.x.back(), n_t, n_l));
        l1_ab += std::abs(hist - fb) * width;
        l1_ac += std::abs(hist - fc) * width;
        r.ks_product_exp = std::max(r.ks_product_exp, std::abs(cdf_b(hi) - cdf_c(hi)));
    }
    // Mass beyond x_max counts fully towards the histogram distances.
    l1_ab += std::abs((1.0 - exact.ecdf(x_max)) - (1.0 - cdf_b(x_max)));
    l1_ac += std::abs((1.0 - exact.ecdf(x_max)) - (1.0 - cdf_c(x_max)));
    r.l1_exact_product = l1_ab;
    r.l1_exact_exp = l1_ac;
    r.l1_product_exp = integrate_half_line(
        [&](double x) { return x == 0.0 ? 0.0 : std::abs(product_pdf(x, pd) - exp_approx_pdf(x, n_t, n_l)); },
        r.mean_exp, 1e-10);
    return r;
}

}  // namespace rankint
