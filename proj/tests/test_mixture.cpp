#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <cmath>
#include <random>
#include <set>

#include "rankint/errors.hpp"
#include "rankint/mixture.hpp"
#include "rankint/monte_carlo.hpp"
#include "rankint/numerics.hpp"

using namespace rankint;

namespace {

double gamma_pdf(double y, int shape, double scale) {
    return boost::math::pdf(boost::math::gamma_distribution<double>(shape, scale), y);
}

// Sum of independent exponentials with pairwise distinct means.
double hypoexp_pdf(double y, const std::vector<double>& means) {
    double s = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        double c = 1.0;
        for (std::size_t k = 0; k < means.size(); ++k)
            if (k != i) c *= means[i] / (means[i] - means[k]);
        s += c * std::exp(-y / means[i]) / means[i];
    }
    return s;
}

MixtureSpec shell(std::vector<MixtureGroup> groups) {
    MixtureSpec s;
    s.groups = std::move(groups);
    return s;
}

}  // namespace

TEST_SUITE("mixture") {

TEST_CASE("grouping") {
    auto s = group_rates({{5.0, 5.0}});
    REQUIRE(s.group_count() == 1);
    CHECK(s.groups[0].rate == 5.0);
    CHECK(s.groups[0].multiplicity == 2);

    s = group_rates({{10.0, 6.31, 3.98}});
    REQUIRE(s.group_count() == 3);
    CHECK(s.groups[0].rate == 10.0);
    CHECK(s.groups[2].rate == 3.98);
    for (const auto& g : s.groups) CHECK(g.multiplicity == 1);

    s = group_rates({{5.0, 5.0 * (1 + 1e-12)}}, 1e-9);
    REQUIRE(s.group_count() == 1);
    CHECK(s.groups[0].rate == doctest::Approx(5.0));
    CHECK(s.groups[0].multiplicity == 2);

    s = group_rates({{5.0, 5.0 * (1 + 1e-5)}});
    CHECK(s.group_count() == 2);
    CHECK_FALSE(s.warnings.empty());
    CHECK(s.conditioning < 1e-4);

    CHECK_THROWS_AS(group_rates(RateSet{}), EmptyMixture);
    CHECK_THROWS_AS(group_rates({{1.0, -2.0}}), InvalidArgument);
}

TEST_CASE("tuple enumeration") {
    const auto two = shell({{2.0, 2}, {1.0, 1}});
    CHECK(enumerate_tuples(1, 1, two) == std::vector<std::vector<int>>{{0, 1}});
    CHECK(enumerate_tuples(1, 2, two) == std::vector<std::vector<int>>{{0, 0}});
    CHECK(enumerate_tuples(2, 1, two) == std::vector<std::vector<int>>{{0, 0}});

    const auto three = shell({{3.0, 3}, {2.0, 1}, {1.0, 1}});
    const auto t = enumerate_tuples(1, 1, three);
    const std::set<std::vector<int>> got(t.begin(), t.end());
    const std::set<std::vector<int>> want{{0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    CHECK(t.size() == 3);
    CHECK(got == want);
    for (int i = 1; i <= 3; ++i) {
        const int beta = three.groups[std::size_t(i - 1)].multiplicity;
        CHECK(enumerate_tuples(i, beta, three) == std::vector<std::vector<int>>{{0, 0, 0}});
    }
    CHECK_THROWS_AS(enumerate_tuples(4, 1, three), InvalidArgument);
    CHECK_THROWS_AS(enumerate_tuples(2, 2, three), InvalidArgument);
}

TEST_CASE("single group") {
    const auto s = build_mixture({{4.0, 4.0, 4.0}});
    REQUIRE(s.xi.size() == 1);
    CHECK(s.xi[0][2] == 1.0L);
    CHECK(s.xi[0][0] == 0.0L);
    CHECK(pdf_y(0.0, build_mixture({{1.0}})) == doctest::Approx(1.0));
    CHECK(pdf_y(1.0, build_mixture({{1.0, 1.0}})) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    for (double y = 0.0; y < 60.0; y += 0.3) CHECK(std::abs(pdf_y(y, s) - gamma_pdf(y, 3, 4.0)) < 1e-12);
}

TEST_CASE("hypoexponential oracle") {
    const auto s = build_mixture({{2.0, 1.0}});
    for (double y = 0.0; y < 40.0; y += 0.1) CHECK(std::abs(pdf_y(y, s) - hypoexp_pdf(y, {2.0, 1.0})) < 1e-12);

    const std::vector<double> four{9.0, 4.5, 2.0, 0.7};
    const auto s4 = build_mixture({four});
    for (double y = 0.0; y < 80.0; y += 0.25) CHECK(std::abs(pdf_y(y, s4) - hypoexp_pdf(y, four)) < 1e-12);
}

TEST_CASE("repeated rates against a convolution") {
    // gamma(2, 5) convolved with a two-rate hypoexponential
    const auto s = build_mixture({{6.31, 5.0, 5.0, 1.99}});
    REQUIRE(s.group_count() == 3);
    for (double y : {0.5, 2.0, 7.0, 15.0, 40.0}) {
        const double conv =
            integrate([&](double t) { return gamma_pdf(t, 2, 5.0) * hypoexp_pdf(y - t, {6.31, 1.99}); }, 0.0, y, 1e-14);
        CHECK(std::abs(pdf_y(y, s) - conv) < 1e-10);
    }
}

TEST_CASE("normalization, mean and distribution function") {
    std::mt19937 gen(11);
    const std::vector<double> values{0.5, 1.3, 2.9, 7.0, 15.0};
    for (int trial = 0; trial < 40; ++trial) {
        RateSet r;
        for (double v : values) {
            const int m = std::uniform_int_distribution<int>(0, 4)(gen);
            for (int i = 0; i < m; ++i) r.rates.push_back(v);
        }
        if (r.empty()) r.rates.push_back(1.0);
        std::shuffle(r.rates.begin(), r.rates.end(), gen);
        const auto s = build_mixture(r);
        long double xsum = 0;
        for (const auto& row : s.xi)
            for (long double v : row) xsum += v;
        CHECK(std::abs(double(xsum) - 1.0) < 1e-9);
        const double scale = r.sum();
        const double total = integrate_half_line([&](double y) { return pdf_y(y, s); }, scale);
        const double mean = integrate_half_line([&](double y) { return y * pdf_y(y, s); }, scale);
        CHECK(std::abs(total - 1.0) < 1e-9);
        CHECK(std::abs(mean / r.sum() - 1.0) < 1e-9);
        CHECK(s.mean() == doctest::Approx(r.sum()).epsilon(1e-12));
        const double part = integrate([&](double y) { return pdf_y(y, s); }, 0.0, scale);
        CHECK(std::abs(part - cdf_y(scale, s)) < 1e-9);
    }
}

TEST_CASE("continuity under grouping") {
    const auto merged = build_mixture({{5.0, 5.0 * (1 + 5e-13)}});
    REQUIRE(merged.group_count() == 1);
    double sup = 0.0;
    for (double y = 0.0; y <= 250.0; y += 0.05) sup = std::max(sup, std::abs(pdf_y(y, merged) - gamma_pdf(y, 2, 5.0)));
    CHECK(sup < 1e-6);
}

TEST_CASE("general machinery against the single-group branch after an epsilon split") {
    for (int beta : {2, 3}) {
        RateSet whole, split;
        for (int i = 0; i < beta; ++i) {
            whole.rates.push_back(4.0);
            split.rates.push_back(i == 0 ? 4.0 * (1 + 1e-6) : 4.0);
        }
        const auto a = build_mixture(whole);
        const auto b = build_mixture(split);
        REQUIRE(a.group_count() == 1);
        REQUIRE(b.group_count() == 2);
        double sup = 0.0;
        for (double y = 0.0; y <= 200.0; y += 0.1) sup = std::max(sup, std::abs(pdf_y(y, a) - pdf_y(y, b)));
        CAPTURE(beta);
        CHECK(sup < 1e-4);
    }
}

TEST_CASE("nearly coincident rates switch to 50-digit evaluation") {
    RateSet whole, split;
    for (int i = 0; i < 6; ++i) {
        whole.rates.push_back(2.0);
        split.rates.push_back(i < 2 ? 2.0 * (1 + 1e-6) : 2.0);
    }
    const auto a = build_mixture(whole);
    const auto b = build_mixture(split);
    CHECK_FALSE(a.needs_wide());
    CHECK(b.needs_wide());
    double sup = 0.0;
    for (double y = 0.0; y <= 100.0; y += 0.1) {
        sup = std::max(sup, std::abs(pdf_y(y, a) - pdf_y(y, b)));
        sup = std::max(sup, std::abs(cdf_y(y, a) - cdf_y(y, b)));
    }
    CHECK(sup < 1e-4);

    CHECK_FALSE(build_mixture({{db_to_linear(6.0) / 2, db_to_linear(8.0), 5.0, 5.0}}).needs_wide());

    // Beyond what 50 digits resolve the coefficients are refused
    RateSet hopeless;
    for (int i = 0; i < 16; ++i) hopeless.rates.push_back(i < 8 ? 2.0 * (1 + 1e-7) : 2.0);
    CHECK_THROWS_AS(build_mixture(hopeless), DegenerateRates);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(xi_coefficients(shell({{2.0, 1}, {2.0, 1}})), DegenerateRates);
    CHECK_THROWS_AS(xi_coefficients(MixtureSpec{}), EmptyMixture);
    const auto s = build_mixture({{1.0}});
    CHECK_THROWS_AS(pdf_y(-1.0, s), InvalidArgument);
    CHECK_THROWS_AS(pdf_y(1.0, group_rates({{1.0, 2.0}})), InvalidArgument);
}

}  // TEST_SUITE

TEST_SUITE("mixture-mc") {

TEST_CASE("reference rate set against simulated weighted sums") {
    const RateSet r{{db_to_linear(6.0) / 2, db_to_linear(8.0), db_to_linear(10.0) / 2, db_to_linear(10.0) / 2}};
    const auto s = build_mixture(r);
    McOptions o;
    o.seed = 21;
    const auto d = simulate_weighted_exponential_sum(r, o);
    REQUIRE(d.size() == 1'000'000);
    CHECK(ks_statistic(d.samples, [&](double y) { return cdf_y(y, s); }) < 0.005);
}

}  // TEST_SUITE
