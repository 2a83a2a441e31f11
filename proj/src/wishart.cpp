#include "rankint/wishart.hpp"

#include <algorithm>
#include <cmath>

#include <gmpxx.h>

#include "rankint/errors.hpp"
#include "rankint/numerics.hpp"

namespace rankint {

namespace {

// Bivariate integer polynomial in x and z = e^{-x}: coef[k][l] multiplies x^l z^k.
struct ExpPoly {
    std::vector<std::vector<mpz_class>> coef;

    ExpPoly(int max_k, int max_l) : coef(max_k + 1, std::vector<mpz_class>(max_l + 1)) {}

    int max_k() const { return static_cast<int>(coef.size()) - 1; }
    int max_l() const { return static_cast<int>(coef.front().size()) - 1; }
};

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

// (n-1)!·P(n, x) = (n-1)! - z·Σ_{m<n} (n-1)!/m! x^m
ExpPoly lower_gamma(int n, int max_k, int max_l) {
    ExpPoly e(max_k, max_l);
    const mpz_class top = factorial(n - 1);
    e.coef[0][0] = top;
    for (int m = 0; m < n; ++m) e.coef[1][m] = -(top / factorial(m));
    return e;
}

// acc += sign · a · b, where b has z-degree ≤ 1 and few x terms.
void fused_multiply_add(ExpPoly& acc, const ExpPoly& a, const ExpPoly& b, int sign) {
    for (int ka = 0; ka <= a.max_k(); ++ka) {
        for (int la = 0; la <= a.max_l(); ++la) {
            const mpz_class& ca = a.coef[ka][la];
            if (ca == 0) continue;
            for (int kb = 0; kb <= b.max_k() && ka + kb <= acc.max_k(); ++kb) {
                for (int lb = 0; lb <= b.max_l() && la + lb <= acc.max_l(); ++lb) {
                    const mpz_class& cb = b.coef[kb][lb];
                    if (cb == 0) continue;
                    if (sign > 0) {
                        acc.coef[ka + kb][la + lb] += ca * cb;
                    } else {
                        acc.coef[ka + kb][la + lb] -= ca * cb;
                    }
                }
            }
        }
    }
}

std::string to_text(const mpq_class& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace

double EigenWeightTable::weight(int k, int l) const {
    for (const auto& w : weights) {
        if (w.k == k && w.l == l) return w.value;
    }
    return 0.0;
}

double EigenWeightTable::mean() const {
    CompensatedSum s;
    for (const auto& w : weights) s += w.value * (w.l + 1) / w.k;
    return s.value();
}

EigenWeightTable compute_weights(int n_r, int n_t, int cap) {
    if (n_r < 1 || n_t < 1) throw InvalidArgument("compute_weights: dimensions must be >= 1");
    if (n_r > cap || n_t > cap)
        throw UnsupportedDimension("compute_weights: dimensions above cap " + std::to_string(cap));

    const int p = std::min(n_r, n_t);
    const int q = std::max(n_r, n_t);
    // Entry (i, j) has order q-p+i+j+1 (0-based), so x-degree ≤ q+p-2 per entry.
    const int max_l = p * (q + p - 2) + 1;
    const int max_k = p;

    // Row-by-row Laplace expansion with memoized minors over column subsets.
    const unsigned full = (1u << p) - 1u;
    std::vector<ExpPoly> minors(full + 1, ExpPoly(0, 0));
    minors[0] = ExpPoly(max_k, max_l);
    minors[0].coef[0][0] = 1;
    std::vector<std::vector<ExpPoly>> entries;
    for (int i = 0; i < p; ++i) {
        entries.emplace_back();
        for (int j = 0; j < p; ++j) entries[i].push_back(lower_gamma(q - p + i + j + 1, 1, q + p - 2));
    }
    for (unsigned s = 1; s <= full; ++s) {
        const int row = __builtin_popcount(s) - 1;
        ExpPoly acc(max_k, max_l);
        int pos = 0;
        for (int j = 0; j < p; ++j) {
            if (!(s & (1u << j))) continue;
            const int sign = ((row + pos) % 2 == 0) ? 1 : -1;
            fused_multiply_add(acc, minors[s & ~(1u << j)], entries[row][j], sign);
            ++pos;
        }
        minors[s] = std::move(acc);
    }
    const ExpPoly& det = minors[full];

    mpz_class norm = 1;
    for (int s = 1; s <= p; ++s) norm *= factorial(p - s) * factorial(q - s);

    // CDF = det / norm; the density picks up (l+1)a_{k,l+1} - k a_{k,l}.
    EigenWeightTable table;
    table.p = p;
    table.q = q;
    mpq_class total = 0;
    for (int k = 1; k <= max_k; ++k) {
        for (int l = 0; l <= max_l; ++l) {
            mpq_class a_next = (l + 1 <= max_l) ? mpq_class(det.coef[k][l + 1], norm) : mpq_class(0);
            mpq_class a_here(det.coef[k][l], norm);
            a_next.canonicalize();
            a_here.canonicalize();
            mpq_class c = mpq_class(l + 1) * a_next - mpq_class(k) * a_here;
            if (c == 0) continue;
            mpz_class kpow;
            mpz_pow_ui(kpow.get_mpz_t(), mpz_class(k).get_mpz_t(), static_cast<unsigned long>(l + 1));
            mpq_class psi = c * mpq_class(factorial(l), kpow);
            psi.canonicalize();
            total += psi;
            table.weights.push_back({k, l, psi.get_d(), to_text(psi)});
        }
    }
    table.exact_sum_is_one = (total == 1) && (det.coef[0][0] == norm);
    return table;
}

double pdf_lambda_max(double x, const EigenWeightTable& table, double scale) {
    if (!(x >= 0.0)) throw InvalidArgument("pdf_lambda_max: x must be >= 0");
    if (!(scale > 0.0)) throw InvalidArgument("pdf_lambda_max: scale must be > 0");
    CompensatedSum s;
    const double log_x = std::log(x);
    for (const auto& w : table.weights) {
        const double rate = w.k / scale;
        if (w.l > 0 && x == 0.0) continue;
        const double power_term = (w.l == 0) ? 0.0 : w.l * log_x;
        s += w.value * std::exp(power_term + (w.l + 1) * std::log(rate) - log_factorial(w.l) - rate * x);
    }
    return std::max(0.0, s.value());
}

double cdf_lambda_max(double x, const EigenWeightTable& table, double scale) {
    if (!(x >= 0.0)) throw InvalidArgument("cdf_lambda_max: x must be >= 0");
    if (!(scale > 0.0)) throw InvalidArgument("cdf_lambda_max: scale must be > 0");
    CompensatedSum s;
    for (const auto& w : table.weights) s += w.value * gamma_p(w.l + 1, w.k * x / scale);
    return std::clamp(s.value(), 0.0, 1.0);
}

}  // namespace rankint
