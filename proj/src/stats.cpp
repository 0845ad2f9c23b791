#include "polarnet/stats.hpp"
#include "polarnet/errors.hpp"

#include <cmath>
#include <string>

namespace polarnet {

namespace {

// log C(n,k) + k log p + (n-k) log q, i.e. log P(X = k).
long double log_binomial_pmf(std::int64_t n, std::int64_t k, long double p) {
    const long double lp = std::log(p);
    const long double lq = std::log1p(-p);
    return std::lgamma(static_cast<long double>(n + 1)) -
           std::lgamma(static_cast<long double>(k + 1)) -
           std::lgamma(static_cast<long double>(n - k + 1)) +
           static_cast<long double>(k) * lp + static_cast<long double>(n - k) * lq;
}

// Sum of P(X = j) for j = k..n. Terms are generated from the anchor at k via
// the exact ratio P(j+1)/P(j) = (n-j)/(j+1) * p/q, which stays accurate where
// repeated lgamma evaluation would not. Caller guarantees k is at or above
// the mean, so the terms only shrink.
long double binomial_tail_from_anchor(std::int64_t n, std::int64_t k, long double p) {
    const long double anchor = std::exp(log_binomial_pmf(n, k, p));
    if (anchor == 0.0L) return 0.0L;
    const long double odds = p / (1.0L - p);
    long double term = 1.0L;  // current P(X=j) / P(X=k)
    long double sum = 1.0L;
    for (std::int64_t j = k; j < n; ++j) {
        term *= static_cast<long double>(n - j) / static_cast<long double>(j + 1) * odds;
        sum += term;
        if (term < sum * 1e-25L) break;
    }
    return anchor * sum;
}

// Sum of P(X = j) for j = 0..k, by descending ratio from the anchor at k.
// Caller guarantees k is at or below the mean.
long double binomial_head_from_anchor(std::int64_t n, std::int64_t k, long double p) {
    const long double anchor = std::exp(log_binomial_pmf(n, k, p));
    if (anchor == 0.0L) return 0.0L;
    const long double inv_odds = (1.0L - p) / p;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (std::int64_t j = k; j > 0; --j) {
        term *= static_cast<long double>(j) / static_cast<long double>(n - j + 1) * inv_odds;
        sum += term;
        if (term < sum * 1e-25L) break;
    }
    return anchor * sum;
}

} // namespace

double binomial_upper_tail(std::int64_t n, std::int64_t k, double p) {
    if (n < 0) throw InputError("binomial trial count must be >= 0");
    if (!(p > 0.0 && p < 1.0))
        throw InputError("binomial null probability must lie strictly between 0 and 1");
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    const auto lp = static_cast<long double>(p);
    // Above the mean the tail is summed directly (small, decreasing terms);
    // at or below it P(X >= k) is large, so the exact complement over the
    // short head costs no relative precision.
    if (static_cast<long double>(k) > static_cast<long double>(n) * lp)
        return static_cast<double>(binomial_tail_from_anchor(n, k, lp));
    const long double head = binomial_head_from_anchor(n, k - 1, lp);
    return static_cast<double>(1.0L - head);
}

namespace {

long double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<long double>(n + 1)) -
           std::lgamma(static_cast<long double>(k + 1)) -
           std::lgamma(static_cast<long double>(n - k + 1));
}

// log P(X = k) for X ~ Hypergeometric(N, K, n).
long double log_hypergeom_pmf(std::int64_t N, std::int64_t K, std::int64_t n,
                              std::int64_t k) {
    return log_choose(K, k) + log_choose(N - K, n - k) - log_choose(N, n);
}

// Ratio P(X = k+1) / P(X = k).
long double hypergeom_step(std::int64_t N, std::int64_t K, std::int64_t n,
                           std::int64_t k) {
    return static_cast<long double>(K - k) * static_cast<long double>(n - k) /
           (static_cast<long double>(k + 1) *
            static_cast<long double>(N - K - n + k + 1));
}

} // namespace

double hypergeometric_upper_tail(std::int64_t N, std::int64_t K, std::int64_t n,
                                 std::int64_t k) {
    if (N <= 0) throw InputError("hypergeometric population must be non-empty");
    if (K < 0 || K > N || n < 0 || n > N)
        throw InputError("hypergeometric parameters out of range");
    const std::int64_t lo = std::max<std::int64_t>(0, n + K - N);
    const std::int64_t hi = std::min(K, n);
    if (k <= lo) return 1.0;
    if (k > hi) return 0.0;

    const long double mean = static_cast<long double>(n) * static_cast<long double>(K) /
                             static_cast<long double>(N);
    if (static_cast<long double>(k) > mean) {
        const long double anchor = std::exp(log_hypergeom_pmf(N, K, n, k));
        long double term = 1.0L, sum = 1.0L;
        for (std::int64_t j = k; j < hi; ++j) {
            term *= hypergeom_step(N, K, n, j);
            sum += term;
            if (term < sum * 1e-25L) break;
        }
        return static_cast<double>(anchor * sum);
    }
    // Complement over the head below k; see binomial_upper_tail for why this
    // split keeps relative error in check.
    const long double anchor = std::exp(log_hypergeom_pmf(N, K, n, k - 1));
    long double term = 1.0L, sum = 1.0L;
    for (std::int64_t j = k - 1; j > lo; --j) {
        term /= hypergeom_step(N, K, n, j - 1);
        sum += term;
        if (term < sum * 1e-25L) break;
    }
    return static_cast<double>(1.0L - anchor * sum);
}

const char* significance_star(double p_value) {
    if (p_value < 0.0001) return "<0.0001";
    if (p_value < 0.001) return "<0.001";
    if (p_value < 0.01) return "<0.01";
    if (p_value < 0.05) return "<0.05";
    return "n.s.";
}

} // namespace polarnet
