#pragma once

#include <cstdint>

namespace polarnet {

// Exact one-sided upper tail P(X >= k) for X ~ Binomial(n, p), p in (0,1).
// Summation in long double anchored at a log-gamma term, so the result keeps
// <= 1e-12 relative error for n up to 1e6 even when the tail is ~1e-300.
double binomial_upper_tail(std::int64_t n, std::int64_t k, double p);

// Exact one-sided upper tail P(X >= k) for X ~ Hypergeometric(N, K, n):
// k successes drawn in n draws from a population of N containing K successes.
double hypergeometric_upper_tail(std::int64_t N, std::int64_t K, std::int64_t n,
                                 std::int64_t k);

// Tightest of the four reporting thresholds above the p-value:
// "<0.0001", "<0.001", "<0.01", "<0.05", or "n.s.".
const char* significance_star(double p_value);

} // namespace polarnet
