#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "lodisq/parallel.hpp"
#include "lodisq/radix.hpp"

namespace lodisq {

// ---------------------------------------------------------------------------
// Counting |B_b(delta, N)| and its digit-sum surrogate
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kCountExactCap = std::uint64_t{1} << 14;

// #{ m < N : D(E_{Z_m}) <= delta * log m }, natural log. m = 1 qualifies
// iff D <= 0 (log 1 = 0); for sup-type D over one point D > 0, so m = 1 drops.
inline std::uint64_t count_exact(const std::function<double(std::uint64_t)>& D_of_prefix, double delta,
                                 std::uint64_t N) {
    if (N > kCountExactCap)
        throw std::invalid_argument("count_exact: N exceeds the tractability cap 2^14");
    std::uint64_t count = 0;
    for (std::uint64_t m = 1; m < N; ++m)
        if (D_of_prefix(m) <= delta * std::log(static_cast<double>(m))) ++count;
    return count;
}

namespace detail {

// digit sum of m in base B, stepping incrementally through a range
struct DigitSumWalker {
    std::uint64_t B;
    std::uint64_t sum = 0;
    std::vector<std::uint64_t> digits;

    DigitSumWalker(std::uint64_t B, std::uint64_t start) : B(B) {
        while (start > 0) {
            digits.push_back(start % B);
            sum += start % B;
            start /= B;
        }
    }

    void advance() {  // to m + 1
        std::size_t j = 0;
        for (;;) {
            if (j == digits.size()) {
                digits.push_back(1);
                ++sum;
                return;
            }
            if (digits[j] + 1 < B) {
                ++digits[j];
                ++sum;
                return;
            }
            sum -= B - 1;
            digits[j] = 0;
            ++j;
        }
    }
};

}  // namespace detail

// #{ m < N : C * digitsum_{b^d}(m) <= delta * log m }. A certified lower
// bound of |B_b(delta, N)| whenever D satisfies the digit-sum bound with
// the same constant C.
inline std::uint64_t count_surrogate(double C, int b, int d, double delta, std::uint64_t N,
                                     unsigned threads = 1) {
    const std::uint64_t B = radix_of(b, d);
    if (N < 2) return 0;
    std::atomic<std::uint64_t> total{0};
    parallel_chunks(static_cast<std::size_t>(N - 1), threads, [&](std::size_t lo, std::size_t hi) {
        const std::uint64_t first = 1 + lo;
        detail::DigitSumWalker walker(B, first);
        std::uint64_t local = 0;
        for (std::uint64_t m = first; m < 1 + hi; ++m) {
            if (C * static_cast<double>(walker.sum) <= delta * std::log(static_cast<double>(m))) ++local;
            walker.advance();
        }
        total.fetch_add(local, std::memory_order_relaxed);
    });
    return total.load();
}

// ---------------------------------------------------------------------------
// Entropy exponent
// ---------------------------------------------------------------------------

// h(alpha, b, d) = -log(alpha^alpha (1-alpha)^(1-alpha)) / log(b^d),
// defined for 0 < alpha <= 1/2.
inline double binary_entropy_exponent(double alpha, int b, int d) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::domain_error("binary_entropy_exponent: alpha must be in (0, 1/2]");
    radix_of(b, d);
    const double h = -(alpha * std::log(alpha) + (1.0 - alpha) * std::log(1.0 - alpha));
    return h / (static_cast<double>(d) * std::log(static_cast<double>(b)));
}

// The theorem's exponent with alpha = (1 - tau) / beta; requires beta > 2,
// 0 < tau < 1 and alpha < 1/2.
inline double entropy_exponent(int b, int d, double beta, double tau) {
    if (!(beta > 2.0)) throw std::domain_error("entropy_exponent: beta must be > 2");
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("entropy_exponent: tau must be in (0,1)");
    const double alpha = (1.0 - tau) / beta;
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("entropy_exponent: alpha must be in (0, 1/2)");
    return binary_entropy_exponent(alpha, b, d);
}

// ---------------------------------------------------------------------------
// Binomial tails
// ---------------------------------------------------------------------------

struct BinomialTail {
    double sum = 0.0;      // sum_{j <= alpha n} C(n, j), +inf when it overflows a double
    double log_sum = 0.0;  // natural log of the exact sum
    double ratio = 0.0;    // sum / (2^{n H(alpha)} / sqrt(n))
};

inline double binary_entropy(double alpha) {
    return -(alpha * std::log2(alpha) + (1.0 - alpha) * std::log2(1.0 - alpha));
}

// Exact big-integer tail sum and its ratio to 2^{n H(alpha)} / sqrt(n).
inline BinomialTail binomial_tail(std::uint64_t n, double alpha) {
    namespace mp = boost::multiprecision;
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("binomial_tail: alpha must be in (0, 1/2)");
    if (alpha * static_cast<double>(n) < 1.0) throw std::domain_error("binomial_tail: requires alpha*n >= 1");
    const std::uint64_t k = static_cast<std::uint64_t>(
        std::floor(alpha * static_cast<double>(n) + 1e-9));
    mp::cpp_int term = 1, sum = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
        term *= n - j;
        term /= j + 1;
        sum += term;
    }
    using big_float = mp::cpp_bin_float_50;
    const big_float fsum(sum);
    BinomialTail out;
    out.sum = fsum.convert_to<double>();
    out.log_sum = log(fsum).convert_to<double>();
    const double log2_target = static_cast<double>(n) * binary_entropy(alpha) -
                               0.5 * std::log2(static_cast<double>(n));
    out.ratio = std::exp(out.log_sum - log2_target * std::log(2.0));
    return out;
}

// ---------------------------------------------------------------------------
// Lower-bound verification
// ---------------------------------------------------------------------------

struct LowerBoundPoint {
    std::uint64_t N = 0;
    std::uint64_t count = 0;
    double target_shape = 0.0;  // N^h / sqrt(log N)
    double ratio = 0.0;         // count / target_shape
    bool regime_ok = false;     // log N > beta log(b^d) / tau
};

struct LowerBoundReport {
    double C = 1.0;
    int b = 2, d = 1;
    double beta = 0.0, tau = 0.0;
    double delta = 0.0;   // C / (beta log(b^d))
    double h = 0.0;       // predicted exponent
    double kappa = 0.0;   // min ratio over the grid
    double slope = 0.0;   // least-squares slope of log count vs log N
    bool ok = false;      // kappa > 0
    std::vector<LowerBoundPoint> points;
};

// Fits kappa with count_surrogate(N) >= kappa * N^h / sqrt(log N) across the
// grid. Grid points below the theorem's regime threshold are flagged, not
// rejected.
inline LowerBoundReport verify_lower_bound(double C, int b, int d, double beta, double tau,
                                           std::span<const std::uint64_t> n_grid,
                                           unsigned threads = 1) {
    if (n_grid.empty()) throw std::invalid_argument("verify_lower_bound: empty grid");
    LowerBoundReport rep;
    rep.C = C;
    rep.b = b;
    rep.d = d;
    rep.beta = beta;
    rep.tau = tau;
    rep.h = entropy_exponent(b, d, beta, tau);
    const double logBd = static_cast<double>(d) * std::log(static_cast<double>(b));
    rep.delta = C / (beta * logBd);
    const double regime_threshold = beta * logBd / tau;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    rep.kappa = std::numeric_limits<double>::infinity();
    for (std::uint64_t N : n_grid) {
        LowerBoundPoint pt;
        pt.N = N;
        pt.count = count_surrogate(C, b, d, rep.delta, N, threads);
        const double logN = std::log(static_cast<double>(N));
        pt.target_shape = std::pow(static_cast<double>(N), rep.h) / std::sqrt(logN);
        pt.ratio = static_cast<double>(pt.count) / pt.target_shape;
        pt.regime_ok = logN > regime_threshold;
        rep.kappa = std::min(rep.kappa, pt.ratio);
        if (pt.count > 0) {
            sx += logN;
            sy += std::log(static_cast<double>(pt.count));
            sxx += logN * logN;
            sxy += logN * std::log(static_cast<double>(pt.count));
            ++used;
        }
        rep.points.push_back(pt);
    }
    rep.ok = rep.kappa > 0.0;
    if (used >= 2) {
        const double nn = static_cast<double>(used);
        rep.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    }
    return rep;
}

}  // namespace lodisq
