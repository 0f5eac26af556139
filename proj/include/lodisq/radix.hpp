#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lodisq {

// Digit expansion of N in base b^d, little-endian: N = sum_j digits[j] * (b^d)^j.
// The top digit is nonzero whenever N > 0; N = 0 has an empty digit list.
struct RadixExpansion {
    int base_b = 2;
    int dim_d = 1;
    std::uint64_t value_n = 0;
    std::vector<std::uint64_t> digits;  // each in [0, b^d)

    // n = floor(log N / (d log b)); -1 for N = 0.
    int top_index() const { return static_cast<int>(digits.size()) - 1; }
};

// b^d as the working radix, rejecting invalid (b, d) and 64-bit overflow.
inline std::uint64_t radix_of(int b, int d) {
    if (b < 2) throw std::invalid_argument("radix_of: base b must be >= 2");
    if (d < 1) throw std::invalid_argument("radix_of: dimension d must be >= 1");
    unsigned __int128 r = 1;
    for (int i = 0; i < d; ++i) {
        r *= static_cast<unsigned>(b);
        if (r > UINT64_MAX) throw std::overflow_error("radix_of: b^d exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

// b^e in 64 bits, throwing on overflow.
inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r *= base;
        if (r > UINT64_MAX) throw std::overflow_error("pow_u64: overflow");
    }
    return static_cast<std::uint64_t>(r);
}

inline RadixExpansion expand(std::uint64_t n, int b, int d) {
    const std::uint64_t radix = radix_of(b, d);
    RadixExpansion e;
    e.base_b = b;
    e.dim_d = d;
    e.value_n = n;
    while (n > 0) {
        e.digits.push_back(n % radix);
        n /= radix;
    }
    return e;
}

inline std::uint64_t digit_sum(const RadixExpansion& e) {
    std::uint64_t s = 0;
    for (std::uint64_t eps : e.digits) s += eps;
    return s;
}

// M_b(N) = min{ sum eps_j, b(n+1) - n + 1 - sum eps_j }; requires d = 1, N > 0.
inline std::uint64_t m_b(const RadixExpansion& e) {
    if (e.dim_d != 1) throw std::invalid_argument("m_b: requires d = 1");
    if (e.value_n == 0) throw std::invalid_argument("m_b: requires N > 0");
    const std::uint64_t n = static_cast<std::uint64_t>(e.top_index());
    const std::uint64_t s = digit_sum(e);
    // s <= (b-1)(n+1), so the alternative term is always >= 2
    const std::uint64_t alt = static_cast<std::uint64_t>(e.base_b) * (n + 1) - n + 1 - s;
    return s < alt ? s : alt;
}

inline std::uint64_t m_b_of(std::uint64_t n, int b) { return m_b(expand(n, b, 1)); }

// N' = 1 + sum_j (b^d - 1 - eps_j) (b^d)^j, so that N + N' = (b^d)^(n+1).
inline std::uint64_t complement(const RadixExpansion& e) {
    if (e.value_n == 0) throw std::invalid_argument("complement: requires N > 0");
    const unsigned __int128 radix = radix_of(e.base_b, e.dim_d);
    unsigned __int128 acc = 1;
    unsigned __int128 power = 1;
    for (std::uint64_t eps : e.digits) {
        acc += (radix - 1 - eps) * power;
        power *= radix;
    }
    if (acc > UINT64_MAX) throw std::overflow_error("complement: N' exceeds 64 bits");
    return static_cast<std::uint64_t>(acc);
}

}  // namespace lodisq
