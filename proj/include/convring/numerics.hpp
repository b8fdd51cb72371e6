#pragma once

#include <gmpxx.h>

#include <vector>

#include "convring/characteristic.hpp"

namespace convring {

/// Little-endian digit expansion: value = sum_i digits[i] * base^i, each digit
/// in [0, base), no trailing zero digit. The zero value has no digits.
struct QAdicDigits {
    unsigned long base = 2;
    std::vector<unsigned long> digits;

    unsigned long value() const noexcept;
    friend bool operator==(const QAdicDigits&, const QAdicDigits&) = default;
};

/// Digit expansion of a in base q; rejects q < 2.
QAdicDigits q_adic_digits(unsigned long a, unsigned long q);

/// Exact C(a, b), zero when b > a.
mpz_class binomial_exact(unsigned long a, unsigned long b);

/// C(a, b) mod p computed digit by digit in base q = p^k, k >= 1.
unsigned long lucas_binomial_mod(unsigned long a, unsigned long b, const Characteristic& p,
                                 unsigned long q);

/// True iff C(m+q-2-a, q-1-b) == 0 mod p for all 0 <= b <= a <= m-2.
/// Requires q = p^k and m <= q; vacuously true for m <= 2.
bool lucas_zero_block(unsigned long m, unsigned long q, const Characteristic& p);

namespace detail {

/// q is p^k for some k >= 1.
bool is_power_of(unsigned long q, unsigned long p) noexcept;

/// C(a, b) mod p for prime p, arbitrary a, b (base-p digit product).
unsigned long binomial_mod_prime(unsigned long a, unsigned long b, unsigned long p);

} // namespace detail

} // namespace convring
