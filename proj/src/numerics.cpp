#include "convring/numerics.hpp"

#include <stdexcept>
#include <string>

namespace convring {

unsigned long QAdicDigits::value() const noexcept {
    unsigned long v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
    return v;
}

QAdicDigits q_adic_digits(unsigned long a, unsigned long q) {
    if (q < 2) throw std::invalid_argument("digit base must be at least 2, got " + std::to_string(q));
    QAdicDigits out;
    out.base = q;
    while (a != 0) {
        out.digits.push_back(a % q);
        a /= q;
    }
    return out;
}

mpz_class binomial_exact(unsigned long a, unsigned long b) {
    if (b > a) return 0;
    if (a - b < b) b = a - b;
    mpz_class res = 1;
    for (unsigned long i = 1; i <= b; ++i) {
        res *= a - b + i;
        mpz_divexact_ui(res.get_mpz_t(), res.get_mpz_t(), i);
    }
    return res;
}

namespace detail {

bool is_power_of(unsigned long q, unsigned long p) noexcept {
    if (p < 2 || q < p) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

namespace {

// C(a, b) mod p for 0 <= b <= a < p.
unsigned long binomial_mod_small(unsigned long a, unsigned long b, unsigned long p) {
    if (b > a - b) b = a - b;
    unsigned long num = 1, den = 1;
    for (unsigned long i = 1; i <= b; ++i) {
        num = num * ((a - b + i) % p) % p;
        den = den * (i % p) % p;
    }
    // den^(p-2) mod p
    unsigned long inv = 1, base = den, e = p - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return num * inv % p;
}

} // namespace

unsigned long binomial_mod_prime(unsigned long a, unsigned long b, unsigned long p) {
    unsigned long res = 1;
    while (a != 0 || b != 0) {
        unsigned long ad = a % p, bd = b % p;
        if (bd > ad) return 0;
        res = res * binomial_mod_small(ad, bd, p) % p;
        a /= p;
        b /= p;
    }
    return res;
}

} // namespace detail

unsigned long lucas_binomial_mod(unsigned long a, unsigned long b, const Characteristic& p,
                                 unsigned long q) {
    if (p.is_zero()) throw std::invalid_argument("digitwise binomial needs positive characteristic");
    if (!detail::is_power_of(q, p.value()))
        throw std::invalid_argument("base " + std::to_string(q) + " is not a positive power of " +
                                    std::to_string(p.value()));
    unsigned long res = 1;
    while (a != 0 || b != 0) {
        res = res * detail::binomial_mod_prime(a % q, b % q, p.value()) % p.value();
        if (res == 0) return 0;
        a /= q;
        b /= q;
    }
    return res;
}

bool lucas_zero_block(unsigned long m, unsigned long q, const Characteristic& p) {
    if (p.is_zero()) throw std::invalid_argument("zero-block test needs positive characteristic");
    if (!detail::is_power_of(q, p.value()))
        throw std::invalid_argument("base " + std::to_string(q) + " is not a positive power of " +
                                    std::to_string(p.value()));
    if (m > q)
        throw std::invalid_argument("block size " + std::to_string(m) + " exceeds " + std::to_string(q));
    for (unsigned long a = 0; m >= 2 && a <= m - 2; ++a)
        for (unsigned long b = 0; b <= a; ++b)
            if (lucas_binomial_mod(m + q - 2 - a, q - 1 - b, p, q) != 0) return false;
    return true;
}

} // namespace convring
