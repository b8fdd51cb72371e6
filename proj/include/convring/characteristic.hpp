#pragma once

#include <stdexcept>
#include <string>

namespace convring {

/// Ground characteristic: 0 or a prime, checked by trial division on construction.
class Characteristic {
public:
    explicit Characteristic(unsigned long p) : p_(p) {
        if (p_ != 0 && !is_prime(p_))
            throw std::invalid_argument("characteristic must be 0 or a prime, got " +
                                        std::to_string(p_));
    }

    unsigned long value() const noexcept { return p_; }
    bool is_zero() const noexcept { return p_ == 0; }

    /// True when p > 0 and p divides n.
    bool divides(unsigned long n) const noexcept { return p_ != 0 && n % p_ == 0; }

    friend bool operator==(const Characteristic&, const Characteristic&) noexcept = default;

    static bool is_prime(unsigned long n) noexcept {
        if (n < 2) return false;
        for (unsigned long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    unsigned long p_;
};

} // namespace convring
