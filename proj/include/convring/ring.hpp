#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/kernel.hpp"

namespace convring {

/// Element of the convolution ring: a finite integer combination of the
/// basis classes f_n, n >= 1. The empty combination is the zero element.
class RingElement {
public:
    RingElement() = default;

    const std::map<unsigned long, mpz_class>& coefficients() const noexcept { return coeffs_; }
    mpz_class coefficient(unsigned long n) const;
    /// Adds c * f_n, pruning a vanishing total; rejects n = 0.
    void add_term(unsigned long n, const mpz_class& c);
    bool is_zero() const noexcept { return coeffs_.empty(); }
    unsigned long max_index() const noexcept;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    friend RingElement operator*(const mpz_class& c, const RingElement& x);
    friend bool operator==(const RingElement&, const RingElement&) = default;

private:
    std::map<unsigned long, mpz_class> coeffs_;
};

/// f_n; rejects n = 0 (the zero element is RingElement()).
RingElement basis(unsigned long n);

enum class CacheMissPolicy { compute_on_miss, error_on_miss };

/// Cache of structure constants: cell (m, n) holds the Jordan type of
/// f_m f_n, stored once per unordered pair. max_rank declares the range
/// serialized; lookups beyond it follow the miss policy.
class ProductTable {
public:
    ProductTable(Characteristic p, unsigned long max_rank,
                 CacheMissPolicy policy = CacheMissPolicy::compute_on_miss);

    const Characteristic& characteristic() const noexcept { return p_; }
    unsigned long max_rank() const noexcept { return max_rank_; }
    CacheMissPolicy policy() const noexcept { return policy_; }
    void set_policy(CacheMissPolicy policy) noexcept { policy_ = policy; }

    /// Multiplicities of f_m f_n; order-normalized. On a miss either computes
    /// and caches, or throws, per the policy.
    const Multiplicities& cell(unsigned long m, unsigned long n);
    bool has_cell(unsigned long m, unsigned long n) const noexcept;

    /// Computes every cell with m <= n <= max_rank.
    void populate();

    /// Validates the product identities before storing; rejects bad cells.
    void insert_cell(unsigned long m, unsigned long n, Multiplicities mult);

    const std::map<std::pair<unsigned long, unsigned long>, Multiplicities>& cells() const noexcept {
        return cells_;
    }

private:
    Characteristic p_;
    unsigned long max_rank_;
    CacheMissPolicy policy_;
    std::map<std::pair<unsigned long, unsigned long>, Multiplicities> cells_;
};

/// Fully populated table for ranks up to max_rank.
ProductTable product_table(const Characteristic& p, unsigned long max_rank);

/// Bilinear extension of the structure constants.
RingElement ring_mul(const RingElement& x, const RingElement& y, ProductTable& table);

/// Coordinates of x in Z[X] under the characteristic-0 isomorphism sending
/// f_2 to X: returns the coefficient vector (ascending degree) of the integer
/// polynomial mapping to x. Rejects positive characteristic.
std::vector<mpz_class> char_zero_polynomial_coordinates(const RingElement& x,
                                                        const Characteristic& p);

/// Evaluates an integer polynomial (ascending coefficients) at f_2 in the
/// characteristic-0 ring; inverse of the coordinate map.
RingElement evaluate_polynomial_at_f2(const std::vector<mpz_class>& poly, ProductTable& table);

/// Canonical JSON document for all cells with m <= n <= max_rank; byte-stable
/// across runs. Computes missing declared cells first (policy permitting).
std::string table_to_json(ProductTable& table);

/// CSV rows m,n,i,lambda in the same canonical order.
std::string table_to_csv(ProductTable& table);

/// Parses and validates a table document; every cell is re-checked against
/// the product identities. Throws on malformed or inconsistent input.
ProductTable table_from_json(const std::string& text);

/// Renders "f3*f3 = f1 + 2 f4" style lines.
std::string format_product(unsigned long m, unsigned long n, const Multiplicities& mult);
std::string format_element(const RingElement& x);

} // namespace convring
