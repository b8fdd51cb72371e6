#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/group_law.hpp"
#include "convring/sparse_matrix.hpp"

namespace convring {

/// Jordan-type multiplicity vector: block size i >= 1 mapped to a positive count.
class Multiplicities {
public:
    Multiplicities() = default;
    explicit Multiplicities(std::map<unsigned long, unsigned long> counts);

    unsigned long at(unsigned long i) const noexcept;
    void add(unsigned long i, unsigned long count);
    const std::map<unsigned long, unsigned long>& counts() const noexcept { return counts_; }
    bool empty() const noexcept { return counts_.empty(); }

    mpz_class block_count() const;     // sum of lambda_i
    mpz_class total_dimension() const; // sum of i * lambda_i
    unsigned long max_index() const noexcept;

    friend bool operator==(const Multiplicities&, const Multiplicities&) = default;

private:
    std::map<unsigned long, unsigned long> counts_;
};

/// Ranks (r_0, ..., r_s) of successive powers of a nilpotent operator:
/// r_0 = dim, strictly decreasing with nonincreasing drops, r_s = 0.
struct RankProfile {
    std::vector<unsigned long> ranks;
    friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

/// Values (l(0) = 0, ..., l(T)) with l(i) = dim - rank(op^i), nondecreasing,
/// concave increments, stabilized at the total dimension.
struct HilbertProfile {
    std::vector<unsigned long> values;
    friend bool operator==(const HilbertProfile&, const HilbertProfile&) = default;
};

/// Exact ranks of op^1, op^2, ... until zero, by building the image chain
/// im(op^{i+1}) = op(im(op^i)) over a reduced basis. Rejects non-nilpotent
/// input (detected by a rank stall). Dispatches on the characteristic:
/// bit-packed elimination for p = 2, lazy-reduction word elimination for odd
/// primes, fraction-free integer elimination for p = 0.
RankProfile rank_profile(const SparseMatrix& op);

/// Rank profile of the multiplication-by-F operator of `law` on
/// k[x,y]/(x^m, y^n). Additive laws take a graded fast path: the operator is
/// homogeneous of degree 1, so each power splits into small binomial blocks
/// between graded pieces and ranks add up blockwise. Other laws go through
/// the generic operator chain.
RankProfile law_rank_profile(unsigned long m, unsigned long n, const Characteristic& p,
                             const GroupLaw& law);

/// lambda_i = r_{i-1} - 2 r_i + r_{i+1}; validates the profile shape.
Multiplicities multiplicities_from_ranks(const RankProfile& profile);

/// l(i) = m n - rank(op^i) for the law's operator.
HilbertProfile hilbert_profile(unsigned long m, unsigned long n, const Characteristic& p,
                               const GroupLaw& law);

/// lambda_i = 2 l(i) - l(i+1) - l(i-1), reading l as constant past its end.
Multiplicities multiplicities_from_hilbert(const HilbertProfile& profile);

/// Jordan type of the product f_m * f_n in characteristic p. Uses the ladder
/// closed form when p = 0 or p > m + n - 2, elimination otherwise.
Multiplicities product_multiplicities(unsigned long m, unsigned long n, const Characteristic& p);

/// Same product computed through the supplied law's operator; the law must
/// carry the same characteristic.
Multiplicities product_multiplicities(unsigned long m, unsigned long n, const Characteristic& p,
                                      const GroupLaw& law);

/// Ladder rule: multiplicity one at each of m+n-1, m+n-3, ..., |m-n|+1.
Multiplicities char_zero_product(unsigned long m, unsigned long n);

/// Smallest s >= 1 with C(s, j) == 0 mod p for every j in
/// [max(0, s-n+1), min(s, m-1)]; equals m+n-1 when p = 0 (empty range there).
unsigned long max_block_index(unsigned long m, unsigned long n, const Characteristic& p);

/// Jordan type of (J_m + 1) (x) (J_n + 1) - 1 over F_p, p > 0, via the
/// Kronecker-product operator and its rank profile.
Multiplicities unipotent_tensor_multiplicities(unsigned long m, unsigned long n,
                                               const Characteristic& p);

/// Empty string when `mult` satisfies the product identities for f_m f_n:
/// block count min(m, n), total dimension m n, support below m + n.
/// Otherwise a one-line diagnostic.
std::string check_product_identities(const Multiplicities& mult, unsigned long m, unsigned long n);

namespace detail {

/// Fraction-free (Bareiss) integer elimination; returns the rank. Consumes
/// its argument. The characteristic-0 block path certifies full rank modulo
/// a large prime first and only falls back to this; exposed for tests.
unsigned long bareiss_rank(std::vector<std::vector<mpz_class>> m);

} // namespace detail

} // namespace convring
