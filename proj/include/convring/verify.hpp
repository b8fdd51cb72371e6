#pragma once

#include <string>
#include <vector>

#include "convring/characteristic.hpp"

namespace convring {

/// One verification suite's outcome: how many individual checks ran and which
/// failed. Failure messages are kept in discovery order; storage is capped,
/// the count is not.
struct SuiteResult {
    std::string suite;
    unsigned long checks = 0;
    unsigned long failure_count = 0;
    std::vector<std::string> failures;

    bool passed() const noexcept { return failure_count == 0; }
    void fail(std::string message);
};

/// Product identities for every 1 <= m <= n <= max_rank over each listed
/// characteristic: block count min(m,n), total dimension mn, support below
/// m+n, symmetry under swapping (m,n), and largest support index equal to
/// max_block_index.
SuiteResult verify_kernel_identities(const std::vector<Characteristic>& chars,
                                     unsigned long max_rank);

/// Rank-profile extraction and Hilbert-profile extraction agree on the full
/// ordered (m,n) grid, and the ladder closed form matches whenever p = 0 or
/// p > m+n-2. Every profile here comes from actual elimination.
SuiteResult verify_oracle_agreement(const std::vector<Characteristic>& chars,
                                    unsigned long max_rank);

/// The additive law, the multiplicative law, and the unipotent Kronecker
/// route produce identical multiplicities (the Kronecker route needs p > 0
/// and is skipped at p = 0).
SuiteResult verify_law_independence(const std::vector<Characteristic>& chars,
                                    unsigned long max_rank);

/// f_m f_q = m f_q for every 1 <= m <= q, q running over the powers of each
/// listed p up to 32.
SuiteResult verify_prime_power_products(const std::vector<Characteristic>& chars);

/// f_2 f_n = f_{n-1} + f_{n+1} when p does not divide n, and 2 f_n when it
/// does, for 1 <= n <= max_n (f_0 dropped at n = 1).
SuiteResult verify_f2_rule(const std::vector<Characteristic>& chars, unsigned long max_n);

/// lucas_binomial_mod against an exact Pascal row for all a, b <= max_ab over
/// the pinned (p, q) pairs (2,2), (2,4), (3,3), (3,9), (5,5); the row itself
/// is spot-checked against the multiplicative exact binomial.
SuiteResult verify_lucas_grid(unsigned long max_ab);

/// lucas_zero_block over its whole domain 0 <= m <= q, q a power of p up to
/// max_q, p in {2, 3, 5}.
SuiteResult verify_lucas_domain(unsigned long max_q);

/// Support-bound implication: for each (m, n, r), whenever p divides every
/// C(m+n-2-a, m-1-b) with 0 <= b <= a <= m+n-2-r, the product f_m f_n has no
/// block of size above r. Runs the full ordered grid m, n <= max_rank.
SuiteResult verify_congruence_constraint(const std::vector<Characteristic>& chars,
                                         unsigned long max_rank);

/// Ring laws: associativity on all ordered basis triples with indices up to
/// max_index, commutativity on basis pairs, the zero-divisor witness
/// (f_2 - 2 f_1) f_p = 0 for p > 0, and at p = 0 the closed-form table plus
/// the f_2-coordinate round trip.
SuiteResult verify_ring_laws(const std::vector<Characteristic>& chars,
                             unsigned long max_index);

/// Subring suite for each p > 0 and 0 <= nu <= nu_max: Smith form of the
/// embedding matrix, membership round trips and rejections, conductor
/// maximality, fiber ring collapse, rational idempotents, square leading
/// terms on random nonzero elements, the almost-constant embedding
/// homomorphism, generator products against the linear-algebra kernel, and
/// localization identities.
SuiteResult verify_structure(const std::vector<Characteristic>& chars, unsigned long nu_max,
                             unsigned long membership_samples, unsigned long witness_samples);

} // namespace convring
