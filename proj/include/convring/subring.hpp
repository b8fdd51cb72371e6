#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "convring/characteristic.hpp"

namespace convring {

/// Element sum_{j=0}^{nu} c_j f_{p^j} of the subring generated by the
/// prime-power classes; coeffs[j] multiplies f_{p^j}.
struct SubringElement {
    Characteristic p{2};
    unsigned long nu = 0;
    std::vector<mpz_class> coeffs;

    friend bool operator==(const SubringElement&, const SubringElement&) = default;
};

/// Validated constructor: p > 0 and exactly nu + 1 coordinates.
SubringElement subring_element(const Characteristic& p, unsigned long nu,
                               std::vector<mpz_class> coeffs);

/// The same element viewed at a larger rank (zero-padded coordinates).
SubringElement extend_rank(const SubringElement& x, unsigned long nu);

/// Integer tuple (b_0, ..., b_nu) in the target of the embedding.
struct EmbeddedTuple {
    std::vector<mpz_class> entries;
    friend bool operator==(const EmbeddedTuple&, const EmbeddedTuple&) = default;
};

/// Rational sequence constant from some point on: entries prefix[0],
/// prefix[1], ..., then tail forever. Stored canonically (no trailing
/// prefix entry equal to the tail).
struct AlmostConstantSequence {
    std::vector<mpq_class> prefix;
    mpq_class tail;

    mpq_class entry(unsigned long k) const;
    AlmostConstantSequence operator+(const AlmostConstantSequence& o) const;
    AlmostConstantSequence operator*(const AlmostConstantSequence& o) const;
    friend bool operator==(const AlmostConstantSequence&, const AlmostConstantSequence&) = default;
};

AlmostConstantSequence almost_constant(std::vector<mpq_class> prefix, mpq_class tail);

/// b_j = sum_{i <= j} c_i p^i: evaluation against the first nu + 1 prime-power
/// ladder points.
EmbeddedTuple phi_map(const SubringElement& x);

/// Matrix of phi_map on the basis (f_1, f_p, ..., f_{p^nu}): lower triangular
/// with row j holding (1, p, ..., p^j, 0, ..., 0).
std::vector<std::vector<mpz_class>> phi_matrix(const Characteristic& p, unsigned long nu);

/// Image characterization: b_j == b_{j-1} mod p^j for j = 1..nu.
bool image_membership(const EmbeddedTuple& t, const Characteristic& p, unsigned long nu);

/// Inverts phi_map on its image; throws when the congruences fail.
SubringElement phi_preimage(const EmbeddedTuple& t, const Characteristic& p, unsigned long nu);

/// Invariant factors (d_1 | d_2 | ...) of a nonzero integer matrix, full
/// diagonal length min(rows, cols), trailing zeros when rank-deficient.
std::vector<mpz_class> smith_normal_form(std::vector<std::vector<mpz_class>> m);

/// (p, p^2, ..., p^nu, p^nu): generator of the conductor ideal into Z^{nu+1}.
EmbeddedTuple conductor_generator(const Characteristic& p, unsigned long nu);

/// Componentwise products c * a land in the image, for the nu + 1 standard
/// unit tuples and every supplied trial tuple.
bool conductor_check(const EmbeddedTuple& c, const Characteristic& p, unsigned long nu,
                     const std::vector<EmbeddedTuple>& trials);

/// Structure constants f_{p^i} f_{p^j} = p^{min(i,j)} f_{p^{max(i,j)}},
/// extended bilinearly. Operands must share p and nu.
SubringElement subring_mul(const SubringElement& x, const SubringElement& y);

/// For nonzero x with lowest supported ladder index j and coordinate c_j:
/// the square's j-th coordinate equals c_j^2 p^j.
bool square_leading_term_check(const SubringElement& x);

/// Products of any two augmentation-ideal generators f_{p^i}, f_{p^j}
/// (1 <= i, j <= nu) land in p * R_nu, so the fiber ring mod p collapses to
/// F_p[x_1..x_nu] with all pairwise products zero.
bool fiber_ring_check(const Characteristic& p, unsigned long nu);

/// e_i = f_{p^i} / p^i satisfy e_i e_j = e_{max(i,j)} after tensoring with Q.
bool idempotent_check(const Characteristic& p, unsigned long nu);

/// The almost-constant-sequence picture of the rank-infinity limit:
/// coordinates of phi_map followed by the constant tail.
AlmostConstantSequence almost_constant_embedding(const SubringElement& x);

/// f_m f_q = m f_q for the smallest prime power q = p^k >= m, checked
/// through the ring multiplication.
bool localization_check(unsigned long m, const Characteristic& p);

/// Canonical JSON report: phi matrix, Smith form, conductor, structural
/// checks, and a count of random square-leading-term witnesses.
std::string structure_report_json(const Characteristic& p, unsigned long nu,
                                  unsigned long witness_samples);

} // namespace convring
