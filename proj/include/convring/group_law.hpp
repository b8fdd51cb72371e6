#pragma once

#include <map>
#include <string>
#include <utility>

#include "convring/characteristic.hpp"
#include "convring/sparse_matrix.hpp"

namespace convring {

/// Truncated bivariate group-law table F(x, y) = sum c_{ab} x^a y^b. Coefficients
/// are stored sparsely, reduced into [0, p) when p > 0 and exact when p = 0;
/// zero coefficients are pruned. Bidegrees run over a < xbound, b < ybound.
class GroupLaw {
public:
    using CoeffMap = std::map<std::pair<unsigned long, unsigned long>, long long>;

    GroupLaw(Characteristic p, unsigned long xbound, unsigned long ybound, CoeffMap coeffs);

    const Characteristic& characteristic() const noexcept { return p_; }
    unsigned long xbound() const noexcept { return xbound_; }
    unsigned long ybound() const noexcept { return ybound_; }
    const CoeffMap& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of x^a y^b, zero when absent.
    long long coeff(unsigned long a, unsigned long b) const noexcept;

    /// Stored bidegrees suffice for multiplication on k[x,y]/(x^m, y^n).
    bool covers(unsigned long m, unsigned long n) const noexcept {
        return xbound_ >= m && ybound_ >= n;
    }

    /// Support is exactly {(1,0), (0,1)} with unit coefficients.
    bool is_additive() const noexcept;

private:
    Characteristic p_;
    unsigned long xbound_, ybound_;
    CoeffMap coeffs_;
};

/// F(x, y) = x + y, truncated to the given bounds.
GroupLaw additive_law(const Characteristic& p, unsigned long xbound, unsigned long ybound);

/// F(x, y) = x + y + xy.
GroupLaw multiplicative_law(const Characteristic& p, unsigned long xbound, unsigned long ybound);

/// Unit axioms F(x, 0) = x and F(0, y) = y on the stored table.
bool validate_law(const GroupLaw& law);

/// Parse {"p": .., "coeffs": [[a, b, c], ..], "xbound"?: .., "ybound"?: ..}.
/// Bounds default to a large sentinel (an untruncated polynomial law). Throws
/// on malformed documents; unit-axiom violations name the offending bidegree.
GroupLaw group_law_from_json(const std::string& text);

/// Matrix of multiplication by F(x, y) on the monomial basis x^a y^b
/// (0 <= a < m, 0 <= b < n, column index a*n + b) of k[x,y]/(x^m, y^n).
/// Rejects laws failing the unit axioms and bounds not covering (m, n).
/// The result is nilpotent since F has no constant term.
SparseMatrix evaluate_on_nilpotents(const GroupLaw& law, unsigned long m, unsigned long n);

} // namespace convring
