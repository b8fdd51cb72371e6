#include "convring/group_law.hpp"

#include <json.hpp>

#include <stdexcept>

namespace convring {

namespace {

constexpr unsigned long untruncated_bound = 1ul << 20;

long long reduce_coeff(long long c, const Characteristic& p) {
    if (p.is_zero()) return c;
    long long m = static_cast<long long>(p.value());
    long long r = c % m;
    return r < 0 ? r + m : r;
}

} // namespace

GroupLaw::GroupLaw(Characteristic p, unsigned long xbound, unsigned long ybound, CoeffMap coeffs)
    : p_(p), xbound_(xbound), ybound_(ybound) {
    if (xbound_ < 2 || ybound_ < 2)
        throw std::invalid_argument("law truncation bounds must be at least 2");
    for (auto& [deg, c] : coeffs) {
        if (deg.first >= xbound_ || deg.second >= ybound_)
            throw std::invalid_argument("law coefficient at bidegree (" + std::to_string(deg.first) +
                                        ", " + std::to_string(deg.second) + ") lies outside bounds");
        long long r = reduce_coeff(c, p_);
        if (r != 0) coeffs_.emplace(deg, r);
    }
}

long long GroupLaw::coeff(unsigned long a, unsigned long b) const noexcept {
    auto it = coeffs_.find({a, b});
    return it == coeffs_.end() ? 0 : it->second;
}

bool GroupLaw::is_additive() const noexcept {
    return coeffs_.size() == 2 && coeff(1, 0) == 1 && coeff(0, 1) == 1;
}

GroupLaw additive_law(const Characteristic& p, unsigned long xbound, unsigned long ybound) {
    return GroupLaw(p, xbound, ybound, {{{1, 0}, 1}, {{0, 1}, 1}});
}

GroupLaw multiplicative_law(const Characteristic& p, unsigned long xbound, unsigned long ybound) {
    return GroupLaw(p, xbound, ybound, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
}

bool validate_law(const GroupLaw& law) {
    if (law.coeff(1, 0) != 1 || law.coeff(0, 1) != 1) return false;
    for (const auto& [deg, c] : law.coeffs()) {
        (void)c;
        if (deg.second == 0 && deg.first != 1) return false;
        if (deg.first == 0 && deg.second != 1) return false;
    }
    return true;
}

GroupLaw group_law_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("group law document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("p") || !doc.contains("coeffs"))
        throw std::runtime_error("group law document needs fields \"p\" and \"coeffs\"");
    Characteristic p(doc.at("p").get<unsigned long>());
    unsigned long xb = doc.value("xbound", untruncated_bound);
    unsigned long yb = doc.value("ybound", untruncated_bound);
    GroupLaw::CoeffMap coeffs;
    for (const auto& entry : doc.at("coeffs")) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::runtime_error("group law coefficients must be [a, b, c] triples");
        auto a = entry.at(0).get<unsigned long>();
        auto b = entry.at(1).get<unsigned long>();
        auto c = entry.at(2).get<long long>();
        coeffs[{a, b}] += c;
    }
    GroupLaw law(p, xb, yb, std::move(coeffs));
    if (!validate_law(law)) {
        // name the first offending bidegree
        if (law.coeff(1, 0) != 1)
            throw std::runtime_error("group law violates the unit axiom at bidegree (1, 0)");
        if (law.coeff(0, 1) != 1)
            throw std::runtime_error("group law violates the unit axiom at bidegree (0, 1)");
        for (const auto& [deg, c] : law.coeffs()) {
            (void)c;
            if ((deg.second == 0 && deg.first != 1) || (deg.first == 0 && deg.second != 1))
                throw std::runtime_error("group law violates the unit axiom at bidegree (" +
                                         std::to_string(deg.first) + ", " +
                                         std::to_string(deg.second) + ")");
        }
    }
    return law;
}

SparseMatrix evaluate_on_nilpotents(const GroupLaw& law, unsigned long m, unsigned long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("nilpotency orders must be positive");
    if (!validate_law(law))
        throw std::invalid_argument("group law fails the unit axioms");
    if (!law.covers(m, n))
        throw std::invalid_argument("law truncation bounds (" + std::to_string(law.xbound()) + ", " +
                                    std::to_string(law.ybound()) + ") do not cover (" +
                                    std::to_string(m) + ", " + std::to_string(n) + ")");
    SparseMatrix out;
    out.characteristic = law.characteristic();
    out.dim = m * n;
    out.cols.resize(out.dim);
    for (unsigned long a = 0; a < m; ++a)
        for (unsigned long b = 0; b < n; ++b) {
            auto& col = out.cols[a * n + b];
            for (const auto& [deg, c] : law.coeffs()) {
                unsigned long ta = a + deg.first, tb = b + deg.second;
                if (ta < m && tb < n) col.emplace_back(ta * n + tb, c);
            }
        }
    return out;
}

} // namespace convring
