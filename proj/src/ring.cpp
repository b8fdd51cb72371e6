#include "convring/ring.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <utility>

namespace convring {

// ---------------------------------------------------------------- elements

mpz_class RingElement::coefficient(unsigned long n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? mpz_class(0) : it->second;
}

void RingElement::add_term(unsigned long n, const mpz_class& c) {
    if (n == 0) throw std::invalid_argument("basis index 0 is not allowed");
    if (c == 0) return;
    auto [it, fresh] = coeffs_.try_emplace(n, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

unsigned long RingElement::max_index() const noexcept {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement out = *this;
    for (const auto& [n, c] : o.coeffs_) out.add_term(n, c);
    return out;
}

RingElement RingElement::operator-(const RingElement& o) const {
    RingElement out = *this;
    for (const auto& [n, c] : o.coeffs_) out.add_term(n, -c);
    return out;
}

RingElement RingElement::operator-() const {
    RingElement out;
    for (const auto& [n, c] : coeffs_) out.add_term(n, -c);
    return out;
}

RingElement operator*(const mpz_class& c, const RingElement& x) {
    RingElement out;
    for (const auto& [n, v] : x.coeffs_) out.add_term(n, c * v);
    return out;
}

RingElement basis(unsigned long n) {
    RingElement out;
    out.add_term(n, 1);
    return out;
}

// ---------------------------------------------------------------- table

ProductTable::ProductTable(Characteristic p, unsigned long max_rank, CacheMissPolicy policy)
    : p_(p), max_rank_(max_rank), policy_(policy) {
    if (max_rank_ < 1) throw std::invalid_argument("table rank bound must be positive");
}

const Multiplicities& ProductTable::cell(unsigned long m, unsigned long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("basis indices must be positive");
    if (m > n) std::swap(m, n);
    auto it = cells_.find({m, n});
    if (it != cells_.end()) return it->second;
    if (policy_ == CacheMissPolicy::error_on_miss)
        throw std::out_of_range("product table cell (" + std::to_string(m) + ", " +
                                std::to_string(n) + ") is not populated and fallback is disabled");
    auto [fresh, inserted] = cells_.emplace(std::make_pair(m, n), product_multiplicities(m, n, p_));
    (void)inserted;
    return fresh->second;
}

bool ProductTable::has_cell(unsigned long m, unsigned long n) const noexcept {
    if (m > n) std::swap(m, n);
    return cells_.count({m, n}) != 0;
}

void ProductTable::populate() {
    for (unsigned long m = 1; m <= max_rank_; ++m)
        for (unsigned long n = m; n <= max_rank_; ++n)
            if (!cells_.count({m, n}))
                cells_.emplace(std::make_pair(m, n), product_multiplicities(m, n, p_));
}

void ProductTable::insert_cell(unsigned long m, unsigned long n, Multiplicities mult) {
    if (m < 1 || n < 1) throw std::invalid_argument("basis indices must be positive");
    if (m > n) std::swap(m, n);
    const std::string defect = check_product_identities(mult, m, n);
    if (!defect.empty())
        throw std::invalid_argument("cell (" + std::to_string(m) + ", " + std::to_string(n) +
                                    "): " + defect);
    cells_[{m, n}] = std::move(mult);
}

ProductTable product_table(const Characteristic& p, unsigned long max_rank) {
    ProductTable table(p, max_rank);
    table.populate();
    return table;
}

RingElement ring_mul(const RingElement& x, const RingElement& y, ProductTable& table) {
    RingElement out;
    for (const auto& [m, cm] : x.coefficients())
        for (const auto& [n, cn] : y.coefficients()) {
            const mpz_class scale = cm * cn;
            for (const auto& [i, lam] : table.cell(m, n).counts())
                out.add_term(i, scale * mpz_class(lam));
        }
    return out;
}

// ------------------------------------------------- characteristic-0 basis

std::vector<mpz_class> char_zero_polynomial_coordinates(const RingElement& x,
                                                        const Characteristic& p) {
    if (!p.is_zero())
        throw std::invalid_argument("the polynomial coordinate map needs characteristic 0");
    if (x.is_zero()) return {};
    const unsigned long top = x.max_index();
    // P_1 = 1, P_2 = X, P_{n+1} = X P_n - P_{n-1}; f_n corresponds to P_n
    std::vector<mpz_class> prev;          // P_0 = 0
    std::vector<mpz_class> cur{1};        // P_1
    std::vector<mpz_class> out(top, 0);   // degree of P_top is top - 1
    for (unsigned long n = 1; n <= top; ++n) {
        const mpz_class c = x.coefficient(n);
        if (c != 0)
            for (size_t k = 0; k < cur.size(); ++k) out[k] += c * cur[k];
        if (n == top) break;
        std::vector<mpz_class> next(n + 1, 0); // X * P_n - P_{n-1}, degree n
        for (size_t k = 0; k < cur.size(); ++k) next[k + 1] = cur[k];
        for (size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

RingElement evaluate_polynomial_at_f2(const std::vector<mpz_class>& poly, ProductTable& table) {
    if (!table.characteristic().is_zero())
        throw std::invalid_argument("polynomial evaluation at f_2 needs a characteristic-0 table");
    RingElement acc;
    const RingElement f2 = basis(2);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        acc = ring_mul(acc, f2, table);
        acc.add_term(1, *it); // the unit is f_1
    }
    return acc;
}

// ---------------------------------------------------------------- formats

std::string format_element(const RingElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [n, c] : x.coefficients()) {
        mpz_class a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1) out << a.get_str() << " ";
        out << "f" << n;
        first = false;
    }
    return out.str();
}

std::string format_product(unsigned long m, unsigned long n, const Multiplicities& mult) {
    RingElement rhs;
    for (const auto& [i, lam] : mult.counts()) rhs.add_term(i, lam);
    return "f" + std::to_string(m) + "*f" + std::to_string(n) + " = " + format_element(rhs);
}

// ---------------------------------------------------------------- caching

std::string table_to_json(ProductTable& table) {
    nlohmann::ordered_json doc;
    doc["char"] = table.characteristic().value();
    doc["max_rank"] = table.max_rank();
    doc["cells"] = nlohmann::ordered_json::array();
    for (unsigned long m = 1; m <= table.max_rank(); ++m)
        for (unsigned long n = m; n <= table.max_rank(); ++n) {
            const Multiplicities& mult = table.cell(m, n);
            nlohmann::ordered_json cell;
            cell["m"] = m;
            cell["n"] = n;
            cell["lambda"] = nlohmann::ordered_json::array();
            for (const auto& [i, lam] : mult.counts())
                cell["lambda"].push_back({i, lam});
            doc["cells"].push_back(std::move(cell));
        }
    return doc.dump(2) + "\n";
}

std::string table_to_csv(ProductTable& table) {
    std::ostringstream out;
    out << "m,n,i,lambda\n";
    for (unsigned long m = 1; m <= table.max_rank(); ++m)
        for (unsigned long n = m; n <= table.max_rank(); ++n)
            for (const auto& [i, lam] : table.cell(m, n).counts())
                out << m << "," << n << "," << i << "," << lam << "\n";
    return out.str();
}

ProductTable table_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("table document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("char") || !doc.contains("max_rank") ||
        !doc.contains("cells"))
        throw std::runtime_error("table document needs fields \"char\", \"max_rank\", \"cells\"");
    ProductTable table(Characteristic(doc.at("char").get<unsigned long>()),
                       doc.at("max_rank").get<unsigned long>());
    for (const auto& cell : doc.at("cells")) {
        const auto m = cell.at("m").get<unsigned long>();
        const auto n = cell.at("n").get<unsigned long>();
        Multiplicities mult;
        for (const auto& pair : cell.at("lambda")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::runtime_error("lambda entries must be [index, count] pairs");
            mult.add(pair.at(0).get<unsigned long>(), pair.at(1).get<unsigned long>());
        }
        table.insert_cell(m, n, std::move(mult)); // re-checks the identities
    }
    return table;
}

} // namespace convring
