#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>
#include <stdexcept>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/ring.hpp"
#include "convring/subring.hpp"

using convring::AlmostConstantSequence;
using convring::Characteristic;
using convring::EmbeddedTuple;
using convring::SubringElement;
using convring::almost_constant;
using convring::almost_constant_embedding;
using convring::conductor_check;
using convring::conductor_generator;
using convring::extend_rank;
using convring::fiber_ring_check;
using convring::idempotent_check;
using convring::image_membership;
using convring::localization_check;
using convring::phi_map;
using convring::phi_matrix;
using convring::phi_preimage;
using convring::smith_normal_form;
using convring::square_leading_term_check;
using convring::structure_report_json;
using convring::subring_element;
using convring::subring_mul;

namespace {

std::vector<mpz_class> zv(std::vector<long> v) {
    return std::vector<mpz_class>(v.begin(), v.end());
}

EmbeddedTuple tuple(std::vector<long> v) {
    return EmbeddedTuple{zv(std::move(v))};
}

}  // namespace

TEST_CASE("coordinate vectors are validated") {
    auto x = subring_element(Characteristic(2), 2, zv({1, 1, 1}));
    CHECK(x.nu == 2);
    CHECK(x.coeffs[2] == 1);
    CHECK_THROWS_AS(subring_element(Characteristic(0), 1, zv({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(subring_element(Characteristic(2), 2, zv({1, 2})), std::invalid_argument);

    auto wide = extend_rank(x, 4);
    CHECK(wide.nu == 4);
    CHECK(wide.coeffs == zv({1, 1, 1, 0, 0}));
    CHECK(extend_rank(x, 2) == x);
    CHECK_THROWS_AS(extend_rank(x, 1), std::invalid_argument);
}

TEST_CASE("ladder evaluation of the embedding") {
    CHECK(phi_map(subring_element(Characteristic(2), 2, zv({1, 1, 1}))) == tuple({1, 3, 7}));
    CHECK(phi_map(subring_element(Characteristic(2), 2, zv({0, 0, 1}))) == tuple({0, 0, 4}));
    CHECK(phi_map(subring_element(Characteristic(3), 1, zv({2, -1}))) == tuple({2, -1}));

    CHECK(phi_matrix(Characteristic(2), 2) ==
          std::vector<std::vector<mpz_class>>{{1, 0, 0}, {1, 2, 0}, {1, 2, 4}});
    CHECK_THROWS_AS(phi_matrix(Characteristic(0), 2), std::invalid_argument);
}

TEST_CASE("image membership and inversion") {
    Characteristic two(2);
    CHECK(image_membership(tuple({1, 3, 7}), two, 2));
    CHECK(image_membership(tuple({0, 0, 4}), two, 2));
    CHECK_FALSE(image_membership(tuple({1, 2, 7}), two, 2));
    CHECK_FALSE(image_membership(tuple({1, 3, 5}), two, 2));

    CHECK(phi_preimage(tuple({1, 3, 7}), two, 2) ==
          subring_element(two, 2, zv({1, 1, 1})));
    CHECK(phi_preimage(tuple({0, 0, 4}), two, 2) ==
          subring_element(two, 2, zv({0, 0, 1})));
    CHECK_THROWS_AS(phi_preimage(tuple({1, 2, 7}), two, 2), std::invalid_argument);
    CHECK_THROWS_AS(image_membership(tuple({1, 3}), two, 2), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Characteristic cp(p);
        for (unsigned long nu = 0; nu <= 5; ++nu)
            for (int s = 0; s < 40; ++s) {
                std::vector<mpz_class> coeffs(nu + 1);
                for (auto& c : coeffs) c = static_cast<long>(rng() % 201) - 100;
                auto x = subring_element(cp, nu, coeffs);
                auto t = phi_map(x);
                CHECK(image_membership(t, cp, nu));
                CHECK(phi_preimage(t, cp, nu) == x);
            }
    }
}

TEST_CASE("invariant factors") {
    CHECK(smith_normal_form(phi_matrix(Characteristic(2), 2)) == zv({1, 2, 4}));
    CHECK(smith_normal_form(phi_matrix(Characteristic(3), 1)) == zv({1, 3}));
    CHECK(smith_normal_form(phi_matrix(Characteristic(5), 3)) == zv({1, 5, 25, 125}));
    CHECK(smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == zv({1, 1, 1}));
    CHECK(smith_normal_form({{2, 0}, {0, 3}}) == zv({1, 6}));
    CHECK(smith_normal_form({{1, 1}, {1, 1}}) == zv({1, 0}));
    CHECK(smith_normal_form({{4, 6}}) == zv({2}));

    CHECK_THROWS_AS(smith_normal_form({}), std::invalid_argument);
    CHECK_THROWS_AS(smith_normal_form({{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(smith_normal_form({{1, 2}, {3}}), std::invalid_argument);

    // divisor ladder against determinantal gcds on random 3x3 matrices
    std::mt19937_64 rng(11);
    for (int s = 0; s < 60; ++s) {
        std::vector<std::vector<mpz_class>> m(3, std::vector<mpz_class>(3));
        bool nonzero = false;
        for (auto& row : m)
            for (auto& e : row) {
                e = static_cast<long>(rng() % 21) - 10;
                if (e != 0) nonzero = true;
            }
        if (!nonzero) m[1][2] = 3;

        mpz_class g1 = 0, g2 = 0;
        for (const auto& row : m)
            for (const auto& e : row) mpz_gcd(g1.get_mpz_t(), g1.get_mpz_t(), e.get_mpz_t());
        for (int i1 = 0; i1 < 3; ++i1)
            for (int i2 = i1 + 1; i2 < 3; ++i2)
                for (int j1 = 0; j1 < 3; ++j1)
                    for (int j2 = j1 + 1; j2 < 3; ++j2) {
                        mpz_class minor = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
                        mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), minor.get_mpz_t());
                    }
        mpz_class det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);

        auto d = smith_normal_form(m);
        REQUIRE(d.size() == 3);
        CHECK(d[0] == g1);
        if (g2 != 0)
            CHECK(d[0] * d[1] == g2);
        else
            CHECK(d[1] == 0);
        if (det != 0)
            CHECK(d[0] * d[1] * d[2] == abs(det));
        else
            CHECK(d[2] == 0);
    }
}

TEST_CASE("conductor of the embedding") {
    CHECK(conductor_generator(Characteristic(2), 2) == tuple({2, 4, 4}));
    CHECK(conductor_generator(Characteristic(5), 3) == tuple({5, 25, 125, 125}));
    CHECK(conductor_generator(Characteristic(3), 0) == tuple({1}));

    Characteristic two(2);
    std::vector<EmbeddedTuple> trials{tuple({1, 1, 1}), tuple({3, -2, 5}), tuple({0, 7, -7})};
    CHECK(conductor_check(tuple({2, 4, 4}), two, 2, trials));

    // dividing any entry by p exits the conductor
    CHECK_FALSE(conductor_check(tuple({1, 4, 4}), two, 2, {}));
    CHECK_FALSE(conductor_check(tuple({2, 2, 4}), two, 2, {}));
    CHECK_FALSE(conductor_check(tuple({2, 4, 2}), two, 2, {}));
    CHECK_FALSE(conductor_check(tuple({1, 1, 1}), two, 2, {}));

    CHECK_THROWS_AS(conductor_check(tuple({2, 4}), two, 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(conductor_check(tuple({2, 4, 4}), two, 2, {tuple({1, 1})}),
                    std::invalid_argument);

    std::mt19937_64 rng(13);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Characteristic cp(p);
        for (unsigned long nu = 1; nu <= 4; ++nu) {
            std::vector<EmbeddedTuple> random_trials;
            for (int s = 0; s < 20; ++s) {
                EmbeddedTuple t;
                for (unsigned long j = 0; j <= nu; ++j)
                    t.entries.emplace_back(static_cast<long>(rng() % 201) - 100);
                random_trials.push_back(std::move(t));
            }
            auto cond = conductor_generator(cp, nu);
            CHECK(conductor_check(cond, cp, nu, random_trials));
            for (unsigned long k = 0; k <= nu; ++k) {
                EmbeddedTuple smaller = cond;
                mpz_divexact_ui(smaller.entries[k].get_mpz_t(), smaller.entries[k].get_mpz_t(),
                                p);
                CHECK_FALSE(conductor_check(smaller, cp, nu, {}));
            }
        }
    }
}

TEST_CASE("products of ladder classes") {
    Characteristic two(2);
    auto f2 = subring_element(two, 2, zv({0, 1, 0}));
    auto f4 = subring_element(two, 2, zv({0, 0, 1}));
    CHECK(subring_mul(f2, f4) == subring_element(two, 2, zv({0, 0, 2})));
    CHECK(subring_mul(f4, f4) == subring_element(two, 2, zv({0, 0, 4})));

    auto x = subring_element(two, 1, zv({2, 3}));
    auto y = subring_element(two, 1, zv({-1, 4}));
    CHECK(subring_mul(x, y) == subring_element(two, 1, zv({-2, 29})));

    auto three = subring_element(Characteristic(3), 1, zv({1, 1}));
    CHECK_THROWS_AS(subring_mul(x, three), std::invalid_argument);
    CHECK_THROWS_AS(subring_mul(x, f2), std::invalid_argument);

    std::mt19937_64 rng(17);
    for (unsigned long p : {2ul, 3ul}) {
        Characteristic cp(p);
        for (int s = 0; s < 25; ++s) {
            unsigned long nu = rng() % 4;
            auto draw = [&] {
                std::vector<mpz_class> coeffs(nu + 1);
                for (auto& c : coeffs) c = static_cast<long>(rng() % 41) - 20;
                return subring_element(cp, nu, std::move(coeffs));
            };
            auto a = draw(), b = draw(), c = draw();
            CHECK(subring_mul(a, b) == subring_mul(b, a));
            CHECK(subring_mul(subring_mul(a, b), c) == subring_mul(a, subring_mul(b, c)));
        }
    }
}

TEST_CASE("ladder products agree with the full ring") {
    using convring::ProductTable;
    using convring::RingElement;
    using convring::basis;
    using convring::ring_mul;

    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Characteristic cp(p);
        ProductTable table(cp, 2, convring::CacheMissPolicy::compute_on_miss);
        std::vector<unsigned long> gens{1};
        while (gens.size() <= 4 && gens.back() <= 16000 / p) gens.push_back(gens.back() * p);
        for (unsigned long i = 0; i < gens.size(); ++i)
            for (unsigned long j = i; j < gens.size(); ++j) {
                // skip pairs whose tensor square outgrows the time budget
                if (gens[i] > 16000 / gens[j]) continue;
                RingElement expect = mpz_class(gens[i]) * basis(gens[j]);
                CHECK(ring_mul(basis(gens[i]), basis(gens[j]), table) == expect);
            }
    }
}

TEST_CASE("squares carry the expected leading coordinate") {
    Characteristic two(2);
    CHECK(square_leading_term_check(subring_element(two, 1, zv({0, 1}))));
    CHECK(square_leading_term_check(subring_element(two, 1, zv({3, 0}))));
    CHECK(square_leading_term_check(subring_element(two, 2, zv({0, 1, -1}))));
    CHECK_THROWS_AS(square_leading_term_check(subring_element(two, 2, zv({0, 0, 0}))),
                    std::invalid_argument);

    auto sq = subring_mul(subring_element(two, 2, zv({0, 1, -1})),
                          subring_element(two, 2, zv({0, 1, -1})));
    CHECK(sq == subring_element(two, 2, zv({0, 2, 0})));

    std::mt19937_64 rng(19);
    for (unsigned long p : {2ul, 5ul})
        for (unsigned long nu = 0; nu <= 4; ++nu)
            for (int s = 0; s < 30; ++s) {
                std::vector<mpz_class> coeffs(nu + 1);
                for (auto& c : coeffs) c = static_cast<long>(rng() % 15) - 7;
                bool zero = true;
                for (const auto& c : coeffs) zero = zero && c == 0;
                if (zero) coeffs[0] = 1;
                CHECK(square_leading_term_check(
                    subring_element(Characteristic(p), nu, std::move(coeffs))));
            }
}

TEST_CASE("fiber ring and rational idempotents") {
    CHECK(fiber_ring_check(Characteristic(2), 3));
    CHECK(fiber_ring_check(Characteristic(3), 1));
    CHECK(fiber_ring_check(Characteristic(5), 4));
    CHECK_THROWS_AS(fiber_ring_check(Characteristic(2), 0), std::invalid_argument);
    CHECK_THROWS_AS(fiber_ring_check(Characteristic(0), 2), std::invalid_argument);

    CHECK(idempotent_check(Characteristic(2), 3));
    CHECK(idempotent_check(Characteristic(2), 0));
    CHECK(idempotent_check(Characteristic(5), 2));
}

TEST_CASE("almost-constant sequences") {
    auto s = almost_constant({1, 3, 3}, 3);
    CHECK(s.prefix == std::vector<mpq_class>{1});
    CHECK(s.entry(0) == 1);
    CHECK(s.entry(1) == 3);
    CHECK(s.entry(100) == 3);

    auto t = almost_constant({0, 2}, 1);
    CHECK((s + t).prefix == std::vector<mpq_class>{1, 5});
    CHECK((s + t).tail == 4);
    CHECK((s * t).prefix == std::vector<mpq_class>{0, 6});
    CHECK((s * t).tail == 3);

    // adding the negation cancels to the constant zero sequence
    auto neg = almost_constant({-1, -3}, -3) + s;
    CHECK(neg.prefix.empty());
    CHECK(neg.tail == 0);
}

TEST_CASE("the sequence picture of the embedding") {
    Characteristic two(2);
    auto one = almost_constant_embedding(subring_element(two, 0, zv({1})));
    CHECK(one == almost_constant({}, 1));
    auto f4 = almost_constant_embedding(subring_element(two, 2, zv({0, 0, 1})));
    CHECK(f4 == almost_constant({0, 0}, 4));
    auto mixed = almost_constant_embedding(subring_element(two, 2, zv({0, 1, 1})));
    CHECK(mixed == almost_constant({0, 2}, 6));

    std::mt19937_64 rng(23);
    for (unsigned long p : {2ul, 3ul})
        for (unsigned long nu = 0; nu <= 4; ++nu)
            for (int s = 0; s < 25; ++s) {
                auto draw = [&] {
                    std::vector<mpz_class> coeffs(nu + 1);
                    for (auto& c : coeffs) c = static_cast<long>(rng() % 31) - 15;
                    return subring_element(Characteristic(p), nu, std::move(coeffs));
                };
                auto a = draw(), b = draw();
                auto ea = almost_constant_embedding(a);
                auto eb = almost_constant_embedding(b);
                CHECK(ea + eb == almost_constant_embedding(
                                     subring_element(Characteristic(p), nu, [&] {
                                         std::vector<mpz_class> sum(nu + 1);
                                         for (unsigned long k = 0; k <= nu; ++k)
                                             sum[k] = a.coeffs[k] + b.coeffs[k];
                                         return sum;
                                     }())));
                CHECK(ea * eb == almost_constant_embedding(subring_mul(a, b)));
                CHECK(almost_constant_embedding(extend_rank(a, nu + 2)) == ea);
            }
}

TEST_CASE("multiplication against the localized ladder") {
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned long m = 1; m <= 12; ++m) CHECK(localization_check(m, Characteristic(p)));
    CHECK_THROWS_AS(localization_check(0, Characteristic(2)), std::invalid_argument);
    CHECK_THROWS_AS(localization_check(3, Characteristic(0)), std::invalid_argument);
}

TEST_CASE("structure reports") {
    auto text = structure_report_json(Characteristic(2), 2, 50);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc.at("p") == 2);
    CHECK(doc.at("nu") == 2);
    CHECK(doc.at("phi_matrix") == nlohmann::json::parse("[[1,0,0],[1,2,0],[1,2,4]]"));
    CHECK(doc.at("snf") == nlohmann::json::parse("[1,2,4]"));
    CHECK(doc.at("conductor") == nlohmann::json::parse("[2,4,4]"));
    CHECK(doc.at("checks").at("fiber_ring") == true);
    CHECK(doc.at("checks").at("idempotents") == true);
    CHECK(doc.at("checks").at("reduced_witnesses") == 50);

    CHECK(structure_report_json(Characteristic(2), 2, 50) == text);  // byte-stable

    auto rank_zero = nlohmann::json::parse(structure_report_json(Characteristic(3), 0, 10));
    CHECK_FALSE(rank_zero.contains("conductor"));
    CHECK_FALSE(rank_zero.at("checks").contains("fiber_ring"));
    CHECK(rank_zero.at("snf") == nlohmann::json::parse("[1]"));

    auto five = nlohmann::json::parse(structure_report_json(Characteristic(5), 3, 10));
    CHECK(five.at("conductor") == nlohmann::json::parse("[5,25,125,125]"));

    CHECK_THROWS_AS(structure_report_json(Characteristic(0), 2, 10), std::invalid_argument);
}
