#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/numerics.hpp"
#include "oracles.hpp"

using convring::Characteristic;
using convring::binomial_exact;
using convring::lucas_binomial_mod;
using convring::lucas_zero_block;
using convring::q_adic_digits;

TEST_CASE("characteristic accepts zero and primes only") {
    for (unsigned long p : {0ul, 2ul, 3ul, 5ul, 7ul, 11ul, 101ul, 65537ul})
        CHECK(Characteristic(p).value() == p);
    for (unsigned long p : {1ul, 4ul, 6ul, 9ul, 15ul, 1000000ul})
        CHECK_THROWS_AS(Characteristic{p}, std::invalid_argument);

    CHECK(Characteristic(0).is_zero());
    CHECK_FALSE(Characteristic(2).is_zero());
    CHECK_FALSE(Characteristic(0).divides(6));
    CHECK(Characteristic(3).divides(9));
    CHECK(Characteristic(3).divides(0));
    CHECK_FALSE(Characteristic(3).divides(10));
}

TEST_CASE("digit expansions are little-endian and round-trip") {
    auto d = q_adic_digits(6, 4);
    CHECK(d.base == 4);
    CHECK(d.digits == std::vector<unsigned long>{2, 1});

    CHECK(q_adic_digits(255, 8).digits == std::vector<unsigned long>{7, 7, 3});
    CHECK(q_adic_digits(7, 2).digits == std::vector<unsigned long>{1, 1, 1});
    CHECK(q_adic_digits(0, 9).digits.empty());
    CHECK(q_adic_digits(0, 9).value() == 0);

    for (unsigned long q : {2ul, 3ul, 4ul, 5ul, 10ul, 16ul})
        for (unsigned long a = 0; a <= 300; ++a) {
            auto e = q_adic_digits(a, q);
            CHECK(e.value() == a);
            for (unsigned long digit : e.digits) CHECK(digit < q);
            if (!e.digits.empty()) CHECK(e.digits.back() != 0);
        }

    CHECK_THROWS_AS(q_adic_digits(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(q_adic_digits(5, 1), std::invalid_argument);
}

TEST_CASE("exact binomials match the Pascal recursion") {
    for (unsigned long a = 0; a <= 40; ++a)
        for (unsigned long b = 0; b <= a + 2; ++b)
            CHECK(binomial_exact(a, b) == oracle::pascal_binomial(a, b));

    CHECK(binomial_exact(60, 30) == mpz_class("118264581564861424"));
    CHECK(binomial_exact(0, 0) == 1);
    CHECK(binomial_exact(5, 0) == 1);
    CHECK(binomial_exact(4, 7) == 0);
}

TEST_CASE("prime-base digit products give binomial residues") {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 101ul})
        for (unsigned long a = 0; a <= 50; ++a)
            for (unsigned long b = 0; b <= a; ++b) {
                mpz_class exact = oracle::pascal_binomial(a, b);
                CHECK(convring::detail::binomial_mod_prime(a, b, p) ==
                      mpz_fdiv_ui(exact.get_mpz_t(), p));
            }

    CHECK(convring::detail::binomial_mod_prime(40, 17, 7) == 2);
    CHECK(convring::detail::binomial_mod_prime(100, 37, 3) == 0);
    CHECK(convring::detail::binomial_mod_prime(12, 25, 5) == 0);
}

TEST_CASE("prime-power bases agree with exact residues") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Characteristic cp(p);
        for (unsigned long q = p; q <= 125; q *= p)
            for (unsigned long a = 0; a <= 60; ++a)
                for (unsigned long b = 0; b <= a; ++b) {
                    mpz_class exact = oracle::pascal_binomial(a, b);
                    CHECK(lucas_binomial_mod(a, b, cp, q) == mpz_fdiv_ui(exact.get_mpz_t(), p));
                }
    }

    CHECK(lucas_binomial_mod(6, 2, Characteristic(2), 4) == 1);
    CHECK(lucas_binomial_mod(5, 3, Characteristic(2), 4) == 0);
    CHECK(lucas_binomial_mod(5, 9, Characteristic(3), 3) == 0);

    // base choice cannot matter
    for (unsigned long a = 0; a <= 200; a += 7)
        for (unsigned long b = 0; b <= a; b += 3) {
            unsigned long r = lucas_binomial_mod(a, b, Characteristic(3), 3);
            CHECK(lucas_binomial_mod(a, b, Characteristic(3), 9) == r);
            CHECK(lucas_binomial_mod(a, b, Characteristic(3), 27) == r);
        }

    CHECK_THROWS_AS(lucas_binomial_mod(5, 2, Characteristic(0), 4), std::invalid_argument);
    CHECK_THROWS_AS(lucas_binomial_mod(5, 2, Characteristic(2), 6), std::invalid_argument);
    CHECK_THROWS_AS(lucas_binomial_mod(5, 2, Characteristic(2), 1), std::invalid_argument);
}

TEST_CASE("power detection") {
    CHECK(convring::detail::is_power_of(2, 2));
    CHECK(convring::detail::is_power_of(8, 2));
    CHECK(convring::detail::is_power_of(27, 3));
    CHECK(convring::detail::is_power_of(125, 5));
    CHECK_FALSE(convring::detail::is_power_of(1, 2));
    CHECK_FALSE(convring::detail::is_power_of(6, 2));
    CHECK_FALSE(convring::detail::is_power_of(12, 3));
    CHECK_FALSE(convring::detail::is_power_of(0, 2));
}

TEST_CASE("zero blocks of binomial windows") {
    CHECK(lucas_zero_block(3, 4, Characteristic(2)));
    CHECK(lucas_zero_block(5, 5, Characteristic(5)));
    CHECK(lucas_zero_block(0, 2, Characteristic(2)));
    CHECK(lucas_zero_block(1, 2, Characteristic(2)));

    // every window below the base is divisible; sweep the whole domain
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Characteristic cp(p);
        for (unsigned long q = p; q <= 125; q *= p)
            for (unsigned long m = 0; m <= q; ++m) CHECK(lucas_zero_block(m, q, cp));
    }

    // the m = q = 8 window, re-derived from exact binomials
    CHECK(lucas_zero_block(8, 8, Characteristic(2)));
    for (unsigned long a = 0; a <= 6; ++a)
        for (unsigned long b = 0; b <= a; ++b) {
            mpz_class exact = oracle::pascal_binomial(14 - a, 7 - b);
            CHECK(mpz_fdiv_ui(exact.get_mpz_t(), 2) == 0);
        }

    CHECK_THROWS_AS(lucas_zero_block(5, 4, Characteristic(2)), std::invalid_argument);
    CHECK_THROWS_AS(lucas_zero_block(3, 4, Characteristic(0)), std::invalid_argument);
    CHECK_THROWS_AS(lucas_zero_block(3, 6, Characteristic(2)), std::invalid_argument);
}
