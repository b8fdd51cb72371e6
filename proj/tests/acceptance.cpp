// Acceptance gate for the multiplication-table claims. Each criterion prints
// exactly one PASS/FAIL line; stated runtime budgets are enforced as hard
// failures. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/kernel.hpp"
#include "convring/ring.hpp"
#include "convring/verify.hpp"
#include "oracles.hpp"

namespace {

using convring::SuiteResult;

int criteria_failed = 0;

std::vector<convring::Characteristic> chars(std::initializer_list<unsigned long> ps) {
    std::vector<convring::Characteristic> out;
    for (unsigned long p : ps) out.emplace_back(p);
    return out;
}

SuiteResult merge(SuiteResult a, const SuiteResult& b) {
    a.suite += "+" + b.suite;
    a.checks += b.checks;
    a.failure_count += b.failure_count;
    for (const auto& f : b.failures) a.failures.push_back(f);
    return a;
}

template <typename Fn>
void criterion(int number, const char* name, double budget_seconds, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    try {
        result = fn();
    } catch (const std::exception& e) {
        result.checks += 1;
        result.fail(std::string("unexpected error: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = result.failure_count == 0;
    std::string overrun;
    if (budget_seconds > 0 && seconds > budget_seconds) {
        pass = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, ", %.0f s budget exceeded", budget_seconds);
        overrun = buf;
    }
    std::printf("criterion %d %s: %s (checks=%lu, failures=%lu, %.2f s%s)\n", number, name,
                pass ? "PASS" : "FAIL", result.checks, result.failure_count, seconds,
                overrun.c_str());
    for (size_t i = 0; i < result.failures.size() && i < 3; ++i)
        std::printf("    %s\n", result.failures[i].c_str());
    std::fflush(stdout);
    if (!pass) ++criteria_failed;
}

SuiteResult golden_product() {
    SuiteResult out;
    out.suite = "golden-product";

    // brute force first: dense operator, naive ranks of its powers
    const auto dense = oracle::mul_operator({{{1, 0}, 1}, {{0, 1}, 1}}, 2, 3, 3);
    std::vector<unsigned long> ranks{9};
    auto power = dense;
    while (ranks.back() != 0) {
        ranks.push_back(oracle::rank_mod_p(power, 2));
        if (ranks.back() != 0) power = oracle::dense_mul(power, dense);
    }
    ++out.checks;
    if (ranks != std::vector<unsigned long>{9, 6, 4, 2, 0})
        out.fail("rank chain of the 3x3 operator mod 2 is not (9, 6, 4, 2, 0)");

    const auto naive = oracle::jordan_type(dense, 2);
    ++out.checks;
    if (naive != std::map<unsigned long, unsigned long>{{1, 1}, {4, 2}})
        out.fail("naive Jordan type of the 3x3 operator mod 2 is not {1: 1, 4: 2}");

    const auto got = convring::product_multiplicities(3, 3, convring::Characteristic(2));
    ++out.checks;
    if (got.counts() != naive) out.fail("library product disagrees with the naive recomputation");

    ++out.checks;
    if (convring::format_product(3, 3, got) != "f3*f3 = f1 + 2 f4")
        out.fail("rendered product line is not \"f3*f3 = f1 + 2 f4\"");
    return out;
}

}  // namespace

int main() {
    using namespace convring;

    criterion(1, "kernel-identities", 300, [] {
        return verify_kernel_identities(chars({0, 2, 3, 5, 7}), 40);
    });
    criterion(2, "law-independence", 120, [] {
        return verify_law_independence(chars({2, 3, 5}), 24);
    });
    criterion(3, "profile-agreement", 0, [] {
        return verify_oracle_agreement(chars({0, 2, 3, 5, 7}), 40);
    });
    criterion(4, "prime-power-products", 180, [] {
        return verify_prime_power_products(chars({2, 3, 5}));
    });
    criterion(5, "doubling-rule", 0, [] { return verify_f2_rule(chars({2, 3, 5, 7}), 100); });
    criterion(6, "digit-binomials", 0, [] {
        return merge(verify_lucas_grid(2000), verify_lucas_domain(125));
    });
    criterion(7, "congruence-support", 0, [] {
        return verify_congruence_constraint(chars({2, 3, 5}), 16);
    });
    criterion(8, "ring-laws", 0, [] { return verify_ring_laws(chars({0, 2, 3, 5, 7}), 12); });
    criterion(9, "subring-structure", 60, [] { return verify_structure(chars({2, 3, 5}), 6, 500, 200); });
    criterion(10, "golden-product", 0, golden_product);

    std::printf("acceptance: %d/10 criteria passed\n", 10 - criteria_failed);
    return criteria_failed == 0 ? 0 : 1;
}
