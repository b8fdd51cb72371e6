#include "convring/verify.hpp"

#include <gmpxx.h>

#include <exception>
#include <random>
#include <utility>

#include "convring/group_law.hpp"
#include "convring/kernel.hpp"
#include "convring/numerics.hpp"
#include "convring/ring.hpp"
#include "convring/subring.hpp"

namespace convring {

namespace {

std::string render(const Multiplicities& mult) {
    RingElement x;
    for (const auto& [i, c] : mult.counts()) x.add_term(i, mpz_class(c));
    return format_element(x);
}

std::string pname(const Characteristic& p) { return std::to_string(p.value()); }

std::string instance(unsigned long m, unsigned long n, const Characteristic& p) {
    return "m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", p=" + pname(p);
}

std::string mismatch(const std::string& where, const std::string& expected,
                     const std::string& got) {
    return "(" + where + ", expected=" + expected + ", got=" + got + ")";
}

} // namespace

void SuiteResult::fail(std::string message) {
    ++failure_count;
    if (failures.size() < 16) failures.push_back(std::move(message));
}

SuiteResult verify_kernel_identities(const std::vector<Characteristic>& chars,
                                     unsigned long max_rank) {
    SuiteResult result{"kernel"};
    for (const auto& p : chars) {
        for (unsigned long m = 1; m <= max_rank; ++m) {
            for (unsigned long n = m; n <= max_rank; ++n) {
                try {
                    const Multiplicities mult = product_multiplicities(m, n, p);

                    ++result.checks;
                    if (std::string diag = check_product_identities(mult, m, n); !diag.empty())
                        result.fail("(" + instance(m, n, p) + ", " + diag + ")");

                    ++result.checks;
                    const unsigned long s = max_block_index(m, n, p);
                    if (mult.max_index() != s)
                        result.fail(mismatch(instance(m, n, p) + ", largest index",
                                             std::to_string(s),
                                             std::to_string(mult.max_index())));

                    if (m < n) {
                        ++result.checks;
                        const Multiplicities swapped = product_multiplicities(n, m, p);
                        if (!(swapped == mult))
                            result.fail(mismatch(instance(n, m, p) + ", swap", render(mult),
                                                 render(swapped)));
                    }
                } catch (const std::exception& e) {
                    result.fail("(" + instance(m, n, p) + ", error=" + e.what() + ")");
                }
            }
        }
    }
    return result;
}

SuiteResult verify_oracle_agreement(const std::vector<Characteristic>& chars,
                                    unsigned long max_rank) {
    SuiteResult result{"oracles"};
    for (const auto& p : chars) {
        for (unsigned long m = 1; m <= max_rank; ++m) {
            for (unsigned long n = 1; n <= max_rank; ++n) {
                try {
                    const GroupLaw law =
                        additive_law(p, std::max(m, 2ul), std::max(n, 2ul));
                    const RankProfile prof = law_rank_profile(m, n, p, law);

                    HilbertProfile hp;
                    hp.values.reserve(prof.ranks.size());
                    for (unsigned long r : prof.ranks) hp.values.push_back(m * n - r);

                    const Multiplicities via_ranks = multiplicities_from_ranks(prof);
                    const Multiplicities via_hilbert = multiplicities_from_hilbert(hp);

                    ++result.checks;
                    if (!(via_ranks == via_hilbert))
                        result.fail(mismatch(instance(m, n, p) + ", hilbert route",
                                             render(via_ranks), render(via_hilbert)));

                    if (p.is_zero() || p.value() > m + n - 2) {
                        ++result.checks;
                        const Multiplicities ladder = char_zero_product(m, n);
                        if (!(ladder == via_ranks))
                            result.fail(mismatch(instance(m, n, p) + ", ladder form",
                                                 render(via_ranks), render(ladder)));
                    }
                } catch (const std::exception& e) {
                    result.fail("(" + instance(m, n, p) + ", error=" + e.what() + ")");
                }
            }
        }
    }
    return result;
}

SuiteResult verify_law_independence(const std::vector<Characteristic>& chars,
                                    unsigned long max_rank) {
    SuiteResult result{"laws"};
    for (const auto& p : chars) {
        for (unsigned long m = 1; m <= max_rank; ++m) {
            for (unsigned long n = m; n <= max_rank; ++n) {
                try {
                    const Multiplicities base = product_multiplicities(m, n, p);

                    const GroupLaw mul =
                        multiplicative_law(p, std::max(m, 2ul), std::max(n, 2ul));
                    const Multiplicities via_mul = product_multiplicities(m, n, p, mul);
                    ++result.checks;
                    if (!(via_mul == base))
                        result.fail(mismatch(instance(m, n, p) + ", multiplicative law",
                                             render(base), render(via_mul)));

                    if (!p.is_zero()) {
                        const Multiplicities via_uni =
                            unipotent_tensor_multiplicities(m, n, p);
                        ++result.checks;
                        if (!(via_uni == base))
                            result.fail(mismatch(instance(m, n, p) + ", unipotent tensor",
                                                 render(base), render(via_uni)));
                    }
                } catch (const std::exception& e) {
                    result.fail("(" + instance(m, n, p) + ", error=" + e.what() + ")");
                }
            }
        }
    }
    return result;
}

SuiteResult verify_prime_power_products(const std::vector<Characteristic>& chars) {
    SuiteResult result{"prime-powers"};
    for (const auto& p : chars) {
        if (p.is_zero()) continue;
        const unsigned long pv = p.value();
        for (unsigned long q = pv; q <= 32; q *= pv) {
            for (unsigned long m = 1; m <= q; ++m) {
                try {
                    const Multiplicities got = product_multiplicities(m, q, p);
                    Multiplicities expect;
                    expect.add(q, m);
                    ++result.checks;
                    if (!(got == expect))
                        result.fail(
                            mismatch(instance(m, q, p), render(expect), render(got)));
                } catch (const std::exception& e) {
                    result.fail("(" + instance(m, q, p) + ", error=" + e.what() + ")");
                }
            }
        }
    }
    return result;
}

SuiteResult verify_f2_rule(const std::vector<Characteristic>& chars, unsigned long max_n) {
    SuiteResult result{"f2-rule"};
    for (const auto& p : chars) {
        for (unsigned long n = 1; n <= max_n; ++n) {
            try {
                Multiplicities expect;
                if (p.divides(n)) {
                    expect.add(n, 2);
                } else {
                    if (n >= 2) expect.add(n - 1, 1);
                    expect.add(n + 1, 1);
                }
                const Multiplicities got = product_multiplicities(2, n, p);
                ++result.checks;
                if (!(got == expect))
                    result.fail(mismatch(instance(2, n, p), render(expect), render(got)));
            } catch (const std::exception& e) {
                result.fail("(" + instance(2, n, p) + ", error=" + e.what() + ")");
            }
        }
    }
    return result;
}

SuiteResult verify_lucas_grid(unsigned long max_ab) {
    SuiteResult result{"lucas"};
    static const std::pair<unsigned long, unsigned long> pq[] = {
        {2, 2}, {2, 4}, {3, 3}, {3, 9}, {5, 5}};

    // one Pascal row, updated in place: after iteration a it holds C(a, 0..a)
    std::vector<mpz_class> row;
    row.reserve(max_ab + 1);
    row.emplace_back(1);

    for (unsigned long a = 0; a <= max_ab; ++a) {
        if (a > 0) {
            row.emplace_back(1);
            for (unsigned long b = a - 1; b >= 1; --b) row[b] += row[b - 1];
        }

        if (a > 0 && a % 250 == 0) {
            for (unsigned long b = 0; b <= a; b += 125) {
                ++result.checks;
                if (row[b] != binomial_exact(a, b))
                    result.fail(mismatch("pascal row a=" + std::to_string(a) +
                                             ", b=" + std::to_string(b),
                                         binomial_exact(a, b).get_str(),
                                         row[b].get_str()));
            }
        }

        for (unsigned long b = 0; b <= max_ab; ++b) {
            unsigned long expect2 = 0, expect3 = 0, expect5 = 0;
            if (b <= a) {
                expect2 = mpz_fdiv_ui(row[b].get_mpz_t(), 2);
                expect3 = mpz_fdiv_ui(row[b].get_mpz_t(), 3);
                expect5 = mpz_fdiv_ui(row[b].get_mpz_t(), 5);
            }
            for (const auto& [pv, q] : pq) {
                const unsigned long expected =
                    pv == 2 ? expect2 : (pv == 3 ? expect3 : expect5);
                const unsigned long got = lucas_binomial_mod(a, b, Characteristic(pv), q);
                ++result.checks;
                if (got != expected)
                    result.fail(mismatch("a=" + std::to_string(a) + ", b=" +
                                             std::to_string(b) + ", p=" +
                                             std::to_string(pv) + ", q=" +
                                             std::to_string(q),
                                         std::to_string(expected), std::to_string(got)));
            }
        }
    }
    return result;
}

SuiteResult verify_lucas_domain(unsigned long max_q) {
    SuiteResult result{"lucas-domain"};
    for (unsigned long pv : {2ul, 3ul, 5ul}) {
        const Characteristic p(pv);
        for (unsigned long q = pv; q <= max_q; q *= pv) {
            for (unsigned long m = 0; m <= q; ++m) {
                ++result.checks;
                if (!lucas_zero_block(m, q, p))
                    result.fail(mismatch("zero block m=" + std::to_string(m) + ", q=" +
                                             std::to_string(q) + ", p=" +
                                             std::to_string(pv),
                                         "true", "false"));
            }
        }
    }
    return result;
}

SuiteResult verify_congruence_constraint(const std::vector<Characteristic>& chars,
                                         unsigned long max_rank) {
    SuiteResult result{"congruence"};
    for (const auto& p : chars) {
        if (p.is_zero()) continue;
        const unsigned long pv = p.value();

        const unsigned long top_row = 2 * max_rank;
        std::vector<std::vector<unsigned long>> pas(top_row + 1);
        for (unsigned long x = 0; x <= top_row; ++x) {
            pas[x].assign(x + 1, 1);
            for (unsigned long y = 1; y < x; ++y)
                pas[x][y] = (pas[x - 1][y - 1] + pas[x - 1][y]) % pv;
        }

        for (unsigned long m = 1; m <= max_rank; ++m) {
            for (unsigned long n = 1; n <= max_rank; ++n) {
                const Multiplicities mult = product_multiplicities(m, n, p);
                const unsigned long top = mult.max_index();
                for (unsigned long r = 0; r <= m + n - 1; ++r) {
                    bool hyp = true;
                    if (m + n >= r + 2) {
                        for (unsigned long a = 0; hyp && a <= m + n - 2 - r; ++a) {
                            for (unsigned long b = 0; b <= a; ++b) {
                                const unsigned long x = m + n - 2 - a;
                                if (b + 1 > m) continue; // C(x, negative) = 0
                                const unsigned long y = m - 1 - b;
                                if (y > x) continue; // C(x, y) = 0 above the diagonal
                                if (pas[x][y] != 0) {
                                    hyp = false;
                                    break;
                                }
                            }
                        }
                    }
                    if (!hyp) continue;
                    ++result.checks;
                    if (top > r)
                        result.fail(mismatch(instance(m, n, p) + ", r=" + std::to_string(r),
                                             "support at most " + std::to_string(r),
                                             "largest index " + std::to_string(top)));
                }
            }
        }
    }
    return result;
}

SuiteResult verify_ring_laws(const std::vector<Characteristic>& chars,
                             unsigned long max_index) {
    SuiteResult result{"rings"};
    for (const auto& p : chars) {
        try {
            const unsigned long table_rank = std::max(2 * max_index - 1, 22ul);
            ProductTable table = product_table(p, table_rank);

            for (unsigned long a = 1; a <= max_index; ++a) {
                for (unsigned long b = a; b <= max_index; ++b) {
                    ++result.checks;
                    const RingElement ab = ring_mul(basis(a), basis(b), table);
                    const RingElement ba = ring_mul(basis(b), basis(a), table);
                    if (!(ab == ba))
                        result.fail(mismatch("commutativity a=" + std::to_string(a) +
                                                 ", b=" + std::to_string(b) +
                                                 ", p=" + pname(p),
                                             format_element(ab), format_element(ba)));
                }
            }

            for (unsigned long a = 1; a <= max_index; ++a) {
                for (unsigned long b = 1; b <= max_index; ++b) {
                    for (unsigned long c = 1; c <= max_index; ++c) {
                        const RingElement lhs =
                            ring_mul(ring_mul(basis(a), basis(b), table), basis(c), table);
                        const RingElement rhs =
                            ring_mul(basis(a), ring_mul(basis(b), basis(c), table), table);
                        ++result.checks;
                        if (!(lhs == rhs))
                            result.fail(mismatch("associativity a=" + std::to_string(a) +
                                                     ", b=" + std::to_string(b) +
                                                     ", c=" + std::to_string(c) +
                                                     ", p=" + pname(p),
                                                 format_element(lhs), format_element(rhs)));
                    }
                }
            }

            if (!p.is_zero()) {
                const RingElement witness = basis(2) - mpz_class(2) * basis(1);
                const RingElement prod = ring_mul(witness, basis(p.value()), table);
                ++result.checks;
                if (witness.is_zero() || basis(p.value()).is_zero() || !prod.is_zero())
                    result.fail(mismatch("zero divisor p=" + pname(p), "0",
                                         format_element(prod)));
            } else {
                for (const auto& [key, mult] : table.cells()) {
                    ++result.checks;
                    const Multiplicities ladder = char_zero_product(key.first, key.second);
                    if (!(mult == ladder))
                        result.fail(mismatch(instance(key.first, key.second, p) +
                                                 ", ladder cell",
                                             render(ladder), render(mult)));
                }
                for (unsigned long k = 1; k <= 20; ++k) {
                    const auto coords = char_zero_polynomial_coordinates(basis(k), p);
                    const RingElement back = evaluate_polynomial_at_f2(coords, table);
                    ++result.checks;
                    if (!(back == basis(k)))
                        result.fail(mismatch("coordinate round trip k=" + std::to_string(k),
                                             format_element(basis(k)),
                                             format_element(back)));
                }
            }
        } catch (const std::exception& e) {
            result.fail("(p=" + pname(p) + ", error=" + e.what() + ")");
        }
    }
    return result;
}

SuiteResult verify_structure(const std::vector<Characteristic>& chars, unsigned long nu_max,
                             unsigned long membership_samples,
                             unsigned long witness_samples) {
    SuiteResult result{"structure"};
    for (const auto& p : chars) {
        if (p.is_zero()) {
            result.fail("(p=0, structure suite needs a positive characteristic)");
            continue;
        }
        const unsigned long pv = p.value();

        for (unsigned long nu = 0; nu <= nu_max; ++nu) {
            const std::string where = "p=" + pname(p) + ", nu=" + std::to_string(nu);
            try {
                std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (pv << 20) ^ nu);
                auto draw = [&rng]() {
                    return static_cast<long>(rng() % 201) - 100;
                };
                auto random_element = [&](bool force_nonzero) {
                    std::vector<mpz_class> coeffs(nu + 1);
                    bool nonzero = false;
                    for (auto& c : coeffs) {
                        c = draw();
                        if (c != 0) nonzero = true;
                    }
                    if (force_nonzero && !nonzero)
                        coeffs[rng() % (nu + 1)] = 1 + static_cast<long>(rng() % 7);
                    return subring_element(p, nu, std::move(coeffs));
                };

                std::vector<mpz_class> expect_snf;
                mpz_class power = 1;
                for (unsigned long j = 0; j <= nu; ++j) {
                    expect_snf.push_back(power);
                    power *= pv;
                }
                ++result.checks;
                if (smith_normal_form(phi_matrix(p, nu)) != expect_snf)
                    result.fail("(" + where + ", smith form off the p-power ladder)");

                for (unsigned long t = 0; t < membership_samples; ++t) {
                    const SubringElement x = random_element(false);
                    const EmbeddedTuple tup = phi_map(x);
                    ++result.checks;
                    if (!image_membership(tup, p, nu)) {
                        result.fail("(" + where + ", phi image fails the congruences)");
                        continue;
                    }
                    ++result.checks;
                    if (!(phi_preimage(tup, p, nu) == x))
                        result.fail("(" + where + ", phi round trip moved an element)");

                    if (nu >= 1) {
                        EmbeddedTuple bad = tup;
                        const unsigned long j = 1 + rng() % nu;
                        bad.entries[j] += 1;
                        ++result.checks;
                        if (image_membership(bad, p, nu))
                            result.fail("(" + where + ", perturbed tuple accepted)");
                        ++result.checks;
                        bool rejected = false;
                        try {
                            phi_preimage(bad, p, nu);
                        } catch (const std::exception&) {
                            rejected = true;
                        }
                        if (!rejected)
                            result.fail("(" + where + ", perturbed tuple has a preimage)");
                    }
                }

                if (nu >= 1) {
                    std::vector<EmbeddedTuple> trials;
                    for (unsigned long t = 0; t < 25; ++t) {
                        EmbeddedTuple a;
                        for (unsigned long j = 0; j <= nu; ++j) a.entries.emplace_back(draw());
                        trials.push_back(std::move(a));
                    }
                    const EmbeddedTuple cond = conductor_generator(p, nu);
                    ++result.checks;
                    if (!conductor_check(cond, p, nu, trials))
                        result.fail("(" + where + ", conductor generator rejected)");
                    for (unsigned long k = 0; k <= nu; ++k) {
                        EmbeddedTuple weak = cond;
                        mpz_divexact_ui(weak.entries[k].get_mpz_t(),
                                        weak.entries[k].get_mpz_t(), pv);
                        ++result.checks;
                        if (conductor_check(weak, p, nu, trials))
                            result.fail("(" + where + ", entry " + std::to_string(k) +
                                        " divided by p still passes the conductor check)");
                    }

                    ++result.checks;
                    if (!fiber_ring_check(p, nu))
                        result.fail("(" + where + ", fiber ring fails to collapse)");
                }

                ++result.checks;
                if (!idempotent_check(p, nu))
                    result.fail("(" + where + ", rational idempotent relations fail)");

                for (unsigned long t = 0; t < witness_samples; ++t) {
                    const SubringElement x = random_element(true);
                    ++result.checks;
                    if (!square_leading_term_check(x))
                        result.fail("(" + where + ", square leading term off)");
                }

                for (unsigned long t = 0; t < 25; ++t) {
                    const SubringElement x = random_element(false);
                    const SubringElement y = random_element(false);

                    SubringElement sum = x;
                    for (unsigned long j = 0; j <= nu; ++j) sum.coeffs[j] += y.coeffs[j];

                    ++result.checks;
                    if (!(almost_constant_embedding(sum) ==
                          almost_constant_embedding(x) + almost_constant_embedding(y)))
                        result.fail("(" + where + ", embedding is not additive)");

                    ++result.checks;
                    if (!(almost_constant_embedding(subring_mul(x, y)) ==
                          almost_constant_embedding(x) * almost_constant_embedding(y)))
                        result.fail("(" + where + ", embedding is not multiplicative)");
                }

                mpz_class gen = 1;
                for (unsigned long i = 0; i <= nu; ++i) {
                    std::vector<mpz_class> coeffs(nu + 1, 0);
                    coeffs[i] = 1;
                    const auto seq =
                        almost_constant_embedding(subring_element(p, nu, coeffs));
                    ++result.checks;
                    if (seq.tail != gen)
                        result.fail("(" + where + ", generator " + std::to_string(i) +
                                    " has the wrong tail)");
                    gen *= pv;
                }
            } catch (const std::exception& e) {
                result.fail("(" + where + ", error=" + std::string(e.what()) + ")");
            }
        }

        // generator products against the linear-algebra kernel; the grid is
        // capped by the product dimension, which bounds the elimination size
        try {
            std::vector<unsigned long> gens{1};
            while (gens.back() <= 6561 / pv &&
                   gens.size() <= nu_max) // powers p^0 .. p^nu_max
                gens.push_back(gens.back() * pv);

            ProductTable table(p, gens.back(), CacheMissPolicy::compute_on_miss);

            for (std::size_t i = 0; i < gens.size(); ++i) {
                for (std::size_t j = i; j < gens.size(); ++j) {
                    if (gens[i] * gens[j] > 6561) continue;
                    const RingElement expect = mpz_class(gens[i]) * basis(gens[j]);
                    const RingElement got = ring_mul(basis(gens[i]), basis(gens[j]), table);
                    ++result.checks;
                    if (!(got == expect))
                        result.fail(mismatch("generators p=" + pname(p) + ", q1=" +
                                                 std::to_string(gens[i]) + ", q2=" +
                                                 std::to_string(gens[j]),
                                             format_element(expect), format_element(got)));
                }
            }

            for (unsigned long m = 1; m <= 12; ++m) {
                ++result.checks;
                if (!localization_check(m, p))
                    result.fail("(p=" + pname(p) + ", m=" + std::to_string(m) +
                                ", localization identity fails)");
            }
        } catch (const std::exception& e) {
            result.fail("(p=" + pname(p) + ", error=" + std::string(e.what()) + ")");
        }
    }
    return result;
}

} // namespace convring
