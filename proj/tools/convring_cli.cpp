#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "convring/characteristic.hpp"
#include "convring/group_law.hpp"
#include "convring/kernel.hpp"
#include "convring/ring.hpp"
#include "convring/subring.hpp"
#include "convring/verify.hpp"

namespace {

using namespace convring;

constexpr int kExitVerification = 1;
constexpr int kExitArgument = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read " + path);
    return buf.str();
}

int write_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return kExitIo;
    }
    out << payload;
    out.flush();
    if (!out.good()) {
        std::cerr << "write to " << path << " failed\n";
        return kExitIo;
    }
    return 0;
}

GroupLaw load_law(const std::string& selector, const Characteristic& p, unsigned long m,
                  unsigned long n) {
    const unsigned long xb = std::max(m, 2ul);
    const unsigned long yb = std::max(n, 2ul);
    if (selector == "additive") return additive_law(p, xb, yb);
    if (selector == "multiplicative") return multiplicative_law(p, xb, yb);
    const std::string text = read_file(selector); // IO failures propagate as such
    try {
        GroupLaw law = group_law_from_json(text);
        if (!(law.characteristic() == p))
            throw std::invalid_argument("law file " + selector + " carries characteristic " +
                                        std::to_string(law.characteristic().value()) +
                                        ", the command asked for " +
                                        std::to_string(p.value()));
        if (!law.covers(m, n))
            throw std::invalid_argument("law file " + selector +
                                        " does not cover bidegrees up to (" +
                                        std::to_string(m) + ", " + std::to_string(n) + ")");
        return law;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument("law file " + selector + ": " + e.what());
    }
}

int run_product(unsigned long pv, unsigned long m, unsigned long n,
                const std::string& law_selector, bool oracle) {
    const Characteristic p(pv);
    if (m < 1 || n < 1) {
        std::cerr << "basis indices must be positive\n";
        return kExitArgument;
    }

    const Multiplicities mult =
        law_selector == "additive"
            ? product_multiplicities(m, n, p)
            : product_multiplicities(m, n, p, load_law(law_selector, p, m, n));

    if (oracle) {
        const GroupLaw add = additive_law(p, std::max(m, 2ul), std::max(n, 2ul));
        const Multiplicities elim = multiplicities_from_ranks(law_rank_profile(m, n, p, add));
        if (!(elim == mult)) {
            RingElement a, b;
            for (const auto& [i, c] : elim.counts()) a.add_term(i, mpz_class(c));
            for (const auto& [i, c] : mult.counts()) b.add_term(i, mpz_class(c));
            std::cerr << "(m=" << m << ", n=" << n << ", p=" << pv
                      << ", expected=" << format_element(a) << ", got=" << format_element(b)
                      << ")\n";
            return kExitVerification;
        }
    }

    if (const std::string diag = check_product_identities(mult, m, n); !diag.empty()) {
        std::cerr << "(m=" << m << ", n=" << n << ", p=" << pv << ", " << diag << ")\n";
        return kExitVerification;
    }

    std::cout << format_product(m, n, mult) << "\n";
    std::string lambda = "lambda: [";
    bool first = true;
    for (const auto& [i, c] : mult.counts()) {
        if (!first) lambda += ", ";
        lambda += std::to_string(i) + ": " + std::to_string(c);
        first = false;
    }
    std::cout << lambda << "]\n";
    std::cout << "sum lambda = " << mult.block_count().get_str() << "\n";
    std::cout << "sum i*lambda = " << mult.total_dimension().get_str() << "\n";
    return 0;
}

std::string cache_path_for(const std::string& explicit_path, unsigned long pv,
                           unsigned long max_rank) {
    if (!explicit_path.empty()) return explicit_path;
    const char* dir = std::getenv("CONVRING_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    return std::string(dir) + "/table-p" + std::to_string(pv) + "-max" +
           std::to_string(max_rank) + ".json";
}

int run_table(unsigned long pv, unsigned long max_rank, const std::string& out_path,
              const std::string& format, const std::string& cache_flag) {
    const Characteristic p(pv);
    if (max_rank < 1) {
        std::cerr << "--max must be at least 1\n";
        return kExitArgument;
    }

    const std::string cache_path = cache_path_for(cache_flag, pv, max_rank);
    std::optional<ProductTable> table;

    if (!cache_path.empty()) {
        std::ifstream in(cache_path, std::ios::binary);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            try {
                ProductTable cached = table_from_json(buf.str());
                if (cached.characteristic() == p && cached.max_rank() == max_rank)
                    table.emplace(std::move(cached));
                else
                    std::cerr << "ignoring cache " << cache_path
                              << ": parameters do not match\n";
            } catch (const std::exception& e) {
                std::cerr << "ignoring cache " << cache_path << ": " << e.what() << "\n";
            }
        }
    }

    const bool fresh = !table.has_value();
    if (fresh) table.emplace(product_table(p, max_rank));
    table->populate(); // fills any holes a partial cache may have left

    if (fresh && !cache_path.empty()) {
        const int rc = write_file(cache_path, table_to_json(*table));
        if (rc != 0) {
            if (!cache_flag.empty()) return rc; // explicit cache must be writable
            std::cerr << "continuing without cache\n";
        }
    }

    const std::string payload =
        format == "csv" ? table_to_csv(*table) : table_to_json(*table);
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    return write_file(out_path, payload);
}

int run_verify(const std::string& suite, const std::vector<unsigned long>& char_values,
               unsigned long max_rank, unsigned long nu, unsigned long samples,
               unsigned long lucas_max, const std::string& report_path, bool verbose) {
    static const std::vector<std::string> known = {
        "all",    "kernel",     "oracles", "laws",  "products",
        "f2",     "lucas",      "congruence", "rings", "structure"};
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
        std::cerr << "unknown suite " << suite << "; pick one of:";
        for (const auto& s : known) std::cerr << " " << s;
        std::cerr << "\n";
        return kExitArgument;
    }

    std::vector<Characteristic> chars;
    for (unsigned long v : char_values) chars.emplace_back(v);
    if (chars.empty()) {
        std::cerr << "at least one characteristic is required\n";
        return kExitArgument;
    }
    std::vector<Characteristic> positive;
    for (const auto& p : chars)
        if (!p.is_zero()) positive.push_back(p);

    const bool all = suite == "all";
    std::vector<SuiteResult> results;
    auto run = [&](SuiteResult r, double seconds) {
        if (verbose) std::cout << "suite " << r.suite << " took " << seconds << " s\n";
        results.push_back(std::move(r));
    };
    auto timed = [&](auto&& engine) {
        const auto start = std::chrono::steady_clock::now();
        SuiteResult r = engine();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        run(std::move(r), dt.count());
    };

    if (all || suite == "kernel")
        timed([&] { return verify_kernel_identities(chars, max_rank); });
    if (all || suite == "oracles")
        timed([&] { return verify_oracle_agreement(chars, max_rank); });
    if (all || suite == "laws")
        timed([&] { return verify_law_independence(chars, max_rank); });
    if (all || suite == "products")
        timed([&] { return verify_prime_power_products(chars); });
    if (all || suite == "f2") timed([&] { return verify_f2_rule(chars, 100); });
    if (all || suite == "lucas") {
        timed([&] { return verify_lucas_grid(lucas_max); });
        timed([&] { return verify_lucas_domain(125); });
    }
    if (all || suite == "congruence")
        timed([&] { return verify_congruence_constraint(chars, max_rank); });
    if (all || suite == "rings") timed([&] { return verify_ring_laws(chars, max_rank); });
    if (all || suite == "structure") {
        if (positive.empty()) {
            std::cerr << "the structure suite needs a positive characteristic\n";
            return kExitArgument;
        }
        if (positive.size() != chars.size())
            std::cerr << "characteristic 0 is skipped by the structure suite\n";
        timed([&] { return verify_structure(positive, nu, samples, samples); });
    }

    bool ok = true;
    std::string first_failure;
    for (const auto& r : results) {
        std::cout << "suite " << r.suite << ": " << r.checks << " checks, "
                  << r.failure_count << " failures\n";
        for (const auto& f : r.failures) std::cout << "  " << f << "\n";
        if (!r.passed() && ok) {
            ok = false;
            first_failure = r.failures.empty() ? "(unrecorded)" : r.failures.front();
        }
    }

    if (!report_path.empty()) {
        nlohmann::ordered_json doc;
        doc["suites"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json item;
            item["suite"] = r.suite;
            item["checks"] = r.checks;
            item["failure_count"] = r.failure_count;
            item["failures"] = r.failures;
            item["passed"] = r.passed();
            doc["suites"].push_back(std::move(item));
        }
        doc["passed"] = ok;
        const int rc = write_file(report_path, doc.dump(2) + "\n");
        if (rc != 0) return rc;
    }

    if (!ok) {
        std::cerr << "first counterexample: " << first_failure << "\n";
        return kExitVerification;
    }
    return 0;
}

int run_structure(unsigned long pv, unsigned long nu, unsigned long witnesses,
                  const std::string& out_path) {
    if (pv == 0) {
        std::cerr << "structure reports need a positive characteristic\n";
        return kExitArgument;
    }
    const Characteristic p(pv);
    const std::string payload = structure_report_json(p, nu, witnesses);
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    return write_file(out_path, payload);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiplication tables for the convolution ring of Jordan blocks"};
    app.require_subcommand(1);

    unsigned long pv = 0, m = 0, n = 0, max_rank = 12, nu = 4;
    unsigned long samples = 200, lucas_max = 400, witnesses = 200;
    std::string law_selector = "additive", out_path, format = "json", cache_flag;
    std::string suite = "all", report_path;
    std::vector<unsigned long> char_values{0, 2, 3, 5};
    bool oracle = false, verbose = false;

    CLI::App* cmd_product = app.add_subcommand("product", "compute one product f_m * f_n");
    cmd_product->add_option("--char", pv, "characteristic, 0 or a prime")->required();
    cmd_product->add_option("-m", m, "left basis index")->required();
    cmd_product->add_option("-n", n, "right basis index")->required();
    cmd_product->add_option("--law", law_selector,
                            "additive, multiplicative, or a law file in JSON");
    cmd_product->add_flag("--oracle", oracle,
                          "cross-check against elimination (forces it at characteristic 0)");

    CLI::App* cmd_table = app.add_subcommand("table", "emit the product table up to a rank");
    cmd_table->add_option("--char", pv, "characteristic, 0 or a prime")->required();
    cmd_table->add_option("--max", max_rank, "largest basis index")->required();
    cmd_table->add_option("--out", out_path, "output file (stdout when absent)");
    cmd_table->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_table->add_option("--cache", cache_flag,
                          "cache file (defaults to CONVRING_CACHE_DIR when set)");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run verification suites");
    cmd_verify->add_option("--suite", suite,
                           "all, kernel, oracles, laws, products, f2, lucas, congruence, "
                           "rings, or structure");
    cmd_verify->add_option("--char", char_values, "characteristics, comma separated")
        ->delimiter(',');
    cmd_verify->add_option("--max", max_rank, "grid bound for the kernel-side suites");
    cmd_verify->add_option("--nu", nu, "largest subring rank for the structure suite");
    cmd_verify->add_option("--samples", samples, "random samples per structure instance");
    cmd_verify->add_option("--lucas-max", lucas_max, "grid bound for the binomial suite");
    cmd_verify->add_option("--report", report_path, "write a JSON report here");
    cmd_verify->add_flag("-v,--verbose", verbose, "print per-suite timings");

    CLI::App* cmd_structure =
        app.add_subcommand("structure", "emit the subring structure report");
    cmd_structure->add_option("--char", pv, "positive characteristic")->required();
    cmd_structure->add_option("--nu", nu, "subring rank")->required();
    cmd_structure->add_option("--witnesses", witnesses, "random square witnesses");
    cmd_structure->add_option("--out", out_path, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitArgument;
    }

    try {
        if (cmd_product->parsed()) return run_product(pv, m, n, law_selector, oracle);
        if (cmd_table->parsed()) return run_table(pv, max_rank, out_path, format, cache_flag);
        if (cmd_verify->parsed())
            return run_verify(suite, char_values, max_rank, nu, samples, lucas_max,
                              report_path, verbose);
        if (cmd_structure->parsed()) return run_structure(pv, nu, witnesses, out_path);
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitArgument;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitVerification;
    }
    return kExitArgument;
}
