#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "convring/characteristic.hpp"
#include "convring/subring.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string fresh_dir() {
    char tmpl[] = "/tmp/convring-cli-XXXXXX";
    if (mkdtemp(tmpl) == nullptr) throw std::runtime_error("mkdtemp failed");
    return tmpl;
}

Run cli(const std::string& args, const std::string& env = "") {
    static const std::string scratch = fresh_dir();
    const std::string out = scratch + "/out", err = scratch + "/err";
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string(CONVRING_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("product lines") {
    auto r = cli("product --char 2 -m 3 -n 3");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "f3*f3 = f1 + 2 f4\n"
          "lambda: [1: 1, 4: 2]\n"
          "sum lambda = 3\n"
          "sum i*lambda = 9\n");

    auto swapped = cli("product --char 2 -m 3 -n 4");
    CHECK(swapped.code == 0);
    CHECK(contains(swapped.out, "f3*f4 = 3 f4"));

    CHECK(contains(cli("product --char 0 -m 2 -n 3").out, "f2*f3 = f2 + f4"));
    auto mod3 = cli("product --char 3 -m 2 -n 3");
    CHECK(mod3.out ==
          "f2*f3 = 2 f3\n"
          "lambda: [3: 2]\n"
          "sum lambda = 2\n"
          "sum i*lambda = 6\n");

    auto checked = cli("product --char 5 -m 4 -n 4 --oracle");
    CHECK(checked.code == 0);
    CHECK(contains(checked.out, "f4*f4 ="));
}

TEST_CASE("product argument and law handling") {
    CHECK(cli("product --char 4 -m 2 -n 2").code == 2);
    CHECK(cli("product --char 2 -m 0 -n 2").code == 2);
    CHECK(cli("product --char 2 -m 2").code == 2);  // missing -n
    CHECK(cli("product --char 2 -m 2 -n 2 --law /does/not/exist.json").code == 3);

    const std::string dir = fresh_dir();
    const std::string good = dir + "/law.json";
    spit(good, R"({"p": 0, "coeffs": [[1,0,1],[0,1,1],[1,1,-1]]})");
    auto with_law = cli("product --char 0 -m 4 -n 3 --law " + good);
    CHECK(with_law.code == 0);
    CHECK(with_law.out == cli("product --char 0 -m 4 -n 3").out);

    const std::string mismatched = dir + "/law3.json";
    spit(mismatched, R"({"p": 3, "coeffs": [[1,0,1],[0,1,1]]})");
    auto r = cli("product --char 2 -m 2 -n 2 --law " + mismatched);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());

    const std::string broken = dir + "/broken.json";
    spit(broken, R"({"p": 0, "coeffs": [[1,0,2],[0,1,1]]})");
    CHECK(cli("product --char 0 -m 2 -n 2 --law " + broken).code == 2);

    const std::string narrow = dir + "/narrow.json";
    spit(narrow, R"({"p": 0, "coeffs": [[1,0,1],[0,1,1]], "xbound": 2, "ybound": 2})");
    CHECK(cli("product --char 0 -m 2 -n 2 --law " + narrow).code == 0);
    CHECK(cli("product --char 0 -m 3 -n 2 --law " + narrow).code == 2);
}

TEST_CASE("table rendering and files") {
    const std::string dir = fresh_dir();
    const std::string f1 = dir + "/t1.json", f2 = dir + "/t2.json";

    CHECK(cli("table --char 2 --max 8 --out " + f1).code == 0);
    auto doc = nlohmann::json::parse(slurp(f1));
    CHECK(doc.at("char") == 2);
    CHECK(doc.at("cells").size() == 36);

    CHECK(cli("table --char 2 --max 8 --out " + f2).code == 0);
    CHECK(slurp(f1) == slurp(f2));

    auto csv = cli("table --char 2 --max 3 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out ==
          "m,n,i,lambda\n"
          "1,1,1,1\n"
          "1,2,2,1\n"
          "1,3,3,1\n"
          "2,2,2,2\n"
          "2,3,2,1\n"
          "2,3,4,1\n"
          "3,3,1,1\n"
          "3,3,4,2\n");

    CHECK(cli("table --char 2 --max 3 --out /does/not/exist/t.json").code == 3);
    CHECK(cli("table --char 2 --max 3 --format yaml").code == 2);
    CHECK(cli("table --char 2").code == 2);  // --max is required
}

TEST_CASE("table caching") {
    const std::string dir = fresh_dir();
    const std::string env = "CONVRING_CACHE_DIR=" + dir;

    auto first = cli("table --char 2 --max 6", env);
    CHECK(first.code == 0);
    const std::string cache_file = dir + "/table-p2-max6.json";
    CHECK(nlohmann::json::parse(slurp(cache_file)).at("max_rank") == 6);

    auto second = cli("table --char 2 --max 6", env);
    CHECK(second.code == 0);
    CHECK(second.out == first.out);

    // a corrupted cache is ignored and rebuilt
    spit(cache_file, "{broken");
    auto third = cli("table --char 2 --max 6", env);
    CHECK(third.code == 0);
    CHECK(third.out == first.out);
    CHECK(contains(third.err, "cache"));

    const std::string explicit_cache = dir + "/explicit.json";
    CHECK(cli("table --char 3 --max 4 --cache " + explicit_cache).code == 0);
    CHECK(nlohmann::json::parse(slurp(explicit_cache)).at("char") == 3);

    // an explicit cache with the wrong parameters is ignored, not trusted
    auto cross = cli("table --char 2 --max 4 --cache " + explicit_cache);
    CHECK(cross.code == 0);
    CHECK(nlohmann::json::parse(cross.out).at("char") == 2);

    CHECK(cli("table --char 2 --max 3 --cache /does/not/exist/c.json").code == 3);
}

TEST_CASE("verification driver") {
    auto laws = cli("verify --suite laws --char 2 --max 5");
    CHECK(laws.code == 0);
    CHECK(contains(laws.out, "suite laws: 30 checks, 0 failures"));

    auto timed = cli("verify --suite laws --char 2 --max 4 -v");
    CHECK(timed.code == 0);
    CHECK(contains(timed.out, "took"));

    CHECK(cli("verify --suite bogus").code == 2);
    CHECK(cli("verify --suite structure --char 0").code == 2);

    const std::string report = fresh_dir() + "/report.json";
    auto f2 = cli("verify --suite f2 --char 2,3 --report " + report);
    CHECK(f2.code == 0);
    auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc.at("passed") == true);
    CHECK(doc.at("suites").size() == 1);
    CHECK(doc.at("suites").at(0).at("suite") == "f2-rule");
    CHECK(doc.at("suites").at(0).at("failure_count") == 0);
    CHECK(doc.at("suites").at(0).at("checks").get<unsigned long>() > 0);
}

TEST_CASE("structure reports") {
    auto r = cli("structure --char 2 --nu 2 --witnesses 5");
    CHECK(r.code == 0);
    CHECK(r.out == convring::structure_report_json(convring::Characteristic(2), 2, 5));

    const std::string out = fresh_dir() + "/report.json";
    CHECK(cli("structure --char 5 --nu 3 --witnesses 3 --out " + out).code == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("conductor") == nlohmann::json::parse("[5,25,125,125]"));

    CHECK(cli("structure --char 0 --nu 2").code == 2);
    CHECK(cli("structure --char 2").code == 2);  // --nu is required
}
