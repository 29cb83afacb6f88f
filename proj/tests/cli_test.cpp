#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                        : "/tmp") +
                      "/fpb_cli_out.txt";
    std::string cmd = std::string(FPB_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream f(tmp, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    return r;
}

std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("curves endpoints and row count") {
    RunResult r = run_cli("curves --grid 2");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv_rows(r.output);
    REQUIRE(rows.size() == 3);  // header + 2 data rows
    CHECK(rows[0] == std::vector<std::string>{"pe", "renyi_projective",
                                              "renyi_povm"});
    CHECK(std::stod(rows[1][0]) == doctest::Approx(0.0));
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.0));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.0));
    CHECK(std::stod(rows[2][0]) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::stod(rows[2][2]) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("curves dominance and re-derivable columns") {
    RunResult r = run_cli("curves --grid 35");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv_rows(r.output);
    REQUIRE(rows.size() == 36);
    for (size_t i = 2; i + 1 < rows.size(); ++i) {
        double proj = std::stod(rows[i][1]);
        double povm = std::stod(rows[i][2]);
        CHECK(proj > povm);
    }
    // Recompute the derived columns from the pe column.
    for (size_t i = 1; i < rows.size(); ++i) {
        double pe = std::stod(rows[i][0]);
        double expect_proj =
            std::log2(1.0 + 4.0 * pe * (1.0 - 2.0 * pe) / ((1.0 - pe) * (1.0 - pe)));
        double expect_povm = 2.0 * pe / (1.0 - pe);
        CHECK(std::abs(std::stod(rows[i][1]) - expect_proj) < 1e-10);
        CHECK(std::abs(std::stod(rows[i][2]) - expect_povm) < 1e-10);
    }
}

TEST_CASE("curves rejects a degenerate grid") {
    CHECK(run_cli("curves --grid 1").exit_code == 1);
}

TEST_CASE("table contents and validation") {
    RunResult r = run_cli("table --pe 0.2 --level state");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv_rows(r.output);
    REQUIRE(rows.size() == 25);  // header + 24 cells
    double total = 0.0;
    bool found = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        total += std::stod(rows[i][3]);
        if (rows[i][0] == "H" && rows[i][1] == "V" && rows[i][2] == "H") {
            CHECK(std::stod(rows[i][3]) == doctest::Approx(0.025).epsilon(1e-10));
            found = true;
        }
    }
    CHECK(found);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(run_cli("table --pe 0.4").exit_code == 1);
}

TEST_CASE("bit table at pe = 1/3 has no inconclusive mass") {
    RunResult r = run_cli("table --pe 0.333333333333333 --level bit");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv_rows(r.output);
    REQUIRE(rows.size() == 13);
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][2] == "inc") {
            CHECK(std::stod(rows[i][3]) == doctest::Approx(0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("simulate validates its configuration") {
    CHECK(run_cli("simulate --trials 0 --pe 0.2").exit_code == 1);
    CHECK(run_cli("simulate --trials 1000 --pe 0.4").exit_code == 1);
}

TEST_CASE("simulate produces byte-identical output for identical flags") {
    std::string a = "/tmp/fpb_sim_a.json";
    std::string b = "/tmp/fpb_sim_b.json";
    REQUIRE(run_cli("simulate --trials 20000 --seed 42 --pe 0.2 --format json --out " +
                    a)
                .exit_code == 0);
    REQUIRE(run_cli("simulate --trials 20000 --seed 42 --pe 0.2 --format json --out " +
                    b)
                .exit_code == 0);
    std::string ca = read_file(a);
    std::string cb = read_file(b);
    REQUIRE_FALSE(ca.empty());
    CHECK(ca == cb);
}

TEST_CASE("lossy reports analytic and empirical quantities") {
    RunResult r = run_cli("lossy --eta 0.3 --trials 50000 --seed 1");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv_rows(r.output);
    double err = -1.0, renyi = -1.0;
    for (const auto& row : rows) {
        if (row[0] == "analytic_error_given_conclusive")
            CHECK(std::stod(row[1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
        if (row[0] == "analytic_renyi_conditional")
            CHECK(std::stod(row[1]) == doctest::Approx(1.0));
        if (row[0] == "empirical_error_given_conclusive") err = std::stod(row[1]);
        if (row[0] == "empirical_renyi_conditional") renyi = std::stod(row[1]);
    }
    CHECK(std::abs(err - 1.0 / 3.0) < 0.02);
    CHECK(std::abs(renyi - 1.0) < 0.02);

    CHECK(run_cli("lossy --eta 1.5 --trials 100").exit_code == 1);
}

TEST_CASE("validate passes on a fresh build and fails under the fault hook") {
    RunResult ok = run_cli("validate");
    CHECK(ok.exit_code == 0);
    // At least six named check groups.
    int groups = 0;
    std::istringstream is(ok.output);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("[PASS]", 0) == 0 || line.rfind("[FAIL]", 0) == 0) ++groups;
    }
    CHECK(groups >= 6);

    CHECK(run_cli("validate --inject-fault").exit_code == 2);
}
