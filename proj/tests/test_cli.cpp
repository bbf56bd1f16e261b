#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include "gfmm/gfmm.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

class CliHarness {
public:
    CliHarness() {
        dir_ = fs::temp_directory_path() /
               ("gfmm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~CliHarness() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream f(path(name), std::ios::binary);
        f << content;
        return path(name);
    }

    RunResult run(const std::string& args) const {
        const std::string out_path = path("stdout.txt");
        const std::string err_path = path("stderr.txt");
        std::string cmd = std::string(GFMM_CLI_PATH) + " " + args + " >" + out_path +
                          " 2>" + err_path;
        int status = std::system(cmd.c_str());
        RunResult r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out_path);
        r.err = slurp(err_path);
        return r;
    }

private:
    static std::string slurp(const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    static inline int counter_ = 0;
    fs::path dir_;
};

const std::string kDemoData = std::string(GFMM_DATA_DIR) + "/demo_fruit.csv";
const std::string kDemoSchema = std::string(GFMM_DATA_DIR) + "/demo_fruit.schema";

}  // namespace

TEST_CASE("fit then predict reproduces the labels of a separable toy set") {
    CliHarness cli;
    const std::string model = cli.path("fruit.model");

    RunResult fit = cli.run("fit --data " + kDemoData + " --schema " + kDemoSchema +
                            " --theta 0.3 --delta 0.5 --alpha auto --model-out " + model);
    REQUIRE(fit.exit_code == 0);
    CHECK_THAT(fit.err, ContainsSubstring("hyperboxes"));

    RunResult predict = cli.run("predict --model " + model + " --data " + kDemoData);
    REQUIRE(predict.exit_code == 0);

    std::istringstream lines(predict.out);
    std::string line;
    std::getline(lines, line);
    CHECK_THAT(line, ContainsSubstring(",predicted,membership"));
    int row = 0;
    while (std::getline(lines, line)) {
        // kind is the second-to-last input column; predicted follows it.
        auto cells = gfmm::detail::split(line, ',');
        REQUIRE(cells.size() == 7);
        REQUIRE(cells[5] == cells[4]);
        ++row;
    }
    CHECK(row == 16);
}

TEST_CASE("cv emits one results row and is byte-deterministic") {
    CliHarness cli;
    const std::string args = "cv --data " + kDemoData + " --schema " + kDemoSchema +
                             " --repeats 3 --folds 4 --seed 11 --theta 0.3 --delta 0.5"
                             " --alpha auto --variant v1";
    RunResult first = cli.run(args);
    REQUIRE(first.exit_code == 0);
    CHECK_THAT(first.out, ContainsSubstring(gfmm::kResultsHeader));
    CHECK_THAT(first.out, ContainsSubstring("demo_fruit,eiol-gfmm-v1,0.3,0.5,auto,1,v1,3,4,11,"));

    RunResult second = cli.run(args);
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("cv accepts the alpha policies") {
    CliHarness cli;
    for (const std::string alpha : {"0.6", "est-v1", "est-v2", "tune"}) {
        RunResult r = cli.run("cv --data " + kDemoData + " --schema " + kDemoSchema +
                              " --repeats 1 --folds 4 --seed 3 --theta 0.3 --delta 0.5"
                              " --alpha " + alpha);
        INFO("alpha = " << alpha);
        REQUIRE(r.exit_code == 0);
        CHECK_THAT(r.out, ContainsSubstring("," + alpha + ","));
    }
}

TEST_CASE("tune prints the best grid combination") {
    CliHarness cli;
    RunResult r = cli.run("tune --data " + kDemoData + " --schema " + kDemoSchema +
                          " --grid-theta 0.3,1.0 --grid-delta 0.5,1.0"
                          " --grid-alpha 0.0,0.5,1.0 --inner-folds 3 --seed 5");
    REQUIRE(r.exit_code == 0);
    CHECK_THAT(r.out, ContainsSubstring("theta="));
    CHECK_THAT(r.out, ContainsSubstring("delta="));
    CHECK_THAT(r.out, ContainsSubstring("alpha="));

    RunResult again = cli.run("tune --data " + kDemoData + " --schema " + kDemoSchema +
                              " --grid-theta 0.3,1.0 --grid-delta 0.5,1.0"
                              " --grid-alpha 0.0,0.5,1.0 --inner-folds 3 --seed 5");
    CHECK(again.out == r.out);
}

TEST_CASE("estimate-alpha prints a weight in the unit interval") {
    CliHarness cli;
    for (const std::string method : {"v1", "v2"}) {
        RunResult r = cli.run("estimate-alpha --data " + kDemoData + " --schema " +
                              kDemoSchema + " --method " + method +
                              " --theta 0.3 --delta 0.5 --seed 2");
        INFO("method = " << method);
        REQUIRE(r.exit_code == 0);
        double estimate = std::stod(r.out);
        CHECK(estimate >= 0.0);
        CHECK(estimate <= 1.0);
    }
    CHECK(cli.run("estimate-alpha --data " + kDemoData + " --schema " + kDemoSchema +
                  " --method v3")
              .exit_code == 1);
}

TEST_CASE("stats friedman reproduces the published comparison") {
    CliHarness cli;
    RunResult r = cli.run("stats friedman --table " + std::string(GFMM_FIXTURE_DIR) +
                          "/method_scores_theta01.csv --alpha 0.05");
    REQUIRE(r.exit_code == 0);
    CHECK_THAT(r.out, ContainsSubstring("average ranks:"));
    CHECK_THAT(r.out, ContainsSubstring("decision: reject"));

    // f_f printed on its own line; parse and compare to the published value.
    std::istringstream lines(r.out);
    std::string line;
    double f_f = 0.0, cd = 0.0;
    while (std::getline(lines, line)) {
        if (line.rfind("f_f=", 0) == 0) f_f = std::stod(line.substr(4));
        if (line.rfind("nemenyi_cd=", 0) == 0) cd = std::stod(line.substr(11));
    }
    CHECK_THAT(f_f, WithinAbs(5.554, 0.02));
    CHECK_THAT(cd, WithinAbs(2.569 * std::sqrt(4.0 * 5.0 / (6.0 * 14.0)), 1e-6));
    CHECK_THAT(r.out, ContainsSubstring("cd groups:"));
}

TEST_CASE("inspect prints boxes or a per-class summary") {
    CliHarness cli;
    const std::string model = cli.path("m.model");
    REQUIRE(cli.run("fit --data " + kDemoData + " --schema " + kDemoSchema +
                    " --theta 0.3 --model-out " + model)
                .exit_code == 0);

    RunResult full = cli.run("inspect --model " + model);
    REQUIRE(full.exit_code == 0);
    CHECK_THAT(full.out, ContainsSubstring("box seq=0"));

    RunResult summary = cli.run("inspect --model " + model + " --summary");
    REQUIRE(summary.exit_code == 0);
    CHECK_THAT(summary.out, ContainsSubstring("class apple:"));
    CHECK_THAT(summary.out, ContainsSubstring("class orange:"));
}

TEST_CASE("exit codes distinguish usage, data, and numeric failures") {
    CliHarness cli;

    SECTION("missing required flag is a usage error") {
        RunResult r = cli.run("fit --data " + kDemoData);
        CHECK(r.exit_code == 1);
    }
    SECTION("an unknown subcommand is a usage error") {
        CHECK(cli.run("frobnicate").exit_code == 1);
    }
    SECTION("a bad alpha string is a usage error") {
        RunResult r = cli.run("fit --data " + kDemoData + " --schema " + kDemoSchema +
                              " --alpha wild --model-out " + cli.path("x.model"));
        CHECK(r.exit_code == 1);
        CHECK_THAT(r.err, ContainsSubstring("--alpha"));
    }
    SECTION("a missing dataset is a data error") {
        RunResult r = cli.run("fit --data /nonexistent.csv --schema " + kDemoSchema +
                              " --model-out " + cli.path("x.model"));
        CHECK(r.exit_code == 2);
    }
    SECTION("a corrupt model file is a data error") {
        const std::string bad = cli.write("bad.model", "GFMM-MODEL 1\ngarbage\n");
        RunResult r = cli.run("inspect --model " + bad);
        CHECK(r.exit_code == 2);
        CHECK_THAT(r.err, ContainsSubstring("checksum"));
    }
    SECTION("an impossible statistic is a numeric error") {
        // Two methods always tied over two datasets: chi2 = max, F undefined.
        const std::string table =
            cli.write("tied.csv", "dataset,m1,m2\na,1.0,0.5\nb,1.0,0.5\n");
        RunResult r = cli.run("stats friedman --table " + table + " --alpha 0.05");
        CHECK(r.exit_code == 3);
    }
}
