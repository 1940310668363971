#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string cli() {
    const char* p = std::getenv("COHFRAC_CLI");
    return p ? p : "./build/tools/cohfrac";
}

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("COHFRAC_FIXTURES");
    return std::string(dir ? dir : "fixtures") + "/" + name;
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/cohfrac_cli_stdout.txt";
    const std::string cmd =
        cli() + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("fraction subcommand on fixtures") {
    const RunResult r = run("fraction --input " + fixture("plus.json"));
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.0));
    CHECK(j["upper_bound"].get<double>() == doctest::Approx(1.0));
    CHECK(j["aligned"].get<bool>());
    CHECK(j["converged"].get<bool>());
    CHECK(j["distillable_coherence"].get<double>() == doctest::Approx(1.0));

    const RunResult mix =
        run("fraction --input " + fixture("plus_bell_mix_p04.json"));
    CHECK(mix.code == 0);
    CHECK(json::parse(mix.out)["value"].get<double>() ==
          doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("fraction reports non-convergence through exit code 3") {
    const RunResult r = run("fraction --input " + fixture("qutrit_gap.json") +
                            " --restarts 1 --iters 1");
    CHECK(r.code == 3);
    const json j = json::parse(r.out); // value is still printed
    CHECK(!j["converged"].get<bool>());
    CHECK(j["value"].get<double>() > 1.0 / 3.0);
}

TEST_CASE("fraction csv format") {
    const RunResult r =
        run("fraction --input " + fixture("plus.json") + " --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("value,1\n", 0) == 0);
    CHECK(r.out.find("aligned,true") != std::string::npos);
}

TEST_CASE("bad inputs exit with code 2") {
    CHECK(run("fraction --input /no/such/file.json").code == 2);
    CHECK(run("fraction --input " + fixture("plus.json") + " --precision 50")
              .code == 2);
    CHECK(run("").code == 2);               // subcommand required
    CHECK(run("frobnicate").code == 2);     // unknown subcommand
    CHECK(run("verify not_a_suite").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("channel subcommand matches the worked examples") {
    const RunResult dep =
        run("channel --channel " + fixture("chan_depolarizing_p05.json"));
    CHECK(dep.code == 0);
    json j = json::parse(dep.out);
    CHECK(j["F"].get<double>() == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(j["D"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(j["sum"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(j["bounds_hold"].get<bool>());
    CHECK(j["method"] == "qubit_theorem3");

    const RunResult gad =
        run("channel --channel " + fixture("chan_gad_p075_g03.json"));
    j = json::parse(gad.out);
    CHECK(j["F"].get<double>() == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(j["D"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

    const RunResult sc =
        run("channel --channel " + fixture("chan_selfcomp.json"));
    j = json::parse(sc.out);
    CHECK(j["closed_form_D"].get<double>() == doctest::Approx(0.0));
    CHECK(j["closed_form_D_corrected"].get<double>() ==
          doctest::Approx(0.29289321881345254).epsilon(1e-9));
    CHECK(j["D"].get<double>() ==
          doctest::Approx(0.29289321881345254).epsilon(1e-4));

    const RunResult raw =
        run("channel --channel " + fixture("chan_raw_kraus.json"));
    j = json::parse(raw.out);
    CHECK(j["F"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(!j.contains("closed_form_F"));
}

TEST_CASE("verify subcommand passes its suites and fails on demand") {
    CHECK(run("verify theorem2 --count 5").code == 0);
    CHECK(run("verify oracle --count 3 --seed 11").code == 0);
}

TEST_CASE("sweep output contract") {
    const std::string out1 = "/tmp/cohfrac_sweep_1.csv";
    const std::string out2 = "/tmp/cohfrac_sweep_2.csv";
    const std::string args =
        "sweep --kind depolarizing --start 0 --stop 1 --step 0.5 "
        "--restarts 4 --seed 3 --format csv --out ";

    CHECK(run(args + out1).code == 0);
    CHECK(run(args + out2).code == 0);

    const std::string csv = slurp(out1);
    CHECK(csv.rfind("param,ocf_one_sided,ocf_two_sided,closed_form\n", 0) == 0);
    CHECK(csv == slurp(out2)); // byte-identical per seed

    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4); // header + 3 parameter values
}

TEST_CASE("cross sweep emits the p,q grid") {
    const RunResult r = run(
        "sweep --kind bit_flip --sides cross --kind2 gad --start 0 --stop 1 "
        "--step 1 --start2 0 --stop2 1 --step2 1 --restarts 4 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("p,q,ocf\n", 0) == 0);
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 5); // header + 2x2 grid
}

TEST_CASE("sweep rejects bad specs and unwritable paths") {
    CHECK(run("sweep --kind depolarizing --step -1").code == 2);
    CHECK(run("sweep --kind depolarizing --start 1 --stop 0").code == 2);
    CHECK(run("sweep --kind identity").code == 2);
    CHECK(run("sweep --kind depolarizing --param gamma").code == 2);
    CHECK(run("sweep --kind depolarizing --step 0.5 --restarts 2 --out "
              "/no/such/dir/out.csv")
              .code == 2);
}

TEST_CASE("sweep json format mirrors the csv rows") {
    const RunResult r =
        run("sweep --kind gad --start 0 --stop 1 --step 0.5 --restarts 4 "
            "--gamma 0.3");
    CHECK(r.code == 0);
    const json rows = json::parse(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["param"].get<double>() == 0.0);
    CHECK(rows[0]["ocf_one_sided"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rows[2]["closed_form"].get<double>() == doctest::Approx(0.5));
}
