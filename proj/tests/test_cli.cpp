#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = "cli_test_out.txt";
    std::string cmd = std::string(MATGEO_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

}  // namespace

TEST_CASE("mat rank example") {
    auto r = run_cli("mat rank --field p=2 k=1 poly=0,1 --shape 2,2 --entries 1,1,1,1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "1\n");
}

TEST_CASE("missing table file exits 74") {
    auto r = run_cli("classify missing.mt");
    REQUIRE(r.exit_code == 74);
}

TEST_CASE("malformed table exits 2") {
    {
        std::ofstream bad("cli_bad.mt");
        bad << "maptable v1\nsrc field p=2 k=1 poly=1,1\nsrc shape 2 2\n"
            << "dst field p=2 k=1 poly=1,1\ndst shape 2 2\n0,0,0,0 => 0,0,0,0\n";
    }
    auto r = run_cli("classify cli_bad.mt");
    REQUIRE(r.exit_code == 2);
}

TEST_CASE("usage errors exit 64") {
    auto r = run_cli("mat rank --field p=2 k=1 poly=0,1");
    REQUIRE(r.exit_code == 64);
    auto r2 = run_cli("bogus-subcommand");
    REQUIRE(r2.exit_code == 64);
}

TEST_CASE("construct and classify round trip through files") {
    auto c = run_cli(
        "construct --form semrl --src-field p=2 k=1 poly=1,1 --src-shape 2,2 "
        "--dst-field p=2 k=2 poly=1,1,1 --dst-shape 2,2 --P 1,0,0,1 --Q 1,0,0,1 "
        "--tau 0 --L 2,0,0,0 --out cli_form.mt");
    REQUIRE(c.exit_code == 0);
    auto k = run_cli("classify cli_form.mt");
    REQUIRE(k.exit_code == 0);
    REQUIRE(k.output.find("verdict semrl-standard") != std::string::npos);
    REQUIRE(k.output.find("L 2,0,0,0") != std::string::npos);
}

TEST_CASE("search exit codes and determinism") {
    {
        std::ofstream prob("cli_unsat.prob");
        prob << "problem v1\nsrc field p=3 k=1 poly=1,1\nsrc shape 2 2\n"
             << "dst field p=2 k=1 poly=1,1\ndst shape 2 2\n"
             << "constraint fix_zero_to_zero\nconstraint require_distance2_image_pair\n"
             << "constraint symmetry_reduction\n";
    }
    auto unsat = run_cli("search --problem cli_unsat.prob --mode first");
    REQUIRE(unsat.exit_code == 1);
    REQUIRE(unsat.output.rfind("unsat", 0) == 0);
    {
        std::ofstream prob("cli_sat.prob");
        prob << "problem v1\nsrc field p=2 k=1 poly=1,1\nsrc shape 2 2\n"
             << "dst field p=2 k=1 poly=1,1\ndst shape 2 2\nconstraint fix_zero_to_zero\n";
    }
    auto sat = run_cli("search --problem cli_sat.prob --mode first");
    REQUIRE(sat.exit_code == 0);
    REQUIRE(sat.output.rfind("found", 0) == 0);
    auto budget = run_cli("search --problem cli_unsat.prob --mode first --budget 3");
    REQUIRE(budget.exit_code == 2);
    auto s1 = run_cli("search --problem cli_sat.prob --mode sample --limit 5 --seed 9");
    auto s2 = run_cli("search --problem cli_sat.prob --mode sample --limit 5 --seed 9");
    REQUIRE(s1.exit_code == 0);
    REQUIRE(s1.output == s2.output);
}

TEST_CASE("graph export is byte stable") {
    auto a = run_cli("graph --field p=2 k=1 poly=1,1 --shape 2,2 --format edges");
    auto b = run_cli("graph --field p=2 k=1 poly=1,1 --shape 2,2 --format edges");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output == b.output);
    int lines = 0;
    std::istringstream is(a.output);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++lines;
    REQUIRE(lines == 72);
}

TEST_CASE("verify metric suite passes and is reproducible across jobs") {
    auto r = run_cli("verify --suite metric");
    REQUIRE(r.exit_code == 0);
    auto r2 = run_cli("--jobs 4 verify --suite metric");
    REQUIRE(r2.exit_code == 0);
    REQUIRE(r.output == r2.output);
}

TEST_CASE("field table override changes element encodings") {
    {
        std::ofstream tab("cli_fields.txt");
        tab << "# q p poly\n4 2 1,1,1\n";
    }
    auto r = run_cli("--field-table cli_fields.txt field arith --field p=2 k=2 poly=1,1,1 --op mul --a 2 --b 2");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "3\n");
}
