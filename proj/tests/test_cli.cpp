#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("transversal_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("gen identical produces the instance format plus sidecar") {
    TempDir tmp;
    auto inst = tmp.path("id.inst");
    CHECK(run("gen identical --n 10 --m 9 --base complete -o " + inst) == 0);
    std::string bytes = slurp(inst);
    CHECK(bytes.rfind("10 9\n", 0) == 0);
    CHECK(bytes.find("colour 0 45") != std::string::npos);
    CHECK(fs::exists(inst + ".json"));
}

TEST_CASE("gen random is byte-identical across runs with the same seed") {
    TempDir tmp;
    auto a = tmp.path("a.inst"), b = tmp.path("b.inst");
    CHECK(run("gen random --model iid_gnp --n 40 --m 39 --p 0.9 --seed 7 -o " + a) == 0);
    CHECK(run("gen random --model iid_gnp --n 40 --m 39 --p 0.9 --seed 7 -o " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    auto c = tmp.path("c.inst");
    CHECK(run("gen random --model iid_gnp --n 40 --m 39 --p 0.9 --seed 8 -o " + c) == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("solve tree on identical complete colours, witness re-verifies") {
    TempDir tmp;
    auto inst = tmp.path("t.inst"), wit = tmp.path("t.wit");
    REQUIRE(run("gen identical --n 12 --m 11 --base complete -o " + inst) == 0);
    CHECK(run("solve tree -i " + inst + " --seed 5 -o " + wit) == 0);
    CHECK(run("oracle verify -i " + inst + " -w " + wit) == 0);

    // determinism: same seed gives identical witness bytes
    auto wit2 = tmp.path("t2.wit");
    CHECK(run("solve tree -i " + inst + " --seed 5 -o " + wit2) == 0);
    CHECK(slurp(wit) == slurp(wit2));
}

TEST_CASE("bridgeless lower bound: solver fails, oracle says no; control says yes") {
    TempDir tmp;
    auto inst = tmp.path("blb.inst"), wit = tmp.path("blb.wit");
    REQUIRE(run("gen bridgeless-lb --F C4 --copies 2 -o " + inst) == 0);
    CHECK(run("solve factor -i " + inst + " --F C4 --t 4 --seed 1 -o " + wit) == 1);
    CHECK(run("oracle decide -i " + inst + " --mode factor --F C4 --t 4") == 1);
}

TEST_CASE("solve factor succeeds on dense conditioned instances and verifies") {
    TempDir tmp;
    auto inst = tmp.path("f.inst"), wit = tmp.path("f.wit");
    REQUIRE(run("gen random --model min_degree_conditioned --n 45 --m 45 --p 0.9 --target 36 "
                "--budget 400 --seed 3 -o " +
                inst) == 0);
    CHECK(run("solve factor -i " + inst + " --F K3 --t 3 --seed 3 -o " + wit) == 0);
    CHECK(run("oracle verify -i " + inst + " -w " + wit) == 0);
}

TEST_CASE("patterned counterexample generation and decision") {
    TempDir tmp;
    auto inst = tmp.path("cex.inst");
    REQUIRE(run("gen patterned-cex --t 3 --k 3 --n 24 --seed 1 -o " + inst) == 0);
    CHECK(fs::exists(inst + ".pattern"));
    CHECK(run("oracle decide -i " + inst + " --mode patterned --F K3,3 --pattern " + inst +
              ".pattern") == 1);
}

TEST_CASE("oracle decide yes on a trivially satisfiable instance") {
    TempDir tmp;
    auto inst = tmp.path("pm.inst");
    REQUIRE(run("gen identical --n 10 --m 5 --base complete -o " + inst) == 0);
    CHECK(run("oracle decide -i " + inst + " --mode perfect-matching") == 0);
    CHECK(run("oracle decide -i " + inst + " --mode hamilton") == 1); // 5 colours, 10 edges: no
}

TEST_CASE("sweep emits the CSV schema and is stable under --stable-output") {
    TempDir tmp;
    auto csv1 = tmp.path("s1.csv"), csv2 = tmp.path("s2.csv");
    CHECK(run("sweep --mode perfect-matching --n 8 --trials 8 --delta-grid 0.3:0.7:0.2 --seed 2 "
              "--stable-output -o " +
              csv1) == 0);
    CHECK(run("sweep --mode perfect-matching --n 8 --trials 8 --delta-grid 0.3:0.7:0.2 --seed 2 "
              "--stable-output -o " +
              csv2) == 0);
    std::string bytes = slurp(csv1);
    CHECK(bytes.rfind("delta_over_n,trials,successes,mean_runtime_ms\n", 0) == 0);
    CHECK(bytes == slurp(csv2));
}

TEST_CASE("usage errors exit with code 2") {
    TempDir tmp;
    CHECK(run("gen identical --n 10 -o " + tmp.path("x.inst")) == 2);      // missing --m
    CHECK(run("sweep --mode perfect-matching --n 8 --trials 4 --delta-grid bad -o " +
              tmp.path("y.csv")) == 2);
    CHECK(run("gen bridgeless-lb --F K9 --copies 2 -o " + tmp.path("z.inst")) == 2);
    CHECK(run("nonsense") == 2);
}
