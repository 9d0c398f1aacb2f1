#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "deltagl/io.hpp"
#include "deltagl/rng.hpp"
#include "deltagl/sampling.hpp"

using namespace deltagl;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(DELTAGL_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    CliResult r;
    if (!p) return r;
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tmp_file(const std::string& tag) {
    return "/tmp/deltagl_cli_test_" + std::to_string(getpid()) + "_" + tag + ".json";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

} // namespace

TEST_CASE("witness subcommand reports the exact defect valuation") {
    CliResult r = run_cli("witness --p 3 --N 10 --point 1,1,1,2");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["finite"].get<bool>());
    CHECK(j["valuation"].get<int>() == 3);
}

TEST_CASE("legendre subcommand: p=5, q=2 evaluates to -4") {
    CliResult r = run_cli("legendre --p 5 --q 2");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["Phi1_signed"].get<std::string>() == "-4");
}

TEST_CASE("verify subcommand passes and is deterministic") {
    std::string args = "verify --suite padic --p 5 --f 1 --N 10 --samples 20 --seed 9";
    CliResult a = run_cli(args), b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["pass"].get<bool>());

    CliResult t = run_cli(args + " --format text");
    CHECK(t.code == 0);
    CHECK(t.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("verify subcommand fails loudly under an injected corruption") {
    CliResult r =
        run_cli("verify --suite outer --p 5 --n 2 --samples 5 --seed 1 --corrupt-lambda");
    CHECK(r.code == 1);
    json j = json::parse(r.out);
    CHECK(!j["pass"].get<bool>());
}

TEST_CASE("eval subcommand computes the standard lift") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(61, 0, 0);
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    json in;
    in["lift"] = {{"kind", "standard"}, {"n", 2}};
    in["point"] = mat_to_json(a);
    std::string path = tmp_file("eval");
    write_file(path, in.dump());
    CliResult r = run_cli("eval --p 5 --N 10 --in " + path);
    std::remove(path.c_str());
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    Mat phi = json_to_mat(cx, out["Phi"]);
    CHECK(is_zero(phi - entrywise_p_power(a).reduced(phi.prec())));
}

TEST_CASE("solve subcommand lifts the identity seed of the untwisted equation") {
    Context cx(5, 1, 10);
    json in;
    in["lift"] = {{"kind", "standard"}, {"n", 2}};
    in["alpha"] = mat_to_json(Mat(cx, 2).reduced(10));
    in["seed"] = mat_to_json(Mat::identity(cx, 2).reduced(1));
    std::string path = tmp_file("solve");
    write_file(path, in.dump());
    CliResult r = run_cli("solve --p 5 --N 10 --in " + path);
    std::remove(path.c_str());
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    Mat u = json_to_mat(cx, out["u"]);
    CHECK(is_zero(u - Mat::identity(cx, 2).reduced(u.prec())));
}

TEST_CASE("malformed input files exit with a structured error") {
    std::string path = tmp_file("bad");
    write_file(path, "{this is not json");
    CliResult r = run_cli("eval --p 5 --in " + path);
    std::remove(path.c_str());
    CHECK(r.code == 2);
    CHECK(r.out.find("DimensionMismatch") != std::string::npos);

    // wrong shape: a scalar where a matrix is expected
    std::string path2 = tmp_file("shape");
    write_file(path2, "{\"lift\": {\"kind\": \"standard\", \"n\": 2}, \"point\": 7}");
    CliResult r2 = run_cli("eval --p 5 --in " + path2);
    std::remove(path2.c_str());
    CHECK(r2.code == 2);
    CHECK(r2.out.find("DimensionMismatch") != std::string::npos);
}

TEST_CASE("domain errors exit with code 2 and the error kind") {
    CliResult r = run_cli("verify --suite nosuchsuite --samples 5");
    CHECK(r.code == 2);
    CHECK(r.out.find("BadArgument") != std::string::npos);

    // special-linear lift with p | n
    Context cx(3, 1, 10);
    json in;
    in["lift"] = {{"kind", "sl"}, {"n", 3}};
    in["point"] = mat_to_json(Mat::identity(cx, 3).reduced(10));
    std::string path = tmp_file("pdiv");
    write_file(path, in.dump());
    CliResult r2 = run_cli("eval --p 3 --n 3 --in " + path);
    std::remove(path.c_str());
    CHECK(r2.code == 2);
    CHECK(r2.out.find("PDividesN") != std::string::npos);
}
