#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "mtorus_cli_out.txt";
    std::string cmd = std::string(MTORUS_BIN) + " " + args + " > " + tmp.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, buffer.str()};
}

} // namespace

TEST_CASE("cli triangulate, verify and convert") {
    fs::path dir = fs::temp_directory_path() / "mtorus_cli";
    fs::create_directories(dir);
    fs::path tg = dir / "fig8.tg";
    fs::path tri = dir / "fig8.tri";

    RunResult t = run("triangulate " + fixtures::path("fig8.map") + " -o " + tg.string());
    CHECK(t.exit_code == 0);
    CHECK(fs::exists(tg));

    RunResult v = run("verify " + tg.string());
    CHECK(v.exit_code == 0);

    RunResult c = run("convert " + tg.string() + " -o " + tri.string());
    CHECK(c.exit_code == 0);
    std::ifstream in(tri);
    std::string first;
    std::getline(in, first);
    CHECK(first == "% Triangulation");
}

TEST_CASE("cli outputs are byte-identical across runs") {
    RunResult a = run("triangulate " + fixtures::path("fig8.map"));
    RunResult b = run("triangulate " + fixtures::path("fig8.map"));
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult d1 = run("decompose " + fixtures::path("example1.map"));
    RunResult d2 = run("decompose " + fixtures::path("example1.map"));
    CHECK(d1.out == d2.out);
}

TEST_CASE("cli verify summarizes the appendix document") {
    RunResult v = run("verify " + fixtures::path("appendix_a.tg"));
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("2 tetrahedra") != std::string::npos);
    CHECK(v.out.find("1 cusp (torus)") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish parse and validation failures") {
    RunResult parse = run("decompose " + fixtures::path("bad_map_line.map"));
    CHECK(parse.exit_code == 2);
    CHECK(parse.out.find("line 3") != std::string::npos);

    RunResult missing = run("decompose /nonexistent/input.map");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli group prints the HNN presentation") {
    RunResult g = run("group " + fixtures::path("fig8.map"));
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("pi_1(M) = < a, b, t | ") != std::string::npos);
    CHECK(g.out.find("H_1(M) = Z") != std::string::npos);
}

TEST_CASE("cli info reports the bound") {
    RunResult i = run("info " + fixtures::path("fig8.map"));
    CHECK(i.exit_code == 0);
    CHECK(i.out.find("genus 1, size 5") != std::string::npos);
    CHECK(i.out.find("240") != std::string::npos);
}

TEST_CASE("cli subcommands compose through standard streams") {
    fs::path tmp = fs::temp_directory_path() / "mtorus_pipe.tri";
    std::string cmd = std::string(MTORUS_BIN) + " triangulate " + fixtures::path("fig8.map") +
                      " | " + std::string(MTORUS_BIN) + " convert - -n fig8 -o " + tmp.string();
    int status = std::system(cmd.c_str());
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream in(tmp);
    std::string first;
    std::getline(in, first);
    CHECK(first == "% Triangulation");
}

TEST_CASE("cli batch verify matches sequential runs") {
    std::string files = fixtures::path("fig8.map") + " " + fixtures::path("identity_rose1.map");
    RunResult seq = run("verify " + files);
    RunResult par = run("verify -j 2 " + files);
    CHECK(seq.exit_code == 0);
    CHECK(seq.out == par.out);
}
