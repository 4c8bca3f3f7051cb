#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "polypack/cli.hpp"
#include "polypack/verifier.hpp"
#include "support.hpp"

using namespace polypack;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "polypack");
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& tag) {
        dir = fs::temp_directory_path() / ("polypack_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

void write(const std::string& path, const std::string& text) { save_text_file(path, text); }

std::string empty_solution(const std::string& name) {
    return R"({"type":"cgshop2024_solution","instance_name":")" + name +
           R"(","item_indices":[],"x_translations":[],"y_translations":[]})";
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"generate"}).code == 2);
    CHECK(call({"generate", "tetris"}).code == 2);
    CHECK(call({"generate", "atris", "--set", "bogus=1"}).code == 2);
    CHECK(call({"verify", "/nonexistent.json", "/nonexistent2.json"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"solve", "--help"}).code == 0);
}

TEST_CASE("generate then verify the empty solution") {
    Scratch s("gen");
    Result g = call({"generate", "atris", "--seed", "1", "--n", "50", "-o", s / "i.json"});
    REQUIRE(g.code == 0);
    auto summary = nlohmann::json::parse(g.out);
    std::string name = summary["name"];
    write(s / "empty.json", empty_solution(name));
    Result v = call({"verify", s / "i.json", s / "empty.json"});
    CHECK(v.code == 0);
    auto rep = nlohmann::json::parse(v.out);
    CHECK(rep["valid"] == true);
    CHECK(rep["packed_value"] == 0);

    // Stdout carries the instance itself without -o.
    Result direct = call({"generate", "atris", "--seed", "1", "--n", "50"});
    CHECK(direct.out == read_text_file(s / "i.json"));

    write(s / "other.json", empty_solution("someone_else"));
    CHECK(call({"verify", s / "i.json", s / "other.json"}).code == 2);
    write(s / "broken.json", "{");
    CHECK(call({"verify", s / "i.json", s / "broken.json"}).code == 2);
    CHECK(call({"verify", s / "broken.json", s / "empty.json"}).code == 2);
}

TEST_CASE("invalid solutions exit with 1") {
    Scratch s("inv");
    Instance inst = make_instance("sq", rect(0, 0, 10, 10), {rect(0, 0, 5, 5), rect(0, 0, 5, 5)});
    write(s / "i.json", write_instance(inst));
    write(s / "overlap.json", write_solution({"sq", {{0, {0, 0}}, {1, {1, 1}}}, std::nullopt}));
    Result r = call({"verify", s / "i.json", s / "overlap.json"});
    CHECK(r.code == 1);
    auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["valid"] == false);
    CHECK(rep["violation"]["kind"] == "overlap");

    write(s / "dup.json", R"({"type":"cgshop2024_solution","instance_name":"sq","item_indices":[1,1],"x_translations":[0,5],"y_translations":[0,5]})");
    Result d = call({"verify", s / "i.json", s / "dup.json"});
    CHECK(d.code == 1);
    CHECK(nlohmann::json::parse(d.out)["violation"]["kind"] == "duplicate_item");

    CHECK(call({"render", s / "i.json", s / "overlap.json"}).code == 1);
    CHECK(call({"render", s / "i.json", s / "overlap.json", "--force", "-o", s / "o.svg"}).code == 0);
    CHECK(fs::exists(s / "o.svg"));
}

TEST_CASE("solve output verifies across the families") {
    Scratch s("solve");
    for (std::string family : {"random", "jigsaw", "atris", "satris"}) {
        for (int seed = 1; seed <= 3; ++seed) {
            std::string inst = s / (family + std::to_string(seed) + ".json");
            std::string sol = s / (family + std::to_string(seed) + ".sol.json");
            REQUIRE(call({"generate", family, "--seed", std::to_string(seed), "--n", "40", "-o", inst}).code == 0);
            Result r = call({"solve", inst, "--budget", "0.5", "--quiet", "-o", sol});
            REQUIRE(r.code == 0);
            CHECK(call({"verify", inst, sol}).code == 0);
        }
    }
    // Several instances at once land in a directory.
    Result many = call({"solve", s / "atris1.json", s / "atris2.json", "--greedy-only", "--quiet", "--jobs", "2", "-o", s / "out"});
    CHECK(many.code == 0);
    CHECK(nlohmann::json::parse(many.out).size() == 2);
    CHECK(call({"solve", s / "atris1.json", "--moves", "teleport"}).code == 2);
    CHECK(call({"solve", s / "atris1.json", "--mode", "spiral"}).code == 2);
}

TEST_CASE("value subcommand") {
    Scratch s("value");
    REQUIRE(call({"generate", "random", "--seed", "4", "--n", "12", "-o", s / "i.json"}).code == 0);
    Result r = call({"value", s / "i.json", "--function", "uniform", "--noise", "0", "--scale", "100"});
    REQUIRE(r.code == 0);
    Instance inst = read_instance(r.out);
    for (const Item& it : inst.items) CHECK(it.value == 100);
    CHECK(call({"value", s / "i.json", "--noise", "2"}).code == 2);
}

TEST_CASE("score with half values on 180 instances") {
    Scratch s("score");
    fs::create_directories(s.dir / "inst");
    std::string csv = "team,instance,value,timestamp\n";
    for (int i = 0; i < 180; ++i) {
        std::string name = "c" + std::to_string(i);
        Instance inst = make_instance(name, rect(0, 0, 100, 100), {rect(0, 0, 10, 10), rect(0, 0, 10, 10)},
                                      {i + 1, i + 1});
        write((s.dir / "inst" / (name + ".json")).string(), write_instance(inst));
        csv += "full," + name + "," + std::to_string(2 * (i + 1)) + ",2024-01-01T00:00:00Z\n";
        csv += "half," + name + "," + std::to_string(i + 1) + ",2024-01-01T00:00:00Z\n";
    }
    write(s / "records.csv", csv);
    Result r = call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "records.csv", "--quiet"});
    REQUIRE(r.code == 0);
    auto board = nlohmann::json::parse(r.out);
    CHECK(board["ranking"][0]["team"] == "full");
    CHECK(board["ranking"][0]["total_display"] == "180.00");
    CHECK(board["ranking"][1]["team"] == "half");
    CHECK(board["ranking"][1]["total_display"] == "45.00");
    CHECK(board["ranking"][1]["total"] == "45");

    write(s / "bad.csv", "full,c0,999,2024-01-01T00:00:00Z\n");
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "bad.csv"}).code == 2);
    write(s / "unknown.csv", "full,zzz,1,2024-01-01T00:00:00Z\n");
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "unknown.csv"}).code == 2);
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "records.csv", "--require-solutions"}).code == 2);
}

TEST_CASE("score checks attached solutions") {
    Scratch s("scoresol");
    fs::create_directories(s.dir / "inst");
    Instance inst = make_instance("one", rect(0, 0, 10, 10), {rect(0, 0, 5, 5), rect(0, 0, 5, 5)}, {3, 4});
    write((s.dir / "inst" / "one.json").string(), write_instance(inst));
    write(s / "good.json", write_solution({"one", {{0, {0, 0}}, {1, {5, 0}}}, std::nullopt}));
    write(s / "bad.json", write_solution({"one", {{0, {0, 0}}, {1, {2, 0}}}, std::nullopt}));
    write(s / "ok.csv", "t,one,7,2024-01-01T00:00:00Z,good.json\n");
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "ok.csv", "--require-solutions", "--quiet"}).code == 0);
    write(s / "lie.csv", "t,one,6,2024-01-01T00:00:00Z,good.json\n");
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "lie.csv", "--quiet"}).code == 1);
    write(s / "inv.csv", "t,one,7,2024-01-01T00:00:00Z,bad.json\n");
    CHECK(call({"score", "--instances", (s.dir / "inst").string(), "--records", s / "inv.csv", "--quiet"}).code == 1);
}

TEST_CASE("select and generate --count") {
    Scratch s("select");
    for (std::string family : {"random", "atris"}) {
        Result g = call({"generate", family, "--seed", "1", "--n", "20", "--count", "6", "--quiet", "-o", (s.dir / "pool").string()});
        REQUIRE(g.code == 0);
        CHECK(nlohmann::json::parse(g.out).size() == 6);
    }
    Result r = call({"select", "--candidates", (s.dir / "pool").string(), "--k", "4", "--quiet", "--features", s / "f.csv"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["selected"].size() == 4);
    CHECK(fs::exists(s / "f.csv"));
    CHECK(call({"select", "--candidates", (s.dir / "pool").string(), "--k", "40"}).code == 2);
}

TEST_CASE("the installed binary runs end to end") {
    Scratch s("bin");
    const std::string bin = POLYPACK_CLI_PATH;
    auto sh = [](const std::string& cmd) {
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    CHECK(sh(bin + " generate satris --seed 5 --n 30 -o " + s / "i.json" + " > /dev/null") == 0);
    CHECK(sh(bin + " solve " + s / "i.json" + " --budget 0.5 --quiet -o " + s / "s.json" + " > /dev/null") == 0);
    CHECK(sh(bin + " verify " + s / "i.json" + " " + s / "s.json" + " > /dev/null") == 0);
    CHECK(sh(bin + " render " + s / "i.json" + " " + s / "s.json" + " --tray -o " + s / "s.svg") == 0);
    CHECK(sh(bin + " nonsense 2> /dev/null") == 2);
}
