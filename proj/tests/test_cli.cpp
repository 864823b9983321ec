// End-to-end tests of the command-line surface, run in-process.
#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ops/ops.hpp"

using namespace ops;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_dispatch(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("help exits cleanly") {
    auto res = cli({"--help"});
    CHECK(res.code == 0);
    CHECK(res.out.find("gen-instance") != std::string::npos);
    CHECK(res.out.find("verify") != std::string::npos);
}

TEST_CASE("function descriptors parse or reject") {
    SetFunction add = parse_fn_descriptor("additive:1,2,7/2");
    CHECK(add.n() == 3);
    CHECK(add(ElementSet::full(3)) == Rational(13, 2));
    SetFunction ud = parse_fn_descriptor("unit-demand:1,5,2");
    CHECK(ud(ElementSet::full(3)) == Rational(5));
    CHECK_THROWS_AS(parse_fn_descriptor("additive:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fn_descriptor("mystery:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fn_descriptor("no-colon"), std::invalid_argument);
}

TEST_CASE("seed lists combine repeats, ranges and defaults") {
    CHECK(detail::expand_seeds({}, "") == std::vector<uint64_t>{1});
    CHECK(detail::expand_seeds({5, 9}, "") == std::vector<uint64_t>{5, 9});
    CHECK(detail::expand_seeds({}, "3..6") == std::vector<uint64_t>{3, 4, 5, 6});
    CHECK(detail::expand_seeds({1}, "10..11") == std::vector<uint64_t>{1, 10, 11});
    CHECK_THROWS_AS(detail::expand_seeds({}, "7"), std::invalid_argument);
    CHECK_THROWS_AS(detail::expand_seeds({}, "9..2"), std::invalid_argument);
}

TEST_CASE("gen-instance, verify, gen-samples and run cooperate") {
    TempDir dir("ops_cli_flow");
    const std::string inst = dir.file("i12.inst");

    auto gen = cli({"gen-instance", "--family", "coverage-poly", "--n", "12", "--k", "3",
                    "--r", "2", "--ell", "2", "--sigma", "4", "--seed", "1", "--out", inst});
    REQUIRE(gen.code == 0);
    CHECK(gen.out.find("wrote") != std::string::npos);
    CHECK(fs::exists(inst));
    CHECK(fs::exists(dir.path / "i12.graph"));

    auto ver = cli({"verify", "--instance", inst, "--trials", "300"});
    CHECK(ver.code == 0);
    CHECK(ver.out.find("property=structure verdict=pass") != std::string::npos);
    CHECK(ver.out.find("alpha=32/45") != std::string::npos);
    CHECK(ver.out.find("bound=45/8") != std::string::npos);

    const std::string samples = dir.file("s.samples");
    auto gs = cli({"gen-samples", "--instance", inst, "--m", "50", "--seed", "3", "--out",
                   samples});
    REQUIRE(gs.code == 0);
    SampleSet ss = read_samples_file(samples);
    CHECK(ss.n == 12);
    CHECK(ss.records.size() == 50);

    auto run = cli({"run", "--instance", inst, "--k", "3", "--m", "100", "--algo",
                    "best-sample", "--seed", "1", "--seed", "2", "--exact"});
    REQUIRE(run.code == 0);
    CHECK(run.out.rfind("seed,value,baseline,ratio,ms", 0) == 0);
    CHECK(run.out.find("mean=") != std::string::npos);
}

TEST_CASE("verify rejects a tampered instance file") {
    TempDir dir("ops_cli_tamper");
    const std::string inst = dir.file("i.inst");
    REQUIRE(cli({"gen-instance", "--out", inst}).code == 0);
    std::string text = slurp(inst);
    auto pos = text.find("xs=-1,2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "xs=-1,3");
    std::ofstream(inst, std::ios::binary) << text;
    auto res = cli({"verify", "--instance", inst, "--trials", "100"});
    CHECK(res.code == 2);
    CHECK(res.out.find("verdict=fail") != std::string::npos);
}

TEST_CASE("exact runs are byte-identical across invocations") {
    TempDir dir("ops_cli_exact");
    const std::string inst = dir.file("i.inst");
    REQUIRE(cli({"gen-instance", "--out", inst}).code == 0);
    std::vector<std::string> args = {"run",  "--instance", inst, "--k", "3",
                                     "--m",  "150",        "--algo", "max-marg-cont",
                                     "--seed", "1",        "--seed", "2", "--seed", "3",
                                     "--exact"};
    auto a = cli(args);
    auto b = cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find(".") == std::string::npos);  // exact mode: rationals and ms=0 only

    std::vector<std::string> to_file = args;
    to_file.insert(to_file.end(), {"--out", dir.file("r1.csv")});
    REQUIRE(cli(to_file).code == 0);
    to_file.back() = dir.file("r2.csv");
    REQUIRE(cli(to_file).code == 0);
    CHECK(slurp(dir.file("r1.csv")) == slurp(dir.file("r2.csv")));
    CHECK(slurp(dir.file("r1.csv")) == a.out);
}

TEST_CASE("run covers every algorithm on a plain function") {
    for (const std::string algo : {"best-sample", "max-marg-cont", "algo2",
                                   "greedy-surrogate"}) {
        auto res = cli({"run", "--fn", "additive:4,3,2,1", "--k", "2", "--m", "200",
                        "--algo", algo, "--seed", "7", "--exact"});
        REQUIRE(res.code == 0);
        CHECK(res.out.rfind("seed,value,baseline,ratio,ms", 0) == 0);
    }
    auto bad = cli({"run", "--fn", "additive:1,2", "--algo", "nope"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("report re-renders a run CSV") {
    TempDir dir("ops_cli_report");
    const std::string csv = dir.file("r.csv");
    REQUIRE(cli({"run", "--fn", "additive:5,4,3,2,1", "--k", "2", "--m", "300", "--algo",
                 "max-marg-cont", "--seeds-range", "1..4", "--exact", "--out", csv})
                .code == 0);
    auto table = cli({"report", "--in", csv, "--format", "table"});
    REQUIRE(table.code == 0);
    CHECK(table.out.find("seed") != std::string::npos);
    CHECK(table.out.find("ratio") != std::string::npos);
    auto plot = cli({"report", "--in", csv, "--format", "plotdata"});
    REQUIRE(plot.code == 0);
    CHECK(plot.out.find("1 ") != std::string::npos);
    auto roundtrip = cli({"report", "--in", csv, "--format", "csv"});
    REQUIRE(roundtrip.code == 0);
    CHECK(roundtrip.out.rfind("seed,value,baseline,ratio,ms", 0) == 0);

    auto missing = cli({"report", "--in", dir.file("nope.csv")});
    CHECK(missing.code == 1);
    auto bad_format = cli({"report", "--in", csv, "--format", "pie-chart"});
    CHECK(bad_format.code == 1);
}

TEST_CASE("gen-samples requires exactly one source") {
    auto neither = cli({"gen-samples", "--m", "5", "--out", "/tmp/x.samples"});
    CHECK(neither.code == 1);
    CHECK(neither.err.find("exactly one") != std::string::npos);
}
