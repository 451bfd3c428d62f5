#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ringlab/cli.hpp"
#include "ringlab/error.hpp"
#include "ringlab/io.hpp"
#include "ringlab/report.hpp"

using namespace ringlab;
using io::Json;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ringlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::OutOfRange;
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("ringlab_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const char* const kFpC22 =
    R"j({"explicit": {"p": 2, "dim": 2, "one": [1, 0], "mul": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "labels": ["1", "g"]}})j";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("ring specs") {
        CHECK(io::parse_ring_spec(R"j({"preset": "M(3,2)"})j").build().dim() == 9);
        CHECK(io::ring_spec_from_argument("T(2,3)").build().size() == 27);
        CHECK(io::parse_ring_spec(kFpC22).build().fingerprint() == catalog("FpC(2,2)").fingerprint());
        CHECK(io::ring_spec_from_argument(kFpC22).describe() == "explicit");

        CHECK(code_of([] { io::parse_ring_spec(R"j({"preset": "M(2,2)", "extra": 1})j"); }) == ErrorCode::ParseError);
        CHECK(code_of([] { io::parse_ring_spec(R"j({})j"); }) == ErrorCode::ParseError);
        CHECK(code_of([] { io::parse_ring_spec(R"j({"preset": 7})j"); }) == ErrorCode::ParseError);
        CHECK(code_of([] { io::parse_ring_spec(R"j({"preset": "M(2)"})j").build(); }) == ErrorCode::UnknownPreset);
        CHECK(code_of([] { io::parse_ring_spec(R"j({"preset": "Q(2,2)"})j").build(); }) == ErrorCode::UnknownPreset);
        CHECK(code_of([] {
                  io::parse_ring_spec(R"j({"explicit": {"p": 2, "dim": 2, "one": [1, 0], "mul": [[[1, 0]]]}})j").build();
              }) == ErrorCode::ParseError);
        CHECK(code_of([] {
                  io::parse_ring_spec(R"j({"explicit": {"p": 2, "dim": 1, "one": [1], "mul": [[[2]]]}})j").build();
              }) == ErrorCode::ParseError);
        CHECK(code_of([] {
                  io::parse_ring_spec(R"j({"explicit": {"p": 6, "dim": 1, "one": [1], "mul": [[[1]]]}})j").build();
              }) == ErrorCode::NonPrimeModulus);
    }

    TEST_CASE("syntax errors carry line and column") {
        try {
            io::parse_ring_spec("{\n  \"preset\": \"M(2,2)\",,\n}");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            const std::string msg = e.what();
            CHECK(msg.find("line 2") != std::string::npos);
            CHECK(msg.find("column") != std::string::npos);
        }
    }

    TEST_CASE("element expressions") {
        const auto m3 = catalog("M(3,2)");
        CHECK(io::parse_element(m3, "e12+e23") == *m3.named("J"));
        CHECK(io::parse_element(m3, "J") == *m3.named("J"));
        CHECK(io::parse_element(m3, "J^2") == m3.basis(2));
        CHECK(io::parse_element(m3, "0").is_zero());
        CHECK(io::parse_element(m3, "1") == m3.one());
        CHECK(io::parse_element(m3, " e11 + e11 ").is_zero());
        CHECK(io::parse_element(m3, "[0,1,0,0,0,0,0,0,0]") == m3.basis(1));
        const auto m23 = catalog("M(2,3)");
        CHECK(io::parse_element(m23, "2*e12") == -m23.basis(1));
        CHECK(io::parse_element(m23, "e11-e22") == m23.basis(0) + Residue{2} * m23.basis(3));
        const auto c2 = catalog("FpC(2,2)");
        CHECK(io::parse_element(c2, "1+g") == c2.one() + c2.basis(1));
        for (const char* bad : {"", "e13+", "x", "e12**2", "[0,1]", "[0,1,0,0,0,0,0,0,2]", "J^", "2*"})
            CHECK(code_of([&] { io::parse_element(m3, bad); }) == ErrorCode::ParseError);
    }

    TEST_CASE("exit codes") {
        auto ok = run_cli({"chain", "--ring", "M(3,2)", "--element", "J", "--theorem", "4"});
        CHECK(ok.code == 0);
        const auto rep = Json::parse(ok.out);
        CHECK(rep["verification"]["passed"] == true);
        CHECK(rep["result"]["levels"] == 3);

        auto bad_math = run_cli({"chain", "--ring", "T(2,2)", "--element", "e12"});
        CHECK(bad_math.code == 1);
        CHECK(Json::parse(bad_math.out)["error"]["code"] == "PowersNotRegular");
        CHECK(run_cli({"chain", "--ring", "T(2,2)", "--element", "e12", "--theorem", "2"}).code == 1);

        CHECK(run_cli({"chain", "--ring", "X(2,2)", "--element", "J"}).code == 2);
        CHECK(run_cli({"chain", "--ring", "M(2,2)", "--element", "e11"}).code == 2);  // no --levels
        const auto idem = run_cli({"chain", "--ring", "M(2,2)", "--element", "e11", "--levels", "1"});
        CHECK(idem.code == 0);
        CHECK(Json::parse(idem.out)["result"]["unit_witness"].is_null());
        CHECK(run_cli({"chain", "--ring", "M(2,2)", "--element", "e99"}).code == 2);
        CHECK(run_cli({"chain", "--ring", "M(2,2)", "--element", "e12", "--theorem", "3"}).code == 2);
        CHECK(run_cli({"frobnicate"}).code == 2);
        CHECK(run_cli({}).code == 2);
        CHECK(run_cli({"classify", "--ring", "M(2,4)"}).code == 2);
        CHECK(run_cli({"classify", "--ring", "M(2,2)", "--format", "text"}).code == 0);
        CHECK(run_cli({"describe", "--ring", kFpC22, "--element", "1+g"}).code == 0);
        CHECK(run_cli({"split", "--ring", "M(2,2)", "--element", "e12+e21"}).code == 0);
        CHECK(run_cli({"sr1", "--ring", "T(2,2)"}).code == 0);
        CHECK(run_cli({"selftest", "--only", "1,9"}).code == 0);
    }

    TEST_CASE("ring files") {
        const auto good = temp_file("ring.json", kFpC22);
        CHECK(run_cli({"classify", "--ring-file", good}).code == 0);
        const auto broken = temp_file("broken.json", "{\"preset\": ");
        const auto r = run_cli({"classify", "--ring-file", broken});
        CHECK(r.code == 2);
        CHECK(r.err.find("line") != std::string::npos);
        CHECK(run_cli({"classify", "--ring-file", "/nonexistent/ring.json"}).code == 2);
        CHECK(run_cli({"classify", "--ring", "M(2,2)", "--ring-file", good}).code == 2);
    }

    TEST_CASE("saved reports re-verify and tampering is caught") {
        for (const auto& args : std::vector<std::vector<std::string>>{
                 {"chain", "--ring", "M(3,2)", "--element", "J", "--theorem", "2"},
                 {"chain", "--ring", "M(2,3)", "--element", "e12", "--theorem", "4"},
                 {"chain", "--ring", "T(2,2)", "--element", "e12"},
                 {"classify", "--ring", "T(2,2)"},
                 {"split", "--ring", "M(2,2)", "--element", "e11+e12"},
                 {"sr1", "--ring", "FpC(2,2)"}}) {
            const auto first = run_cli(args);
            const auto path = temp_file("report.json", first.out);
            const auto again = run_cli({"verify", "--report", path});
            CAPTURE(args[0]);
            CHECK(again.code == 0);  // error reports verify by reproducing the error
        }

        const auto rep = Json::parse(run_cli({"chain", "--ring", "M(3,2)", "--element", "J"}).out);
        auto tampered = rep;
        auto& row = tampered["result"]["chain"][0]["Y"][0];
        row[0] = 1 - row[0].get<int>();
        CHECK_FALSE(report::passed(report::verify(tampered)));
        CHECK(report::passed(report::verify(rep)));

        auto witness = rep;
        auto& u = witness["result"]["unit_witness"]["u"];
        u[3] = 1 - u[3].get<int>();  // the e21 entry, which J u J depends on
        CHECK_FALSE(report::passed(report::verify(witness)));

        auto ring = rep;
        ring["ring"]["spec"] = Json{{"preset", "M(3,3)"}};
        CHECK_FALSE(report::passed(report::verify(ring)));
    }

    TEST_CASE("reports are deterministic apart from timing") {
        const std::vector<std::string> args{"chain", "--ring", "prod(M(2,2),T(2,2))", "--element", "e12", "--levels", "2"};
        const auto a = Json::parse(run_cli(args).out), b = Json::parse(run_cli(args).out);
        CHECK(a.contains("timing"));
        CHECK_FALSE(report::without_timing(a).contains("timing"));
        CHECK(report::without_timing(a) == report::without_timing(b));
        const auto jobs = Json::parse(run_cli({"classify", "--ring", "T(2,3)", "--jobs", "3"}).out);
        const auto single = Json::parse(run_cli({"classify", "--ring", "T(2,3)"}).out);
        CHECK(report::without_timing(jobs) == report::without_timing(single));
    }
}
