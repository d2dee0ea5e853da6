// End-to-end checks of the command-line tool; skipped unless the harness
// exports CUBE_INTERACT_BIN (ctest does).

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

std::string bin_path() {
    const char* env = std::getenv("CUBE_INTERACT_BIN");
    return env ? env : "";
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = bin_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_spec(const char* name, const char* body) {
    const std::string path = std::string("/tmp/cubei_cli_") + name + ".json";
    std::ofstream f(path);
    f << body;
    return path;
}

}  // namespace

TEST_CASE("cli: index, approx round trip, estimate, stats, exit codes") {
    if (bin_path().empty()) {
        MESSAGE("CUBE_INTERACT_BIN not set; skipping CLI tests");
        return;
    }

    const std::string x1x2 = write_spec(
        "x1x2", R"json({"n": 2, "function": {"kind": "multilinear", "terms": [{"subset": [1,2], "coeff": "1"}]}})json");
    const std::string geo = write_spec(
        "geo", R"json({"n": 2, "function": {"kind": "geometric_mean", "weights": ["1/2", "1/2"]}})json");
    const std::string constant = write_spec(
        "const", R"json({"n": 2, "function": {"kind": "multilinear", "terms": [{"subset": [], "coeff": "3"}]}})json");

    SUBCASE("index values and deterministic bytes") {
        const RunResult a = run("index " + geo + " --max-order 1");
        CHECK(a.exit_code == 0);
        const auto doc = nlohmann::json::parse(a.out);
        CHECK(doc.at("entries").size() == 3);
        CHECK(doc.at("entries")[0].at("exact").get<std::string>() == "4/9");
        CHECK(doc.at("entries")[1].at("exact").get<std::string>() == "8/15");

        const RunResult b = run("index " + geo + " --max-order 1");
        CHECK(a.out == b.out);

        // CSV and JSON carry the same values.
        const RunResult c = run("index " + geo + " --max-order 1 --format csv");
        CHECK(c.exit_code == 0);
        std::size_t pos = c.out.find('\n') + 1;
        for (const auto& entry : doc.at("entries")) {
            const std::size_t end = c.out.find('\n', pos);
            const std::string line = c.out.substr(pos, end - pos);
            const std::size_t v0 = line.find("\",") + 2;
            const std::size_t v1 = line.find(',', v0);
            const std::size_t v2 = line.find(',', v1 + 1);
            CHECK(std::strtod(line.substr(v1 + 1, v2 - v1 - 1).c_str(), nullptr) == entry.at("value").get<double>());
            pos = end + 1;
        }
    }

    SUBCASE("approx writes a re-loadable spec whose indexes match exactly") {
        const std::string out = "/tmp/cubei_cli_poly.json";
        CHECK(run("approx " + x1x2 + " --k 1 --out " + out).exit_code == 0);
        const auto doc = nlohmann::json::parse(std::ifstream(out));
        CHECK(doc.at("function").at("kind") == "multilinear");
        // -1/4 + x1/2 + x2/2.
        bool saw_const = false;
        for (const auto& t : doc.at("function").at("terms")) {
            if (t.at("subset").empty()) {
                saw_const = true;
                CHECK(t.at("coeff").get<std::string>() == "-1/4");
            } else {
                CHECK(t.at("coeff").get<std::string>() == "1/2");
            }
        }
        CHECK(saw_const);
        // Re-read as a spec: indexes of f_1 for |S| <= 1 equal the original's.
        const RunResult idx = run("index " + out + " --max-order 1");
        CHECK(idx.exit_code == 0);
        const auto reread = nlohmann::json::parse(idx.out);
        CHECK(reread.at("entries")[0].at("exact").get<std::string>() == "1/4");
        CHECK(reread.at("entries")[1].at("exact").get<std::string>() == "1/2");
    }

    SUBCASE("estimate prints value, stderr, exact and z") {
        const RunResult e = run("estimate " + x1x2 + " --subset '{1,2}' --estimator box --samples 20000 --seed 42");
        CHECK(e.exit_code == 0);
        CHECK(e.out.find("estimator: box") != std::string::npos);
        CHECK(e.out.find("exact: 1 (1)") != std::string::npos);
        CHECK(e.out.find("stderr: ") != std::string::npos);
        CHECK(e.out.find("z: ") != std::string::npos);

        const RunResult c = run("estimate " + constant + " --subset 1 --estimator direct --samples 100 --seed 1");
        CHECK(c.exit_code == 0);
        CHECK(c.out.find("value: 0\n") != std::string::npos);
        CHECK(c.out.find("stderr: 0\n") != std::string::npos);
    }

    SUBCASE("stats emits r values and R^2 rows") {
        const RunResult s = run("stats " + x1x2 + " --k 2");
        CHECK(s.exit_code == 0);
        const auto doc = nlohmann::json::parse(s.out);
        CHECK(doc.at("r2").size() == 2);
        CHECK(doc.at("r2")[0].get<double>() == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
        CHECK(doc.at("r2")[1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("exit codes: parse = 2, unsupported = 3, degenerate = 4") {
        const std::string bad = write_spec("bad", R"json({"n": 2, "function": {"kind": "multilinear",
            "terms": [{"subset": [2,1], "coeff": "1"}]}})json");
        CHECK(run("index " + bad).exit_code == 2);
        CHECK(run("index /tmp/definitely-missing.json").exit_code == 2);

        const std::string minspec = write_spec(
            "min", R"json({"n": 2, "function": {"kind": "choquet", "terms": [{"subset": [1,2], "coeff": "1"}]}})json");
        CHECK(run("estimate " + minspec + " --subset 1 --estimator beta --samples 1000 --seed 1").exit_code == 3);
        CHECK(run("stats " + constant + " --k 1").exit_code == 4);
    }

    SUBCASE("Monte Carlo reports are byte-identical across runs and lane counts") {
        const std::string args = "index " + x1x2 + " --subset '{1,2}' --method mc --samples 30000 --seed 9";
        const RunResult one = run(args);
        CHECK(one.exit_code == 0);
        CHECK(run(args).out == one.out);
        // Forcing a single worker lane must not change the merged estimate.
        const std::string forced = "env CUBE_INTERACT_THREADS=1 " + bin_path() + " " + args + " 2>/dev/null";
        FILE* pipe = popen(forced.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string out;
        std::array<char, 4096> buf;
        std::size_t got;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
        pclose(pipe);
        CHECK(out == one.out);
        // And the report is flagged as Monte Carlo with a stderr.
        const auto doc = nlohmann::json::parse(one.out);
        CHECK(doc.at("entries")[0].at("method") == "monte_carlo");
        CHECK(doc.at("entries")[0].at("stderr").is_number());
    }

    SUBCASE("verify quick passes and prints per-property counts") {
        const RunResult v = run("verify --level quick --seed 7");
        CHECK(v.exit_code == 0);
        CHECK(v.out.find("ALL PASS") != std::string::npos);
        // At least 15 properties exercised.
        long props = 0;
        std::size_t pos = 0;
        while ((pos = v.out.find("PASS ", pos)) != std::string::npos) {
            ++props;
            pos += 5;
        }
        CHECK(props >= 15);
    }
}
