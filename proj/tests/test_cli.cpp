#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string g_cli_path;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), p)) r.out.append(buf, n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.out); }

std::string strip_timing(std::string s) {
    auto pos = s.find("timing_seconds");
    while (pos != std::string::npos) {
        auto eol = s.find('\n', pos);
        s.erase(pos, eol - pos);
        pos = s.find("timing_seconds");
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<char*> passthrough{argv[0]};
    for (int i = 1; i < argc; ++i) {
        if (g_cli_path.empty() && argv[i][0] != '-')
            g_cli_path = argv[i];
        else
            passthrough.push_back(argv[i]);
    }
    if (g_cli_path.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli> [catch2 args]\n");
        return 2;
    }
    return Catch::Session().run(static_cast<int>(passthrough.size()), passthrough.data());
}

TEST_CASE("bound subcommand") {
    auto r = run_cli("bound --cycle 5 --method both");
    CHECK(r.exit_code == 0);
    auto j = parse(r);
    CHECK(j["ap_bound"] == 30);
    CHECK(j["formula"] == 30);
    CHECK(j["baseline"] == 70);
    CHECK(j["agreement"] == true);

    auto t = parse(run_cli("bound --tree path:10"));
    CHECK(t["ap_bound"] == 512);
    CHECK(t["baseline"] == 48620);

    CHECK(run_cli("bound --cycle 2").exit_code == 4);
    CHECK(run_cli("bound --cycle 3 --star 4").exit_code == 4);
}

TEST_CASE("facets subcommand") {
    auto j4 = parse(run_cli("facets --cycle 4"));
    CHECK(j4["facets"] == 6);
    CHECK(j4["facet_nvol"] == 2);
    CHECK(j4["total"] == 12);

    auto j5 = parse(run_cli("facets --cycle 5"));
    CHECK(j5["facets"] == 30);
    CHECK(j5["all_unimodular"] == true);

    auto j7 = parse(run_cli("facets --cycle 7"));
    CHECK(j7["facets"] == 140);
    CHECK(j7["total"] == 140);

    CHECK(run_cli("facets --cycle 2").exit_code != 0);
}

TEST_CASE("solve subcommand") {
    auto j = parse(run_cli("solve --cycle 3 --seed 1"));
    CHECK(j["count"] == 6);
    CHECK(j["inconclusive"] == false);

    auto t = parse(run_cli("solve --random-tree 5 --seed 2"));
    CHECK(t["count"] == 16);

    auto p = parse(run_cli("solve --tree path:2 --omega 0"));
    CHECK(p["count"] == 2);
    CHECK(p["torus_count"] == 2);
    std::vector<double> th;
    for (const auto& s : p["solutions"]) th.push_back(s["theta"][0].get<double>());
    std::sort(th.begin(), th.end());
    CHECK(th[0] < 1e-8);
    CHECK(std::abs(th[1] - 3.14159265358979) < 1e-8);
}

TEST_CASE("certify subcommand") {
    auto j = parse(run_cli("certify --cycle 3"));
    CHECK(j["pass"] == true);

    auto r = run_cli("certify --corrupted-fixture");
    CHECK(r.exit_code == 2);
    CHECK(parse(r)["pass"] == false);

    CHECK(run_cli("certify --cycle 9").exit_code == 4);
}

TEST_CASE("verify-chain subcommand") {
    auto r = run_cli("verify-chain --random-tree 4 --seed 5");
    CHECK(r.exit_code == 0);
    auto j = parse(r);
    CHECK(j["cstar_count"] == 8);
    CHECK(j["chain_ok"] == true);

    auto c = parse(run_cli("verify-chain --cycle 4 --seed 5"));
    CHECK(c["cstar_count"] == 12);
    CHECK(c["mixed_volume"] == 12);
    CHECK(c["ap_bound"] == 12);
}

TEST_CASE("network files load and invalid input exits 4") {
    std::string path = "/tmp/kap_cli_net.json";
    {
        std::ofstream f(path);
        f << R"({"N":2,"edges":[{"i":0,"j":1,"a_re":1.0,"a_im":0.0}],"omega":[[0.0,0.0]]})";
    }
    auto j = parse(run_cli("solve --input " + path));
    CHECK(j["count"] == 2);

    {
        std::ofstream f(path);
        f << R"({"N":2,"edges":[{"i":1,"j":1,"a_re":1.0,"a_im":0.0}],"omega":[[0.0,0.0]]})";
    }
    CHECK(run_cli("solve --input " + path).exit_code == 4);
    CHECK(run_cli("solve --input /nonexistent.json").exit_code == 4);
}

TEST_CASE("reports are byte-identical apart from timing") {
    auto a = run_cli("solve --cycle 4 --seed 7");
    auto b = run_cli("solve --cycle 4 --seed 7");
    CHECK(strip_timing(a.out) == strip_timing(b.out));
    CHECK(a.out.find("manifest") != std::string::npos);

    auto c = run_cli("bound --cycle 6 --method both");
    auto d = run_cli("bound --cycle 6 --method both");
    CHECK(strip_timing(c.out) == strip_timing(d.out));
}

TEST_CASE("csv summaries") {
    auto r = run_cli("bound --cycle 5 --method both --csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("N,topology,ap_bound,baseline") != std::string::npos);
    CHECK(r.out.find("5,cycle,30,70") != std::string::npos);

    auto s = run_cli("solve --cycle 3 --seed 1 --csv");
    CHECK(s.out.find("3,6,") != std::string::npos);
}
