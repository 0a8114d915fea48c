#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

#ifndef CMSIEVE_CLI_PATH
#error "CMSIEVE_CLI_PATH must name the cli binary"
#endif

namespace {

struct Run {
    int rc;
    std::string out;
};

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("cmsieve-cli-" + std::to_string(::getpid()) + "-" + std::to_string(rand()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    Run run(const std::string& args) const {
        fs::path out = dir / "stdout.txt";
        std::string cmd = "cd '" + dir.string() + "' && SIEVE_ORDERS_CACHE='" + (dir / "cache").string() + "' '" +
                          CMSIEVE_CLI_PATH + "' " + args + " > '" + out.string() + "' 2>&1";
        int st = std::system(cmd.c_str());
        return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(out)};
    }
    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::string file(const std::string& name) const { return slurp(dir / name); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("census summary and CSV") {
    Sandbox sb;
    Run r = sb.run("census --x 30 --summary s.json --csv rows.csv");
    REQUIRE(r.rc == 0);
    json s = json::parse(sb.file("s.json"));
    auto w = s["T1.3-pair"]["first_witnesses"];
    CHECK(std::find(w.begin(), w.end(), 13) != w.end());
    CHECK(s["T1.3-pair"]["x"] == 30);
    std::string csv = sb.file("rows.csv");
    CHECK(csv.rfind("p,a_p,pi_re,pi_im,A1,A2,omega_A1,Omega_A1,omega_A2,Omega_A2,gcd_A1_A2,struct_d1,struct_e1,"
                    "struct_d2,struct_e2\n",
                    0) == 0);
    CHECK(csv.find("\n13,6,3,2,1,5,") != std::string::npos);
    CHECK(fs::exists(sb.dir / "cache" / "orders.csv"));
}

TEST_CASE("census x = 4 counts nothing") {
    Sandbox sb;
    Run r = sb.run("census --x 4 --summary s.json");
    REQUIRE(r.rc == 0);
    json s = json::parse(sb.file("s.json"));
    for (auto& [k, v] : s.items()) CHECK(v["count"] == 0);
}

TEST_CASE("census output is deterministic and resume keeps counters monotone") {
    Sandbox sb;
    REQUIRE(sb.run("census --x 3000 --no-cache --summary a.json --csv a.csv").rc == 0);
    REQUIRE(sb.run("census --x 3000 --no-cache --summary b.json --csv b.csv --threads 3").rc == 0);
    CHECK(sb.file("a.json") == sb.file("b.json"));
    CHECK(sb.file("a.csv") == sb.file("b.csv"));

    REQUIRE(sb.run("census --x 3000 --summary c.json").rc == 0);
    Run r = sb.run("census --x 1e4 --resume --summary d.json");
    REQUIRE(r.rc == 0);
    CHECK(r.out.find("cached ") != std::string::npos);
    json c = json::parse(sb.file("c.json")), d = json::parse(sb.file("d.json"));
    for (auto& [k, v] : c.items()) CHECK(v["count"].get<long>() <= d[k]["count"].get<long>());
    CHECK(sb.file("c.json") == sb.file("a.json"));
}

TEST_CASE("exit codes") {
    Sandbox sb;
    CHECK(sb.run("census").rc == 2);
    CHECK(sb.run("census --x 100 --z1-exp 1/2").rc == 2);
    CHECK(sb.run("census --x 100 --ell 4").rc == 2);
    CHECK(sb.run("orders --p 5 --n 0").rc == 2);
    CHECK(sb.run("nonsense").rc == 2);

    REQUIRE(sb.run("census --x 2000 --cache bad.csv").rc == 0);
    std::string text = sb.file("bad.csv");
    size_t pos = 0;
    for (int i = 0; i < 49; ++i) pos = text.find('\n', pos) + 1;  // start of line 50
    size_t c1 = text.find(',', pos);
    text.replace(c1 + 1, text.find(',', c1 + 1) - c1 - 1, "999");
    std::ofstream(sb.dir / "bad.csv") << text;
    Run bad = sb.run("census --x 2000 --cache bad.csv");
    CHECK(bad.rc == 3);
    CHECK(bad.out.find(":50:") != std::string::npos);

    Run s = sb.run("sieve --case cm-pair");
    CHECK(s.rc == 4);
    CHECK(sb.run("sieve --case cm-ell --ell 3").rc == 0);
}

TEST_CASE("sieve JSON") {
    Sandbox sb;
    Run r = sb.run("sieve --case cm-ell --ell 3");
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["bound"] == 9);
    CHECK(std::fabs(j["value"].get<double>() - 0.1341) <= 5e-4);
    CHECK(j.contains("params"));
    CHECK(j.contains("tolerance"));
    r = sb.run("sieve --case noncm-omega --ell 3");
    REQUIRE(r.rc == 0);
    j = json::parse(r.out);
    CHECK(j["bound"] == 11);
    CHECK(std::fabs(j["value"].get<double>() - 0.0818) <= 5e-3);
}

TEST_CASE("gl2, constants, orders") {
    Sandbox sb;
    Run r = sb.run("gl2 --ell 3 --q 7");
    REQUIRE(r.rc == 0);
    json g = json::parse(r.out);
    CHECK(g["C_count"] == 602);
    CHECK(g["group_order"] == 2016);
    CHECK(g["density"] == "602/2016");

    r = sb.run("constants --which c-pair --cutoff 1e6");
    REQUIRE(r.rc == 0);
    json c = json::parse(r.out);
    CHECK(std::stod(c["last_factor"].get<std::string>()) < 1 + 1e-10);
    CHECK(std::fabs(c["last_factor_minus_1"].get<double>()) < 1e-10);

    r = sb.run("orders --p 13 --n 1 --n 2 --brute --structure");
    REQUIRE(r.rc == 0);
    json o = json::parse(r.out);
    REQUIRE(o.size() == 1);
    CHECK(o[0]["a_p"] == 6);
    CHECK(o[0]["pi"] == "3+2i");
}

TEST_CASE("manifest replay reproduces output") {
    Sandbox sb;
    REQUIRE(sb.run("--manifest m.json census --x 500 --no-cache --summary s1.json").rc == 0);
    json m = json::parse(sb.file("m.json"));
    CHECK(m["subcommand"] == "census");
    CHECK(m.contains("wall_time_s"));
    std::string first = sb.file("s1.json");
    fs::remove(sb.dir / "s1.json");
    REQUIRE(sb.run("--replay m.json").rc == 0);
    CHECK(sb.file("s1.json") == first);
}

TEST_CASE("verify quick") {
    Sandbox sb;
    Run r = sb.run("verify --quick");
    CHECK(r.rc == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

}
