#include <doctest.h>

#include "cli_support.hpp"

#include <json.hpp>

#include <string>

using namespace clitest;
using murphyes::io::read_text;
using murphyes::io::write_text;

namespace {

std::size_t data_lines(const std::string& csv) {
    return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
}

} // namespace

TEST_CASE("help and usage errors") {
    const auto dir = fresh_dir("cli_usage");
    auto r = run("--help", dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("evaluate") != std::string::npos);
    r = run("test --help", dir);
    CHECK(r.code == 0);
    for (const char* flag : {"--alpha", "0.025", "--grid", "50", "--permutations", "500", "--block", "--variance",
                             "iid", "--scores", "s2", "--seed", "--threads", "--out-dir"})
        CHECK(r.out.find(flag) != std::string::npos);
    r = run("evaluate --help", dir);
    CHECK(r.out.find("1500") != std::string::npos);
    CHECK(run("", dir).code == 1);
    CHECK(run("frobnicate", dir).code == 1);
    CHECK(run("test --a x.csv", dir).code == 1);
    CHECK(run("test --a x.csv --b y.csv --variance hac", dir).code == 1);
}

TEST_CASE("evaluate") {
    const auto dir = fresh_dir("cli_evaluate");
    write_text(dir / "m.csv", synthetic_market_csv(1600, 1));
    write_text(dir / "norq.csv", synthetic_market_csv(1600, 1, false));

    auto r = run("evaluate --input " + (dir / "m.csv").string() + " --models hs --out-dir " + (dir / "hs").string(),
                 dir);
    REQUIRE(r.code == 0);
    CHECK(data_lines(read_text(dir / "hs" / "forecasts_hs.csv")) == 99);
    const auto manifest = nlohmann::json::parse(read_text(dir / "hs" / "manifest.json"));
    CHECK(manifest["command"] == "evaluate");
    CHECK(manifest["inputs"][0]["sha256"].get<std::string>().size() == 64);
    CHECK(manifest["artifacts"].size() == 2);

    r = run("evaluate --input " + (dir / "norq.csv").string() + " --models heavy --out-dir " + (dir / "x").string(),
            dir);
    CHECK(r.code == 2);
    CHECK(r.out.find("rk") != std::string::npos);

    write_text(dir / "bad.csv", "date,close\n2020-01-02,100\n2020-01-03,oops\n");
    r = run("evaluate --input " + (dir / "bad.csv").string() + " --out-dir " + (dir / "y").string(), dir);
    CHECK(r.code == 2);
    CHECK(r.out.find("line 3") != std::string::npos);

    r = run("evaluate --input " + (dir / "missing.csv").string() + " --out-dir " + (dir / "z").string(), dir);
    CHECK(r.code == 2);

    r = run("evaluate --input " + (dir / "m.csv").string() + " --out-dir " + (dir / "all").string(), dir);
    REQUIRE(r.code == 0);
    const auto summary = read_text(dir / "all" / "summary.csv");
    CHECK(summary.rfind("model,average_var,average_es,violation_rate", 0) == 0);
    CHECK(data_lines(summary) == 3);
}

TEST_CASE("murphy, test, simulate and price") {
    const auto dir = fresh_dir("cli_pipeline");
    write_text(dir / "m.csv", synthetic_market_csv(1700, 2));
    REQUIRE(run("evaluate --input " + (dir / "m.csv").string() + " --window 1000 --out-dir " + (dir / "ev").string(),
                dir)
                .code == 0);
    const auto heavy = (dir / "ev" / "forecasts_heavy.csv").string();
    const auto hs = (dir / "ev" / "forecasts_hs.csv").string();

    SUBCASE("murphy artifacts, identical and swapped inputs") {
        REQUIRE(run("murphy --a " + heavy + " --b " + hs + " --out-dir " + (dir / "ab").string(), dir).code == 0);
        REQUIRE(run("murphy --a " + hs + " --b " + heavy + " --out-dir " + (dir / "ba").string(), dir).code == 0);
        REQUIRE(run("murphy --a " + hs + " --b " + hs + " --out-dir " + (dir / "aa").string(), dir).code == 0);
        for (const char* f : {"curves_v2.csv", "curves_v2.svg", "diff_v2.csv", "diff_v2.svg", "manifest.json"})
            CHECK(std::filesystem::exists(dir / "ab" / f));
        CHECK(read_text(dir / "ab" / "diff_v2.svg").find("<svg") != std::string::npos);

        std::istringstream ab(read_text(dir / "ab" / "diff_v2.csv"));
        std::istringstream ba(read_text(dir / "ba" / "diff_v2.csv"));
        std::istringstream aa(read_text(dir / "aa" / "diff_v2.csv"));
        std::string la, lb, lz;
        std::getline(ab, la);
        std::getline(ba, lb);
        std::getline(aa, lz);
        while (std::getline(ab, la) && std::getline(ba, lb) && std::getline(aa, lz)) {
            const double da = std::stod(la.substr(la.find(',') + 1));
            const double db = std::stod(lb.substr(lb.find(',') + 1));
            const double dz = std::stod(lz.substr(lz.find(',') + 1));
            CHECK(da == -db);
            CHECK(dz == 0.0);
        }
    }
    SUBCASE("misaligned forecast files") {
        auto text = read_text(hs);
        const auto pos = text.find('\n', text.find('\n') + 1);
        write_text(dir / "short.csv", text.substr(0, pos + 1) + text.substr(text.find('\n', pos + 1) + 1));
        const auto r = run("murphy --a " + hs + " --b " + (dir / "short.csv").string() + " --out-dir " +
                               (dir / "mis").string(),
                           dir);
        CHECK(r.code == 2);
        CHECK(r.out.find("mismatch") != std::string::npos);
    }
    SUBCASE("test: identical inputs, seeded rerun, variants") {
        auto r = run("test --a " + hs + " --b " + hs + " --permutations 50 --out-dir " + (dir / "same").string(), dir);
        REQUIRE(r.code == 0);
        const auto same = nlohmann::json::parse(read_text(dir / "same" / "test.json"));
        CHECK(same["results"][0]["minimal_wy_p"] == 1.0);
        CHECK(same["results"][1]["minimal_wy_p"] == 1.0);

        const std::string pair = "test --a " + heavy + " --b " + hs + " --seed 4 ";
        const std::string base = pair + "--permutations 100 ";
        REQUIRE(run(base + "--out-dir " + (dir / "t1").string(), dir).code == 0);
        REQUIRE(run(base + "--threads 3 --out-dir " + (dir / "t2").string(), dir).code == 0);
        CHECK(read_text(dir / "t1" / "test.json") == read_text(dir / "t2" / "test.json"));
        CHECK(read_text(dir / "t1" / "manifest.json") == read_text(dir / "t2" / "manifest.json"));
        const auto j = nlohmann::json::parse(read_text(dir / "t1" / "test.json"));
        CHECK(j["results"][0]["hypothesis"] == "A_dominates_B");
        CHECK(j["results"][0]["adjusted_p"].size() == 50);

        for (const char* block : {"1", "4"}) {
            for (const char* var : {"iid", "nw"}) {
                for (const char* sc : {"s2", "both"}) {
                    const auto out = dir / (std::string("v") + block + var + sc);
                    r = run(pair + "--permutations 20 --block " + block + " --variance " + var + " --scores " + sc +
                                " --out-dir " + out.string(),
                            dir);
                    CHECK(r.code == 0);
                }
            }
        }
    }
    SUBCASE("simulate and price") {
        auto r = run("simulate --replications 4 --T 100 --zeta1 0.5,1 --zeta2 0 --permutations 30 --levels "
                     "0.05,0.1 --out-dir " +
                         (dir / "sim").string(),
                     dir);
        REQUIRE(r.code == 0);
        const auto csv = read_text(dir / "sim" / "study.csv");
        CHECK(csv.rfind("zeta1,zeta2,T,nominal_level,rejection_rate,se,replications\n", 0) == 0);
        CHECK(data_lines(csv) == 4);

        r = run("price --alpha 0.01,0.025 --out-dir " + (dir / "price").string(), dir);
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(read_text(dir / "price" / "price.json"));
        CHECK(j["scenarios"].size() == 2);
        CHECK(j["max_abs_diff"].get<double>() <= 1e-10);
        CHECK(run("price --vol -1 --out-dir " + (dir / "p2").string(), dir).code == 1);
    }
}
