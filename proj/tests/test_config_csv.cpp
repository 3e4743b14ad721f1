#include <doctest.h>

#include "pinctl/config.hpp"
#include "pinctl/csv.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/rng.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pinctl;

TEST_CASE("config parsing") {
    std::istringstream in(R"(
# comment
[network]
model = er      ; trailing comment
n = 1000
er_p = 0.1

[run]
seed = 42
outdir = results
flags = a, b , c
deep = true
)");
    const Config cfg = Config::parse(in);
    CHECK(cfg.get_required("network.model") == "er");
    CHECK(cfg.get_int("network.n", 0) == 1000);
    CHECK(cfg.get_double("network.er_p", 0.0) == doctest::Approx(0.1));
    CHECK(cfg.get_u64("run.seed", 0) == 42);
    CHECK(cfg.get("run.outdir", "") == "results");
    CHECK(cfg.get_list("run.flags") == std::vector<std::string>{"a", "b", "c"});
    CHECK(cfg.get_bool("run.deep", false));
    CHECK(cfg.get_bool("run.missing", true));
    CHECK_FALSE(cfg.has("run.missing"));
    CHECK_THROWS_AS((void)cfg.get_required("run.missing"), Error);
}

TEST_CASE("config parse errors") {
    {
        std::istringstream in("[section\nkey = 1\n");
        CHECK_THROWS_AS((void)Config::parse(in), ParseError);
    }
    {
        std::istringstream in("keywithoutvalue\n");
        CHECK_THROWS_AS((void)Config::parse(in), ParseError);
    }
    {
        std::istringstream in("[s]\nk = notanumber\n");
        const Config cfg = Config::parse(in);
        CHECK_THROWS_AS((void)cfg.get_double("s.k", 0.0), Error);
        CHECK_THROWS_AS((void)cfg.get_int("s.k", 0), Error);
        CHECK_THROWS_AS((void)cfg.get_bool("s.k", false), Error);
    }
}

TEST_CASE("double formatting round-trips") {
    RandomStream rng(15);
    for (int rep = 0; rep < 200; ++rep) {
        double v = (rng.u01() * 2.0 - 1.0) * std::pow(10.0, static_cast<double>(rng.below(40)) - 20.0);
        const std::string s = fmt_double(v);
        double back = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(r.ec == std::errc());
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(fmt_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(fmt_double(0.1) == "0.1");
}

TEST_CASE("csv writer finalizes atomically") {
    const auto dir = std::filesystem::temp_directory_path() / "pinctl_csv_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.csv").string();

    {
        Csv csv(path, "a,b,c");
        csv.row("x", 1, 0.5);
        CHECK_FALSE(std::filesystem::exists(path));
        CHECK(std::filesystem::exists(path + ".partial"));
        csv.close();
    }
    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path + ".partial"));

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b,c");
    std::getline(in, line);
    CHECK(line == "x,1,0.5");

    // abandoned writer leaves a flagged partial
    {
        Csv csv(path + "2", "h");
        csv.row(1);
    }
    CHECK(std::filesystem::exists(path + "2.partial"));
    CHECK_FALSE(std::filesystem::exists(path + "2"));
    std::filesystem::remove_all(dir);
}
