#include <doctest.h>

#include "murphyes/io.hpp"

#include <cmath>
#include <string>

using namespace murphyes;

TEST_CASE("market csv parsing") {
    const auto d = io::parse_market_csv("rk,date,close\n1.5,2020-01-02,100\n,2020-01-03,101.5\n\n0.2,2020-01-06,99\n");
    REQUIRE(d.size() == 3);
    CHECK(d.dates[1] == "2020-01-03");
    CHECK(d.close[1] == 101.5);
    CHECK(std::isnan(d.rk[1]));
    CHECK(d.rk[2] == 0.2);

    const auto no_rk = io::parse_market_csv("date,close\r\n2020-01-02,100\r\n2020-01-03,101\r\n");
    CHECK(!no_rk.has_rk());
}

TEST_CASE("market csv errors carry line numbers") {
    auto message = [](const std::string& text) {
        try {
            io::parse_market_csv(text);
        } catch (const DataError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("date,close\n2020-01-02,100\n2020-01-03,abc\n").find("line 3") != std::string::npos);
    CHECK(message("date,close\n2020-01-02,100\n2020-13-03,1\n").find("line 3") != std::string::npos);
    CHECK(message("date,close\n2020-01-02,100\n2020-01-01,1\n").find("line 3") != std::string::npos);
    CHECK(message("date,close\n2020-01-02,100,3\n").find("line 2") != std::string::npos);
    CHECK(message("date,price\n2020-01-02,100\n").find("line 1") != std::string::npos);
    CHECK(message("date,close,rk\n2020-01-02,100,-1\n2020-01-03,100,1\n").find("line 2") != std::string::npos);
    CHECK(message("date,close\n2020-01-02,-100\n2020-01-03,100\n").find("line 2") != std::string::npos);
    CHECK(!message("").empty());
}

TEST_CASE("forecast csv round trip and alignment") {
    ModelForecasts m;
    m.dates = {"2020-01-02", "2020-01-03"};
    m.forecasts = {JointForecast(-1.25, -2.0), JointForecast(-0.1, -0.30000000000000004)};
    m.realizations = {0.5, -1.0 / 3.0};
    const auto text = io::forecast_csv(m);
    CHECK(text.rfind("date,var,es,realization\n", 0) == 0);
    const auto f = io::parse_forecast_csv(text);
    CHECK(f.forecasts[1].es() == -0.30000000000000004);
    CHECK(f.realizations[1] == -1.0 / 3.0);

    const auto s = io::align(f, f);
    CHECK(s.size() == 2);

    auto g = f;
    g.dates[1] = "2020-01-06";
    try {
        io::align(f, g);
        FAIL("expected a mismatch");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("2020-01-06") != std::string::npos);
    }
    g = f;
    g.dates.pop_back();
    g.forecasts.pop_back();
    g.realizations.pop_back();
    CHECK_THROWS_AS(io::align(f, g), DataError);

    CHECK_THROWS_AS(io::parse_forecast_csv("date,var,es,realization\n2020-01-02,-3,-2,0\n"), DataError);
}

TEST_CASE("format and dates") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(-2.5) == "-2.5");
    CHECK(io::valid_iso_date("2016-02-29"));
    CHECK(!io::valid_iso_date("2015-02-29"));
    CHECK(!io::valid_iso_date("2015-2-28"));
}
