#pragma once

#include "murphyes/io.hpp"
#include "murphyes/rng.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace clitest {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

inline Run run(const std::string& args, const fs::path& dir) {
    const auto log = dir / "stdout.txt";
    const std::string cmd = std::string(MURPHYES_CLI_PATH) + " " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = murphyes::io::read_text(log);
    return r;
}

inline fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("murphyes_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Business-day calendar with a HEAVY-type volatility path and rk column.
inline std::string synthetic_market_csv(std::size_t rows, std::uint64_t seed, bool with_rk = true) {
    murphyes::Rng rng(seed);
    std::ostringstream out;
    out << (with_rk ? "date,close,rk\n" : "date,close\n");
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int y = 2004, m = 1, d = 1, dow = 3;
    double price = 1000.0, s2 = 1.0, rk = 1.0;
    std::size_t written = 0;
    while (written < rows) {
        if (dow < 5) {
            s2 = 0.1 + 0.5 * rk + 0.4 * s2;
            price *= std::exp(std::sqrt(s2) * std::sqrt(4.0 / 6.0) * rng.student_t(6.0) / 100.0);
            rk = s2 * std::exp(0.4 * rng.normal() - 0.08);
            char buf[40];
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
            out << buf << ',' << murphyes::io::format_double(price);
            if (with_rk) out << ',' << murphyes::io::format_double(rk);
            out << '\n';
            ++written;
        }
        dow = (dow + 1) % 7;
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        if (++d > days[m - 1] + (m == 2 && leap ? 1 : 0)) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
    }
    return out.str();
}

} // namespace clitest
