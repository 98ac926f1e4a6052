#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace murphyes::cli {

struct Common {
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::string out_dir = "out";
};

struct TestFlags {
    double alpha = 0.025;
    std::size_t grid = 50;
    std::size_t permutations = 500;
    std::size_t block = 1;
    std::string variance = "iid"; // iid | nw
    std::size_t lag = 3;
    std::string scores = "s2"; // s2 | both
    std::string reference = "normal"; // normal | t
};

struct EvaluateArgs {
    Common common;
    std::string input;
    std::vector<std::string> models{"heavy", "garch", "hs"};
    std::size_t window = 1500;
    double alpha = 0.025;
    double nu = 6.0;
};

struct MurphyArgs {
    Common common;
    std::string a, b;
    std::string label_a = "A", label_b = "B";
    double alpha = 0.025;
    std::size_t grid = 50;
    std::string variance = "iid";
    std::size_t lag = 3;
    std::string scores = "s2";
};

struct TestArgs {
    Common common;
    std::string a, b;
    TestFlags test;
};

struct SimulateArgs {
    Common common;
    std::vector<double> zeta1{1.0};
    double zeta2 = 1.0;
    std::vector<std::size_t> horizons{500};
    std::size_t replications = 200;
    std::vector<double> levels{0.05};
    std::string rk_file;
    double nu = 6.0;
    TestFlags test;
};

struct PriceArgs {
    Common common;
    double spot = 100.0;
    double vol = 0.2;
    double maturity = 1.0;
    std::vector<double> alphas{0.025};
};

// Each returns the process exit code; errors propagate as exceptions.
int run_evaluate(const EvaluateArgs& args);
int run_murphy(const MurphyArgs& args);
int run_test(const TestArgs& args);
int run_simulate(const SimulateArgs& args);
int run_price(const PriceArgs& args);

} // namespace murphyes::cli
