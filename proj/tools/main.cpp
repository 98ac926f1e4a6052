#include "commands.hpp"

#include "murphyes/common.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace murphyes::cli;

namespace {

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
}

void add_test_flags(CLI::App* cmd, TestFlags& f) {
    cmd->add_option("--alpha", f.alpha, "Tail level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--grid", f.grid, "Grid points per score family")->capture_default_str();
    cmd->add_option("--permutations", f.permutations, "Sign-flip replicates")->capture_default_str();
    cmd->add_option("--block", f.block, "Sign-flip block length")->capture_default_str();
    cmd->add_option("--variance", f.variance, "Standard error: iid or nw (Newey-West)")
        ->capture_default_str()
        ->check(CLI::IsMember({"iid", "nw"}));
    cmd->add_option("--lag", f.lag, "Newey-West lag")->capture_default_str();
    cmd->add_option("--scores", f.scores, "Score set: s2 or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"s2", "both"}));
    cmd->add_option("--reference", f.reference, "Pointwise p-value reference: normal or t")
        ->capture_default_str()
        ->check(CLI::IsMember({"normal", "t"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Murphy diagrams and dominance tests for (VaR, ES) forecasts"};
    app.require_subcommand(1);

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Rolling out-of-sample HEAVY / GARCH / HS forecasts");
    evaluate->add_option("--input", ev.input, "CSV with date,close[,rk]")->required();
    evaluate->add_option("--models", ev.models, "Models to run (heavy, garch, hs)")
        ->delimiter(',')
        ->capture_default_str();
    evaluate->add_option("--window", ev.window, "Rolling window length")->capture_default_str();
    evaluate->add_option("--alpha", ev.alpha, "Tail level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    evaluate->add_option("--nu", ev.nu, "Student-t degrees of freedom")->capture_default_str();
    add_common(evaluate, ev.common);

    MurphyArgs mu;
    auto* murphy = app.add_subcommand("murphy", "Murphy curves and difference curve for two forecast files");
    murphy->add_option("--a", mu.a, "Forecast CSV of method A (date,var,es,realization)")->required();
    murphy->add_option("--b", mu.b, "Forecast CSV of method B")->required();
    murphy->add_option("--label-a", mu.label_a, "Legend label of A")->capture_default_str();
    murphy->add_option("--label-b", mu.label_b, "Legend label of B")->capture_default_str();
    murphy->add_option("--alpha", mu.alpha, "Tail level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    murphy->add_option("--grid", mu.grid, "Grid points")->capture_default_str();
    murphy->add_option("--variance", mu.variance, "Band standard error: iid or nw")
        ->capture_default_str()
        ->check(CLI::IsMember({"iid", "nw"}));
    murphy->add_option("--lag", mu.lag, "Newey-West lag")->capture_default_str();
    murphy->add_option("--scores", mu.scores, "s2 (v2 curves) or both (also v1 curves)")
        ->capture_default_str()
        ->check(CLI::IsMember({"s2", "both"}));
    add_common(murphy, mu.common);

    TestArgs te;
    auto* test = app.add_subcommand("test", "Westfall-Young dominance test in both directions");
    test->add_option("--a", te.a, "Forecast CSV of method A")->required();
    test->add_option("--b", te.b, "Forecast CSV of method B")->required();
    add_test_flags(test, te.test);
    add_common(test, te.common);

    SimulateArgs si;
    auto* simulate = app.add_subcommand("simulate", "Size and power study of the dominance test");
    simulate->add_option("--zeta1", si.zeta1, "Error variance(s) of forecaster 1")->delimiter(',')->capture_default_str();
    simulate->add_option("--zeta2", si.zeta2, "Error variance of forecaster 2")->capture_default_str();
    simulate->add_option("--T", si.horizons, "Sample size(s)")->delimiter(',')->capture_default_str();
    simulate->add_option("--replications", si.replications, "Monte Carlo replications")->capture_default_str();
    simulate->add_option("--levels", si.levels, "Nominal test levels")->delimiter(',')->capture_default_str();
    simulate->add_option("--rk-file", si.rk_file, "CSV with date,close,rk driving the DGP (default: synthetic rk)");
    simulate->add_option("--nu", si.nu, "Student-t degrees of freedom")->capture_default_str();
    add_test_flags(simulate, si.test);
    add_common(simulate, si.common);

    PriceArgs pr;
    auto* price = app.add_subcommand("price", "ES-based put price versus Black-Scholes");
    price->add_option("--spot", pr.spot, "Initial price y0")->capture_default_str();
    price->add_option("--vol", pr.vol, "Annual volatility")->capture_default_str();
    price->add_option("--maturity", pr.maturity, "Maturity in years")->capture_default_str();
    price->add_option("--alpha", pr.alphas, "Tail level(s)")->delimiter(',')->capture_default_str();
    add_common(price, pr.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*evaluate) return run_evaluate(ev);
        if (*murphy) return run_murphy(mu);
        if (*test) return run_test(te);
        if (*simulate) return run_simulate(si);
        if (*price) return run_price(pr);
    } catch (const murphyes::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const murphyes::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
