// Copyright 2026 The bptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: verification suites, bound sweeps, Schmidt-tail
// experiments, tester runs and entanglement measures.
//
// Exit codes: 0 when every check passes, 1 when a verified property fails,
// 2 on usage or input errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "bptest/ensembles.hpp"
#include "bptest/haar.hpp"
#include "bptest/io.hpp"
#include "bptest/measures.hpp"
#include "bptest/testers.hpp"
#include "bptest/verify.hpp"

namespace {

using namespace bptest;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string subcommand;
    std::string n_range = "1..3";
    std::string tail_n_range = "11";
    std::string k_range = "1..3";
    std::string d_range = "2";
    std::string sample_range = "500";
    double gamma = std::sqrt(3.0) / 2.0;
    bool bound_only = false;
    int reps = 20;
    int reps_per_cut = 5;
    std::string mode = "mp";
    std::string state_path;
    std::string graph_path;
    std::string suite;
    bool inject_fault = false;
    std::uint64_t seed = kDefaultSeed;
    std::string out_path;
    std::string format = "csv";
    int workers = 0;
};

// Accepts "a", "a..b", "a..b:step" and comma-separated lists of those.
std::vector<std::int64_t> parse_range(const std::string& text, const std::string& flag) {
    std::vector<std::int64_t> out;
    std::stringstream items(text);
    std::string item;
    auto fail = [&] { throw UsageError("invalid range for " + flag + ": \"" + text + "\""); };
    while (std::getline(items, item, ',')) {
        try {
            const auto dots = item.find("..");
            if (dots == std::string::npos) {
                std::size_t used = 0;
                out.push_back(std::stoll(item, &used));
                if (used != item.size()) {
                    fail();
                }
                continue;
            }
            const auto colon = item.find(':', dots);
            const std::int64_t lo = std::stoll(item.substr(0, dots));
            const std::int64_t hi = std::stoll(item.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
            const std::int64_t step = colon == std::string::npos ? 1 : std::stoll(item.substr(colon + 1));
            if (step < 1 || hi < lo) {
                fail();
            }
            for (std::int64_t v = lo; v <= hi; v += step) {
                out.push_back(v);
            }
        } catch (const std::logic_error&) {
            fail();
        }
    }
    if (out.empty()) {
        fail();
    }
    return out;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw InputError("cannot open output file " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int cmd_verify(const ExperimentConfig& cfg) {
    VerifyOptions options;
    options.seed = cfg.seed;
    options.inject_fault = cfg.inject_fault;
    const auto report = run_suite(cfg.suite, options);
    if (!report) {
        throw UsageError("unknown suite \"" + cfg.suite + "\"; expected facts, ensembles, testers or all");
    }
    const std::string summary = report_summary(*report);
    if (cfg.format == "json" && cfg.out_path.empty()) {
        std::cerr << summary;
        std::cout << report_to_json(*report).dump(2) << '\n';
    } else {
        std::cout << summary;
        if (!cfg.out_path.empty()) {
            Output out(cfg.out_path);
            out.stream() << report_to_json(*report).dump(2) << '\n';
        }
    }
    return report->passed() ? kExitOk : kExitPropertyFailed;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    std::vector<GridPoint> grid;
    for (auto n : parse_range(cfg.n_range, "--n")) {
        for (auto k : parse_range(cfg.k_range, "--k")) {
            for (auto d : parse_range(cfg.d_range, "--d")) {
                if (n < 1 || k < 1 || d < 2 || n > 1'000'000 || k > 1'000'000 || d > 1'000'000) {
                    throw UsageError("sweep grid needs 1 <= n, 1 <= k, 2 <= d, each at most 1e6");
                }
                grid.push_back(GridPoint{static_cast<int>(n), static_cast<int>(k), static_cast<int>(d)});
            }
        }
    }
    ReportOptions options;
    options.exact = !cfg.bound_only;
    const auto reports = bound_sweep(grid, options);
    Output out(cfg.out_path);
    if (cfg.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : reports) {
            rows.push_back(bound_to_json(r));
        }
        out.stream() << rows.dump(2) << '\n';
    } else {
        out.stream() << bound_csv_header() << '\n';
        for (const auto& r : reports) {
            out.stream() << bound_csv_row(r) << '\n';
        }
    }
    for (const auto& r : reports) {
        if (r.satisfied && !*r.satisfied) {
            return kExitPropertyFailed;
        }
    }
    return kExitOk;
}

int cmd_tail(const ExperimentConfig& cfg) {
    if (!(cfg.gamma >= std::sqrt(3.0) / 2.0 - 1e-12 && cfg.gamma < 1.0)) {
        throw UsageError("--gamma must lie in [sqrt(3)/2, 1)");
    }
    const auto ns = parse_range(cfg.tail_n_range, "--n");
    const auto ds = parse_range(cfg.d_range, "--d");
    const auto samples = parse_range(cfg.sample_range, "--samples");
    for (auto s : samples) {
        if (s < 1) {
            throw UsageError("--samples must be positive");
        }
    }
    for (auto n : ns) {
        if (n < 2) {
            throw UsageError("tail experiments need n >= 2");
        }
    }
    std::vector<TailEstimate> rows;
    for (auto d : ds) {
        if (d < 2) {
            throw UsageError("--d must be at least 2");
        }
        for (auto n : ns) {
            for (auto s : samples) {
                rows.push_back(tail_mc(static_cast<int>(n), static_cast<int>(d), cfg.gamma,
                                       static_cast<std::uint64_t>(s), cfg.seed));
            }
        }
    }
    Output out(cfg.out_path);
    if (cfg.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& t : rows) {
            j.push_back(tail_to_json(t));
        }
        out.stream() << j.dump(2) << '\n';
    } else {
        out.stream() << tail_csv_header() << '\n';
        for (const auto& t : rows) {
            out.stream() << tail_csv_row(t) << '\n';
        }
    }
    return kExitOk;
}

int cmd_test(const ExperimentConfig& cfg) {
    if (cfg.state_path.empty()) {
        throw UsageError("test needs --state");
    }
    const PureState psi = load_state(cfg.state_path);
    StateOracle oracle(psi);
    Rng rng = substream(cfg.seed, 0);
    TestOutcome outcome;
    if (cfg.mode == "mp") {
        if (cfg.reps < 1) {
            throw UsageError("--reps must be positive");
        }
        outcome = mp_tester(oracle, cfg.reps, rng);
    } else if (cfg.mode == "bp") {
        if (cfg.reps_per_cut < 1) {
            throw UsageError("--reps-per-cut must be positive");
        }
        outcome = bp_tester_naive(oracle, cfg.reps_per_cut, rng);
    } else {
        throw UsageError("--mode must be mp or bp");
    }
    Output out(cfg.out_path);
    out.stream() << outcome_to_json(outcome, psi.n()).dump(2) << '\n';
    return kExitOk;
}

int cmd_measure(const ExperimentConfig& cfg) {
    if (cfg.state_path.empty() == cfg.graph_path.empty()) {
        throw UsageError("measure needs exactly one of --state or --graph");
    }
    const PureState psi = cfg.state_path.empty() ? graph_state(load_graph(cfg.graph_path)) : load_state(cfg.state_path);
    if (psi.n() < 2) {
        throw UsageError("measure needs at least two parties");
    }
    Output out(cfg.out_path);
    out.stream() << measure_report(psi).dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    CLI::App app{"Bipartite-product testing experiments"};
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", cfg.out_path, "Output file (default stdout)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run an invariant suite: facts, ensembles, testers or all");
    verify->fallthrough();
    verify->add_option("suite", cfg.suite, "Suite name")->required();
    verify->add_flag("--inject-fault", cfg.inject_fault, "Perturb the two-copy qubit symmetric projector");

    auto* sweep = app.add_subcommand("sweep", "Trace-distance bound sweep over (n, k, d)");
    sweep->fallthrough();
    sweep->add_option("--n", cfg.n_range, "Party counts, e.g. 1..3 or 10..60:10")->capture_default_str();
    sweep->add_option("--k", cfg.k_range, "Copy counts")->capture_default_str();
    sweep->add_option("--d", cfg.d_range, "Local dimensions")->capture_default_str();
    sweep->add_flag("--bound-only", cfg.bound_only, "Skip exact trace-distance computation");

    auto* tail = app.add_subcommand("tail", "Monte Carlo Schmidt-coefficient tail estimate");
    tail->fallthrough();
    tail->add_option("--n", cfg.tail_n_range, "Party counts")->capture_default_str();
    tail->add_option("--d", cfg.d_range, "Local dimensions")->capture_default_str();
    tail->add_option("--gamma", cfg.gamma, "Threshold in [sqrt(3)/2, 1)")->capture_default_str();
    tail->add_option("--samples", cfg.sample_range, "Sample counts")->capture_default_str();

    auto* test = app.add_subcommand("test", "Run a tester on copies of a state file");
    test->fallthrough();
    test->add_option("--state", cfg.state_path, "State JSON file")->required();
    test->add_option("--mode", cfg.mode, "mp or bp")->capture_default_str();
    test->add_option("--reps", cfg.reps, "Product-test repetitions (mp)")->capture_default_str();
    test->add_option("--reps-per-cut", cfg.reps_per_cut, "Repetitions per cut (bp)")->capture_default_str();

    auto* measure = app.add_subcommand("measure", "Schmidt coefficients and geometric measure of a state or graph");
    measure->fallthrough();
    measure->add_option("--state", cfg.state_path, "State JSON file");
    measure->add_option("--graph", cfg.graph_path, "Graph edge-list file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cfg.workers > 0) {
        omp_set_num_threads(cfg.workers);
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(cfg);
        }
        if (sweep->parsed()) {
            return cmd_sweep(cfg);
        }
        if (tail->parsed()) {
            return cmd_tail(cfg);
        }
        if (test->parsed()) {
            return cmd_test(cfg);
        }
        return cmd_measure(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
