#pragma once

// Golden transcripts of the command line on the bundled demos. Each case runs
// in-process from the source directory, so file paths print relative to it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace multitime::testing {

struct CliCase {
    std::string name;
    std::vector<std::string> args;
    int exit_code;
};

inline const std::vector<CliCase>& cli_cases() {
    static const std::vector<CliCase> cases = {
        {"solve_first_order", {"solve", "demos/first_order.yaml", "-"}, 0},
        {"solve_first_order_oracle", {"solve", "demos/first_order.yaml", "-", "--oracle"}, 0},
        {"solve_rotation", {"solve", "demos/rotation.yaml", "-"}, 0},
        {"solve_fibonacci", {"solve", "demos/fibonacci.yaml", "-", "--oracle"}, 0},
        {"solve_window_override", {"--window", "3x3", "solve", "demos/fibonacci.yaml", "-"}, 0},
        {"solve_incompatible", {"solve", "demos/incompatible.yaml", "-"}, 3},
        {"solve_second_order_incompatible", {"solve", "demos/second_order_incompatible.yaml", "-"}, 3},
        {"compat_first_order", {"compat", "demos/first_order.yaml"}, 0},
        {"compat_incompatible", {"compat", "demos/incompatible.yaml"}, 1},
        {"compat_second_order_incompatible", {"compat", "demos/second_order_incompatible.yaml"}, 1},
        {"compat_tribonacci", {"compat", "demos/tribonacci.yaml"}, 0},
        {"oracle_rotation", {"oracle", "demos/rotation.yaml"}, 0},
        {"oracle_fibonacci", {"oracle", "demos/fibonacci.yaml"}, 0},
        {"oracle_self_test", {"oracle", "--seed", "7", "--count", "20"}, 0},
        {"power2_fibonacci", {"power2", "1,1;1,0", "10", "--oracle"}, 0},
        {"power2_repeated", {"power2", "2,1;0,2", "5"}, 0},
        {"power2_complex", {"power2", "0,-1;1,0", "3"}, 0},
        {"orderk_tribonacci", {"orderk", "demos/tribonacci.yaml", "-", "--oracle"}, 0},
        {"orderk_tribonacci_stacked", {"orderk", "demos/tribonacci.yaml", "-", "--stacked", "--oracle"}, 0},
        {"special_eigen", {"special", "demos/special_eigen.yaml", "-", "--oracle"}, 0},
        {"special_root", {"special", "demos/special_root.yaml", "-", "--oracle"}, 0},
        {"special_epsilon", {"special", "demos/special_epsilon.yaml", "-", "--oracle"}, 0},
        {"special_sum_power", {"special", "demos/special_sum_power.yaml", "-", "--oracle"}, 0},
        {"surface_planar", {"surface", "demos/planar.mesh", "-"}, 0},
        {"surface_saddle_capped", {"surface", "demos/saddle.yaml", "-", "--max-iter", "2"}, 5},
        {"error_missing_file", {"solve", "demos/no_such_file.yaml"}, 2},
        {"error_unknown_key", {"solve", "tests/data/bad_key.yaml"}, 2},
        {"error_bad_matrix", {"power2", "1,2;3", "2"}, 2},
        {"error_no_subcommand", {}, 2},
        {"error_oracle_without_seed", {"oracle"}, 2},
        {"error_wrong_kind", {"special", "demos/fibonacci.yaml"}, 2},
        {"error_nilpotent_root", {"special", "tests/data/root_nilpotent.yaml", "-"}, 4},
    };
    return cases;
}

inline std::filesystem::path golden_dir() { return std::filesystem::path(MULTITIME_SOURCE_DIR) / "tests" / "golden"; }

/// Runs a case from the source directory and returns its transcript.
inline std::string run_cli_case(const CliCase& c, int* exit_code = nullptr) {
    const auto previous = std::filesystem::current_path();
    std::filesystem::current_path(MULTITIME_SOURCE_DIR);
    std::ostringstream out, err;
    const int code = multitime::cli::run(c.args, out, err);
    std::filesystem::current_path(previous);
    if (exit_code) *exit_code = code;
    std::ostringstream t;
    t << "$ multitime";
    for (const auto& a : c.args) t << ' ' << a;
    t << "\nexit: " << code << "\n--- stdout\n" << out.str() << "--- stderr\n" << err.str();
    return t.str();
}

inline std::string read_golden(const CliCase& c) {
    std::ifstream in(golden_dir() / (c.name + ".txt"), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// With MULTITIME_UPDATE_GOLDEN set, rewrites the golden file instead of comparing.
inline bool updating_golden() { return std::getenv("MULTITIME_UPDATE_GOLDEN") != nullptr; }

inline void write_golden(const CliCase& c, const std::string& transcript) {
    std::ofstream(golden_dir() / (c.name + ".txt"), std::ios::binary) << transcript;
}

}  // namespace multitime::testing
