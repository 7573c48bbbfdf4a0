#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cforge/scalar.hpp"

namespace cforge {

enum class CheckStatus { pass, fail, info };

const char* status_name(CheckStatus s);

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::info;
    std::string residual;  // offending expression, empty on pass
    double elapsed_ms = 0.0;
    std::string citation;
};

// Deliberate formula corruptions shipped as negative controls; each one must
// make at least one suite check fail.
enum class Mutation {
    none,
    drop_omega2_momentum,   // Omega~_2 without the -S*pi_theta term
    flip_hm_ghost_sign,     // minimal Hamiltonian with the opposite coupling
    skew_weyl_coefficient,  // wrong Euler coefficient in the expected product
};

struct SuiteConfig {
    std::string section = "all";  // all|brackets|bft|weyl|brst|numeric
    int trials = 100;
    int grid = 512;
    std::uint64_t seed = 0x5eed0001ULL;
    bool parallel = true;
    Mutation mutation = Mutation::none;
};

// Runs the verification checks of the selected section in declared order.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg = {});

bool all_passed(const std::vector<CheckReport>& reports);

// Flat JSON array with fields {name, status, residual, elapsed_ms, citation};
// with_timing=false zeroes the elapsed field for byte-stable comparison.
std::string to_json(const std::vector<CheckReport>& reports,
                    bool with_timing = true);
std::string to_markdown(const std::vector<CheckReport>& reports);

}  // namespace cforge
