#pragma once
// Invariant suite run by `cmsieve verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cmsieve {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    bool quick = true;
    std::uint64_t seed = 20240601;
    // Called after each check; may be empty.
    std::function<void(const CheckResult&)> progress;
};

std::vector<std::string> verify_check_names();
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace cmsieve
