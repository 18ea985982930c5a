#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rsg {

enum class Level { Quick, Full };

struct VerifyOptions {
    Level level = Level::Full;
    std::uint64_t seed = 20240601;
    int workers = 1;
    double cap_bias = 0.0;       // injected into the cap threshold solver (sensitivity testing)
    std::vector<int> only;       // empty runs every check
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    std::vector<double> values;  // raw numbers compared by the determinism check
};

inline constexpr int kCheckCount = 16;

const char* check_name(int id);
CheckResult run_check(int id, const VerifyOptions& opts);
std::vector<CheckResult> verify_suite(const VerifyOptions& opts);

}  // namespace rsg
