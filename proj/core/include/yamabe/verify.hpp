#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace yamabe {

/// Outcome of one verified property over all trials.
struct PropertyResult {
    std::string name;
    std::string statement; ///< the inequality or identity being checked
    long trials = 0;
    long failures = 0;
    double worst = 0.0; ///< largest observed violation (negative margin = slack)
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    std::uint64_t seed = 0;
    bool pass() const {
        for (const auto& p : properties)
            if (p.failures != 0) return false;
        return true;
    }
};

/// Runs the full invariant battery of the rearrangement and functional
/// machinery over `trials` seeded random fields (Line1D J in [2,16],
/// homogeneous and weighted-graph M up to 6 nodes).
VerifyReport run_verification(std::uint64_t seed, int trials);

} // namespace yamabe
