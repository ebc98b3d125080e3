#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modk {

struct ProbeParams {
    int k = 3;
    int count = 20;
    int n = 6;                // vertex count of the ensemble
    long long budget = 1000000;  // search nodes over the whole probe; 0 searches nothing
    bool weaken = false;      // lower the connectivity premise by one
    std::uint64_t seed = 1;
};

struct Counterexample {
    int index = 0;
    std::string payload;
};

struct ProbeReport {
    std::string id;
    ProbeParams params;
    int checked = 0;          // instances decided within budget
    long long nodes = 0;
    bool budget_exhausted = false;
    std::vector<Counterexample> counterexamples;

    // "counterexample", "none found" or "none found within budget".
    std::string verdict() const;
    std::string text() const;
};

const std::vector<std::string>& probe_ids();

// Throws std::invalid_argument for an unknown id or invalid parameters.
ProbeReport probe_conjecture(const std::string& id, const ProbeParams& params);

}  // namespace modk
