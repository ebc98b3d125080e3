#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modk {

class MultiGraph;

enum class InstanceStatus { pass, fail, budget };

struct InstanceRecord {
    int index = 0;
    InstanceStatus status = InstanceStatus::pass;
    std::string detail;  // counterexample payload on failure
};

struct SuiteParams {
    int count = 0;           // 0: the suite's default
    int threads = 0;         // 0: hardware concurrency
    long long budget = 0;    // search nodes per instance, 0: unlimited
};

struct SuiteReport {
    std::string id;
    std::uint64_t seed = 0;
    int instances = 0;
    int failures = 0;
    int budget_hits = 0;
    double seconds = 0;
    std::vector<InstanceRecord> records;

    bool ok() const { return failures == 0 && budget_hits == 0; }
    // Stable key order; identical for identical (id, seed, params) unless
    // timing is asked for.
    std::string text(bool with_timing = false) const;
};

const std::vector<std::string>& suite_ids();
int suite_default_count(const std::string& id);

// Throws std::invalid_argument for an unknown id.
SuiteReport run_suite(const std::string& id, std::uint64_t seed, const SuiteParams& params = {});

// Compact one-line graph payload: "n=<n> e=u-v,u-v,...".
std::string graph_payload(const MultiGraph& g);

}  // namespace modk
