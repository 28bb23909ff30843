// battery.hpp — Acceptance criteria (AC1..AC14) and invariant checks (INV*),
// shared by `rcpt validate` and the acceptance test binary.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rcpt::validation {

struct ItemResult {
    std::string id;
    std::string title;
    bool passed{false};
    std::string detail;        // one-line human summary of the measured values
    nlohmann::json metrics;    // everything measured, machine-readable
    double runtime_s{0.0};
    double budget_s{0.0};
    std::string error;         // exception text if the item threw
};

struct BatteryOptions {
    // Multiplies every numeric tolerance. 1 = as specified; a negative value
    // makes every comparison fail (used to test the failure path).
    double tolerance_scale{1.0};
    // Item ids to run (empty = all). Matches exact ids, or "AC"/"INV" for a group.
    std::vector<std::string> only;
    bool include_invariants{true};
    // Called after each item finishes.
    std::function<void(const ItemResult&)> on_result;
};

struct Report {
    std::vector<ItemResult> items;
    double tolerance_scale{1.0};
    double total_runtime_s{0.0};

    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string summary() const;
};

// Ids and titles of every item, in execution order.
std::vector<std::pair<std::string, std::string>> catalogue();

Report run_battery(const BatteryOptions& opt);

// One status line: "AC6   FAIL  title  [0.12 s / 1 s]  detail"
std::string format_line(const ItemResult& r);

} // namespace rcpt::validation
