#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace weil2 {

using json = nlohmann::ordered_json;

struct Grid {
    int q = 2;
    int n = 1;
    std::uint64_t seed = 42;
    // sample count for randomized checks
    int trials = 100;
    // worker count; never part of the output
    int threads = 1;
};

enum class Status { pass, fail, reported };
std::string to_string(Status s);

struct CheckResult {
    std::string name;
    Status status = Status::fail;
    // counts, counterexample payloads, report data
    json detail = json::object();
};

struct VerifyReport {
    std::string suite;
    Grid grid;
    std::vector<CheckResult> checks;
    // every hard check passed; reported items never fail a run
    bool ok() const;
    json to_json() const;
};

const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown suite or q not in {2, 4, 8};
// SizeGuardError propagates when a check exceeds its guard
VerifyReport run_suite(const std::string& name, const Grid& grid);

const std::vector<std::string>& table_names();
// {"schema", "table", "grid", "columns", "rows"}; n = 0 gives no rows
json emit_table(const std::string& kind, const Grid& grid);

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<CheckResult(int threads)> run;
};
// the thirteen acceptance criteria
std::vector<Criterion> acceptance_criteria();

} // namespace weil2
