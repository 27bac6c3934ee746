// Fast invariant battery behind the `selftest` subcommand.
#pragma once

#include <string>
#include <vector>

namespace stabledev {

struct SelfTestItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs every check; exceptions inside a check count as failures.
std::vector<SelfTestItem> run_selftest();

} // namespace stabledev
