#pragma once

// hkverify: check registry, suite runner and report writers.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hkt/report.hpp"

namespace hkt {

struct RunOptions {
    int points = 64;
    std::uint64_t seed = 0;
    double tol = 1e-7;
};

struct RegisteredCheck {
    std::string id;
    std::string group;  // verify, cocycle, contact or special
    std::string model;  // verify group only
    std::function<CheckEntry(const RunOptions&)> run;
};

// Every check, sorted by id.
const std::vector<RegisteredCheck>& check_registry();
std::vector<std::string> registered_ids(const std::string& group = "");

// Runs the selected checks and assembles a report sorted by id. A check that
// throws is reported as failed with an infinite defect.
CheckReport run_checks(const std::string& command, const std::vector<const RegisteredCheck*>& checks,
                       const RunOptions& opts);

std::string report_json(const CheckReport& r);
std::string report_text(const CheckReport& r);

// Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hkt
