#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hkt {

inline constexpr const char* kVersion = "0.1.0";

struct CheckEntry {
    std::string id;
    int points = 0;
    double max_defect = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::string version = kVersion;
    std::string command;
    std::optional<std::string> model;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<CheckEntry> checks;
    bool pass = true;

    void add(CheckEntry e)
    {
        pass = pass && e.pass;
        checks.push_back(std::move(e));
    }
    const CheckEntry* find(const std::string& id) const
    {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

}  // namespace hkt
