#pragma once

#include "svao/check.hpp"

#include <json.hpp>

namespace svao {

// Deterministic machine/human readable run report. Field order is fixed and
// no wall-clock data is emitted, so identical inputs give identical bytes.
struct Report {
    std::string command;
    nlohmann::ordered_json input_echo;
    nlohmann::ordered_json options;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json data;  // command-specific payload (dims, witnesses)

    bool all_passed() const
    {
        for (auto& c : checks)
            if (c.status == CheckStatus::Fail)
                return false;
        return true;
    }
    bool any_not_evaluable() const
    {
        for (auto& c : checks)
            if (c.status == CheckStatus::NotEvaluable)
                return true;
        return false;
    }

    void add(const CheckResult& r) { checks.push_back(r); }
    void add_all(const CheckReport& r)
    {
        for (auto& c : r.checks)
            checks.push_back(c);
    }

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

}  // namespace svao
