#pragma once

#include <string>
#include <vector>

namespace svao {

enum class CheckStatus { Pass, Fail, NotEvaluable };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string witness;  // first failing tuple and defect, empty on pass

    bool passed() const { return status == CheckStatus::Pass; }
};

struct CheckReport {
    std::vector<CheckResult> checks;

    void add(CheckResult r) { checks.push_back(std::move(r)); }
    bool all_passed() const
    {
        for (auto& c : checks)
            if (c.status != CheckStatus::Pass)
                return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const
    {
        for (auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

inline const char* status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    default:
        return "not-evaluable";
    }
}

}  // namespace svao
