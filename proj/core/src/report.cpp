#include "svao/report.hpp"

#include <sstream>

namespace svao {

nlohmann::ordered_json Report::to_json() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["input"] = input_echo;
    j["options"] = options;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = status_name(c.status);
        if (!c.witness.empty())
            e["witness"] = c.witness;
        cs.push_back(e);
    }
    j["checks"] = cs;
    if (!data.is_null())
        j["data"] = data;
    j["pass"] = all_passed() && !any_not_evaluable();
    return j;
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << "svao " << command << "\n";
    for (auto& [k, v] : input_echo.items())
        os << "  " << k << ": " << v.dump() << "\n";
    for (auto& [k, v] : options.items())
        os << "  option " << k << ": " << v.dump() << "\n";
    for (auto& c : checks) {
        os << "check " << c.name << ": " << status_name(c.status);
        if (!c.witness.empty())
            os << "  [" << c.witness << "]";
        os << "\n";
    }
    if (!data.is_null())
        for (auto& [k, v] : data.items())
            os << k << ": " << v.dump() << "\n";
    os << (all_passed() && !any_not_evaluable() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace svao
