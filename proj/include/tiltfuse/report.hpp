#ifndef TILTFUSE_REPORT_HPP
#define TILTFUSE_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace tiltfuse {

// FNV-1a, stable across platforms (std::hash is not)
inline std::string stable_hash(const std::string& s) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

struct CheckCase {
    nlohmann::json params;
    bool pass = false;
    std::string lhs_hash;
    std::string rhs_hash;
    std::string note;  // optional, e.g. near-boundary flags
};

struct Report {
    std::string check_name;
    unsigned long p = 0;
    std::vector<CheckCase> cases;

    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    std::size_t fail_count() const {
        std::size_t n = 0;
        for (const auto& c : cases)
            if (!c.pass) ++n;
        return n;
    }

    nlohmann::json to_json() const {
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : cases) {
            nlohmann::json j{{"params", c.params},
                             {"pass", c.pass},
                             {"lhs_hash", c.lhs_hash},
                             {"rhs_hash", c.rhs_hash}};
            if (!c.note.empty()) j["note"] = c.note;
            cs.push_back(std::move(j));
        }
        return {{"check_name", check_name}, {"p", p}, {"cases", cs}};
    }
};

}  // namespace tiltfuse

#endif
