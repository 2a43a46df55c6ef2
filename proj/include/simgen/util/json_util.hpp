#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace simgen::util {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reject any key not in the allowed list; unknown keys are configuration
/// errors, not silently ignored.
inline void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                       const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (key == name) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError(context + ": unknown key \"" + key + "\"");
    }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(context + ": missing required key \"" + key + "\"");
    return *it;
}

}  // namespace simgen::util
