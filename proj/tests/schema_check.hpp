#pragma once

// Minimal JSON-Schema checker covering the subset the report schema uses:
// type, const, enum, required, properties, items, $ref into $defs, oneOf.
// Returns an explanatory string for the first violation, empty on success.

#include <string>

#include <json.hpp>

namespace schemacheck {

using nlohmann::json;

inline const json* resolve_ref(const json& root, const std::string& ref) {
    // only local refs of the form #/$defs/name
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) return nullptr;
    const auto& defs = root.at("$defs");
    const auto it = defs.find(ref.substr(prefix.size()));
    return it == defs.end() ? nullptr : &*it;
}

inline std::string validate(const json& instance, const json& schema, const json& root,
                            const std::string& where = "$") {
    if (schema.contains("$ref")) {
        const json* target = resolve_ref(root, schema["$ref"].get<std::string>());
        if (!target) return where + ": unresolved $ref " + schema["$ref"].get<std::string>();
        return validate(instance, *target, root, where);
    }
    if (schema.contains("const") && instance != schema["const"])
        return where + ": expected const " + schema["const"].dump();
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& v : schema["enum"])
            if (instance == v) hit = true;
        if (!hit) return where + ": value " + instance.dump() + " not in enum";
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        const bool ok = (t == "object" && instance.is_object()) ||
                        (t == "array" && instance.is_array()) ||
                        (t == "string" && instance.is_string()) ||
                        (t == "boolean" && instance.is_boolean()) ||
                        (t == "integer" && instance.is_number_integer()) ||
                        (t == "number" && instance.is_number()) ||
                        (t == "null" && instance.is_null());
        if (!ok) return where + ": expected type " + t + ", got " + instance.dump();
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!instance.is_object() || !instance.contains(key.get<std::string>()))
                return where + ": missing required key " + key.get<std::string>();
        }
    }
    if (schema.contains("properties") && instance.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!instance.contains(key)) continue;
            const std::string msg = validate(instance.at(key), sub, root, where + "." + key);
            if (!msg.empty()) return msg;
        }
    }
    if (schema.contains("items") && instance.is_array()) {
        std::size_t i = 0;
        for (const auto& el : instance) {
            const std::string msg =
                validate(el, schema["items"], root, where + "[" + std::to_string(i) + "]");
            if (!msg.empty()) return msg;
            ++i;
        }
    }
    if (schema.contains("oneOf")) {
        int hits = 0;
        std::string last;
        for (const auto& branch : schema["oneOf"]) {
            const std::string msg = validate(instance, branch, root, where);
            if (msg.empty())
                ++hits;
            else
                last = msg;
        }
        if (hits != 1)
            return where + ": oneOf matched " + std::to_string(hits) +
                   " branches (last failure: " + last + ")";
    }
    return "";
}

inline std::string validate_document(const json& instance, const json& schema) {
    return validate(instance, schema, schema);
}

}  // namespace schemacheck
