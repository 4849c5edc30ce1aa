#include "kgalab/envelope.hpp"

#include <fstream>

namespace kga {

Json make_envelope(const std::string& schema, const std::string& type, bool secret, Json body) {
    Json env;
    env["schema"] = schema;
    env["type"] = type;
    env["secret"] = secret;
    env["body"] = std::move(body);
    return env;
}

Json load_envelope_any(const std::filesystem::path& path, Role role) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());
    Json env;
    try {
        env = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": not valid JSON: " + e.what());
    }
    if (!env.is_object() || !env.contains("schema") || !env.contains("type") ||
        !env.contains("secret") || !env.contains("body"))
        throw SchemaError(path.string() + ": missing envelope fields");
    std::string schema = env["schema"].get<std::string>();
    if (schema != SCHEMA_V1 && schema != SCHEMA_V1_HARDENED)
        throw SchemaError(path.string() + ": unknown schema " + schema);
    if (role == Role::attacker && env["secret"].get<bool>())
        throw SchemaError(path.string() + ": refusing to read secret file in attacker role");
    return env;
}

Json load_envelope(const std::filesystem::path& path, const std::string& expected_type, Role role) {
    Json env = load_envelope_any(path, role);
    if (env["type"].get<std::string>() != expected_type)
        throw SchemaError(path.string() + ": expected type " + expected_type + ", found " +
                          env["type"].get<std::string>());
    return env;
}

void store_envelope(const std::filesystem::path& path, const Json& envelope) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write " + tmp.string());
        out << envelope.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

Json element_json(const GroupElement& e) {
    return Json{{"kind", "G"}, {"hex", e.to_hex()}};
}

GroupElement element_from_json(const Json& j) {
    if (!j.is_object() || j.value("kind", "") != "G") throw SchemaError("expected group element");
    return GroupElement::from_hex(j.at("hex").get<std::string>());
}

Json scalar_json(const Scalar& s) {
    return Json{{"kind", "scalar"}, {"hex", s.to_hex()}};
}

Scalar scalar_from_json(const Json& j) {
    if (!j.is_object() || j.value("kind", "") != "scalar") throw SchemaError("expected scalar");
    return Scalar::from_hex(j.at("hex").get<std::string>());
}

Json target_json(const TargetElement& t) {
    return Json{{"kind", "GT"}, {"hex", t.to_hex()}};
}

}  // namespace kga
