#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "kgalab/bilinear.hpp"

namespace kga {

// Ordered JSON keeps emission byte-stable for the determinism contract.
using Json = nlohmann::ordered_json;

struct SchemaError : Error {
    using Error::Error;
};

inline constexpr const char* SCHEMA_V1 = "kga-lab/v1";
inline constexpr const char* SCHEMA_V1_HARDENED = "kga-lab/v1-hardened";

// Which hat the caller is wearing when touching files. The attacker role is
// only ever handed public artifacts; the loader enforces it.
enum class Role { trusted, attacker };

Json make_envelope(const std::string& schema, const std::string& type, bool secret, Json body);

// Validates the envelope shape and optionally the type; the attacker role
// refuses "secret":true files.
Json load_envelope(const std::filesystem::path& path, const std::string& expected_type, Role role);
Json load_envelope_any(const std::filesystem::path& path, Role role);

// Atomic write-temp-then-rename.
void store_envelope(const std::filesystem::path& path, const Json& envelope);

Json element_json(const GroupElement& e);
GroupElement element_from_json(const Json& j);
Json scalar_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json target_json(const TargetElement& t);

}  // namespace kga
