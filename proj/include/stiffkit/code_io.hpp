#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "stiffkit/codes.hpp"

namespace stiffkit {

// Exact schema:   {"name": str, "ambient_dim": int, "norm_sq": int, "points": [[int,...],...]}
// Decimal schema: {"name": str, "points_decimal": [[float,...],...], "tolerance": float}

nlohmann::json code_to_json(const Code& code);
/// Validates the document; throws FormatError on any schema or invariant violation.
Code code_from_json(const nlohmann::json& doc);

void save_code(const Code& code, const std::filesystem::path& path);
Code load_code(const std::filesystem::path& path);

}  // namespace stiffkit
