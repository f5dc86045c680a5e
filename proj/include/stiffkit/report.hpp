#pragma once

// JSON renderings of the library's reports, as emitted by the CLI.

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "stiffkit/design.hpp"
#include "stiffkit/potential.hpp"
#include "stiffkit/stiffness.hpp"
#include "stiffkit/transforms.hpp"

namespace stiffkit {

std::string version();

nlohmann::json to_json(const DesignReport& r);
nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const DualSet& r);
nlohmann::json to_json(const StiffnessCertificate& r);
nlohmann::json to_json(const OneStiffResult& r);
nlohmann::json to_json(const SharpnessReport& r);
nlohmann::json to_json(const MinimizationReport& r);
nlohmann::json to_json(const UniversalMinimumReport& r);
nlohmann::json to_json(const SkipOneAddTwoReport& r);
nlohmann::json to_json(const GlueResult& r);
nlohmann::json to_json(const RotatedCubes& r);

/// {"tool", "version", "command", "seed"?, "tolerances", "result"}.
nlohmann::json envelope(const std::string& command, nlohmann::json result, std::optional<std::uint64_t> seed,
                        nlohmann::json tolerances);

}  // namespace stiffkit
