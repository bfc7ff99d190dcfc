#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "nbdyn/classify.hpp"

namespace nbdyn::cli {

using Json = nlohmann::ordered_json;

Json to_json(const AccuracyReport& report);
Json to_json(const CrossValidation& cv);

// Tool, version, command, seed and configuration of a run. Contains no
// timestamps or host details, so identical runs give identical sidecars.
Json provenance(std::string_view command, const Json& config, std::optional<std::uint64_t> seed);

// Writes `doc` with two-space indentation and a trailing newline.
void save_json(const std::filesystem::path& path, const Json& doc);

// Writes the provenance document next to `output` as `<output>.provenance.json`.
void save_sidecar(const std::filesystem::path& output, const Json& provenance);

}  // namespace nbdyn::cli
