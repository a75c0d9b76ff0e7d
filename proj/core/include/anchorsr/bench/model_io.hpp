#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "anchorsr/pipeline/cascade.hpp"

namespace anchorsr {

inline constexpr std::string_view kModelMagic = "ANCHORSR";
inline constexpr std::uint64_t kModelVersion = 1;

/// Binary model image. Integers are little-endian u64 and reals little-endian
/// IEEE binary64, so load(save(m)) == m bit for bit.
std::string serialize_model(const SRModel& model);
/// Throws FormatError on a bad magic, unknown version, truncation or
/// trailing bytes.
SRModel deserialize_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const SRModel& model);
SRModel load_model(const std::filesystem::path& path);

}  // namespace anchorsr
