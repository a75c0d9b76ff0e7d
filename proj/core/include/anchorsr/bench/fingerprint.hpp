#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "anchorsr/pipeline/cascade.hpp"
#include "anchorsr/pipeline/train.hpp"

namespace anchorsr {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t v);

/// Canonical "key=value" listing of every field that affects training.
std::string canonical_config(const TrainConfig& cfg);
std::string config_fingerprint(const TrainConfig& cfg);

/// Hash of the serialized model (stages and flags).
std::string model_fingerprint(const SRModel& model);

}  // namespace anchorsr
