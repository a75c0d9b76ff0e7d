#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anchorsr {

/// Indices of the `k` largest scores (ties: lower index wins), returned in
/// ascending index order. k is clamped to scores.size().
std::vector<std::uint32_t> select_top(std::span<const float> scores, std::size_t k);

}  // namespace anchorsr
