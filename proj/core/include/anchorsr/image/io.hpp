#pragma once

#include <filesystem>
#include <vector>

#include "anchorsr/image/image.hpp"

namespace anchorsr {

/// Loads an 8- or 16-bit PNG/BMP (anything OpenCV's imgcodecs reads).
/// Grayscale files become luma images, color files RGB; alpha is dropped.
/// 16-bit samples are rescaled to [0, 255].
Image read_image(const std::filesystem::path& path);

/// Writes luma or RGB images as 8-bit. Samples are clamped to [0, 255] and
/// rounded half-up. YCbCr input is rejected.
void write_image(const std::filesystem::path& path, const Image& img);

/// Round-half-up to integers and clamp into [0, 255], as done on export.
Image quantize(const Image& img);

/// Image files (png, bmp, jpg, tif) directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

}  // namespace anchorsr
