#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "anchorsr/image/color.hpp"
#include "anchorsr/image/image.hpp"
#include "anchorsr/pipeline/cascade.hpp"
#include "anchorsr/pipeline/train.hpp"

namespace anchorsr {

struct NamedImage {
  std::string name;
  Image image;
};

/// Every image in `dir` (sorted by file name) as an 8-bit-rounded luma plane.
/// Throws DataError when the directory has no images.
std::vector<NamedImage> load_luma_set(const std::filesystem::path& dir, YCbCrRange range);

using LumaMethod = std::function<Image(const Image&)>;

struct ImageScore {
  std::string name;
  double psnr_db = 0.0;
  double seconds = 0.0;
};

struct EvalReport {
  std::string method;
  int scale = 3;
  std::vector<ImageScore> rows;
  double average_psnr = 0.0;
  double average_seconds = 0.0;
  std::string fingerprint;
};

struct EvalOptions {
  int scale = 3;
  bool quantize_output = true;  // round to 8 bits before scoring
};

/// Per image: crop to a multiple of the scale, degrade, super-resolve, and
/// score luma PSNR with a scale-pixel border excluded.
EvalReport evaluate(const std::vector<NamedImage>& set, const LumaMethod& method, const EvalOptions& opt,
                    std::string method_name = "model");

LumaMethod bicubic_method(int scale);
LumaMethod model_method(const SRModel& model);

/// Recomputes the averages from the rows.
void finalize(EvalReport& report);

/// Aligned per-image table with one PSNR column per report.
void write_table(std::ostream& out, const std::vector<EvalReport>& reports);
/// One record per image plus a final "(average)" record; fields in the order
/// name, psnr_db, seconds.
void write_jsonl(std::ostream& out, const EvalReport& report);

struct SweepGrid {
  std::vector<int> anchors{1024};
  std::vector<std::size_t> samples{500000};
  std::vector<int> stages{1};
};

struct SweepPoint {
  int anchors = 0;
  std::size_t samples = 0;
  int stages = 0;
  double psnr_db = 0.0;
  double train_seconds = 0.0;
  std::string fingerprint;
};

/// Trains one cascade per (anchors, samples) pair with the largest stage
/// count and scores every requested prefix of it. `on_point` sees each
/// point as soon as it is measured.
std::vector<SweepPoint> run_sweep(const std::vector<Image>& train_images, const std::vector<NamedImage>& test_set,
                                  const TrainConfig& base, const ModelFlags& flags, const SweepGrid& grid,
                                  const std::function<void(const SweepPoint&)>& on_point = {});

void write_jsonl(std::ostream& out, const SweepPoint& point);

}  // namespace anchorsr
