#include "anchorsr/pipeline/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anchorsr/dict/kmeans.hpp"
#include "anchorsr/dict/ksvd.hpp"
#include "anchorsr/error.hpp"
#include "anchorsr/image/metrics.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/pairs.hpp"
#include "anchorsr/patch/sampling.hpp"
#include "anchorsr/patch/transform.hpp"
#include "anchorsr/search/search.hpp"

namespace anchorsr {
namespace {

constexpr int kRefineWindow = 3;
constexpr int kAnchorKmeansIterations = 20;

void check_config(const TrainConfig& cfg) {
  if (cfg.scale < 2) throw InvalidInput("train: scale must be >= 2");
  if (cfg.stages < 1) throw InvalidInput("train: at least one stage is required");
  if (cfg.anchors < 1) throw InvalidInput("train: anchor count must be positive");
  if (cfg.samples < 1) throw InvalidInput("train: sample count must be positive");
  if (!(cfg.lambda > 0.0)) throw InvalidInput("train: lambda must be positive");
  if (cfg.neighborhood < 1) throw InvalidInput("train: neighborhood must be positive");
  if (!(cfg.pca_energy > 0.0 && cfg.pca_energy <= 1.0)) throw InvalidInput("train: PCA energy must be in (0, 1]");
  if (cfg.train_stride < 1 || cfg.inference_stride < 1) throw InvalidInput("train: strides must be >= 1");
  if (cfg.hier && cfg.anchors < 4) throw InvalidInput("train: hierarchical search needs at least 4 anchors");
}

AnchorDictionary learn_anchors(const TrainingSet& set, const TrainConfig& cfg, std::uint64_t seed,
                               StageReport* report) {
  const auto n = static_cast<Eigen::Index>(std::min(cfg.dictionary_samples, set.size()));
  if (n < cfg.anchors) {
    throw DataError("train: " + std::to_string(n) + " training windows cannot support " +
                    std::to_string(cfg.anchors) + " anchors");
  }
  // sampled columns are already in random order
  const Mat x = set.features.leftCols(n).cast<double>();
  const bool use_ksvd = cfg.anchor_method == AnchorMethod::ksvd ||
                        (cfg.anchor_method == AnchorMethod::automatic && cfg.anchors <= kKsvdAnchorLimit);
  if (use_ksvd) {
    KsvdOptions opt;
    opt.atoms = cfg.anchors;
    opt.sparsity = std::min(cfg.sparsity, cfg.anchors);
    opt.iterations = cfg.dictionary_iterations;
    opt.seed = seed;
    KsvdResult res = ksvd_train(x, opt);
    if (report) report->dictionary_objective = res.objective;
    return std::move(res.dictionary);
  }
  return AnchorDictionary(spherical_kmeans(x, cfg.anchors, kAnchorKmeansIterations, seed).centroids);
}

StageData stage_data(const std::vector<Image>& bases, const std::vector<Image>& targets, int window,
                     int context_scale, bool augment) {
  StageData d;
  d.window = window;
  d.context_scale = context_scale;
  d.bases = augment ? augment_images(bases) : bases;
  d.targets = augment ? augment_images(targets) : targets;
  return d;
}

double mean_psnr(const std::vector<Image>& outputs, const std::vector<Image>& hr, int border) {
  double sum = 0.0;
  for (std::size_t i = 0; i < hr.size(); ++i) sum += psnr_luma(hr[i], outputs[i], border);
  return sum / static_cast<double>(hr.size());
}

}  // namespace

SRStage train_stage(const StageData& data, int scale, const TrainConfig& cfg, std::uint64_t seed,
                    StageReport* report) {
  check_config(cfg);
  StageReport rep;
  rep.training_psnr = std::numeric_limits<double>::quiet_NaN();
  const auto refs = enumerate_windows(data, cfg.train_stride, cfg.flat_threshold);
  if (refs.empty()) throw DataError("train: no usable training windows");
  rep.pool_windows = refs.size();

  const auto sampled = sample_pairs(refs, cfg.samples, derive_seed(seed, 1));
  rep.samples = sampled.size();
  if (std::min(cfg.dictionary_samples, sampled.size()) < static_cast<std::size_t>(cfg.anchors)) {
    throw DataError("train: " + std::to_string(std::min(cfg.dictionary_samples, sampled.size())) +
                    " training windows cannot support " + std::to_string(cfg.anchors) + " anchors");
  }

  const std::size_t pca_n = std::min(cfg.pca_samples, sampled.size());
  PcaAccumulator acc(raw_feature_dim(data.window));
  accumulate_pca(data, std::span<const WindowRef>(sampled.data(), pca_n), acc);
  SRStage stage;
  stage.encoder = acc.finish(cfg.pca_energy, data.window);
  rep.feature_dim = stage.encoder.dim();
  rep.energy_kept = stage.encoder.energy_kept();

  const TrainingSet set = encode_windows(data, sampled, stage.encoder);
  const AnchorDictionary anchors = learn_anchors(set, cfg, derive_seed(seed, 2), &rep);

  if (cfg.context) {
    ContextOptions opt;
    opt.lambda = cfg.lambda;
    opt.neighborhood = cfg.context_neighborhood;
    opt.seed = derive_seed(seed, 3);
    stage.bank = train_bank_context(anchors, set, opt);
    stage.context_scale = data.context_scale;
  } else if (cfg.regressor == RegressorKind::anr) {
    AnrOptions opt;
    opt.lambda = cfg.lambda;
    opt.neighborhood = cfg.anr_neighborhood;
    opt.sparsity = cfg.sparsity;
    stage.bank = train_bank_anr(anchors, set, opt);
  } else {
    stage.bank = train_bank_aplus(anchors, set, cfg.neighborhood, cfg.lambda);
  }
  rep.ill_conditioned = stage.bank.ill_conditioned;

  if (cfg.hier) stage.index = build_hier(stage.bank.anchors, cfg.hier_c, derive_seed(seed, 4));
  stage.scale = scale;
  stage.stride = cfg.inference_stride;
  stage.validate();
  if (report) *report = std::move(rep);
  return stage;
}

TrainedModel train_cascade(const std::vector<Image>& hr_images, const TrainConfig& cfg) {
  check_config(cfg);
  if (hr_images.empty()) throw DataError("train: no training images");
  const int s = cfg.scale;

  std::vector<Image> hr;
  std::vector<Image> lr;
  for (const Image& img : hr_images) {
    if (img.channels() != 1) throw InvalidInput("train: training images must be luma");
    Image c = crop_to_multiple(img, s);
    if (c.width() < s || c.height() < s) continue;
    lr.push_back(degrade(c, s));
    hr.push_back(std::move(c));
  }
  if (hr.empty()) throw DataError("train: every training image is smaller than the scale factor");

  TrainedModel out;
  out.model.scale = s;
  out.model.flags.context = cfg.context;
  const int ctx_scale = cfg.context ? s : 0;

  std::vector<Image> current;
  for (int t = 0; t < cfg.stages; ++t) {
    StageData data;
    if (t == 0) {
      // augment the HR images, then derive each LR/bicubic pair from them
      const std::vector<Image> aug = cfg.augment ? augment_images(hr) : hr;
      data.window = window_for_scale(s);
      data.context_scale = ctx_scale;
      data.targets = aug;
      data.bases.reserve(aug.size());
      for (const Image& h : aug) data.bases.push_back(upscale(degrade(h, s), s));
    } else {
      data = stage_data(current, hr, kRefineWindow, ctx_scale, cfg.augment);
    }
    StageReport rep;
    out.model.stages.push_back(train_stage(data, t == 0 ? s : 1, cfg, derive_seed(cfg.seed, 100 + t), &rep));
    data = StageData{};

    const bool need_outputs = t + 1 < cfg.stages || cfg.track_training_error;
    if (need_outputs) {
      const SRStage& stage = out.model.stages.back();
      for (std::size_t i = 0; i < hr.size(); ++i) {
        if (t == 0) current.push_back(sr_stage(stage, lr[i]));
        else current[i] = sr_stage(stage, current[i]);
      }
      rep.training_psnr = mean_psnr(current, hr, s);
    }
    out.reports.push_back(std::move(rep));
  }
  out.model.validate();
  return out;
}

TrainConfig internal_config(const SRModel& model) {
  TrainConfig cfg;
  cfg.scale = model.scale;
  cfg.anchors = model.flags.internal_anchors;
  cfg.neighborhood = model.flags.internal_neighborhood;
  cfg.samples = 100000;
  cfg.dictionary_samples = 20000;
  cfg.dictionary_iterations = 10;
  cfg.seed = 11;
  return cfg;
}

SRStage internal_model(const Image& lr, int scale, const TrainConfig& cfg) {
  if (lr.channels() != 1) throw InvalidInput("internal model: expects a luma image");
  const Image hr = crop_to_multiple(lr, scale);
  const int window = window_for_scale(scale);
  if (hr.width() / scale * scale < window || hr.height() / scale * scale < window || hr.width() < scale ||
      hr.height() < scale) {
    throw DataError("internal model: input too small");
  }
  TrainConfig c = cfg;
  c.scale = scale;
  c.stages = 1;
  c.hier = false;
  c.context = false;
  c.regressor = RegressorKind::aplus;

  StageData data;
  data.window = window;
  data.targets = c.augment ? augment_images({hr}) : std::vector<Image>{hr};
  for (const Image& h : data.targets) data.bases.push_back(upscale(degrade(h, scale), scale));
  const auto refs = enumerate_windows(data, c.train_stride, c.flat_threshold);
  if (refs.size() < static_cast<std::size_t>(c.anchors)) {
    throw DataError("internal model: " + std::to_string(refs.size()) + " windows cannot support " +
                    std::to_string(c.anchors) + " anchors");
  }
  return train_stage(data, scale, c, c.seed);
}

}  // namespace anchorsr
