#include "anchorsr/pipeline/cascade.hpp"

#include "anchorsr/error.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/pipeline/refine.hpp"
#include "anchorsr/pipeline/train.hpp"

namespace anchorsr {
namespace {

Image apply_stage(const SRStage& stage, const Image& input, bool enhanced, CascadeRun& run) {
  auto core = [&](const Image& img) {
    StageRun r = run_stage(stage, img);
    run.windows += r.windows;
    run.comparisons += r.comparisons;
    if (r.too_small) run.warnings.emplace_back("input smaller than one window; stage returned bicubic");
    return std::move(r.image);
  };
  return enhanced ? enhanced_predict(input, core) : core(input);
}

}  // namespace

void SRModel::validate() const {
  if (scale < 1) throw InvalidInput("model: scale must be >= 1");
  if (stages.empty()) throw InvalidInput("model: at least one stage is required");
  for (std::size_t t = 0; t < stages.size(); ++t) {
    stages[t].validate();
    if (stages[t].scale != (t == 0 ? scale : 1)) {
      throw InvalidInput("model: stage 1 must magnify by the model scale and later stages by 1");
    }
    if (stages[t].bank.contexts.has_value() != flags.context) {
      throw InvalidInput("model: context flag disagrees with the stage banks");
    }
  }
  if (flags.ibp_iters < 0) throw InvalidInput("model: negative back projection iterations");
  if (!(flags.internal_weight >= 0.0 && flags.internal_weight <= 1.0)) {
    throw InvalidInput("model: internal weight must be in [0, 1]");
  }
}

CascadeRun run_cascade_detail(const SRModel& model, const Image& lr) {
  if (lr.channels() != 1) throw InvalidInput("run_cascade: expects a luma image");
  model.validate();
  CascadeRun run;
  Image cur = lr;
  for (const SRStage& stage : model.stages) cur = apply_stage(stage, cur, model.flags.enhanced, run);

  if (model.flags.self_similarity) {
    try {
      const SRStage internal = internal_model(lr, model.scale, internal_config(model));
      const Image pred = apply_stage(internal, lr, model.flags.enhanced, run);
      const double w = model.flags.internal_weight;
      cur = combine_predictions({cur, pred}, {1.0 - w, w});
      run.internal_used = true;
    } catch (const DataError& e) {
      run.warnings.emplace_back(std::string("internal model unavailable, using external model only: ") + e.what());
    }
  }
  if (model.flags.back_projection) cur = back_project(cur, lr, model.scale, model.flags.ibp_iters);
  run.image = std::move(cur);
  return run;
}

CascadeRun super_resolve(const SRModel& model, const Image& lr, YCbCrRange range) {
  if (lr.channels() == 1) return run_cascade_detail(model, lr);
  if (lr.color_space() != ColorSpace::rgb) throw InvalidInput("super_resolve: expects luma or RGB input");
  const Image ycc = rgb_to_ycbcr(lr, range);
  CascadeRun run = run_cascade_detail(model, ycc.channel(0));
  Image up = upscale(ycc, model.scale);
  up.set_channel(0, run.image);
  run.image = ycbcr_to_rgb(up, range);
  return run;
}

}  // namespace anchorsr
