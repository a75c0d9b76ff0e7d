#include "anchorsr/pipeline/refine.hpp"

#include <cmath>
#include <numeric>

#include "anchorsr/error.hpp"
#include "anchorsr/image/metrics.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/transform.hpp"

namespace anchorsr {

Image back_project(const Image& hr, const Image& lr, int s, int iters, BackProjectionTrace* trace, double tolerance) {
  if (s < 1) throw InvalidInput("back_project: scale must be >= 1");
  if (iters < 0) throw InvalidInput("back_project: negative iteration count");
  if (hr.channels() != lr.channels() || hr.width() != lr.width() * s || hr.height() != lr.height() * s) {
    throw InvalidInput("back_project: HR dimensions must be the LR dimensions times the scale");
  }
  Image cur = hr;
  Image diff = lr;
  auto residual = [&](const Image& est) {
    const Image d = degrade(est, s);
    auto out = diff.samples();
    auto a = lr.samples();
    auto b = d.samples();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return rmse(lr, d);
  };
  double err = residual(cur);
  if (trace) *trace = BackProjectionTrace{{err}, false};
  for (int it = 0; it < iters && err >= tolerance; ++it) {
    const Image up = upscale(diff, s);
    Image next = cur;
    auto n = next.samples();
    auto u = up.samples();
    for (std::size_t i = 0; i < n.size(); ++i) n[i] += u[i];
    const double next_err = residual(next);
    if (!(next_err < err)) {
      if (trace) trace->rejected_increase = true;
      break;
    }
    cur = std::move(next);
    err = next_err;
    if (trace) trace->residuals.push_back(err);
  }
  return cur;
}

Image enhanced_predict(const Image& lr, const SRFunction& core) {
  Image sum;
  for (const TransformId t : all_transforms()) {
    const Image out = invert_transform(core(apply_transform(lr, t)), t);
    if (sum.empty()) {
      sum = out;
      continue;
    }
    if (!sum.same_shape(out)) throw InvalidInput("enhanced_predict: core output shape depends on orientation");
    auto a = sum.samples();
    auto b = out.samples();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  }
  for (double& v : sum.samples()) v /= 8.0;
  return sum;
}

Image combine_predictions(const std::vector<Image>& preds, const std::vector<double>& weights) {
  if (preds.empty()) throw InvalidInput("combine_predictions: no predictions");
  if (preds.size() != weights.size()) throw InvalidInput("combine_predictions: one weight per prediction required");
  for (double w : weights)
    if (!(w >= 0.0)) throw InvalidInput("combine_predictions: weights must be non-negative");
  if (std::abs(std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0) > 1e-9) {
    throw InvalidInput("combine_predictions: weights must sum to 1");
  }
  for (const Image& p : preds)
    if (!p.same_shape(preds.front())) throw InvalidInput("combine_predictions: shape mismatch");
  if (preds.size() == 1) return preds.front();
  Image out = preds.front();
  auto o = out.samples();
  for (std::size_t i = 0; i < o.size(); ++i) {
    double v = 0.0;
    for (std::size_t k = 0; k < preds.size(); ++k) v += weights[k] * preds[k].samples()[i];
    o[i] = v;
  }
  return out;
}

}  // namespace anchorsr
