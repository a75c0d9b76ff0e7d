#include "anchorsr/bench/fingerprint.hpp"

#include <cstdio>
#include <sstream>

#include "anchorsr/bench/model_io.hpp"

namespace anchorsr {
namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* name(AnchorMethod m) {
  switch (m) {
    case AnchorMethod::ksvd: return "ksvd";
    case AnchorMethod::kmeans: return "kmeans";
    default: return "auto";
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string canonical_config(const TrainConfig& c) {
  std::ostringstream o;
  o << "scale=" << c.scale << " stages=" << c.stages << " anchors=" << c.anchors << " samples=" << c.samples
    << " lambda=" << real(c.lambda) << " neighborhood=" << c.neighborhood
    << " regressor=" << (c.regressor == RegressorKind::anr ? "anr" : "aplus") << " anr_neighborhood=" << c.anr_neighborhood
    << " anchor_method=" << name(c.anchor_method) << " sparsity=" << c.sparsity
    << " dictionary_iterations=" << c.dictionary_iterations << " dictionary_samples=" << c.dictionary_samples
    << " pca_energy=" << real(c.pca_energy) << " pca_samples=" << c.pca_samples << " train_stride=" << c.train_stride
    << " augment=" << c.augment << " flat_threshold=" << real(c.flat_threshold) << " hier=" << c.hier
    << " hier_c=" << real(c.hier_c) << " context=" << c.context << " context_neighborhood=" << c.context_neighborhood
    << " inference_stride=" << c.inference_stride << " seed=" << c.seed;
  return o.str();
}

std::string config_fingerprint(const TrainConfig& cfg) { return hex64(fnv1a64(canonical_config(cfg))); }

std::string model_fingerprint(const SRModel& model) { return hex64(fnv1a64(serialize_model(model))); }

}  // namespace anchorsr
