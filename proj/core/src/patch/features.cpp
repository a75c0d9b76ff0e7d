#include "anchorsr/patch/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

template <std::size_t N>
void convolve(const Image& img, const std::array<double, N>& k, bool horizontal, std::vector<double>& out) {
  const int w = img.width();
  const int h = img.height();
  constexpr int half = static_cast<int>(N / 2);
  out.assign(img.plane_size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int t = 0; t < static_cast<int>(N); ++t) {
        if (k[t] == 0.0) continue;
        const int off = t - half;
        const int xx = horizontal ? std::clamp(x + off, 0, w - 1) : x;
        const int yy = horizontal ? y : std::clamp(y + off, 0, h - 1);
        acc += k[t] * img.at(xx, yy);
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
}

}  // namespace

FilterResponses filter_responses(const Image& luma) {
  if (luma.channels() != 1) throw InvalidInput("filter_responses: expects a single luma plane");
  constexpr std::array<double, 3> first{1.0, 0.0, -1.0};
  constexpr std::array<double, 5> second{1.0, 0.0, -2.0, 0.0, 1.0};
  FilterResponses r;
  r.width = luma.width();
  r.height = luma.height();
  convolve(luma, first, true, r.planes[0]);
  convolve(luma, first, false, r.planes[1]);
  convolve(luma, second, true, r.planes[2]);
  convolve(luma, second, false, r.planes[3]);
  return r;
}

void gather_raw(const FilterResponses& r, int x0, int y0, int window, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(raw_feature_dim(window))) {
    throw InvalidInput("gather_raw: output span has wrong length");
  }
  const bool inside = x0 >= 0 && y0 >= 0 && x0 + window <= r.width && y0 + window <= r.height;
  std::size_t i = 0;
  for (int k = 0; k < kFilterCount; ++k) {
    const double* plane = r.planes[k].data();
    for (int dy = 0; dy < window; ++dy) {
      if (inside) {
        const double* row = plane + static_cast<std::size_t>(y0 + dy) * r.width + x0;
        std::copy(row, row + window, out.begin() + i);
        i += window;
        continue;
      }
      const int y = std::clamp(y0 + dy, 0, r.height - 1);
      for (int dx = 0; dx < window; ++dx) {
        const int x = std::clamp(x0 + dx, 0, r.width - 1);
        out[i++] = plane[static_cast<std::size_t>(y) * r.width + x];
      }
    }
  }
}

std::vector<double> raw_feature(const FilterResponses& r, int x0, int y0, int window) {
  std::vector<double> out(raw_feature_dim(window));
  gather_raw(r, x0, y0, window, out);
  return out;
}

FeatureEncoder::FeatureEncoder(int window, Mat basis, double energy_kept)
    : window_(window), basis_(std::move(basis)), energy_kept_(energy_kept) {
  if (window < 1) throw InvalidInput("FeatureEncoder: window must be >= 1");
  if (basis_.rows() != raw_feature_dim(window)) {
    throw InvalidInput("FeatureEncoder: basis rows do not match the filter layout");
  }
}

Vec FeatureEncoder::encode(std::span<const double> raw) const {
  if (static_cast<Eigen::Index>(raw.size()) != basis_.rows()) {
    throw InvalidInput("encode: raw feature has length " + std::to_string(raw.size()) + ", expected " +
                       std::to_string(basis_.rows()));
  }
  const Eigen::Map<const Vec> v(raw.data(), static_cast<Eigen::Index>(raw.size()));
  return basis_.transpose() * v;
}

Mat FeatureEncoder::encode(const Mat& raw) const {
  if (raw.rows() != basis_.rows()) throw InvalidInput("encode: raw block has the wrong number of rows");
  return basis_.transpose() * raw;
}

PcaAccumulator::PcaAccumulator(int dim) : moment_(Mat::Zero(dim, dim)) {
  if (dim < 1) throw InvalidInput("PcaAccumulator: dimension must be positive");
}

void PcaAccumulator::add(std::span<const double> sample) {
  if (static_cast<Eigen::Index>(sample.size()) != moment_.rows()) throw InvalidInput("PCA sample has wrong length");
  const Eigen::Map<const Vec> v(sample.data(), moment_.rows());
  moment_.selfadjointView<Eigen::Lower>().rankUpdate(v);
  ++count_;
}

void PcaAccumulator::add(const Mat& block) {
  if (block.rows() != moment_.rows()) throw InvalidInput("PCA block has wrong row count");
  moment_.selfadjointView<Eigen::Lower>().rankUpdate(block);
  count_ += static_cast<std::size_t>(block.cols());
}

FeatureEncoder PcaAccumulator::finish(double energy, int window) const {
  if (!(energy > 0.0 && energy <= 1.0)) throw InvalidInput("fit_pca: energy must be in (0, 1]");
  if (count_ == 0) throw InvalidInput("fit_pca: no samples");
  const Mat cov = Mat(moment_.selfadjointView<Eigen::Lower>()) / static_cast<double>(count_);
  Eigen::SelfAdjointEigenSolver<Mat> eig(cov);
  const Vec values = eig.eigenvalues().reverse().cwiseMax(0.0);
  const Mat vectors = eig.eigenvectors().rowwise().reverse();
  const double total = values.sum();
  const Eigen::Index n = values.size();

  if (total <= 0.0) return FeatureEncoder(window, vectors, 1.0);

  // rank deficiency: never keep directions carrying no variance, but never
  // stop short of the requested energy either
  const double tiny = total * 1e-12;
  Eigen::Index rank = 0;
  while (rank < n && values[rank] > tiny) ++rank;

  Eigen::Index keep = 0;
  double acc = 0.0;
  while (keep < rank && acc < energy * total * (1.0 - 1e-12)) acc += values[keep++];
  keep = std::max<Eigen::Index>(keep, 1);
  const double kept = keep == rank ? 1.0 : acc / total;

  Mat basis = vectors.leftCols(keep);
  // deterministic sign: largest-magnitude coordinate positive
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index arg = 0;
    basis.col(c).cwiseAbs().maxCoeff(&arg);
    if (basis(arg, c) < 0.0) basis.col(c) *= -1.0;
  }
  return FeatureEncoder(window, std::move(basis), kept);
}

FeatureEncoder fit_pca(const Mat& samples, double energy, int window) {
  if (samples.cols() < samples.rows()) {
    throw InvalidInput("fit_pca: need at least as many samples (" + std::to_string(samples.cols()) +
                       ") as dimensions (" + std::to_string(samples.rows()) + ")");
  }
  PcaAccumulator acc(static_cast<int>(samples.rows()));
  acc.add(samples);
  return acc.finish(energy, window);
}

FeatureEncoder fit_pca(const std::vector<std::vector<double>>& samples, double energy, int window) {
  if (samples.empty()) throw InvalidInput("fit_pca: no samples");
  Mat m(static_cast<Eigen::Index>(samples.front().size()), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != samples.front().size()) throw InvalidInput("fit_pca: ragged samples");
    m.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vec>(samples[i].data(), m.rows());
  }
  return fit_pca(m, energy, window);
}

}  // namespace anchorsr
