#include "anchorsr/image/color.hpp"

#include <Eigen/Dense>

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

struct Affine {
  Eigen::Matrix3d m;
  Eigen::Vector3d offset;
};

Affine forward(YCbCrRange range) {
  Affine a;
  if (range == YCbCrRange::full) {
    a.m << 0.299, 0.587, 0.114,
        -0.168735891647856, -0.331264108352144, 0.5,
        0.5, -0.418687589158345, -0.081312410841655;
    a.offset << 0.0, 128.0, 128.0;
  } else {
    a.m << 65.481, 128.553, 24.966,
        -37.797, -74.203, 112.0,
        112.0, -93.786, -18.214;
    a.m /= 255.0;
    a.offset << 16.0, 128.0, 128.0;
  }
  return a;
}

Image apply(const Image& in, const Eigen::Matrix3d& m, const Eigen::Vector3d& pre,
            const Eigen::Vector3d& post, ColorSpace out_space) {
  Image out(in.width(), in.height(), out_space);
  auto p0 = in.plane(0), p1 = in.plane(1), p2 = in.plane(2);
  auto q0 = out.plane(0), q1 = out.plane(1), q2 = out.plane(2);
  for (std::size_t i = 0; i < in.plane_size(); ++i) {
    const Eigen::Vector3d v = m * (Eigen::Vector3d(p0[i], p1[i], p2[i]) + pre) + post;
    q0[i] = v[0];
    q1[i] = v[1];
    q2[i] = v[2];
  }
  return out;
}

}  // namespace

Image rgb_to_ycbcr(const Image& rgb, YCbCrRange range) {
  if (rgb.color_space() != ColorSpace::rgb) throw InvalidInput("rgb_to_ycbcr: input is not RGB");
  const Affine a = forward(range);
  return apply(rgb, a.m, Eigen::Vector3d::Zero(), a.offset, ColorSpace::ycbcr);
}

Image ycbcr_to_rgb(const Image& ycbcr, YCbCrRange range) {
  if (ycbcr.color_space() != ColorSpace::ycbcr) throw InvalidInput("ycbcr_to_rgb: input is not YCbCr");
  const Affine a = forward(range);
  return apply(ycbcr, a.m.inverse(), -a.offset, Eigen::Vector3d::Zero(), ColorSpace::rgb);
}

Image to_luma(const Image& img, YCbCrRange range) {
  switch (img.color_space()) {
    case ColorSpace::luma:
      return img;
    case ColorSpace::ycbcr:
      return img.channel(0);
    case ColorSpace::rgb:
      return rgb_to_ycbcr(img, range).channel(0);
  }
  throw InvalidInput("to_luma: unknown color space");
}

}  // namespace anchorsr
