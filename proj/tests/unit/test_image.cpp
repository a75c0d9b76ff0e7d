#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "anchorsr/error.hpp"
#include "anchorsr/image/color.hpp"
#include "anchorsr/image/image.hpp"
#include "anchorsr/image/io.hpp"
#include "anchorsr/image/metrics.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/transform.hpp"
#include "support.hpp"

using namespace anchorsr;

namespace {

// Dense cubic convolution: every source sample along the axis contributes
// (with border replication), weights renormalised.
double dense_axis_weight(double u, int k, double scale) {
  const bool shrink = scale < 1.0;
  const double d = u - k;
  return shrink ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
}

Image dense_resize(const Image& in, int ow, int oh) {
  const double sx = static_cast<double>(ow) / in.width();
  const double sy = static_cast<double>(oh) / in.height();
  Image out = Image::luma(ow, oh);
  for (int j = 0; j < oh; ++j) {
    for (int i = 0; i < ow; ++i) {
      const double u = (i + 0.5) / sx - 0.5;
      const double v = (j + 0.5) / sy - 0.5;
      double acc = 0.0, wsum = 0.0;
      for (int n = -40; n < in.height() + 40; ++n) {
        const double wy = dense_axis_weight(v, n, sy);
        if (wy == 0.0) continue;
        for (int m = -40; m < in.width() + 40; ++m) {
          const double wx = dense_axis_weight(u, m, sx);
          if (wx == 0.0) continue;
          acc += wx * wy * in.at(std::clamp(m, 0, in.width() - 1), std::clamp(n, 0, in.height() - 1));
          wsum += wx * wy;
        }
      }
      out.at(i, j) = acc / wsum;
    }
  }
  return out;
}

Image rgb_pixel(double r, double g, double b) {
  Image img(1, 1, ColorSpace::rgb);
  img.at(0, 0, 0) = r;
  img.at(0, 0, 1) = g;
  img.at(0, 0, 2) = b;
  return img;
}

}  // namespace

TEST_SUITE("image") {

TEST_CASE("image storage is planar and sized by color space") {
  Image rgb(4, 3, ColorSpace::rgb, 7.0);
  CHECK(rgb.channels() == 3);
  CHECK(rgb.samples().size() == 4u * 3u * 3u);
  rgb.at(2, 1, 2) = 9.0;
  CHECK(rgb.plane(2)[1 * 4 + 2] == 9.0);
  const Image g = rgb.channel(2);
  CHECK(g.channels() == 1);
  CHECK(g.at(2, 1) == 9.0);
  CHECK(channels_for(ColorSpace::ycbcr) == 3);
  CHECK(channels_for(ColorSpace::luma) == 1);
}

TEST_CASE("black and white are achromatic fixed points in full range") {
  const Image k = rgb_to_ycbcr(rgb_pixel(0, 0, 0));
  CHECK(k.at(0, 0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(k.at(0, 0, 1) == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(k.at(0, 0, 2) == doctest::Approx(128.0).epsilon(1e-12));
  const Image w = rgb_to_ycbcr(rgb_pixel(255, 255, 255));
  CHECK(w.at(0, 0, 0) == doctest::Approx(255.0).epsilon(1e-12));
  CHECK(w.at(0, 0, 1) == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(w.at(0, 0, 2) == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(w.color_space() == ColorSpace::ycbcr);
}

TEST_CASE("luma weights follow BT.601") {
  CHECK(to_luma(rgb_pixel(255, 0, 0)).at(0, 0) == doctest::Approx(0.299 * 255));
  CHECK(to_luma(rgb_pixel(0, 255, 0)).at(0, 0) == doctest::Approx(0.587 * 255));
  CHECK(to_luma(rgb_pixel(0, 0, 255)).at(0, 0) == doctest::Approx(0.114 * 255));
  // studio range maps black/white to 16/235
  CHECK(to_luma(rgb_pixel(0, 0, 0), YCbCrRange::studio).at(0, 0) == doctest::Approx(16.0));
  CHECK(to_luma(rgb_pixel(255, 255, 255), YCbCrRange::studio).at(0, 0) == doctest::Approx(235.0).epsilon(1e-3));
}

TEST_CASE("color round trip") {
  for (YCbCrRange range : {YCbCrRange::full, YCbCrRange::studio}) {
    Image rgb(8, 8, ColorSpace::rgb);
    const Image noise = test::random_luma(8, 24, 3);
    std::copy(noise.samples().begin(), noise.samples().end(), rgb.samples().begin());
    const Image back = ycbcr_to_rgb(rgb_to_ycbcr(rgb, range), range);
    CHECK(max_abs_diff(back, rgb) <= 1e-4);
    CHECK(max_abs_diff(quantize(back), quantize(rgb)) <= 0.5);
  }
}

TEST_CASE("color conversion rejects the wrong color space") {
  CHECK_THROWS_AS(rgb_to_ycbcr(Image::luma(2, 2)), InvalidInput);
  CHECK_THROWS_AS(ycbcr_to_rgb(Image(2, 2, ColorSpace::rgb)), InvalidInput);
}

TEST_CASE("cubic kernel") {
  CHECK(cubic_kernel(0.0) == 1.0);
  CHECK(cubic_kernel(1.0) == 0.0);
  CHECK(cubic_kernel(2.0) == 0.0);
  CHECK(cubic_kernel(2.5) == 0.0);
  CHECK(cubic_kernel(0.5) == doctest::Approx(0.5625));
  CHECK(cubic_kernel(-1.5) == doctest::Approx(-0.0625));
}

TEST_CASE("resizing a constant image keeps the constant") {
  const Image c = Image::luma(13, 7, 77.0);
  for (auto [w, h] : {std::pair{39, 21}, std::pair{4, 2}, std::pair{13, 7}, std::pair{20, 5}, std::pair{1, 1}}) {
    const Image r = bicubic_resize(c, w, h);
    CHECK(r.width() == w);
    CHECK(r.height() == h);
    CHECK(max_abs_diff(r, Image::luma(w, h, 77.0)) <= 1e-9);
  }
}

TEST_CASE("same-size resize is the identity") {
  const Image img = test::random_luma(11, 9, 5);
  CHECK(max_abs_diff(bicubic_resize(img, 11, 9), img) <= 1e-9);
}

TEST_CASE("zero target dimensions are rejected") {
  const Image img = test::random_luma(4, 4, 1);
  CHECK_THROWS_AS(bicubic_resize(img, 0, 4), InvalidInput);
  CHECK_THROWS_AS(bicubic_resize(img, 4, 0), InvalidInput);
}

TEST_CASE("ramp down and up matches the dense cubic convolution oracle") {
  Image ramp = Image::luma(12, 12);
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) ramp.at(x, y) = 10.0 * x + 3.0 * y;
  const Image down = degrade(ramp, 3);
  CHECK(max_abs_diff(down, dense_resize(ramp, 4, 4)) <= 1e-6);
  const Image up = upscale(down, 3);
  CHECK(max_abs_diff(up, dense_resize(down, 12, 12)) <= 1e-6);
}

TEST_CASE("random images match the dense oracle at non-integer ratios") {
  const Image img = test::random_luma(10, 7, 17);
  CHECK(max_abs_diff(bicubic_resize(img, 23, 16), dense_resize(img, 23, 16)) <= 1e-9);
  CHECK(max_abs_diff(bicubic_resize(img, 6, 3), dense_resize(img, 6, 3)) <= 1e-9);
}

TEST_CASE("degrade shape contract") {
  const Image d = degrade(test::random_luma(9, 9, 2), 3);
  CHECK(d.width() == 3);
  CHECK(d.height() == 3);
  CHECK(max_abs_diff(degrade(Image::luma(12, 6, 41.0), 3), Image::luma(4, 2, 41.0)) <= 1e-9);
  CHECK_THROWS_AS(degrade(Image::luma(10, 9), 3), InvalidInput);
}

TEST_CASE("degrade after upscale stays close to a smooth image") {
  const Image lr = test::textured_luma(40, 40, 3);
  const double e = rmse(degrade(upscale(lr, 3), 3), lr);
  MESSAGE("rmse(degrade(upscale(lr)), lr) = " << e);
  CHECK(e < 5.0);
}

TEST_CASE("crop to multiple keeps the top-left corner") {
  const Image img = test::random_luma(11, 8, 9);
  const Image c = crop_to_multiple(img, 3);
  CHECK(c.width() == 9);
  CHECK(c.height() == 6);
  CHECK(c.at(8, 5) == img.at(8, 5));
}

TEST_CASE("psnr closed forms") {
  const Image a = test::random_luma(20, 20, 4);
  CHECK(psnr_luma(a, a, 3) == kInfinitePsnr);
  Image b = a;
  for (double& v : b.samples()) v += 1.0;
  CHECK(psnr_luma(a, b, 3) == doctest::Approx(10.0 * std::log10(255.0 * 255.0)).epsilon(1e-12));
  CHECK(psnr_luma(a, b, 3) == doctest::Approx(48.1308).epsilon(1e-5));
}

TEST_CASE("psnr excludes the border") {
  const Image a = Image::luma(12, 12, 100.0);
  Image b = a;
  b.at(0, 0) = 0.0;
  b.at(11, 5) = 0.0;
  CHECK(psnr_luma(a, b, 1) == kInfinitePsnr);
  b.at(6, 6) = 99.0;
  // one pixel off by 1 over the 10x10 interior
  CHECK(mse_luma(a, b, 1) == doctest::Approx(1.0 / 100.0));
}

TEST_CASE("psnr is symmetric and checks shapes") {
  const Image a = test::random_luma(16, 16, 8);
  const Image b = test::random_luma(16, 16, 9);
  CHECK(psnr_luma(a, b, 2) == psnr_luma(b, a, 2));
  CHECK_THROWS_AS(psnr_luma(a, test::random_luma(15, 16, 1), 2), InvalidInput);
}

TEST_CASE("psnr of RGB inputs uses the luma plane") {
  Image a(8, 8, ColorSpace::rgb, 100.0);
  Image b = a;
  for (double& v : b.plane(0)) v += 10.0;  // red only
  const double dy = 0.299 * 10.0;
  CHECK(mse_luma(a, b, 0) == doctest::Approx(dy * dy));
}

TEST_CASE("png round trip and quantization") {
  Image img = test::random_luma(9, 5, 12, -20.0, 280.0);
  const auto path = std::filesystem::temp_directory_path() / "anchorsr_io_test.png";
  write_image(path, img);
  const Image back = read_image(path);
  std::filesystem::remove(path);
  CHECK(back.channels() == 1);
  CHECK(back == quantize(img));
  for (double v : back.samples()) {
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
    CHECK(v == std::floor(v));
  }
  Image half = Image::luma(1, 1, 2.5);
  CHECK(quantize(half).at(0, 0) == 3.0);
}

TEST_CASE("rgb png round trip keeps channel order") {
  Image img(3, 2, ColorSpace::rgb);
  img.at(0, 0, 0) = 255;
  img.at(1, 0, 1) = 200;
  img.at(2, 1, 2) = 100;
  const auto path = std::filesystem::temp_directory_path() / "anchorsr_io_rgb.png";
  write_image(path, img);
  const Image back = read_image(path);
  std::filesystem::remove(path);
  CHECK(back.color_space() == ColorSpace::rgb);
  CHECK(back == img);
}

TEST_CASE("reading missing files fails as a data error") {
  CHECK_THROWS_AS(read_image("/nonexistent/none.png"), DataError);
  CHECK_THROWS_AS(list_images("/nonexistent"), DataError);
}

TEST_CASE("resampling is linear") {
  const Image x = test::random_luma(9, 12, 21);
  const Image y = test::random_luma(9, 12, 22);
  Image mix = x;
  for (std::size_t i = 0; i < mix.samples().size(); ++i) mix.samples()[i] = 2.0 * x.samples()[i] - 0.5 * y.samples()[i];
  const Image rx = bicubic_resize(x, 20, 5);
  const Image ry = bicubic_resize(y, 20, 5);
  Image expect = rx;
  for (std::size_t i = 0; i < expect.samples().size(); ++i)
    expect.samples()[i] = 2.0 * rx.samples()[i] - 0.5 * ry.samples()[i];
  CHECK(max_abs_diff(bicubic_resize(mix, 20, 5), expect) <= 1e-6);
}

TEST_CASE("resizing commutes with rotation") {
  const Image x = test::random_luma(12, 12, 31);
  for (TransformId t : all_transforms()) {
    CHECK(max_abs_diff(upscale(apply_transform(x, t), 3), apply_transform(upscale(x, 3), t)) <= 1e-9);
    CHECK(max_abs_diff(degrade(apply_transform(x, t), 3), apply_transform(degrade(x, 3), t)) <= 1e-9);
  }
}

}
