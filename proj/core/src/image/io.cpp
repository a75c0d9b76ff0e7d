#include "anchorsr/image/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "anchorsr/error.hpp"

namespace anchorsr {

Image read_image(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_ANYDEPTH | cv::IMREAD_ANYCOLOR);
  if (m.empty()) throw DataError("cannot read image: " + path.string());

  double gain = 1.0;
  if (m.depth() == CV_16U) gain = 255.0 / 65535.0;
  else if (m.depth() != CV_8U) throw DataError("unsupported sample depth in " + path.string());
  cv::Mat f;
  m.convertTo(f, CV_64F, gain);

  const int ch = f.channels();
  if (ch == 1) {
    Image out = Image::luma(f.cols, f.rows);
    for (int y = 0; y < f.rows; ++y)
      for (int x = 0; x < f.cols; ++x) out.at(x, y) = f.at<double>(y, x);
    return out;
  }
  if (ch != 3 && ch != 4) throw DataError("unsupported channel count in " + path.string());
  Image out(f.cols, f.rows, ColorSpace::rgb);
  for (int y = 0; y < f.rows; ++y) {
    const double* row = f.ptr<double>(y);
    for (int x = 0; x < f.cols; ++x) {
      // OpenCV stores BGR(A)
      out.at(x, y, 0) = row[x * ch + 2];
      out.at(x, y, 1) = row[x * ch + 1];
      out.at(x, y, 2) = row[x * ch + 0];
    }
  }
  return out;
}

Image quantize(const Image& img) {
  Image out = img;
  for (double& v : out.samples()) v = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
  return out;
}

void write_image(const std::filesystem::path& path, const Image& img) {
  if (img.color_space() == ColorSpace::ycbcr) throw InvalidInput("write_image: convert YCbCr to RGB first");
  if (img.empty()) throw InvalidInput("write_image: empty image");
  const Image q = quantize(img);
  cv::Mat m;
  if (q.channels() == 1) {
    m.create(q.height(), q.width(), CV_8UC1);
    for (int y = 0; y < q.height(); ++y)
      for (int x = 0; x < q.width(); ++x) m.at<unsigned char>(y, x) = static_cast<unsigned char>(q.at(x, y));
  } else {
    m.create(q.height(), q.width(), CV_8UC3);
    for (int y = 0; y < q.height(); ++y) {
      auto* row = m.ptr<unsigned char>(y);
      for (int x = 0; x < q.width(); ++x) {
        row[3 * x + 0] = static_cast<unsigned char>(q.at(x, y, 2));
        row[3 * x + 1] = static_cast<unsigned char>(q.at(x, y, 1));
        row[3 * x + 2] = static_cast<unsigned char>(q.at(x, y, 0));
      }
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception& e) {
    throw DataError("cannot write image " + path.string() + ": " + e.what());
  }
  if (!ok) throw DataError("cannot write image: " + path.string());
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".bmp" || ext == ".jpg" || ext == ".jpeg" || ext == ".tif" || ext == ".tiff") {
      out.push_back(entry.path());
    }
  }
  std::ranges::sort(out);
  return out;
}

}  // namespace anchorsr
