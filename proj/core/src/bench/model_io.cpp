#include "anchorsr/bench/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

class Writer {
 public:
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void flag(bool b) { u64(b ? 1 : 0); }
  void matrix(const Mat& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.size(); ++i) f64(m.data()[i]);
  }
  void raw(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  int small(const char* what, std::uint64_t limit = 1u << 30) {
    const std::uint64_t v = u64();
    if (v > limit) throw FormatError(std::string("model file: implausible ") + what);
    return static_cast<int>(v);
  }
  double f64() { return std::bit_cast<double>(u64()); }
  bool flag() {
    const std::uint64_t v = u64();
    if (v > 1) throw FormatError("model file: corrupt boolean");
    return v == 1;
  }
  Mat matrix() {
    const std::uint64_t rows = u64();
    const std::uint64_t cols = u64();
    if (rows > (1u << 30) || cols > (1u << 30) || (rows * cols) > remaining() / 8) {
      throw FormatError("model file: matrix larger than the remaining payload");
    }
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = f64();
    return m;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw FormatError("model file: truncated");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

void write_stage(Writer& w, const SRStage& st) {
  w.i64(st.scale);
  w.i64(st.stride);
  w.i64(st.context_scale);

  w.i64(st.encoder.window());
  w.f64(st.encoder.energy_kept());
  w.matrix(st.encoder.basis());

  const RegressorBank& b = st.bank;
  w.matrix(b.anchors.atoms());
  w.f64(b.lambda);
  w.i64(b.neighborhood_size);
  w.i64(b.ill_conditioned);
  w.flag(b.contexts.has_value());
  if (b.contexts) {
    w.matrix(b.contexts->centroids);
    w.f64(b.contexts->weight_anchor);
    w.f64(b.contexts->weight_context);
  }
  w.u64(b.projections.size());
  for (const Mat& p : b.projections) w.matrix(p);

  w.flag(st.index.has_value());
  if (st.index) {
    w.f64(st.index->expansion);
    w.matrix(st.index->centroids);
    w.u64(st.index->lists.size());
    for (const auto& list : st.index->lists) {
      w.u64(list.size());
      for (int a : list) w.i64(a);
    }
  }
}

SRStage read_stage(Reader& r) {
  SRStage st;
  st.scale = r.small("stage scale", 64);
  st.stride = r.small("stride", 1u << 16);
  st.context_scale = r.small("context scale", 64);

  const int window = r.small("window", 1u << 10);
  const double energy = r.f64();
  st.encoder = FeatureEncoder(window, r.matrix(), energy);

  RegressorBank& b = st.bank;
  b.anchors = AnchorDictionary::from_unit_atoms(r.matrix());
  b.lambda = r.f64();
  b.neighborhood_size = r.small("neighborhood");
  b.ill_conditioned = r.small("ill-conditioned count");
  if (r.flag()) {
    ContextModel c;
    c.centroids = r.matrix();
    c.weight_anchor = r.f64();
    c.weight_context = r.f64();
    b.contexts = std::move(c);
  }
  const int count = r.small("projection count");
  b.projections.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) b.projections.push_back(r.matrix());

  if (r.flag()) {
    HierIndex idx;
    idx.expansion = r.f64();
    idx.centroids = r.matrix();
    const int lists = r.small("list count");
    idx.lists.resize(static_cast<std::size_t>(lists));
    for (auto& list : idx.lists) {
      const int len = r.small("list length");
      if (static_cast<std::size_t>(len) > r.remaining() / 8) throw FormatError("model file: truncated");
      list.resize(static_cast<std::size_t>(len));
      for (int& a : list) a = r.small("anchor id");
    }
    st.index = std::move(idx);
  }
  return st;
}

}  // namespace

std::string serialize_model(const SRModel& model) {
  model.validate();
  Writer w;
  w.raw(kModelMagic);
  w.u64(kModelVersion);
  w.i64(model.scale);
  const ModelFlags& f = model.flags;
  w.flag(f.enhanced);
  w.flag(f.back_projection);
  w.flag(f.context);
  w.flag(f.self_similarity);
  w.i64(f.ibp_iters);
  w.i64(f.internal_anchors);
  w.i64(f.internal_neighborhood);
  w.f64(f.internal_weight);
  w.u64(model.stages.size());
  for (const SRStage& st : model.stages) write_stage(w, st);
  return w.take();
}

SRModel deserialize_model(std::string_view bytes) {
  Reader r(bytes);
  if (bytes.size() < kModelMagic.size() || r.raw(kModelMagic.size()) != kModelMagic) {
    throw FormatError("model file: bad magic");
  }
  const std::uint64_t version = r.u64();
  if (version != kModelVersion) {
    throw FormatError("model file: unsupported version " + std::to_string(version));
  }
  SRModel m;
  m.scale = r.small("scale", 64);
  ModelFlags& f = m.flags;
  f.enhanced = r.flag();
  f.back_projection = r.flag();
  f.context = r.flag();
  f.self_similarity = r.flag();
  f.ibp_iters = r.small("back projection iterations");
  f.internal_anchors = r.small("internal anchors");
  f.internal_neighborhood = r.small("internal neighborhood");
  f.internal_weight = r.f64();
  const int stages = r.small("stage count", 1024);
  try {
    for (int i = 0; i < stages; ++i) m.stages.push_back(read_stage(r));
    if (r.remaining() != 0) throw FormatError("model file: trailing bytes");
    m.validate();
  } catch (const InvalidInput& e) {
    throw FormatError(std::string("model file: inconsistent model: ") + e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const SRModel& model) {
  const std::string bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

SRModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace anchorsr
