#include "anchorsr/bench/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "anchorsr/bench/fingerprint.hpp"
#include "anchorsr/error.hpp"
#include "anchorsr/image/io.hpp"
#include "anchorsr/image/metrics.hpp"
#include "anchorsr/image/resample.hpp"

namespace anchorsr {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<NamedImage> load_luma_set(const std::filesystem::path& dir, YCbCrRange range) {
  const auto paths = list_images(dir);
  if (paths.empty()) throw DataError("no images in " + dir.string());
  std::vector<NamedImage> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back({p.filename().string(), quantize(to_luma(read_image(p), range))});
  return out;
}

LumaMethod bicubic_method(int scale) {
  return [scale](const Image& lr) { return upscale(lr, scale); };
}

LumaMethod model_method(const SRModel& model) {
  return [&model](const Image& lr) { return run_cascade(model, lr); };
}

void finalize(EvalReport& report) {
  double p = 0.0;
  double s = 0.0;
  for (const auto& r : report.rows) {
    p += r.psnr_db;
    s += r.seconds;
  }
  const double n = report.rows.empty() ? 1.0 : static_cast<double>(report.rows.size());
  report.average_psnr = p / n;
  report.average_seconds = s / n;
}

EvalReport evaluate(const std::vector<NamedImage>& set, const LumaMethod& method, const EvalOptions& opt,
                    std::string method_name) {
  if (set.empty()) throw DataError("evaluation set is empty");
  if (opt.scale < 1) throw InvalidInput("evaluate: scale must be >= 1");
  EvalReport rep;
  rep.method = std::move(method_name);
  rep.scale = opt.scale;
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return set[a].name < set[b].name; });
  for (std::size_t i : order) {
    const Image hr = crop_to_multiple(set[i].image, opt.scale);
    const Image lr = degrade(hr, opt.scale);
    const auto t0 = Clock::now();
    Image sr = method(lr);
    const double secs = seconds_since(t0);
    if (opt.quantize_output) sr = quantize(sr);
    rep.rows.push_back({set[i].name, psnr_luma(hr, sr, opt.scale), secs});
  }
  finalize(rep);
  return rep;
}

void write_table(std::ostream& out, const std::vector<EvalReport>& reports) {
  if (reports.empty()) return;
  std::size_t width = 9;
  for (const auto& r : reports.front().rows) width = std::max(width, r.name.size());
  char buf[64];
  out << std::string(width, ' ').replace(0, 5, "image");
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %12s", r.method.substr(0, 12).c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < reports.front().rows.size(); ++i) {
    std::string name = reports.front().rows[i].name;
    out << name << std::string(width - name.size(), ' ');
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, "  %12.3f", i < r.rows.size() ? r.rows[i].psnr_db : 0.0);
      out << buf;
    }
    out << '\n';
  }
  out << std::string(width, ' ').replace(0, 7, "average");
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %12.3f", r.average_psnr);
    out << buf;
  }
  out << '\n' << std::string(width, ' ').replace(0, 9, "s / image");
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %12.3f", r.average_seconds);
    out << buf;
  }
  out << '\n';
}

void write_jsonl(std::ostream& out, const EvalReport& report) {
  auto line = [&](const std::string& name, double psnr, double secs) {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["psnr_db"] = psnr;
    j["seconds"] = secs;
    out << j.dump() << '\n';
  };
  for (const auto& r : report.rows) line(r.name, r.psnr_db, r.seconds);
  line("(average)", report.average_psnr, report.average_seconds);
}

std::vector<SweepPoint> run_sweep(const std::vector<Image>& train_images, const std::vector<NamedImage>& test_set,
                                  const TrainConfig& base, const ModelFlags& flags, const SweepGrid& grid,
                                  const std::function<void(const SweepPoint&)>& on_point) {
  if (grid.anchors.empty() || grid.samples.empty() || grid.stages.empty()) {
    throw InvalidInput("sweep: every grid axis needs at least one value");
  }
  const int max_stages = *std::ranges::max_element(grid.stages);
  EvalOptions opt;
  opt.scale = base.scale;
  std::vector<SweepPoint> points;
  for (int k : grid.anchors) {
    for (std::size_t n : grid.samples) {
      TrainConfig cfg = base;
      cfg.anchors = k;
      cfg.samples = n;
      cfg.stages = max_stages;
      const auto t0 = Clock::now();
      const TrainedModel trained = train_cascade(train_images, cfg);
      const double train_secs = seconds_since(t0);
      for (int t : grid.stages) {
        SRModel m = trained.model;
        m.stages.resize(static_cast<std::size_t>(t));
        m.flags = flags;
        m.flags.context = cfg.context;
        cfg.stages = t;
        SweepPoint p{k, n, t, evaluate(test_set, model_method(m), opt).average_psnr, train_secs,
                     config_fingerprint(cfg)};
        if (on_point) on_point(p);
        points.push_back(std::move(p));
      }
    }
  }
  return points;
}

void write_jsonl(std::ostream& out, const SweepPoint& p) {
  nlohmann::ordered_json j;
  j["anchors"] = p.anchors;
  j["samples"] = p.samples;
  j["stages"] = p.stages;
  j["psnr_db"] = p.psnr_db;
  j["train_seconds"] = p.train_seconds;
  j["fingerprint"] = p.fingerprint;
  out << j.dump() << '\n';
}

}  // namespace anchorsr
