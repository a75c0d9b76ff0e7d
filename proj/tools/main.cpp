#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anchorsr/bench/eval.hpp"
#include "anchorsr/bench/fingerprint.hpp"
#include "anchorsr/bench/model_io.hpp"
#include "anchorsr/error.hpp"
#include "anchorsr/image/io.hpp"
#include "anchorsr/parallel.hpp"
#include "anchorsr/pipeline/train.hpp"

namespace fs = std::filesystem;
using namespace anchorsr;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

const std::map<std::string, YCbCrRange> kRanges{{"studio", YCbCrRange::studio}, {"full", YCbCrRange::full}};
const std::map<std::string, RegressorKind> kRegressors{{"aplus", RegressorKind::aplus}, {"anr", RegressorKind::anr}};
const std::map<std::string, AnchorMethod> kAnchorMethods{
    {"auto", AnchorMethod::automatic}, {"ksvd", AnchorMethod::ksvd}, {"kmeans", AnchorMethod::kmeans}};
const std::map<std::string, bool> kSwitch{{"on", true}, {"off", false}};

struct Toggles {
  std::optional<bool> enhanced;
  std::optional<bool> back_projection;
  std::optional<bool> self_similarity;
  std::optional<int> ibp_iters;
  std::optional<double> internal_weight;

  void add(CLI::App* app) {
    app->add_option("--enhanced", enhanced, "E: average over 8 rotations/flips (on|off)")
        ->transform(CLI::CheckedTransformer(kSwitch));
    app->add_option("--back-projection", back_projection, "B: iterative back projection (on|off)")
        ->transform(CLI::CheckedTransformer(kSwitch));
    app->add_option("--self-sim", self_similarity, "S: blend in a per-image internal model (on|off)")
        ->transform(CLI::CheckedTransformer(kSwitch));
    app->add_option("--ibp-iters", ibp_iters, "back projection iterations")->check(CLI::NonNegativeNumber);
    app->add_option("--internal-weight", internal_weight, "weight of the internal model")->check(CLI::Range(0.0, 1.0));
  }
  void apply(ModelFlags& f) const {
    if (enhanced) f.enhanced = *enhanced;
    if (back_projection) f.back_projection = *back_projection;
    if (self_similarity) f.self_similarity = *self_similarity;
    if (ibp_iters) f.ibp_iters = *ibp_iters;
    if (internal_weight) f.internal_weight = *internal_weight;
  }
};

void add_train_options(CLI::App* app, TrainConfig& c) {
  app->add_option("--scale,-s", c.scale, "magnification factor")->check(CLI::Range(2, 8));
  app->add_option("--anchors,-k", c.anchors, "dictionary size")->check(CLI::PositiveNumber);
  app->add_option("--samples,-n", c.samples, "training windows sampled per stage")->check(CLI::PositiveNumber);
  app->add_option("--stages", c.stages, "cascade stages")->check(CLI::Range(1, 16));
  app->add_option("--lambda", c.lambda, "ridge weight")->check(CLI::PositiveNumber);
  app->add_option("--neighborhood", c.neighborhood, "A+ neighborhood size")->check(CLI::PositiveNumber);
  app->add_option("--regressor", c.regressor, "aplus|anr")->transform(CLI::CheckedTransformer(kRegressors));
  app->add_option("--anr-neighborhood", c.anr_neighborhood, "ANR atoms per neighborhood")->check(CLI::PositiveNumber);
  app->add_option("--anchor-method", c.anchor_method, "auto|ksvd|kmeans")
      ->transform(CLI::CheckedTransformer(kAnchorMethods));
  app->add_option("--sparsity", c.sparsity, "OMP sparsity")->check(CLI::PositiveNumber);
  app->add_option("--dict-iters", c.dictionary_iterations, "dictionary learning iterations")->check(CLI::PositiveNumber);
  app->add_option("--dict-samples", c.dictionary_samples, "windows used for dictionary learning")
      ->check(CLI::PositiveNumber);
  app->add_option("--pca-energy", c.pca_energy, "retained PCA energy")->check(CLI::Range(0.5, 1.0));
  app->add_option("--pca-samples", c.pca_samples, "windows used for PCA")->check(CLI::PositiveNumber);
  app->add_option("--train-stride", c.train_stride, "training window stride")->check(CLI::PositiveNumber);
  app->add_flag("!--no-augment", c.augment, "skip the 8 rotation/flip copies");
  app->add_flag("--hier", c.hier, "H: hierarchical anchor search");
  app->add_option("--hier-c", c.hier_c, "anchors per centroid list, in units of sqrt(K)")->check(CLI::PositiveNumber);
  app->add_flag("--context", c.context, "R: context-specific regressors");
  app->add_option("--context-neighborhood", c.context_neighborhood, "samples per context regressor")
      ->check(CLI::PositiveNumber);
  app->add_option("--stride", c.inference_stride, "inference window stride")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "random seed");
}

std::vector<Image> load_training(const fs::path& dir, YCbCrRange range) {
  std::vector<Image> out;
  for (auto& img : load_luma_set(dir, range)) out.push_back(std::move(img.image));
  return out;
}

void print_summary(std::ostream& out, const TrainConfig& c, const TrainedModel& t, double secs) {
  out << "config  " << canonical_config(c) << '\n' << "fingerprint  " << config_fingerprint(c) << '\n';
  for (std::size_t i = 0; i < t.reports.size(); ++i) {
    const StageReport& r = t.reports[i];
    out << "stage " << i + 1 << "  pool=" << r.pool_windows << " samples=" << r.samples << " dim=" << r.feature_dim
        << " energy=" << r.energy_kept << " ill_conditioned=" << r.ill_conditioned;
    if (!r.dictionary_objective.empty()) out << " dict_objective=" << r.dictionary_objective.back();
    if (r.training_psnr == r.training_psnr && r.training_psnr != 0.0) out << " train_psnr=" << r.training_psnr;
    out << '\n';
  }
  out << "trained in " << secs << " s\n";
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return nullptr;
  if (path == "-") return &std::cout;
  file.open(path);
  if (!file) throw DataError("cannot open " + path + " for writing");
  return &file;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads();
  CLI::App app{"Anchored neighborhood regression super-resolution"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "anchorsr 0.3.0");

  YCbCrRange range = YCbCrRange::studio;
  app.add_option("--ycbcr", range, "luma convention for color inputs: studio|full")
      ->transform(CLI::CheckedTransformer(kRanges))
      ->capture_default_str();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  // train
  TrainConfig tcfg;
  fs::path train_dir;
  fs::path model_out;
  Toggles train_toggles;
  auto* train = app.add_subcommand("train", "train a model from a directory of HR images");
  train->add_option("--train-dir,-d", train_dir, "training images")->required();
  train->add_option("--out,-o", model_out, "model file to write")->required();
  add_train_options(train, tcfg);
  train_toggles.add(train);

  // sr
  fs::path model_path;
  std::vector<fs::path> inputs;
  fs::path out_dir;
  std::optional<int> sr_scale;
  Toggles sr_toggles;
  auto* sr = app.add_subcommand("sr", "super-resolve images");
  sr->add_option("--model,-m", model_path, "model file")->required();
  sr->add_option("inputs", inputs, "LR images")->required()->check(CLI::ExistingFile);
  sr->add_option("--out-dir,-o", out_dir, "output directory")->required();
  sr->add_option("--scale,-s", sr_scale, "expected magnification (must match the model)");
  sr_toggles.add(sr);

  // eval
  fs::path eval_model;
  fs::path eval_dir;
  int eval_scale = 3;
  std::string eval_jsonl;
  bool with_bicubic = false;
  Toggles eval_toggles;
  auto* ev = app.add_subcommand("eval", "PSNR of a model (or bicubic) on a directory of HR images");
  ev->add_option("--model,-m", eval_model, "model file; bicubic when omitted");
  ev->add_option("--data,-d", eval_dir, "HR ground-truth images")->required();
  ev->add_option("--scale,-s", eval_scale, "magnification factor")->check(CLI::Range(2, 8));
  ev->add_option("--jsonl", eval_jsonl, "line-delimited records (name, psnr_db, seconds); '-' for stdout");
  ev->add_flag("--bicubic", with_bicubic, "add a bicubic column to the table");
  eval_toggles.add(ev);

  // sweep
  TrainConfig scfg;
  fs::path sweep_train;
  fs::path sweep_test;
  SweepGrid grid;
  std::string sweep_jsonl = "-";
  Toggles sweep_toggles;
  auto* sw = app.add_subcommand("sweep", "grid over anchors, samples and stages");
  sw->add_option("--train-dir", sweep_train, "training images")->required();
  sw->add_option("--test-dir", sweep_test, "HR test images")->required();
  add_train_options(sw, scfg);
  sw->add_option("--anchor-grid", grid.anchors, "anchor counts")->delimiter(',')->check(CLI::PositiveNumber);
  sw->add_option("--sample-grid", grid.samples, "sample counts")->delimiter(',')->check(CLI::PositiveNumber);
  sw->add_option("--stage-grid", grid.stages, "stage counts")->delimiter(',')->check(CLI::Range(1, 16));
  sw->add_option("--jsonl", sweep_jsonl, "output records; '-' for stdout");
  sweep_toggles.add(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  std::ostream& log = std::cerr;

  try {
    if (*train) {
      const auto t0 = std::chrono::steady_clock::now();
      TrainedModel t = train_cascade(load_training(train_dir, range), tcfg);
      train_toggles.apply(t.model.flags);
      save_model(model_out, t.model);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print_summary(std::cout, tcfg, t, secs);
      std::cout << "model  " << model_out.string() << "  " << model_fingerprint(t.model) << '\n';
    } else if (*sr) {
      SRModel model = load_model(model_path);
      if (sr_scale && *sr_scale != model.scale) {
        throw InvalidInput("requested scale " + std::to_string(*sr_scale) + " but the model magnifies by " +
                           std::to_string(model.scale));
      }
      sr_toggles.apply(model.flags);
      fs::create_directories(out_dir);
      for (const auto& in : inputs) {
        const CascadeRun run = super_resolve(model, read_image(in), range);
        for (const auto& w : run.warnings) log << "warning: " << in.filename().string() << ": " << w << '\n';
        const fs::path out = out_dir / (in.stem().string() + ".png");
        write_image(out, run.image);
        if (!quiet) log << in.string() << " -> " << out.string() << '\n';
      }
    } else if (*ev) {
      const auto set = load_luma_set(eval_dir, range);
      EvalOptions opt;
      opt.scale = eval_scale;
      std::vector<EvalReport> reports;
      SRModel model;
      if (with_bicubic || eval_model.empty()) reports.push_back(evaluate(set, bicubic_method(eval_scale), opt, "bicubic"));
      if (!eval_model.empty()) {
        model = load_model(eval_model);
        if (model.scale != eval_scale) {
          throw InvalidInput("model magnifies by " + std::to_string(model.scale) + ", evaluation requested " +
                             std::to_string(eval_scale));
        }
        eval_toggles.apply(model.flags);
        EvalReport rep = evaluate(set, model_method(model), opt, "model");
        rep.fingerprint = model_fingerprint(model);
        reports.push_back(std::move(rep));
      }
      write_table(std::cout, reports);
      if (!reports.back().fingerprint.empty()) std::cout << "fingerprint  " << reports.back().fingerprint << '\n';
      std::ofstream file;
      if (std::ostream* out = open_out(eval_jsonl, file)) write_jsonl(*out, reports.back());
    } else if (*sw) {
      ModelFlags flags;
      sweep_toggles.apply(flags);
      const auto train_imgs = load_training(sweep_train, range);
      const auto test_set = load_luma_set(sweep_test, range);
      std::ofstream file;
      std::ostream* out = open_out(sweep_jsonl, file);
      run_sweep(train_imgs, test_set, scfg, flags, grid, [&](const SweepPoint& p) {
        if (out) {
          write_jsonl(*out, p);
          out->flush();
        }
      });
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
