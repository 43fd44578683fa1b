// maps: pixel-mask selection and manifold-structure evaluation.
//
//   maps synth --kind translating_blob --n 200 --side 16 --out blob.csv
//   maps mask --data blob.csv --meta blob.csv.meta --algorithm maps_global --sizes 16,32
//   maps evaluate --data blob.csv --meta blob.csv.meta --algorithm maps_global,random --sizes 16,32
//   maps oose --synth translating_blob --n 100 --algorithm maps_local --sizes 64 --methods lle
//   maps render-mask --mask out/mask_16.json --shape 16,16 --out mask.pgm

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness.hpp"

namespace {

using namespace maps;
using namespace maps::harness;

DataFormat parse_format(const std::string& text) {
  if (text == "csv") return DataFormat::kCsv;
  if (text == "f64le" || text == "bin" || text == "binary") return DataFormat::kBinary;
  fail(ErrorKind::kParameter, "unknown format '" + text + "' (csv or f64le)");
}

ImageShape parse_shape(const std::vector<std::size_t>& values) {
  require(values.size() == 2, ErrorKind::kParameter, "--shape expects h,w");
  return ImageShape{values[0], values[1]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manifold-aware pixel selection and structure-preservation evaluation"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string data_path, meta_path, format = "csv", synth_kind = "translating_blob", norm = "L1";
  std::vector<std::string> algorithms{"maps_global"};
  std::vector<std::string> methods{"isomap", "lle"};
  std::uint64_t synth_seed = 0;

  app.add_option("--data", data_path, "dataset file (omit to use --synth)");
  app.add_option("--format", format, "csv or f64le")->capture_default_str();
  app.add_option("--meta", meta_path, "sidecar with image_shape=[h,w] and param_cols=[start,end]");
  app.add_option("--synth", synth_kind, "synthetic source when --data is absent")->capture_default_str();
  app.add_option("--n", config.synth.n, "synthetic point count")->capture_default_str();
  app.add_option("--synth-seed", synth_seed, "synthetic generator seed")->capture_default_str();
  app.add_option("--side", config.synth.options.side, "blob image side g")->capture_default_str();
  app.add_option("--radius", config.synth.options.radius, "blob std. dev. (pixels)")->capture_default_str();
  app.add_option("--jitter", config.synth.options.jitter, "blob lattice jitter")->capture_default_str();
  app.add_option("--noise", config.synth.options.noise, "blob pixel noise")->capture_default_str();
  app.add_option("--height", config.synth.options.height, "swiss roll height")->capture_default_str();
  app.add_option("--dataset-id", config.dataset_id, "name written to the results CSV");
  app.add_option("--algorithm", algorithms,
                 "maps_global, maps_local, pcoa, random, exact_global, exact_local")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--sizes", config.sizes, "mask sizes, strictly increasing")->delimiter(',');
  app.add_option("--k-isomap", config.k_isomap, "neighbourhood size for Isomap and MAPS-Global")
      ->capture_default_str();
  app.add_option("--k-lle", config.k_lle, "neighbourhood size for LLE and MAPS-Local")->capture_default_str();
  app.add_option("--l", config.dims, "embedding dimension")->capture_default_str();
  app.add_option("--nn-k", config.nn_k, "k for neighbour preservation")->capture_default_str();
  app.add_option("--p", norm, "MAPS-Global norm: L1 or Linf")->capture_default_str();
  app.add_option("--reg", config.reg, "LLE regularisation")->capture_default_str();
  app.add_option("--seed", config.seed, "seed for random masks")->capture_default_str();
  app.add_option("--trials", config.trials, "random-mask trials")->capture_default_str();
  app.add_option("--learners", config.learners, "isomap and/or lle")->delimiter(',')->capture_default_str();
  app.add_option("--methods", methods, "isomap, lle and/or gaze")->delimiter(',')->capture_default_str();
  app.add_option("--out-dir", config.out_dir, "output directory")->capture_default_str();
  app.add_option("--results", config.results, "results CSV (default <out-dir>/results.csv)");
  app.add_flag("--largest-component", config.largest_component, "embed the largest connected component");
  app.add_flag("--exact-folds", config.exact_folds, "recompute geodesics per Isomap fold");
  app.add_flag("--save-embeddings", config.save_embeddings, "write embeddings for each cell");
  app.add_flag("--dump-secants", config.dump_secants, "write the secant matrix as CSV");

  auto* mask_cmd = app.add_subcommand("mask", "select masks and write JSON/PGM files");
  auto* eval_cmd = app.add_subcommand("evaluate", "score masks through Isomap/LLE");
  auto* oose_cmd = app.add_subcommand("oose", "leave-one-out out-of-sample experiments");

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset");
  std::string synth_out;
  synth_cmd->add_option("--out", synth_out, "output path")->required();

  auto* render_cmd = app.add_subcommand("render-mask", "render a mask JSON as a PGM raster");
  std::string render_mask, render_out;
  std::vector<std::size_t> render_shape;
  render_cmd->add_option("--mask", render_mask, "mask JSON")->required();
  render_cmd->add_option("--shape", render_shape, "h,w")->delimiter(',')->required();
  render_cmd->add_option("--out", render_out, "output PGM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    config.data = data_path;
    config.format = parse_format(format);
    if (!meta_path.empty()) config.meta = meta_path;
    config.synth.kind = parse_synth_kind(synth_kind);
    config.synth.seed = synth_seed;
    config.p = parse_norm(norm);
    config.algorithms.clear();
    for (const auto& a : algorithms) config.algorithms.push_back(parse_algorithm(a));
    config.methods.clear();
    for (const auto& m : methods) config.methods.push_back(parse_oose_method(m));

    if (*synth_cmd) {
      cmd_synth(config.synth, synth_out, config.format);
    } else if (*render_cmd) {
      cmd_render_mask(render_mask, parse_shape(render_shape), render_out);
    } else if (*mask_cmd) {
      for (const auto& path : cmd_mask(config)) std::cout << path.string() << '\n';
    } else if (*eval_cmd) {
      const auto rows = cmd_evaluate(config);
      std::cout << "wrote " << rows.size() << " rows to " << config.results_path().string() << '\n';
    } else if (*oose_cmd) {
      const auto rows = cmd_oose(config);
      std::cout << "wrote " << rows.size() << " rows to " << config.results_path().string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "maps: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "maps: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
