#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maps::harness {

Algorithm parse_algorithm(const std::string& text) {
  if (text == "maps_global") return Algorithm::kMapsGlobal;
  if (text == "maps_local") return Algorithm::kMapsLocal;
  if (text == "pcoa") return Algorithm::kPcoa;
  if (text == "random") return Algorithm::kRandom;
  if (text == "exact_global") return Algorithm::kExactGlobal;
  if (text == "exact_local") return Algorithm::kExactLocal;
  fail(ErrorKind::kParameter, "unknown algorithm '" + text + "'");
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMapsGlobal: return "maps_global";
    case Algorithm::kMapsLocal: return "maps_local";
    case Algorithm::kPcoa: return "pcoa";
    case Algorithm::kRandom: return "random";
    case Algorithm::kExactGlobal: return "exact_global";
    case Algorithm::kExactLocal: return "exact_local";
  }
  return "unknown";
}

SynthKind parse_synth_kind(const std::string& text) {
  if (text == "swiss_roll") return SynthKind::kSwissRoll;
  if (text == "translating_blob") return SynthKind::kTranslatingBlob;
  fail(ErrorKind::kParameter, "unknown synthetic dataset '" + text + "'");
}

const char* to_string(SynthKind kind) {
  return kind == SynthKind::kSwissRoll ? "swiss_roll" : "translating_blob";
}

void RunConfig::validate() const {
  require(!sizes.empty(), ErrorKind::kParameter, "at least one mask size is required");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    require(sizes[i - 1] < sizes[i], ErrorKind::kParameter, "mask sizes must be strictly increasing");
  require(!algorithms.empty(), ErrorKind::kParameter, "at least one algorithm is required");
}

std::filesystem::path RunConfig::results_path() const {
  return results.empty() ? out_dir / "results.csv" : results;
}

DataMatrix load_source(const RunConfig& config) {
  if (!config.data.empty()) return load_dataset(config.data, config.format, config.meta);
  return synth_dataset(config.synth.kind, config.synth.n, config.synth.seed, config.synth.options);
}

namespace {

std::string dataset_name(const RunConfig& config) {
  if (!config.dataset_id.empty()) return config.dataset_id;
  if (!config.data.empty()) return config.data.stem().string();
  return to_string(config.synth.kind);
}

bool nested(Algorithm algorithm) {
  return algorithm != Algorithm::kExactGlobal && algorithm != Algorithm::kExactLocal;
}

}  // namespace

Mask select_mask(const DataMatrix& data, Algorithm algorithm, std::size_t m, const RunConfig& config,
                 std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::kMapsGlobal:
      return maps_global(build_secants(data, knn_graph(data, config.k_isomap)), m, config.p);
    case Algorithm::kExactGlobal:
      return exact_mask_global(build_secants(data, knn_graph(data, config.k_isomap)), m, config.p).mask;
    case Algorithm::kMapsLocal:
      return maps_local(build_clique_array(data, knn_graph(data, config.k_lle)), m);
    case Algorithm::kExactLocal:
      return exact_mask_local(build_clique_array(data, knn_graph(data, config.k_lle)), m).mask;
    case Algorithm::kPcoa: return pcoa(data, m);
    case Algorithm::kRandom: return random_mask(data.d(), m, seed);
  }
  fail(ErrorKind::kParameter, "unknown algorithm");
}

std::string format_result_row(const EvalReport& r, const std::string& method) {
  std::ostringstream out;
  out << r.dataset << ',' << r.algorithm << ',' << r.m << ',' << r.k << ',' << r.dims << ','
      << to_string(r.metric) << ',' << format_double(r.value) << ',' << r.trials << ','
      << format_double(r.stddev) << ',' << r.seed << ',' << method;
  return out.str();
}

ResultsWriter::ResultsWriter(const std::filesystem::path& path) : path_(path) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  if (!std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0) {
    std::ofstream out(path_, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path_.string());
    out << kResultsHeader << '\n';
  }
}

void ResultsWriter::append(const EvalReport& report, const std::string& method) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot append to " + path_.string());
  out << format_result_row(report, method) << '\n';
  out.flush();
}

std::vector<std::filesystem::path> cmd_mask(const RunConfig& config) {
  config.validate();
  require(config.algorithms.size() == 1, ErrorKind::kParameter, "mask takes exactly one algorithm");
  const DataMatrix data = load_source(config);
  const Algorithm algorithm = config.algorithms.front();
  std::filesystem::create_directories(config.out_dir);

  if (config.dump_secants) {
    const SecantMatrix secants = build_secants(data, knn_graph(data, config.k_isomap));
    write_csv(config.out_dir / "secants.csv", secants.rows);
  }

  std::vector<std::filesystem::path> written;
  std::optional<Mask> largest;
  if (nested(algorithm)) largest = select_mask(data, algorithm, config.sizes.back(), config, config.seed);
  for (std::size_t m : config.sizes) {
    const Mask mask = largest ? largest->prefix(m) : select_mask(data, algorithm, m, config, config.seed);
    const auto json_path = config.out_dir / ("mask_" + std::to_string(m) + ".json");
    write_mask(json_path, mask);
    written.push_back(json_path);
    if (data.image_shape) {
      const auto pgm_path = config.out_dir / ("mask_" + std::to_string(m) + ".pgm");
      write_mask_pgm(pgm_path, mask, *data.image_shape);
      written.push_back(pgm_path);
    }
  }
  return written;
}

namespace {

struct EvalReference {
  GeodesicDistances geo;
  LleWeights weights;
};

std::uint64_t reference_key(const DataMatrix& data, const RunConfig& config) {
  std::uint64_t h = content_hash(data);
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(config.k_isomap);
  mix(config.k_lle);
  std::uint64_t reg_bits;
  std::memcpy(&reg_bits, &config.reg, sizeof reg_bits);
  mix(reg_bits);
  return h;
}

// Full-data references, cached write-once under out_dir/cache.
EvalReference full_references(const DataMatrix& data, const RunConfig& config) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(reference_key(data, config)));
  const auto dir = config.out_dir / "cache";
  const auto geo_path = dir / (std::string(hex) + ".geo.bin");
  const auto support_path = dir / (std::string(hex) + ".lle_support.bin");
  const auto weight_path = dir / (std::string(hex) + ".lle_weights.bin");

  EvalReference ref;
  const std::size_t n = data.n(), k = config.k_lle;
  if (std::filesystem::exists(geo_path) && std::filesystem::exists(support_path) &&
      std::filesystem::exists(weight_path)) {
    ref.geo.distances = read_binary_matrix(geo_path);
    ref.geo.connected = true;
    const Matrix support = read_binary_matrix(support_path);
    const Matrix weights = read_binary_matrix(weight_path);
    require(static_cast<std::size_t>(support.rows()) == n && static_cast<std::size_t>(support.cols()) == k,
            ErrorKind::kFormat, "stale reference cache in " + dir.string());
    ref.weights.support.assign(n, std::vector<std::size_t>(k));
    ref.weights.weights.assign(n, std::vector<double>(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t e = 0; e < k; ++e) {
        const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(e);
        ref.weights.support[i][e] = static_cast<std::size_t>(support(r, c));
        ref.weights.weights[i][e] = weights(r, c);
      }
    return ref;
  }

  ref.geo = geodesics(data, knn_graph(data, config.k_isomap));
  require(ref.geo.connected, ErrorKind::kValue,
          "full-data neighbour graph is disconnected; use --largest-component or a larger k");
  ref.weights = lle_weights(data, knn_graph(data, k), config.reg);

  std::filesystem::create_directories(dir);
  Matrix support(n, k), weights(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < k; ++e) {
      const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(e);
      support(r, c) = static_cast<double>(ref.weights.support[i][e]);
      weights(r, c) = ref.weights.weights[i][e];
    }
  write_binary_matrix(geo_path, ref.geo.distances);
  write_binary_matrix(support_path, support);
  write_binary_matrix(weight_path, weights);
  return ref;
}

DataMatrix restrict_rows(const DataMatrix& data, const std::vector<std::size_t>& keep) {
  DataMatrix out;
  out.points.resize(static_cast<Eigen::Index>(keep.size()), data.points.cols());
  if (data.params) out.params = Matrix(static_cast<Eigen::Index>(keep.size()), data.params->cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    out.points.row(static_cast<Eigen::Index>(r)) = data.points.row(static_cast<Eigen::Index>(keep[r]));
    if (data.params) out.params->row(static_cast<Eigen::Index>(r)) = data.params->row(static_cast<Eigen::Index>(keep[r]));
  }
  out.image_shape = data.image_shape;
  return out;
}

// Drops points outside the largest full-data component when requested.
DataMatrix prepared_source(const RunConfig& config) {
  DataMatrix data = load_source(config);
  if (!config.largest_component) return data;
  const GeodesicDistances geo = geodesics(data, knn_graph(data, config.k_isomap));
  if (geo.connected) return data;
  return restrict_rows(data, largest_component(geo));
}

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
};

Summary summarize(const std::vector<double>& values) {
  Summary s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
  }
  return s;
}

bool wants(const RunConfig& config, const std::string& learner) {
  return std::find(config.learners.begin(), config.learners.end(), learner) != config.learners.end();
}

// Masks for every (trial, m); nested selectors run once at the largest size.
std::vector<std::vector<Mask>> masks_for(const DataMatrix& data, Algorithm algorithm, const RunConfig& config) {
  const std::size_t trials = algorithm == Algorithm::kRandom ? std::max<std::size_t>(config.trials, 1) : 1;
  std::vector<std::vector<Mask>> out(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = config.seed + t;
    if (nested(algorithm)) {
      const Mask largest = select_mask(data, algorithm, config.sizes.back(), config, seed);
      for (std::size_t m : config.sizes) out[t].push_back(largest.prefix(m));
    } else {
      for (std::size_t m : config.sizes) out[t].push_back(select_mask(data, algorithm, m, config, seed));
    }
  }
  return out;
}

}  // namespace

void write_embedding(const std::filesystem::path& csv_path, const Embedding& embedding,
                     const std::string& algorithm, std::size_t k) {
  write_csv(csv_path, embedding.coords);
  nlohmann::json meta;
  meta["algorithm"] = algorithm;
  meta["k"] = k;
  meta["dims"] = embedding.dims();
  meta["n"] = embedding.n();
  std::vector<double> values(embedding.eigenvalues.data(),
                             embedding.eigenvalues.data() + embedding.eigenvalues.size());
  meta["eigenvalues"] = values;
  meta["warnings"] = embedding.warnings;
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  std::ofstream out(json_path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + json_path.string());
  out << meta.dump(2) << '\n';
}

std::vector<ResultRow> cmd_evaluate(const RunConfig& config) {
  config.validate();
  const DataMatrix data = prepared_source(config);
  const std::string dataset = dataset_name(config);
  const EvalReference ref = full_references(data, config);
  ResultsWriter writer(config.results_path());
  if (config.save_embeddings) std::filesystem::create_directories(config.out_dir / "embeddings");

  std::vector<ResultRow> rows;
  for (Algorithm algorithm : config.algorithms) {
    const auto masks = masks_for(data, algorithm, config);
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
      const std::size_t m = config.sizes[s];
      std::vector<double> rv, np, ee;
      for (std::size_t t = 0; t < masks.size(); ++t) {
        const DataMatrix masked = apply_mask(data, masks[t][s]);
        const std::string stem = std::string(to_string(algorithm)) + "_m" + std::to_string(m);
        if (wants(config, "isomap")) {
          const IsomapResult iso = isomap(masked, config.k_isomap, config.dims, config.largest_component);
          const GeodesicDistances reference = iso.kept.size() == data.n() ? ref.geo : restrict_to(ref.geo, iso.kept);
          rv.push_back(residual_variance(reference, iso.embedding.coords));
          Matrix full_points(static_cast<Eigen::Index>(iso.kept.size()), data.points.cols());
          for (std::size_t r = 0; r < iso.kept.size(); ++r)
            full_points.row(static_cast<Eigen::Index>(r)) = data.points.row(static_cast<Eigen::Index>(iso.kept[r]));
          np.push_back(neighbor_preservation(full_points, iso.embedding.coords, config.nn_k));
          if (config.save_embeddings && t == 0)
            write_embedding(config.out_dir / "embeddings" / (stem + "_isomap.csv"), iso.embedding, "isomap",
                            config.k_isomap);
        }
        if (wants(config, "lle")) {
          const Embedding y = lle_embed(lle_weights(masked, knn_graph(masked, config.k_lle), config.reg), config.dims);
          ee.push_back(embedding_error(ref.weights, y.coords));
          if (config.save_embeddings && t == 0)
            write_embedding(config.out_dir / "embeddings" / (stem + "_lle.csv"), y, "lle", config.k_lle);
        }
      }
      auto emit = [&](Metric metric, const std::vector<double>& values, std::size_t k, const std::string& method) {
        if (values.empty()) return;
        const Summary summary = summarize(values);
        EvalReport report;
        report.metric = metric;
        report.value = summary.mean;
        report.stddev = summary.stddev;
        report.trials = values.size();
        report.dataset = dataset;
        report.algorithm = to_string(algorithm);
        report.m = m;
        report.k = k;
        report.dims = config.dims;
        report.seed = config.seed;
        writer.append(report, method);
        rows.push_back({report, method});
      };
      emit(Metric::kResidualVariance, rv, config.k_isomap, "isomap");
      emit(Metric::kNeighborPreservation, np, config.nn_k, "isomap");
      emit(Metric::kEmbeddingError, ee, config.k_lle, "lle");
    }
  }
  return rows;
}

std::vector<ResultRow> cmd_oose(const RunConfig& config) {
  config.validate();
  const DataMatrix data = prepared_source(config);
  const std::string dataset = dataset_name(config);
  ResultsWriter writer(config.results_path());

  auto options_for = [&](OoseMethod method) {
    LeaveOneOutOptions options;
    options.k = method == OoseMethod::kIsomap ? config.k_isomap : config.k_lle;
    options.dims = config.dims;
    options.reg = config.reg;
    options.exact_folds = config.exact_folds;
    return options;
  };
  std::vector<FullReference> references;
  for (OoseMethod method : config.methods) references.push_back(full_reference(data, options_for(method), method));

  std::vector<ResultRow> rows;
  for (Algorithm algorithm : config.algorithms) {
    const auto masks = masks_for(data, algorithm, config);
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
      for (std::size_t q = 0; q < config.methods.size(); ++q) {
        const OoseMethod method = config.methods[q];
        std::vector<double> values;
        EvalReport report;
        for (const auto& trial : masks) {
          report = leave_one_out(data, trial[s], method, options_for(method), &references[q]);
          values.push_back(report.value);
        }
        const Summary summary = summarize(values);
        report.value = summary.mean;
        report.stddev = summary.stddev;
        report.trials = values.size();
        report.dataset = dataset;
        report.algorithm = to_string(algorithm);
        report.seed = config.seed;
        writer.append(report, to_string(method));
        rows.push_back({report, to_string(method)});
      }
    }
  }
  return rows;
}

void cmd_synth(const SynthSpec& spec, const std::filesystem::path& path, DataFormat format) {
  const DataMatrix data = synth_dataset(spec.kind, spec.n, spec.seed, spec.options);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (format == DataFormat::kCsv) {
    save_dataset(path, data);
    return;
  }
  Matrix all = data.points;
  Sidecar sidecar;
  sidecar.image_shape = data.image_shape;
  if (data.params) {
    all.conservativeResize(Eigen::NoChange, data.points.cols() + data.params->cols());
    all.rightCols(data.params->cols()) = *data.params;
    sidecar.param_cols = std::make_pair(data.d(), data.d() + data.params->cols());
  }
  write_binary_matrix(path, all);
  std::filesystem::path meta = path;
  meta += ".meta";
  std::ofstream out(meta, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + meta.string());
  out << format_sidecar(sidecar);
}

void cmd_render_mask(const std::filesystem::path& mask_path, const ImageShape& shape,
                     const std::filesystem::path& out) {
  write_mask_pgm(out, read_mask(mask_path), shape);
}

}  // namespace maps::harness
