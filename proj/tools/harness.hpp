#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maps/maps.hpp"

namespace maps::harness {

enum class Algorithm { kMapsGlobal, kMapsLocal, kPcoa, kRandom, kExactGlobal, kExactLocal };

Algorithm parse_algorithm(const std::string& text);
const char* to_string(Algorithm algorithm);

struct SynthSpec {
  SynthKind kind = SynthKind::kTranslatingBlob;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  SynthOptions options;
};

SynthKind parse_synth_kind(const std::string& text);
const char* to_string(SynthKind kind);

struct RunConfig {
  // dataset source: a file, or a synthetic spec when `data` is empty
  std::filesystem::path data;
  DataFormat format = DataFormat::kCsv;
  std::optional<std::filesystem::path> meta;
  SynthSpec synth;
  std::string dataset_id;

  std::vector<Algorithm> algorithms{Algorithm::kMapsGlobal};
  std::vector<std::size_t> sizes;
  std::size_t k_isomap = 10;
  std::size_t k_lle = 10;
  std::size_t dims = 2;
  std::size_t nn_k = 20;
  Norm p = Norm::kL1;
  double reg = kDefaultLleReg;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::vector<std::string> learners{"isomap", "lle"};
  std::vector<OoseMethod> methods{OoseMethod::kIsomap, OoseMethod::kLle};
  std::filesystem::path out_dir = "maps_out";
  std::filesystem::path results;  ///< defaults to out_dir/results.csv
  bool largest_component = false;
  bool exact_folds = false;
  bool save_embeddings = false;
  bool dump_secants = false;

  /// Throws a parameter error when sizes are not strictly increasing.
  void validate() const;
  std::filesystem::path results_path() const;
};

DataMatrix load_source(const RunConfig& config);

/// Runs one selector for mask size m. Random masks use `seed`.
Mask select_mask(const DataMatrix& data, Algorithm algorithm, std::size_t m, const RunConfig& config,
                 std::uint64_t seed);

inline constexpr const char* kResultsHeader =
    "dataset,algorithm,m,k,l,metric,value,trials,stddev,seed,method";

/// Serialised appender for the results CSV; writes the header into new files.
class ResultsWriter {
 public:
  explicit ResultsWriter(const std::filesystem::path& path);
  void append(const EvalReport& report, const std::string& method);

 private:
  std::filesystem::path path_;
};

std::string format_result_row(const EvalReport& report, const std::string& method);

/// Writes mask_<m>.json (and mask_<m>.pgm when the image shape is known) for
/// every requested size, running nested selectors once at the largest size.
std::vector<std::filesystem::path> cmd_mask(const RunConfig& config);

struct ResultRow {
  EvalReport report;
  std::string method;
};

/// Scores every (algorithm, m) through Isomap and/or LLE against full-data
/// references; appends rows to the results CSV.
std::vector<ResultRow> cmd_evaluate(const RunConfig& config);

/// Leave-one-out OoSE experiments per (algorithm, m, method).
std::vector<ResultRow> cmd_oose(const RunConfig& config);

/// Writes the synthetic dataset to `path` (CSV) plus `path.meta`.
void cmd_synth(const SynthSpec& spec, const std::filesystem::path& path, DataFormat format);

void cmd_render_mask(const std::filesystem::path& mask_path, const ImageShape& shape,
                     const std::filesystem::path& out);

/// Embedding CSV plus a JSON sidecar (eigenvalues and parameters).
void write_embedding(const std::filesystem::path& csv_path, const Embedding& embedding,
                     const std::string& algorithm, std::size_t k);

}  // namespace maps::harness
