#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbdyn/classify.hpp"
#include "nbdyn/pipeline.hpp"
#include "nbdyn/simdyn.hpp"

namespace nbdyn::cli {

namespace fs = std::filesystem;

// Sub-streams of the run seed, one per stochastic stage.
enum SeedStream : std::uint64_t {
  kGraphStream = 1,
  kReceptorStream = 2,
  kSimulationStream = 3,
  kSummaryStream = 4,
  kSplitStream = 5,
  kFoldStream = 6,
  kControlStream = 7,
};

struct GraphInput {
  fs::path path;
  std::optional<std::size_t> n_vertices;
};

struct ParamsOptions {
  GraphInput graph;
  std::string codes;
  fs::path out;
  std::optional<std::size_t> begin;
  std::optional<std::size_t> end;
  std::size_t chunk = 1024;
  bool resume = false;
  unsigned threads = 0;
};

struct SelectOptions {
  GraphInput graph;
  std::string code = "size";
  std::size_t m = kDefaultSelectionSize;
  SelectionEnd end = SelectionEnd::top;
  fs::path out;
  unsigned threads = 0;
};

struct FeaturizeOptions {
  GraphInput graph;
  fs::path spikes;
  fs::path out;
  std::string selection = "size";
  std::string feature = "size";
  std::size_t m = kDefaultSelectionSize;
  SelectionEnd end = SelectionEnd::top;
  BinSpec bins = BinSpec::microcircuit_default();
  ValidationMode mode = ValidationMode::none;
  std::optional<std::uint64_t> seed;
  std::size_t iteration = 0;
  std::optional<fs::path> permutation;  // sigma, one vertex per line
  bool inverse = false;                 // apply sigma^-1 instead of sigma
  std::optional<fs::path> save_permutation;
  std::optional<fs::path> save_spikes;
  unsigned threads = 0;
};

struct SimulationSettings {
  std::size_t n_vertices = 1000;
  double p = 0.01;
  std::size_t classes = 8;
  std::size_t repeats = 500;
  std::size_t receptors = kDefaultReceptorCount;
  double noise = 3.0;
  double stimulus_weight = LifConfig{}.stimulus_weight;
};

struct SimulateOptions {
  std::optional<GraphInput> graph;  // generate an ER graph when absent
  SimulationSettings sim;
  std::uint64_t seed = 0;
  fs::path out_dir;
};

struct ClassifierSettings {
  double train_fraction = kDefaultTrainFraction;
  std::size_t folds = kDefaultFolds;
  double c = 1.0;
  std::optional<double> gamma;
  bool label_control = false;
  bool centroid = false;
};

struct ClassifyOptions {
  fs::path features;
  fs::path out;
  std::uint64_t seed = 0;
  ClassifierSettings classifier;
  unsigned threads = 0;
};

struct ExperimentOptions {
  std::optional<GraphInput> graph;
  std::optional<fs::path> spikes;
  bool simulate = false;
  SimulationSettings sim;
  std::vector<std::string> selection;  // empty means the main table codes
  std::vector<std::string> feature;
  std::vector<SelectionEnd> ends{SelectionEnd::top};
  std::size_t m = kDefaultSelectionSize;
  std::optional<BinSpec> bins;  // defaults depend on the data source
  ValidationMode mode = ValidationMode::none;
  ClassifierSettings classifier;
  std::uint64_t seed = 0;
  fs::path out_dir;
  bool write_features = true;
  unsigned threads = 0;
};

struct CoverOptions {
  GraphInput graph;
  std::string code = "size";
  SelectionEnd end = SelectionEnd::top;
  double fraction = 0.9;
  std::optional<fs::path> out;
  unsigned threads = 0;
};

void print_registry(std::ostream& out);
std::string registry_help();

void run_params(const ParamsOptions& options);
void run_select(const SelectOptions& options);
void run_featurize(const FeaturizeOptions& options);
void run_simulate(const SimulateOptions& options);
void run_classify(const ClassifyOptions& options);
void run_experiment(const ExperimentOptions& options);
// Baseline and one validation mode on the same data, side by side.
void run_validate(const ExperimentOptions& options);
void run_cover(const CoverOptions& options, std::ostream& out);

std::string to_string(SelectionEnd end);
std::string to_string(ValidationMode mode);

}  // namespace nbdyn::cli
