#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "nbdyn/csv.hpp"
#include "nbdyn/errors.hpp"
#include "nbdyn/parallel.hpp"
#include "nbdyn/params.hpp"
#include "nbdyn/rng.hpp"
#include "report.hpp"

namespace nbdyn::cli {
namespace {

Digraph load_graph(const GraphInput& in) { return load_edge_list(in.path, in.n_vertices); }

Json graph_json(const GraphInput& in) {
  Json j;
  j["path"] = in.path.string();
  j["n_vertices"] = in.n_vertices ? Json(*in.n_vertices) : Json(nullptr);
  return j;
}

Json bins_json(const BinSpec& b) { return {{"start", b.start}, {"end", b.end}, {"bins", b.bins}}; }

bool is_stochastic(ValidationMode mode) {
  return mode == ValidationMode::random_selection ||
         mode == ValidationMode::degree_matched_subgraphs ||
         mode == ValidationMode::fake_neighbourhoods || mode == ValidationMode::shuffled_activity;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::vector<Vertex> load_permutation(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::vector<Vertex> sigma;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    unsigned long long v = 0;
    if (!(fields >> v) || !(fields >> std::ws).eof()) {
      throw ParseError("expected one vertex id per line", line_no);
    }
    sigma.push_back(static_cast<Vertex>(v));
  }
  inverse_permutation(sigma);  // validates
  return sigma;
}

void save_permutation(const fs::path& path, std::span<const Vertex> sigma) {
  auto out = open_output(path);
  for (Vertex v : sigma) out << v << '\n';
}

std::vector<ParameterCode> codes_or_primary(const std::vector<std::string>& given) {
  std::vector<ParameterCode> codes;
  if (given.empty()) {
    for (auto code : primary_parameter_codes()) codes.push_back(parse_parameter_code(code));
  } else {
    for (const auto& code : given) {
      for (auto& c : parse_parameter_codes(code)) codes.push_back(std::move(c));
    }
  }
  return codes;
}

std::vector<std::string> code_names(const std::vector<ParameterCode>& codes) {
  std::vector<std::string> names;
  for (const auto& c : codes) names.push_back(c.to_string());
  return names;
}

struct SimulatedData {
  Digraph graph;
  BinaryDynamicsSet dynamics;
  StimulusProtocol protocol;
  LifConfig lif;
};

SimulatedData simulate_data(std::optional<Digraph> graph, const SimulationSettings& s,
                            std::uint64_t seed) {
  SimulatedData d;
  d.graph = graph ? std::move(*graph)
                  : erdos_renyi(s.n_vertices, s.p, derive_seed(seed, kGraphStream));
  d.protocol.n_classes = s.classes;
  d.protocol.repeats = s.repeats;
  d.protocol.noise_strength = s.noise;
  d.protocol.receptors = random_receptors(d.graph.n_vertices(), s.classes, s.receptors,
                                          derive_seed(seed, kReceptorStream));
  d.lif = LifConfig::for_graph(d.graph);
  d.lif.stimulus_weight = s.stimulus_weight;
  d.dynamics = simulate(d.graph, d.protocol, d.lif, derive_seed(seed, kSimulationStream));
  return d;
}

Json simulation_json(const SimulationSettings& s, bool generated_graph) {
  Json j;
  if (generated_graph) {
    j["n_vertices"] = s.n_vertices;
    j["p"] = s.p;
  }
  j["classes"] = s.classes;
  j["repeats"] = s.repeats;
  j["receptors"] = s.receptors;
  j["noise"] = s.noise;
  j["stimulus_weight"] = s.stimulus_weight;
  return j;
}

Json protocol_json(const StimulusProtocol& p, const LifConfig& lif) {
  Json j;
  j["n_classes"] = p.n_classes;
  j["repeats"] = p.repeats;
  j["window_ms"] = p.window_ms;
  j["stim_duration_ms"] = p.stim_duration_ms;
  j["onset_jitter_ms"] = p.onset_jitter_ms;
  j["strength_min"] = p.strength_min;
  j["strength_max"] = p.strength_max;
  j["noise_strength"] = p.noise_strength;
  j["exclusion_ms"] = p.exclusion_ms;
  Json receptors = Json::array();
  for (const auto& r : p.receptors) receptors.push_back(std::vector<Vertex>(r.begin(), r.end()));
  j["receptors"] = receptors;
  j["lif"] = {{"tau_ms", lif.tau_ms},       {"threshold", lif.threshold},
              {"reset", lif.reset},         {"weight", lif.weight},
              {"stimulus_weight", lif.stimulus_weight}, {"step_ms", lif.step_ms}};
  return j;
}

Json classifier_json(const ClassifierSettings& c) {
  Json j;
  j["train_fraction"] = c.train_fraction;
  j["folds"] = c.folds;
  j["c"] = c.c;
  j["gamma"] = c.gamma ? Json(*c.gamma) : Json("scale");
  j["label_control"] = c.label_control;
  j["centroid"] = c.centroid;
  return j;
}

// Split, train, test, cross-validate and the optional controls.
Json evaluate_dataset(const Dataset& ds, const ClassifierSettings& settings, std::uint64_t seed,
                      unsigned threads) {
  SvmOptions svm;
  svm.c = settings.c;
  svm.gamma = settings.gamma;
  svm.threads = threads;
  const auto split_seed = derive_seed(seed, kSplitStream);
  const auto [train, test] = split(ds, settings.train_fraction, split_seed);
  Json j = to_json(evaluate(train_svm(train, svm), test));
  if (settings.folds > 0) {
    j["cv"] = to_json(cross_validate(ds, settings.folds, derive_seed(seed, kFoldStream), svm));
  }
  if (settings.label_control) {
    Dataset shuffled = ds;
    std::mt19937_64 rng(derive_seed(seed, kControlStream));
    std::shuffle(shuffled.labels.begin(), shuffled.labels.end(), rng);
    const auto [ctrain, ctest] = split(shuffled, settings.train_fraction, split_seed);
    j["label_control_accuracy"] = evaluate(train_svm(ctrain, svm), ctest).accuracy;
  }
  if (settings.centroid) j["centroid_accuracy"] = nearest_centroid(train, test).accuracy;
  return j;
}

std::string features_name(SelectionEnd end, const ParameterCode& p, const ParameterCode& q,
                          std::optional<std::size_t> iteration) {
  std::string name = "features_" + to_string(end) + "_" + p.to_string() + "_" + q.to_string();
  if (iteration) name += "_r" + std::to_string(*iteration);
  return name + ".csv";
}

struct CellInput {
  const Digraph& graph;
  const BinaryDynamicsSet& dynamics;
  const ExperimentOptions& options;
  const BinSpec& bins;
  std::optional<fs::path> feature_dir;
};

// One (selection, feature, end) entry of the accuracy grid.
Json run_cell(const CellInput& in, ValidationMode mode, SelectionEnd end, const ParameterCode& p,
              const ParameterCode& q) {
  const auto& opt = in.options;
  SummaryRequest req;
  req.selection = p;
  req.feature = q;
  req.m = opt.m;
  req.end = end;
  req.bins = in.bins;
  req.mode = mode;
  req.seed = derive_seed(opt.seed, kSummaryStream);
  req.threads = opt.threads;

  Json cell;
  cell["selection"] = p.to_string();
  cell["feature"] = q.to_string();
  cell["end"] = to_string(end);
  cell["validation"] = to_string(mode);

  if (mode == ValidationMode::random_selection) {
    ClassifierSettings settings = opt.classifier;
    settings.folds = 0;
    std::vector<double> samples;
    for (std::size_t it = 0; it < kRandomSelectionIterations; ++it) {
      req.iteration = it;
      const auto summaries = vector_summaries(in.graph, in.dynamics, req);
      if (in.feature_dir) {
        save_features(*in.feature_dir / features_name(end, p, q, it), summaries.matrices);
      }
      const Json r = evaluate_dataset(Dataset::from_matrices(summaries.matrices), settings,
                                      opt.seed, opt.threads);
      samples.push_back(r["accuracy"].get<double>());
    }
    cell["accuracy"] = std::accumulate(samples.begin(), samples.end(), 0.0) /
                       static_cast<double>(samples.size());
    cell["min"] = *std::min_element(samples.begin(), samples.end());
    cell["max"] = *std::max_element(samples.begin(), samples.end());
    cell["samples"] = samples;
    return cell;
  }

  const auto summaries = vector_summaries(in.graph, in.dynamics, req);
  if (in.feature_dir) {
    save_features(*in.feature_dir / features_name(end, p, q, std::nullopt), summaries.matrices);
  }
  Json r = evaluate_dataset(Dataset::from_matrices(summaries.matrices), opt.classifier, opt.seed,
                            opt.threads);
  cell["accuracy"] = r["accuracy"];
  if (r.contains("cv")) {
    cell["min"] = r["cv"]["min"];
    cell["max"] = r["cv"]["max"];
  }
  cell["centres"] = summaries.centres;
  cell["report"] = std::move(r);
  return cell;
}

struct ExperimentData {
  Digraph graph;
  BinaryDynamicsSet dynamics;
  BinSpec bins;
  std::vector<ParameterCode> selection;
  std::vector<ParameterCode> feature;
};

ExperimentData prepare_experiment(const ExperimentOptions& opt, Json& config, Json& paths) {
  ExperimentData d;
  // Every code is checked before any work starts.
  d.selection = codes_or_primary(opt.selection);
  d.feature = codes_or_primary(opt.feature);
  if (opt.m == 0) throw ValidationError("--m must be positive");
  fs::create_directories(opt.out_dir);
  paths["out_dir"] = opt.out_dir.string();
  if (opt.graph) paths["graph"] = graph_json(*opt.graph);

  if (opt.simulate) {
    if (opt.spikes) throw ValidationError("--simulate and --spikes are mutually exclusive");
    std::optional<Digraph> g;
    if (opt.graph) g = load_graph(*opt.graph);
    auto sim = simulate_data(std::move(g), opt.sim, opt.seed);
    config["source"] = "simulated";
    config["simulation"] = simulation_json(opt.sim, !opt.graph);
    const Json prov = provenance("experiment", {{"protocol", protocol_json(sim.protocol, sim.lif)}},
                                 opt.seed);
    save_edge_list(opt.out_dir / "graph.edges", sim.graph);
    save_sidecar(opt.out_dir / "graph.edges", prov);
    save_spikes(opt.out_dir / "spikes.csv", sim.dynamics);
    save_sidecar(opt.out_dir / "spikes.csv", prov);
    d.graph = std::move(sim.graph);
    d.dynamics = std::move(sim.dynamics);
  } else {
    if (!opt.graph || !opt.spikes) {
      throw ValidationError("experiment needs --graph and --spikes, or --simulate");
    }
    config["source"] = "files";
    paths["spikes"] = opt.spikes->string();
    d.graph = load_graph(*opt.graph);
    d.dynamics = load_spikes(*opt.spikes);
  }
  d.dynamics.validate(d.graph.n_vertices());
  if (d.dynamics.trials.empty()) throw ValidationError("no trials to classify");
  d.bins = opt.bins.value_or(opt.simulate ? BinSpec::simulator_default()
                                          : BinSpec::microcircuit_default());
  d.bins.validate();

  config["selection"] = code_names(d.selection);
  config["feature"] = code_names(d.feature);
  Json ends = Json::array();
  for (auto e : opt.ends) ends.push_back(to_string(e));
  config["ends"] = ends;
  config["m"] = opt.m;
  config["bins"] = bins_json(d.bins);
  config["classifier"] = classifier_json(opt.classifier);
  config["seed"] = opt.seed;
  return d;
}

void write_grids(const fs::path& dir, const ExperimentData& d, const ExperimentOptions& opt,
                 const Json& cells) {
  auto cells_csv = open_output(dir / "cells.csv");
  cells_csv << "end,selection,feature,accuracy,min,max\n";
  auto num = [](const Json& cell, const char* key) {
    return cell.contains(key) ? format_double(cell[key].get<double>()) : std::string();
  };
  for (const Json& cell : cells) {
    cells_csv << cell["end"].get<std::string>() << ',' << cell["selection"].get<std::string>()
              << ',' << cell["feature"].get<std::string>() << ',' << num(cell, "accuracy") << ','
              << num(cell, "min") << ',' << num(cell, "max") << '\n';
  }
  std::size_t index = 0;
  for (auto end : opt.ends) {
    auto grid = open_output(dir / ("grid_" + to_string(end) + ".csv"));
    grid << "selection";
    for (const auto& q : d.feature) grid << ',' << q.to_string();
    grid << '\n';
    for (const auto& p : d.selection) {
      grid << p.to_string();
      for (std::size_t k = 0; k < d.feature.size(); ++k) grid << ',' << num(cells[index++], "accuracy");
      grid << '\n';
    }
  }
}

}  // namespace

std::string to_string(SelectionEnd end) { return end == SelectionEnd::top ? "top" : "bottom"; }

std::string to_string(ValidationMode mode) {
  switch (mode) {
    case ValidationMode::none: return "none";
    case ValidationMode::random_selection: return "random_selection";
    case ValidationMode::centres_only: return "centres_only";
    case ValidationMode::degree_matched_subgraphs: return "degree_matched";
    case ValidationMode::fake_neighbourhoods: return "fake_neighbourhoods";
    case ValidationMode::shuffled_activity: return "shuffled_activity";
  }
  return "none";
}

std::string registry_help() {
  std::ostringstream out;
  out << "Parameter codes:\n";
  print_registry(out);
  return out.str();
}

void print_registry(std::ostream& out) {
  for (const auto& info : parameter_registry()) {
    std::string flags;
    if (info.centre_dependent) flags += " [centre]";
    if (info.default_variant != GapVariant::none) {
      flags += info.default_variant == GapVariant::high ? " [gap: high; _high/_low]"
                                                        : " [gap: low; _high/_low]";
    }
    out << "  " << std::left << std::setw(10) << info.code << info.description << flags << '\n';
  }
}

void run_params(const ParamsOptions& opt) {
  const auto codes = parse_parameter_codes(opt.codes);
  if (codes.empty()) throw RegistryError("no parameter codes given");
  if (opt.chunk == 0) throw ValidationError("--chunk must be positive");
  const Digraph g = load_graph(opt.graph);
  const std::size_t n = g.n_vertices();
  const std::size_t begin = opt.begin.value_or(0);
  const std::size_t end = opt.end.value_or(n);
  if (begin > end || end > n) {
    throw RangeError("vertex range [" + std::to_string(begin) + ", " + std::to_string(end) +
                     ") outside 0.." + std::to_string(n));
  }

  Json config;
  config["graph"] = graph_json(opt.graph);
  config["codes"] = code_names(codes);
  config["begin"] = begin;
  config["end"] = end;
  const fs::path progress = opt.out.string() + ".progress";
  Json state = {{"config", config},
                {"n_vertices", n},
                {"n_edges", g.n_edges()},
                {"next", begin},
                {"bytes", 0}};

  std::size_t next = begin;
  std::ofstream out;
  if (opt.resume && fs::exists(progress)) {
    std::ifstream in(progress);
    const Json saved = Json::parse(in);
    if (saved["config"] != config || saved["n_vertices"] != n || saved["n_edges"] != g.n_edges()) {
      throw ValidationError("progress file " + progress.string() + " belongs to another run");
    }
    next = saved["next"].get<std::size_t>();
    fs::resize_file(opt.out, saved["bytes"].get<std::uintmax_t>());
    out.open(opt.out, std::ios::binary | std::ios::app);
  } else {
    out = open_output(opt.out);
    out << "vertex";
    for (const auto& c : codes) out << ',' << c.to_string();
    out << '\n';
  }
  if (!out) throw ValidationError("cannot write " + opt.out.string());

  std::vector<double> values;
  while (next < end) {
    const std::size_t stop = std::min(end, next + opt.chunk);
    values.assign((stop - next) * codes.size(), 0.0);
    parallel_for(stop - next, opt.threads, [&](std::size_t i) {
      const Neighbourhood nb = closed_neighbourhood(g, static_cast<Vertex>(next + i));
      for (std::size_t c = 0; c < codes.size(); ++c) {
        values[i * codes.size() + c] = evaluate(codes[c], nb);
      }
    });
    for (std::size_t i = 0; i < stop - next; ++i) {
      out << next + i;
      for (std::size_t c = 0; c < codes.size(); ++c) {
        out << ',' << format_double(values[i * codes.size() + c]);
      }
      out << '\n';
    }
    out.flush();
    if (!out) throw ValidationError("failed writing " + opt.out.string());
    next = stop;
    state["next"] = next;
    state["bytes"] = static_cast<std::uintmax_t>(out.tellp());
    const fs::path tmp = progress.string() + ".tmp";
    save_json(tmp, state);
    fs::rename(tmp, progress);
  }
  out.close();
  fs::remove(progress);
  save_sidecar(opt.out, provenance("params", config, std::nullopt));
}

void run_select(const SelectOptions& opt) {
  const auto code = parse_parameter_code(opt.code);
  const Digraph g = load_graph(opt.graph);
  const auto values = neighbourhood_values(g, code, opt.threads);
  const auto order = rank_vertices(values, opt.end);
  if (opt.m > order.size()) {
    throw RangeError("--m " + std::to_string(opt.m) + " exceeds the vertex count " +
                     std::to_string(order.size()));
  }
  auto out = open_output(opt.out);
  out << "rank,vertex,value\n";
  for (std::size_t r = 0; r < opt.m; ++r) {
    out << r << ',' << order[r] << ',' << format_double(values[order[r]]) << '\n';
  }
  Json config;
  config["graph"] = graph_json(opt.graph);
  config["code"] = code.to_string();
  config["m"] = opt.m;
  config["end"] = to_string(opt.end);
  save_sidecar(opt.out, provenance("select", config, std::nullopt));
}

void run_featurize(const FeaturizeOptions& opt) {
  const auto selection = parse_parameter_code(opt.selection);
  const auto feature = parse_parameter_code(opt.feature);
  const bool shuffled = opt.mode == ValidationMode::shuffled_activity;
  if ((opt.permutation || opt.save_permutation || opt.save_spikes) && !shuffled) {
    throw ValidationError("permutation options need --validation shuffled_activity");
  }
  if (opt.inverse && !opt.permutation) throw ValidationError("--inverse needs --permutation");
  if (is_stochastic(opt.mode) && !opt.seed && !(shuffled && opt.permutation)) {
    throw ValidationError("--seed is required for --validation " + to_string(opt.mode));
  }

  const Digraph g = load_graph(opt.graph);
  const BinaryDynamicsSet dynamics = load_spikes(opt.spikes);
  dynamics.validate(g.n_vertices());

  SummaryRequest req;
  req.selection = selection;
  req.feature = feature;
  req.m = opt.m;
  req.end = opt.end;
  req.bins = opt.bins;
  req.mode = opt.mode;
  req.seed = derive_seed(opt.seed.value_or(0), kSummaryStream);
  req.iteration = opt.iteration;
  req.threads = opt.threads;
  if (opt.permutation) {
    auto sigma = load_permutation(*opt.permutation);
    req.permutation = opt.inverse ? inverse_permutation(sigma) : std::move(sigma);
  }
  const auto summaries = vector_summaries(g, dynamics, req);

  save_features(opt.out, summaries.matrices);
  Json config;
  config["graph"] = graph_json(opt.graph);
  config["spikes"] = opt.spikes.string();
  config["selection"] = selection.to_string();
  config["feature"] = feature.to_string();
  config["m"] = opt.m;
  config["end"] = to_string(opt.end);
  config["bins"] = bins_json(opt.bins);
  config["validation"] = to_string(opt.mode);
  config["iteration"] = opt.iteration;
  config["permutation"] = opt.permutation ? Json(opt.permutation->string()) : Json(nullptr);
  config["inverse"] = opt.inverse;
  config["centres"] = summaries.centres;
  const Json prov = provenance("featurize", config, opt.seed);
  save_sidecar(opt.out, prov);
  if (opt.save_permutation) {
    save_permutation(*opt.save_permutation, summaries.permutation);
    save_sidecar(*opt.save_permutation, prov);
  }
  if (opt.save_spikes) {
    save_spikes(*opt.save_spikes, shuffle_activity(dynamics, summaries.permutation));
    save_sidecar(*opt.save_spikes, prov);
  }
}

void run_simulate(const SimulateOptions& opt) {
  std::optional<Digraph> g;
  if (opt.graph) g = load_graph(*opt.graph);
  const auto sim = simulate_data(std::move(g), opt.sim, opt.seed);
  fs::create_directories(opt.out_dir);
  Json config;
  config["graph"] = opt.graph ? graph_json(*opt.graph) : Json(nullptr);
  config["simulation"] = simulation_json(opt.sim, !opt.graph);
  config["protocol"] = protocol_json(sim.protocol, sim.lif);
  const Json prov = provenance("simulate", config, opt.seed);
  save_edge_list(opt.out_dir / "graph.edges", sim.graph);
  save_sidecar(opt.out_dir / "graph.edges", prov);
  save_spikes(opt.out_dir / "spikes.csv", sim.dynamics);
  save_sidecar(opt.out_dir / "spikes.csv", prov);
}

void run_classify(const ClassifyOptions& opt) {
  const Dataset ds = load_features(opt.features);
  ds.validate();
  const Json report = evaluate_dataset(ds, opt.classifier, opt.seed, opt.threads);
  if (opt.out.has_parent_path()) fs::create_directories(opt.out.parent_path());
  save_json(opt.out, report);
  Json config;
  config["features"] = opt.features.string();
  config["classifier"] = classifier_json(opt.classifier);
  save_sidecar(opt.out, provenance("classify", config, opt.seed));
}

void run_experiment(const ExperimentOptions& opt) {
  Json config, paths;
  const ExperimentData d = prepare_experiment(opt, config, paths);
  config["validation"] = to_string(opt.mode);
  const CellInput in{d.graph, d.dynamics, opt, d.bins,
                     opt.write_features ? std::optional<fs::path>(opt.out_dir) : std::nullopt};
  Json cells = Json::array();
  for (auto end : opt.ends) {
    for (const auto& p : d.selection) {
      for (const auto& q : d.feature) cells.push_back(run_cell(in, opt.mode, end, p, q));
    }
  }
  Json report;
  report["config"] = config;
  report["cells"] = cells;
  save_json(opt.out_dir / "report.json", report);
  Json full = config;
  full["paths"] = paths;
  save_sidecar(opt.out_dir / "report.json", provenance("experiment", full, opt.seed));
  write_grids(opt.out_dir, d, opt, cells);
}

void run_validate(const ExperimentOptions& opt) {
  if (opt.mode == ValidationMode::none) throw ValidationError("validate needs a --mode");
  Json config, paths;
  const ExperimentData d = prepare_experiment(opt, config, paths);
  config["validation"] = to_string(opt.mode);
  std::optional<fs::path> baseline_dir, mode_dir;
  if (opt.write_features) {
    baseline_dir = opt.out_dir / "baseline";
    mode_dir = opt.out_dir / to_string(opt.mode);
    fs::create_directories(*baseline_dir);
    fs::create_directories(*mode_dir);
  }
  const CellInput baseline{d.graph, d.dynamics, opt, d.bins, baseline_dir};
  const CellInput transformed{d.graph, d.dynamics, opt, d.bins, mode_dir};
  Json cells = Json::array();
  for (auto end : opt.ends) {
    for (const auto& p : d.selection) {
      for (const auto& q : d.feature) {
        Json cell;
        cell["selection"] = p.to_string();
        cell["feature"] = q.to_string();
        cell["end"] = to_string(end);
        cell["baseline"] = run_cell(baseline, ValidationMode::none, end, p, q);
        cell["validation"] = run_cell(transformed, opt.mode, end, p, q);
        cells.push_back(std::move(cell));
      }
    }
  }
  Json report;
  report["config"] = config;
  report["cells"] = cells;
  save_json(opt.out_dir / "validate.json", report);
  Json full = config;
  full["paths"] = paths;
  save_sidecar(opt.out_dir / "validate.json", provenance("validate", full, opt.seed));
}

void run_cover(const CoverOptions& opt, std::ostream& out) {
  const auto code = parse_parameter_code(opt.code);
  if (!(opt.fraction > 0.0 && opt.fraction <= 1.0)) {
    throw DomainError("--fraction must lie in (0, 1]");
  }
  const Digraph g = load_graph(opt.graph);
  const auto values = neighbourhood_values(g, code, opt.threads);
  const auto order = rank_vertices(values, opt.end);
  const std::size_t count = greedy_cover_count(g, order, opt.fraction);
  Json result;
  result["code"] = code.to_string();
  result["end"] = to_string(opt.end);
  result["fraction"] = opt.fraction;
  result["n_vertices"] = g.n_vertices();
  result["n_edges"] = g.n_edges();
  result["reached"] = count <= g.n_vertices();
  result["centres"] = count;
  out << result.dump(2) << '\n';
  if (opt.out) {
    save_json(*opt.out, result);
    Json config;
    config["graph"] = graph_json(opt.graph);
    config["code"] = code.to_string();
    config["end"] = to_string(opt.end);
    config["fraction"] = opt.fraction;
    save_sidecar(*opt.out, provenance("cover", config, std::nullopt));
  }
}

}  // namespace nbdyn::cli
