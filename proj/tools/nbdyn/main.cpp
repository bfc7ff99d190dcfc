#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "nbdyn/errors.hpp"

namespace {

using namespace nbdyn;
using namespace nbdyn::cli;

const std::map<std::string, SelectionEnd> kEnds{{"top", SelectionEnd::top},
                                                {"bottom", SelectionEnd::bottom}};

const std::map<std::string, ValidationMode> kModes{
    {"none", ValidationMode::none},
    {"random_selection", ValidationMode::random_selection},
    {"centres_only", ValidationMode::centres_only},
    {"degree_matched", ValidationMode::degree_matched_subgraphs},
    {"fake_neighbourhoods", ValidationMode::fake_neighbourhoods},
    {"shuffled_activity", ValidationMode::shuffled_activity},
};

void add_graph(CLI::App* app, GraphInput& g, bool required = true) {
  auto* opt = app->add_option("--graph", g.path, "Edge list, one 'src dst' pair per line");
  if (required) opt->required();
  opt->check(CLI::ExistingFile);
  app->add_option("--vertices", g.n_vertices, "Vertex count (default: max id + 1)");
}

void add_threads(CLI::App* app, unsigned& threads) {
  app->add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();
}

void add_end(CLI::App* app, SelectionEnd& end) {
  app->add_option("--end", end, "Rank end: top or bottom")
      ->transform(CLI::CheckedTransformer(kEnds, CLI::ignore_case))
      ->default_str("top");
}

void add_bins(CLI::App* app, BinSpec& bins) {
  app->add_option("--bin-start", bins.start, "Start of the binned interval (ms)")->capture_default_str();
  app->add_option("--bin-end", bins.end, "End of the binned interval (ms)")->capture_default_str();
  app->add_option("--bins", bins.bins, "Number of time bins")->capture_default_str();
}

void add_simulation(CLI::App* app, SimulationSettings& sim) {
  app->add_option("--n", sim.n_vertices, "Vertices of the generated ER graph")->capture_default_str();
  app->add_option("--p", sim.p, "Edge probability of the generated ER graph")->capture_default_str();
  app->add_option("--classes", sim.classes, "Stimulus classes")->capture_default_str();
  app->add_option("--repeats", sim.repeats, "Trials per class")->capture_default_str();
  app->add_option("--receptors", sim.receptors, "Receptor vertices per class")->capture_default_str();
  app->add_option("--noise", sim.noise, "Standard deviation of the noise current")->capture_default_str();
  app->add_option("--stimulus-weight", sim.stimulus_weight, "Receptor current per unit strength")
      ->capture_default_str();
}

void add_classifier(CLI::App* app, ClassifierSettings& c) {
  app->add_option("--train-fraction", c.train_fraction, "Training share of each class")
      ->capture_default_str();
  app->add_option("--folds", c.folds, "Cross-validation folds, 0 to skip")->capture_default_str();
  app->add_option("--c", c.c, "SVM box constraint")->capture_default_str();
  app->add_option("--gamma", c.gamma, "RBF gamma (default: scale)");
  app->add_flag("--label-control", c.label_control, "Also report accuracy with shuffled labels");
  app->add_flag("--centroid", c.centroid, "Also report nearest-centroid accuracy");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighbourhood featurisation of binary dynamics on digraphs"};
  app.footer(registry_help());
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  ParamsOptions params;
  auto* params_cmd = app.add_subcommand("params", "Parameter table over closed neighbourhoods");
  add_graph(params_cmd, params.graph, false);
  params_cmd->add_option("--codes", params.codes, "Comma-separated parameter codes");
  params_cmd->add_option("--out", params.out, "Output CSV");
  params_cmd->add_option("--begin", params.begin, "First vertex of this shard");
  params_cmd->add_option("--end", params.end, "One past the last vertex of this shard");
  params_cmd->add_option("--chunk", params.chunk, "Vertices per checkpoint")->capture_default_str();
  params_cmd->add_flag("--resume", params.resume, "Continue from the progress file");
  add_threads(params_cmd, params.threads);
  auto* params_list = params_cmd->add_subcommand("list", "Print the parameter registry");

  SelectOptions select;
  auto* select_cmd = app.add_subcommand("select", "Rank neighbourhoods and keep the top or bottom M");
  add_graph(select_cmd, select.graph);
  select_cmd->add_option("--code", select.code, "Selection parameter")->capture_default_str();
  select_cmd->add_option("--m", select.m, "Neighbourhoods to keep")->capture_default_str();
  add_end(select_cmd, select.end);
  select_cmd->add_option("--out", select.out, "Output CSV")->required();
  add_threads(select_cmd, select.threads);

  FeaturizeOptions feat;
  std::uint64_t feat_seed = 0;
  auto* feat_cmd = app.add_subcommand("featurize", "Vector summaries of every trial");
  add_graph(feat_cmd, feat.graph);
  feat_cmd->add_option("--spikes", feat.spikes, "Spike CSV")->required()->check(CLI::ExistingFile);
  feat_cmd->add_option("--out", feat.out, "Output feature CSV")->required();
  feat_cmd->add_option("--selection", feat.selection, "Selection parameter")->capture_default_str();
  feat_cmd->add_option("--feature", feat.feature, "Feature parameter")->capture_default_str();
  feat_cmd->add_option("--m", feat.m, "Neighbourhoods per trial")->capture_default_str();
  add_end(feat_cmd, feat.end);
  add_bins(feat_cmd, feat.bins);
  feat_cmd->add_option("--validation", feat.mode, "Validation mode")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
      ->default_str("none");
  auto* feat_seed_opt = feat_cmd->add_option("--seed", feat_seed, "Seed for stochastic modes");
  feat_cmd->add_option("--iteration", feat.iteration, "random_selection repeat index");
  feat_cmd->add_option("--permutation", feat.permutation, "Vertex permutation file");
  feat_cmd->add_flag("--inverse", feat.inverse, "Apply the inverse of --permutation");
  feat_cmd->add_option("--save-permutation", feat.save_permutation, "Write the permutation used");
  feat_cmd->add_option("--save-spikes", feat.save_spikes, "Write the shuffled spikes");
  add_threads(feat_cmd, feat.threads);

  SimulateOptions sim;
  GraphInput sim_graph;
  auto* sim_cmd = app.add_subcommand("simulate", "LIF network driven by an eight-class stimulus protocol");
  add_graph(sim_cmd, sim_graph, false);
  add_simulation(sim_cmd, sim.sim);
  sim_cmd->add_option("--seed", sim.seed, "Run seed")->required();
  sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory")->required();

  ClassifyOptions cls;
  auto* cls_cmd = app.add_subcommand("classify", "RBF SVM on a feature CSV");
  cls_cmd->add_option("--features", cls.features, "Feature CSV")->required()->check(CLI::ExistingFile);
  cls_cmd->add_option("--out", cls.out, "Report JSON")->required();
  cls_cmd->add_option("--seed", cls.seed, "Split and fold seed")->required();
  add_classifier(cls_cmd, cls.classifier);
  add_threads(cls_cmd, cls.threads);

  ExperimentOptions exp;
  GraphInput exp_graph;
  std::optional<double> exp_bin_start, exp_bin_end;
  std::optional<std::size_t> exp_bins;
  auto setup_experiment = [&](CLI::App* cmd, bool validate) {
    add_graph(cmd, exp_graph, false);
    cmd->add_option("--spikes", exp.spikes, "Spike CSV")->check(CLI::ExistingFile);
    cmd->add_flag("--simulate", exp.simulate, "Simulate the dynamics first");
    add_simulation(cmd, exp.sim);
    cmd->add_option("--selection", exp.selection, "Selection codes (default: main table)")
        ->delimiter(',');
    cmd->add_option("--feature", exp.feature, "Feature codes (default: main table)")->delimiter(',');
    cmd->add_option("--end", exp.ends, "Rank ends, comma-separated")
        ->delimiter(',')
        ->transform(CLI::CheckedTransformer(kEnds, CLI::ignore_case))
        ->default_str("top");
    cmd->add_option("--m", exp.m, "Neighbourhoods per trial")->capture_default_str();
    cmd->add_option("--bin-start", exp_bin_start, "Start of the binned interval (ms)");
    cmd->add_option("--bin-end", exp_bin_end, "End of the binned interval (ms)");
    cmd->add_option("--bins", exp_bins, "Number of time bins");
    auto* mode = cmd->add_option(validate ? "--mode" : "--validation", exp.mode, "Validation mode")
                     ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
    if (validate) mode->required();
    add_classifier(cmd, exp.classifier);
    cmd->add_option("--seed", exp.seed, "Run seed")->required();
    cmd->add_option("--out-dir", exp.out_dir, "Output directory")->required();
    cmd->add_flag("!--no-features", exp.write_features, "Skip writing feature CSVs");
    add_threads(cmd, exp.threads);
  };
  auto* exp_cmd = app.add_subcommand("experiment", "Selection x feature accuracy grid");
  setup_experiment(exp_cmd, false);
  auto* val_cmd = app.add_subcommand("validate", "Baseline versus one validation mode");
  setup_experiment(val_cmd, true);

  CoverOptions cover;
  auto* cover_cmd = app.add_subcommand("cover", "Centres needed for a greedy neighbourhood cover");
  add_graph(cover_cmd, cover.graph);
  cover_cmd->add_option("--code", cover.code, "Ranking parameter")->capture_default_str();
  add_end(cover_cmd, cover.end);
  cover_cmd->add_option("--fraction", cover.fraction, "Share of vertices to cover")->capture_default_str();
  cover_cmd->add_option("--out", cover.out, "Also write the result JSON here");
  add_threads(cover_cmd, cover.threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (params_cmd->parsed()) {
      if (params_list->parsed()) {
        print_registry(std::cout);
        return 0;
      }
      if (params.graph.path.empty() || params.codes.empty() || params.out.empty()) {
        throw ValidationError("params needs --graph, --codes and --out (or the list subcommand)");
      }
      run_params(params);
    } else if (select_cmd->parsed()) {
      run_select(select);
    } else if (feat_cmd->parsed()) {
      if (feat_seed_opt->count() > 0) feat.seed = feat_seed;
      run_featurize(feat);
    } else if (sim_cmd->parsed()) {
      if (!sim_graph.path.empty()) sim.graph = sim_graph;
      run_simulate(sim);
    } else if (cls_cmd->parsed()) {
      run_classify(cls);
    } else if (exp_cmd->parsed() || val_cmd->parsed()) {
      if (!exp_graph.path.empty()) exp.graph = exp_graph;
      BinSpec bins = exp.simulate ? BinSpec::simulator_default() : BinSpec::microcircuit_default();
      if (exp_bin_start) bins.start = *exp_bin_start;
      if (exp_bin_end) bins.end = *exp_bin_end;
      if (exp_bins) bins.bins = *exp_bins;
      exp.bins = bins;
      if (exp_cmd->parsed()) {
        run_experiment(exp);
      } else {
        run_validate(exp);
      }
    } else if (cover_cmd->parsed()) {
      run_cover(cover, std::cout);
    }
  } catch (const nbdyn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
