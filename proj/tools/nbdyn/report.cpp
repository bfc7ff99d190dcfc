#include "report.hpp"

#include <Eigen/Core>
#include <fstream>

#include "nbdyn/errors.hpp"

#ifndef NBDYN_VERSION
#define NBDYN_VERSION "unknown"
#endif

namespace nbdyn::cli {

Json to_json(const AccuracyReport& report) {
  Json j;
  j["accuracy"] = report.accuracy;
  j["classes"] = report.classes;
  j["per_class"] = report.per_class;
  j["support"] = report.support;
  j["confusion"] = report.confusion;
  return j;
}

Json to_json(const CrossValidation& cv) {
  Json j;
  j["folds"] = cv.folds;
  j["mean"] = cv.mean;
  j["min"] = cv.min;
  j["max"] = cv.max;
  return j;
}

Json provenance(std::string_view command, const Json& config, std::optional<std::uint64_t> seed) {
  Json j;
  j["tool"] = "nbdyn";
  j["version"] = NBDYN_VERSION;
  j["command"] = command;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["config"] = config;
  j["libraries"] = {
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
  };
  return j;
}

void save_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw ValidationError("failed writing " + path.string());
}

void save_sidecar(const std::filesystem::path& output, const Json& provenance) {
  save_json(output.string() + ".provenance.json", provenance);
}

}  // namespace nbdyn::cli
