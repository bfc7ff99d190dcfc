#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbdyn/classify.hpp"
#include "nbdyn/pipeline.hpp"

namespace nbdyn {

// Shortest text that parses back to exactly x.
std::string format_double(double x);

// Splits one CSV line on commas. No quoting.
std::vector<std::string_view> split_csv_line(std::string_view line);

// Spike file: header `trial,label,vertex,time_ms`, one row per spike. A row
// with empty vertex and time declares a trial without spikes. Rows of one
// trial need not be contiguous; trials are returned in ascending id order.
BinaryDynamicsSet read_spikes(std::istream& in);
BinaryDynamicsSet load_spikes(const std::filesystem::path& path);
void write_spikes(std::ostream& out, const BinaryDynamicsSet& dynamics);
void save_spikes(const std::filesystem::path& path, const BinaryDynamicsSet& dynamics);

// Feature file: header `label,v_1,...,v_F`, one flattened matrix per row.
void write_features(std::ostream& out, std::span<const FeatureMatrix> matrices);
void save_features(const std::filesystem::path& path, std::span<const FeatureMatrix> matrices);
Dataset read_features(std::istream& in);
Dataset load_features(const std::filesystem::path& path);

}  // namespace nbdyn
