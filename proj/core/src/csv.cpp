#include "nbdyn/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "nbdyn/errors.hpp"

namespace nbdyn {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what, std::size_t line) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'", line);
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format number");
  return {buf, ptr};
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

BinaryDynamicsSet read_spikes(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::map<std::size_t, Trial> trials;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_csv_line(body);
    if (!have_header) {
      if (fields.size() != 4 || fields[0] != "trial" || fields[1] != "label" ||
          fields[2] != "vertex" || fields[3] != "time_ms") {
        throw ParseError("expected header trial,label,vertex,time_ms", line_no);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    const auto id = parse_number<std::size_t>(fields[0], "trial id", line_no);
    const auto label = parse_number<Label>(fields[1], "label", line_no);
    auto [it, inserted] = trials.try_emplace(id);
    Trial& t = it->second;
    if (inserted) {
      t.id = id;
      t.label = label;
    } else if (t.label != label) {
      throw ParseError("trial " + std::to_string(id) + " has conflicting labels", line_no);
    }
    if (fields[2].empty() && fields[3].empty()) continue;  // silent trial marker
    const auto vertex = parse_number<Vertex>(fields[2], "vertex", line_no);
    const auto time = parse_number<double>(fields[3], "spike time", line_no);
    if (!std::isfinite(time) || time < 0.0) throw ParseError("negative spike time", line_no);
    t.spikes.push_back({vertex, time});
  }
  if (!have_header) throw ParseError("spike file is empty");
  BinaryDynamicsSet out;
  out.trials.reserve(trials.size());
  for (auto& [id, t] : trials) out.trials.push_back(std::move(t));
  return out;
}

BinaryDynamicsSet load_spikes(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_spikes(in);
}

void write_spikes(std::ostream& out, const BinaryDynamicsSet& dynamics) {
  out << "trial,label,vertex,time_ms\n";
  for (const Trial& t : dynamics.trials) {
    if (t.spikes.empty()) {
      out << t.id << ',' << t.label << ",,\n";
      continue;
    }
    for (const Spike& s : t.spikes) {
      out << t.id << ',' << t.label << ',' << s.vertex << ',' << format_double(s.time_ms) << '\n';
    }
  }
}

void save_spikes(const std::filesystem::path& path, const BinaryDynamicsSet& dynamics) {
  auto out = open_out(path);
  write_spikes(out, dynamics);
}

void write_features(std::ostream& out, std::span<const FeatureMatrix> matrices) {
  const std::size_t width = matrices.empty() ? 0 : matrices.front().values.size();
  out << "label";
  for (std::size_t i = 1; i <= width; ++i) out << ",v_" << i;
  out << '\n';
  for (const FeatureMatrix& m : matrices) {
    if (m.values.size() != width) throw ContractError("feature matrices differ in size");
    out << m.label;
    for (double x : m.flattened()) out << ',' << format_double(x);
    out << '\n';
  }
}

void save_features(const std::filesystem::path& path, std::span<const FeatureMatrix> matrices) {
  auto out = open_out(path);
  write_features(out, matrices);
}

Dataset read_features(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool have_header = false;
  Dataset ds;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_csv_line(body);
    if (!have_header) {
      if (fields.empty() || fields[0] != "label") throw ParseError("expected header label,v_1,...", line_no);
      width = fields.size() - 1;
      have_header = true;
      continue;
    }
    if (fields.size() != width + 1) {
      throw ParseError("expected " + std::to_string(width + 1) + " fields", line_no);
    }
    ds.labels.push_back(parse_number<Label>(fields[0], "label", line_no));
    std::vector<double> row(width);
    for (std::size_t i = 0; i < width; ++i) row[i] = parse_number<double>(fields[i + 1], "feature", line_no);
    ds.features.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("feature file is empty");
  ds.validate();
  return ds;
}

Dataset load_features(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_features(in);
}

}  // namespace nbdyn
