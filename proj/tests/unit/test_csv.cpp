#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nbdyn/csv.hpp"
#include "nbdyn/errors.hpp"

namespace nbdyn {
namespace {

BinaryDynamicsSet read(const std::string& text) {
  std::istringstream in(text);
  return read_spikes(in);
}

TEST(SpikeCsv, GroupsNonContiguousTrials) {
  const auto d = read("trial,label,vertex,time_ms\n3,1,4,12.5\n0,2,1,11\n3,1,5,40\n");
  ASSERT_EQ(d.trials.size(), 2u);
  EXPECT_EQ(d.trials[0].id, 0u);
  EXPECT_EQ(d.trials[0].label, 2);
  EXPECT_EQ(d.trials[1].spikes, (std::vector<Spike>{{4, 12.5}, {5, 40.0}}));
}

TEST(SpikeCsv, SilentTrialMarker) {
  const auto d = read("trial,label,vertex,time_ms\n7,3,,\n");
  ASSERT_EQ(d.trials.size(), 1u);
  EXPECT_TRUE(d.trials[0].spikes.empty());
  EXPECT_EQ(d.trials[0].label, 3);
}

TEST(SpikeCsv, Errors) {
  EXPECT_THROW(read("trial,vertex\n"), ParseError);
  EXPECT_THROW(read(""), ParseError);
  EXPECT_THROW(read("trial,label,vertex,time_ms\n0,1,2\n"), ParseError);
  EXPECT_THROW(read("trial,label,vertex,time_ms\n0,1,2,-4\n"), ParseError);
  EXPECT_THROW(read("trial,label,vertex,time_ms\n0,1,2,4\n0,2,3,5\n"), ParseError);
  try {
    read("trial,label,vertex,time_ms\n0,1,2,4\n0,1,x,5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SpikeCsv, RoundTripIsExact) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> t(0.0, 200.0);
  BinaryDynamicsSet d;
  for (std::size_t i = 0; i < 10; ++i) {
    Trial trial{i, static_cast<Label>(i % 4), {}};
    if (i % 3 != 0) {
      for (int s = 0; s < 20; ++s) trial.spikes.push_back({static_cast<Vertex>(s * 7 % 50), t(rng)});
    }
    d.trials.push_back(trial);
  }
  std::stringstream buf;
  write_spikes(buf, d);
  EXPECT_EQ(read_spikes(buf), d);
}

TEST(FeatureCsv, HeaderAndRows) {
  FeatureMatrix f;
  f.rows = 2;
  f.cols = 2;
  f.values = {1, 2, 3, 0.1};
  f.label = 5;
  std::ostringstream out;
  write_features(out, std::vector<FeatureMatrix>{f});
  EXPECT_EQ(out.str(), "label,v_1,v_2,v_3,v_4\n5,1,3,2,0.1\n");
}

TEST(FeatureCsv, RoundTrip) {
  FeatureMatrix f;
  f.rows = 3;
  f.cols = 2;
  f.values = {1.0 / 3.0, 2, 0, 1e-300, 7, 12345.678};
  f.label = 1;
  std::stringstream buf;
  write_features(buf, std::vector<FeatureMatrix>{f, f});
  const Dataset ds = read_features(buf);
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.features[0], f.flattened());
}

TEST(FeatureCsv, RaggedRowIsAnError) {
  std::istringstream in("label,v_1,v_2\n0,1\n");
  EXPECT_THROW(read_features(in), ParseError);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(12.3), "12.3");
  EXPECT_EQ(format_double(100.0), "100");
}

}  // namespace
}  // namespace nbdyn
