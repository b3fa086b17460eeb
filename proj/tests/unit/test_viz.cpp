#include "doctest.h"
#include "stance/viz.hpp"
#include "synthetic.hpp"

using namespace stance;

TEST_CASE("viz export structure") {
  Dataset train, test;
  train.instances.push_back(synth::make("1", "Atheism", "a", Stance::Against, Sentiment::Negative,
                                        OpinionTowards::Target));
  train.instances.push_back(synth::make("2", "Hillary Clinton", "b", Stance::Favor,
                                        Sentiment::Positive, OpinionTowards::Other));
  test.instances.push_back(synth::make("3", "Atheism", "c"));
  auto j = export_viz({{"train", &train}, {"test", &test}});
  CHECK(j["version"] == 1);
  REQUIRE(j["records"].size() == 3);
  CHECK(j["records"][0]["stance"] == "against");
  CHECK(j["records"][1]["opinion_towards"] == "other");
  CHECK(j["records"][2]["split"] == "test");
  CHECK(j["records"][2]["stance"].is_null());
  CHECK(j["records"][2]["sentiment"].is_null());
  CHECK(j["summary"]["total"] == 3);
  auto targets = j["summary"]["targets"];
  REQUIRE(targets.size() == 2);
  CHECK(targets[0]["target"] == "Atheism");
  CHECK(targets[0]["count"] == 2);
  CHECK(targets[0]["by_split"]["test"] == 1);
  auto m = j["summary"]["matrices"]["stance_by_opinion"];
  CHECK(m["rows"].size() == m["counts"].size());
  for (const auto& row : m["percentages"]) {
    double sum = 0;
    for (const auto& v : row) sum += v.get<double>();
    CHECK((sum == doctest::Approx(100.0) || sum == 0.0));
  }
}

TEST_CASE("a single instance gives degenerate but valid matrices") {
  Dataset one;
  one.instances.push_back(synth::make("1", "T", "x", Stance::Neither, Sentiment::Neither,
                                      OpinionTowards::NoOne));
  auto j = export_viz({{"all", &one}});
  for (const char* name : {"stance_by_opinion", "stance_by_sentiment", "opinion_by_sentiment"}) {
    auto m = j["summary"]["matrices"][name];
    std::size_t total = 0;
    for (const auto& row : m["counts"])
      for (const auto& v : row) total += v.get<std::size_t>();
    CHECK(total == 1);
  }
  CHECK(export_viz({})["records"].empty());
}
