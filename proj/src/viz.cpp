#include "stance/viz.hpp"

#include <map>

namespace stance {

namespace {

nlohmann::json label_or_null(const Instance& inst, LabelKind kind) {
  auto l = label_of(inst, kind);
  return l ? nlohmann::json(*l) : nlohmann::json(nullptr);
}

nlohmann::json matrix_json(const CrossMatrix& m) {
  return {{"rows", m.rows}, {"cols", m.cols}, {"counts", m.counts}, {"percentages", m.percentages}};
}

}  // namespace

nlohmann::json export_viz(const std::vector<VizPart>& parts) {
  nlohmann::json records = nlohmann::json::array();
  Dataset all;
  std::vector<std::string> order;
  std::map<std::string, std::map<std::string, std::size_t>> per_target;
  for (const auto& part : parts) {
    for (const auto& inst : part.data->instances) {
      records.push_back({{"id", inst.id},
                         {"target", inst.target},
                         {"text", inst.text},
                         {"stance", label_or_null(inst, LabelKind::Stance)},
                         {"sentiment", label_or_null(inst, LabelKind::Sentiment)},
                         {"opinion_towards", label_or_null(inst, LabelKind::Opinion)},
                         {"split", part.split}});
      if (!per_target.count(inst.target)) order.push_back(inst.target);
      ++per_target[inst.target][part.split];
      all.instances.push_back(inst);
    }
  }
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : order) {
    std::size_t total = 0;
    nlohmann::json by_split = nlohmann::json::object();
    for (const auto& [split, n] : per_target[t]) {
      by_split[split] = n;
      total += n;
    }
    targets.push_back({{"target", t}, {"count", total}, {"by_split", by_split}});
  }
  nlohmann::json summary = {
      {"total", all.size()},
      {"targets", targets},
      {"matrices",
       {{"stance_by_opinion",
         matrix_json(cross_distribution(all, LabelKind::Stance, LabelKind::Opinion))},
        {"stance_by_sentiment",
         matrix_json(cross_distribution(all, LabelKind::Stance, LabelKind::Sentiment))},
        {"opinion_by_sentiment",
         matrix_json(cross_distribution(all, LabelKind::Opinion, LabelKind::Sentiment))}}}};
  return {{"version", 1}, {"records", records}, {"summary", summary}};
}

}  // namespace stance
