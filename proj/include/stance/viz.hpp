#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "stance/corpus.hpp"

namespace stance {

struct VizPart {
  std::string split;  // "train", "test", or any caller-chosen tag
  const Dataset* data;
};

// {"version", "records": [{id, target, text, stance, sentiment,
// opinion_towards, split}], "summary": {total, targets, matrices}}.
// Absent labels are null; matrices are row-normalized percentages.
nlohmann::json export_viz(const std::vector<VizPart>& parts);

}  // namespace stance
