#pragma once

#include <string>
#include <vector>

#include "stance/classifier.hpp"
#include "stance/config.hpp"
#include "stance/corpus.hpp"
#include "stance/features.hpp"

namespace stance {

// Lowercase ASCII letters and digits, other runs collapsed to '-'.
std::string slug(std::string_view name);

std::vector<TargetSpec> load_target_catalog(const RunConfig& rc);
Dataset load_dataset(const std::string& path, const RunConfig& rc);

// Loads exactly what the enabled families need. Missing paths for enabled
// families are ConfigErrors, raised before any training starts.
FeatureResources build_resources(const RunConfig& rc, const FeatureConfig& features,
                                 const std::vector<std::string>& targets);

// stance-<target slug>.model or sentiment.model
std::string model_file_name(const TargetModel& m);
// Writes each model plus an index.tsv of scope<TAB>file.
void save_model_dir(const std::string& dir, const std::vector<const TargetModel*>& models);
std::vector<TargetModel> load_model_dir(const std::string& dir);

// Each instance goes to the model of its target, or to the pooled model.
std::vector<std::string> predict_routed(const std::vector<TargetModel>& models, const Dataset& data,
                                        const FeatureResources& resources);

}  // namespace stance
