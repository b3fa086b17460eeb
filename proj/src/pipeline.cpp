#include "stance/pipeline.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace fs = std::filesystem;

namespace {

std::ifstream open_or_throw(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + what + " '" + path + "'");
  return in;
}

AssociationTable read_table(const std::string& path) {
  auto in = open_or_throw(path, "association table");
  try {
    return load_association_table(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace

std::string slug(std::string_view name) {
  std::string out;
  bool dash = false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (dash && !out.empty()) out.push_back('-');
      out.push_back(static_cast<char>(std::tolower(u)));
      dash = false;
    } else {
      dash = true;
    }
  }
  return out.empty() ? "unnamed" : out;
}

std::vector<TargetSpec> load_target_catalog(const RunConfig& rc) {
  if (rc.targets_path.empty()) return {};
  auto in = open_or_throw(rc.targets_path, "target alias file");
  return load_target_specs(in);
}

Dataset load_dataset(const std::string& path, const RunConfig& rc) {
  ParseOptions opts;
  opts.catalog = load_target_catalog(rc);
  return read_dataset(path, opts);
}

FeatureResources build_resources(const RunConfig& rc, const FeatureConfig& features,
                                 const std::vector<std::string>& targets) {
  FeatureResources r;
  if (!rc.emoticons_pos_path.empty() || !rc.emoticons_neg_path.empty()) {
    if (rc.emoticons_pos_path.empty() || rc.emoticons_neg_path.empty())
      throw ConfigError("both emoticon lists are needed when one is given");
    r.emoticons = std::make_shared<EmoticonInventory>(
        EmoticonInventory::load_files(rc.emoticons_pos_path, rc.emoticons_neg_path));
    r.tokenizer = Tokenizer(*r.emoticons);
  }
  r.targets = load_target_catalog(rc);

  if (features.sentiment_lexicons) {
    if (rc.lexicon_manifest.empty())
      throw ConfigError("feature family 'sentiment' needs a lexicon manifest");
    r.lexicons = load_lexicons(rc.lexicon_manifest);
  }
  if (features.pos_counts) {
    if (rc.pos_path.empty()) throw ConfigError("feature family 'pos' needs a POS sidecar file");
    auto in = open_or_throw(rc.pos_path, "POS sidecar");
    r.pos_tags = load_pos_sidecar(in);
  }
  if (features.associations) {
    if (rc.word_stance_tables.empty() && rc.word_target_table.empty())
      throw ConfigError("feature family 'associations' needs a word-stance or word-target table");
    if (!rc.word_stance_tables.empty()) {
      const auto& tmpl = rc.word_stance_tables;
      const auto pos = tmpl.find("{target}");
      if (pos == std::string::npos) {
        r.associations.push_back({"word-stance", read_table(tmpl), std::nullopt});
      } else {
        for (const auto& t : targets) {
          auto path = tmpl;
          path.replace(pos, 8, slug(t));
          r.associations.push_back({"word-stance", read_table(path), t});
        }
      }
    }
    if (!rc.word_target_table.empty())
      r.associations.push_back({"word-target", read_table(rc.word_target_table), std::nullopt});
  }
  if (features.embeddings) {
    if (rc.embeddings_path.empty())
      throw ConfigError("feature family 'embeddings' needs a vectors file");
    auto in = open_or_throw(rc.embeddings_path, "embeddings");
    try {
      r.embeddings = load_embeddings(in);
    } catch (const DataError& e) {
      throw DataError(rc.embeddings_path + ": " + e.what());
    }
  }
  r.check(features);
  return r;
}

std::string model_file_name(const TargetModel& m) {
  if (m.scope == "*") return std::string(to_string(m.task)) + ".model";
  return std::string(to_string(m.task)) + "-" + slug(m.scope) + ".model";
}

void save_model_dir(const std::string& dir, const std::vector<const TargetModel*>& models) {
  fs::create_directories(dir);
  std::ofstream index(fs::path(dir) / "index.tsv");
  if (!index) throw ConfigError("cannot write to '" + dir + "'");
  for (const auto* m : models) {
    const auto name = model_file_name(*m);
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw ConfigError("cannot write model '" + name + "'");
    save_model(out, *m);
    index << m->scope << '\t' << name << '\n';
  }
}

std::vector<TargetModel> load_model_dir(const std::string& dir) {
  auto index = open_or_throw((fs::path(dir) / "index.tsv").string(), "model index");
  std::vector<TargetModel> out;
  std::string line;
  while (std::getline(index, line)) {
    if (strings::trim(line).empty()) continue;
    auto cols = strings::split(line, '\t');
    if (cols.size() != 2) throw DataError("malformed model index line '" + line + "'");
    const auto path = (fs::path(dir) / cols[1]).string();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model '" + path + "'");
    try {
      out.push_back(load_model(in));
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  if (out.empty()) throw DataError("no models listed in '" + dir + "/index.tsv'");
  return out;
}

std::vector<std::string> predict_routed(const std::vector<TargetModel>& models, const Dataset& data,
                                        const FeatureResources& resources) {
  const TargetModel* pooled = nullptr;
  std::map<std::string, const TargetModel*> by_target;
  for (const auto& m : models) {
    if (m.scope == "*")
      pooled = &m;
    else
      by_target[m.scope] = &m;
  }
  std::vector<std::string> out;
  out.reserve(data.size());
  for (const auto& inst : data.instances) {
    const TargetModel* m = pooled;
    if (auto it = by_target.find(inst.target); it != by_target.end()) m = it->second;
    if (!m) throw DataError("no model for target '" + inst.target + "'");
    out.push_back(m->model.predict(vectorize(extract(inst, m->features, resources), m->space)));
  }
  return out;
}

}  // namespace stance
