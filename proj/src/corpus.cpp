#include "stance/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "stance/error.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

using strings::to_lower;
using strings::trim;

std::string normalize_label(std::string_view s) {
  std::string out = to_lower(trim(s));
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

// Tabs and line breaks inside a tweet become single spaces so the text
// survives a TSV round trip.
std::string normalize_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(c == '\t' || c == '\n' || c == '\r' ? ' ' : c);
  return std::string(trim(out));
}

bool is_blank_label(std::string_view s) {
  auto v = normalize_label(s);
  return v.empty() || v == "unknown";
}

// Reads one record; handles quoted fields that span lines when `quoted`.
// Returns false at end of input.
bool read_record(std::istream& in, char delim, bool quoted, std::vector<std::string>& fields,
                 std::size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!quoted) {
    fields = strings::split(line, delim);
    return true;
  }
  std::string field;
  bool in_quotes = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (in_quotes) {
        std::string next;
        if (!std::getline(in, next)) throw DataError("line " + std::to_string(line_no) +
                                                     ": unterminated quoted field");
        ++line_no;
        if (!next.empty() && next.back() == '\r') next.pop_back();
        field.push_back('\n');
        line = std::move(next);
        i = 0;
        continue;
      }
      fields.push_back(std::move(field));
      return true;
    }
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
    ++i;
  }
}

const std::set<std::string> kNameStopwords = {"a",  "an", "the", "is", "of", "and",
                                              "or", "to", "in",  "on", "for"};

}  // namespace

std::string_view to_string(Stance s) {
  switch (s) {
    case Stance::Favor: return "favor";
    case Stance::Against: return "against";
    case Stance::Neither: return "neither";
  }
  return "neither";
}

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::Positive: return "positive";
    case Sentiment::Negative: return "negative";
    case Sentiment::Neither: return "neither";
  }
  return "neither";
}

std::string_view to_string(OpinionTowards o) {
  switch (o) {
    case OpinionTowards::Target: return "target";
    case OpinionTowards::Other: return "other";
    case OpinionTowards::NoOne: return "no one";
  }
  return "no one";
}

Stance parse_stance(std::string_view s) {
  auto v = normalize_label(s);
  if (v == "favor" || v == "favour") return Stance::Favor;
  if (v == "against") return Stance::Against;
  if (v == "none" || v == "neither") return Stance::Neither;
  throw DataError("unknown stance label '" + std::string(s) + "'");
}

Sentiment parse_sentiment(std::string_view s) {
  auto v = normalize_label(s);
  if (v == "positive" || v == "pos") return Sentiment::Positive;
  if (v == "negative" || v == "neg") return Sentiment::Negative;
  if (v == "neither" || v == "other" || v == "none" || v == "neutral") return Sentiment::Neither;
  throw DataError("unknown sentiment label '" + std::string(s) + "'");
}

OpinionTowards parse_opinion(std::string_view s) {
  auto v = normalize_label(s);
  // Released files spell out the question options: "1.  The tweet explicitly ..."
  if (!v.empty() && std::isdigit(static_cast<unsigned char>(v[0])) &&
      (v.size() == 1 || !std::isdigit(static_cast<unsigned char>(v[1])))) {
    switch (v[0]) {
      case '1': return OpinionTowards::Target;
      case '2': return OpinionTowards::Other;
      case '3': return OpinionTowards::NoOne;
      default: break;
    }
  }
  if (v == "target") return OpinionTowards::Target;
  if (v == "other") return OpinionTowards::Other;
  if (v == "no one" || v == "noone" || v == "none") return OpinionTowards::NoOne;
  throw DataError("unknown opinion-towards label '" + std::string(s) + "'");
}

Sentiment collapse_sentiment_option(int raw) {
  switch (raw) {
    case 1: return Sentiment::Positive;
    case 2:
    case 3: return Sentiment::Negative;
    case 4:
    case 5: return Sentiment::Neither;
    default:
      throw DataError("sentiment option out of range 1..5: " + std::to_string(raw));
  }
}

TargetSpec default_target_spec(std::string_view name) {
  TargetSpec spec{std::string(name), {}};
  auto lower = to_lower(trim(name));
  if (lower == "hillary clinton") {
    spec.aliases = {"hillary", "clinton"};
  } else if (lower == "legalization of abortion") {
    spec.aliases = {"abortion", "pro-life", "pro-choice"};
  } else {
    std::string word;
    auto flush = [&] {
      if (word.size() >= 3 && !kNameStopwords.count(word)) spec.aliases.push_back(word);
      word.clear();
    };
    for (char c : lower) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-')
        word.push_back(c);
      else
        flush();
    }
    flush();
    if (spec.aliases.empty()) spec.aliases.push_back(lower);
  }
  return spec;
}

std::vector<TargetSpec> load_target_specs(std::istream& in) {
  std::vector<TargetSpec> specs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto tab = t.find('\t');
    if (tab == std::string_view::npos)
      throw DataError("target specs line " + std::to_string(line_no) + ": expected name<TAB>aliases");
    TargetSpec spec{std::string(trim(t.substr(0, tab))), {}};
    for (auto& a : strings::split(t.substr(tab + 1), ',')) {
      auto alias = to_lower(trim(a));
      if (!alias.empty()) spec.aliases.push_back(alias);
    }
    if (spec.name.empty() || spec.aliases.empty())
      throw DataError("target specs line " + std::to_string(line_no) +
                      ": name and at least one alias required");
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<std::string> Dataset::target_names() const {
  std::vector<std::string> names;
  for (const auto& inst : instances)
    if (std::find(names.begin(), names.end(), inst.target) == names.end())
      names.push_back(inst.target);
  return names;
}

const TargetSpec* Dataset::find_target(std::string_view name) const {
  for (const auto& t : targets)
    if (t.name == name) return &t;
  return nullptr;
}

Dataset Dataset::only_target(std::string_view name) const {
  Dataset out;
  out.targets = targets;
  for (const auto& inst : instances)
    if (inst.target == name) out.instances.push_back(inst);
  return out;
}

Dataset parse_tsv(std::istream& in, const ParseOptions& options) {
  const bool quoted = options.quoted || options.delimiter == ',';
  std::vector<std::string> header;
  std::size_t line_no = 0;
  if (!read_record(in, options.delimiter, quoted, header, line_no))
    throw DataError("missing header row");
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (strings::iequals(trim(header[i]), name)) return i;
    return std::nullopt;
  };
  const auto& sc = options.schema;
  auto c_id = column(sc.id), c_target = column(sc.target), c_text = column(sc.text),
       c_stance = column(sc.stance), c_opinion = column(sc.opinion),
       c_sentiment = column(sc.sentiment), c_hashtag = column(sc.hashtag),
       c_time = column(sc.timestamp), c_source = column("Source");
  if (!c_target || !c_text)
    throw DataError("header must name at least the '" + sc.target + "' and '" + sc.text +
                    "' columns");

  Dataset ds;
  std::vector<std::string> row;
  std::size_t record_start = line_no + 1;
  while (read_record(in, options.delimiter, quoted, row, line_no)) {
    const std::size_t at = record_start;
    record_start = line_no + 1;
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != header.size())
      throw DataError("line " + std::to_string(at) + ": expected " +
                      std::to_string(header.size()) + " columns, got " +
                      std::to_string(row.size()));
    auto field = [&](const std::optional<std::size_t>& c) -> std::string_view {
      return c ? std::string_view(row[*c]) : std::string_view();
    };
    Instance inst;
    inst.id = c_id ? std::string(trim(row[*c_id])) : std::to_string(ds.instances.size() + 1);
    inst.target = std::string(trim(row[*c_target]));
    inst.text = normalize_text(row[*c_text]);
    if (inst.text.empty()) throw DataError("line " + std::to_string(at) + ": empty tweet text");
    if (inst.target.empty()) throw DataError("line " + std::to_string(at) + ": empty target");
    try {
      if (!is_blank_label(field(c_stance))) inst.stance = parse_stance(field(c_stance));
      if (!is_blank_label(field(c_sentiment)))
        inst.sentiment = parse_sentiment(field(c_sentiment));
      if (!is_blank_label(field(c_opinion))) inst.opinion_towards = parse_opinion(field(c_opinion));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(at) + ": " + e.what());
    }
    if (auto h = trim(field(c_hashtag)); !h.empty()) inst.query_hashtag = std::string(h);
    if (auto t = trim(field(c_time)); !t.empty()) {
      auto v = strings::parse_int(t);
      if (!v) throw DataError("line " + std::to_string(at) + ": bad timestamp '" +
                              std::string(t) + "'");
      inst.timestamp = *v;
    }
    if (strings::iequals(trim(field(c_source)), "pseudo")) inst.source = Provenance::Pseudo;
    ds.instances.push_back(std::move(inst));
  }

  for (const auto& name : ds.target_names()) {
    auto it = std::find_if(options.catalog.begin(), options.catalog.end(),
                           [&](const TargetSpec& t) { return strings::iequals(t.name, name); });
    if (it != options.catalog.end()) {
      TargetSpec spec = *it;
      spec.name = name;
      ds.targets.push_back(std::move(spec));
    } else {
      ds.targets.push_back(default_target_spec(name));
    }
  }
  return ds;
}

Dataset read_dataset(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset '" + path + "'");
  ParseOptions opts = options;
  auto lower = to_lower(path);
  if (lower.size() >= 4 && lower.compare(lower.size() - 4, 4, ".csv") == 0) {
    opts.delimiter = ',';
    opts.quoted = true;
  }
  try {
    return parse_tsv(in, opts);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_tsv(std::ostream& out, const Dataset& dataset) {
  out << "ID\tTarget\tTweet\tStance\tOpinion towards\tSentiment\tHashtag\tTimestamp\tSource\n";
  for (const auto& i : dataset.instances) {
    out << i.id << '\t' << i.target << '\t' << i.text << '\t'
        << (i.stance ? to_string(*i.stance) : "") << '\t'
        << (i.opinion_towards ? to_string(*i.opinion_towards) : "") << '\t'
        << (i.sentiment ? to_string(*i.sentiment) : "") << '\t' << i.query_hashtag.value_or("")
        << '\t' << (i.timestamp ? std::to_string(*i.timestamp) : "") << '\t'
        << (i.source == Provenance::Pseudo ? "pseudo" : "gold") << '\n';
  }
}

Dataset concat(const Dataset& a, const Dataset& b) {
  Dataset out = a;
  out.instances.insert(out.instances.end(), b.instances.begin(), b.instances.end());
  for (const auto& t : b.targets)
    if (!out.find_target(t.name)) out.targets.push_back(t);
  return out;
}

std::pair<Dataset, Dataset> split_chronological(const Dataset& dataset, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  if (dataset.empty()) throw DataError("cannot split an empty dataset");
  std::vector<const Instance*> order;
  order.reserve(dataset.size());
  for (const auto& inst : dataset.instances) order.push_back(&inst);
  bool all_timed = std::all_of(order.begin(), order.end(),
                               [](const Instance* i) { return i->timestamp.has_value(); });
  if (all_timed)
    std::stable_sort(order.begin(), order.end(), [](const Instance* a, const Instance* b) {
      return *a->timestamp < *b->timestamp;
    });
  const auto n_train = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(dataset.size()) + 1e-9));
  Dataset train, test;
  train.targets = test.targets = dataset.targets;
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < n_train ? train : test).instances.push_back(*order[i]);
  return {std::move(train), std::move(test)};
}

namespace {

// (modal count, unique mode?, mode) for one record.
struct Mode {
  std::size_t count = 0;
  bool unique = false;
  std::string label;
};

Mode modal(const std::vector<std::string>& responses) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : responses) ++counts[r];
  Mode m;
  for (const auto& [label, c] : counts) {
    if (c > m.count) {
      m = {c, true, label};
    } else if (c == m.count) {
      m.unique = false;
    }
  }
  return m;
}

}  // namespace

std::optional<std::string> aggregate_annotations(const AnnotationRecord& record,
                                                 double threshold) {
  if (record.responses.empty()) return std::nullopt;
  auto m = modal(record.responses);
  if (!m.unique) return std::nullopt;
  const double total = static_cast<double>(record.responses.size());
  if (static_cast<double>(m.count) + 1e-9 < threshold * total) return std::nullopt;
  return m.label;
}

double inter_annotator_agreement(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw DataError("inter-annotator agreement needs at least one record");
  double sum = 0;
  for (const auto& r : records) {
    if (r.responses.empty())
      throw DataError("annotation record '" + r.instance_id + "' has no responses");
    sum += static_cast<double>(modal(r.responses).count) / static_cast<double>(r.responses.size());
  }
  return sum / static_cast<double>(records.size());
}

LabelKind parse_label_kind(std::string_view s) {
  auto v = to_lower(trim(s));
  if (v == "stance") return LabelKind::Stance;
  if (v == "sentiment") return LabelKind::Sentiment;
  if (v == "opinion" || v == "opinion towards" || v == "opinion_towards") return LabelKind::Opinion;
  throw ConfigError("unknown label kind '" + std::string(s) + "'");
}

std::optional<std::string> label_of(const Instance& inst, LabelKind kind) {
  switch (kind) {
    case LabelKind::Stance:
      if (inst.stance) return std::string(to_string(*inst.stance));
      break;
    case LabelKind::Sentiment:
      if (inst.sentiment) return std::string(to_string(*inst.sentiment));
      break;
    case LabelKind::Opinion:
      if (inst.opinion_towards) return std::string(to_string(*inst.opinion_towards));
      break;
  }
  return std::nullopt;
}

std::vector<std::string> label_names(LabelKind kind) {
  std::vector<std::string> out;
  switch (kind) {
    case LabelKind::Stance:
      for (auto s : kAllStances) out.emplace_back(to_string(s));
      break;
    case LabelKind::Sentiment:
      for (auto s : kAllSentiments) out.emplace_back(to_string(s));
      break;
    case LabelKind::Opinion:
      for (auto s : kAllOpinions) out.emplace_back(to_string(s));
      break;
  }
  return out;
}

double Distribution::percent(std::string_view label) const {
  for (const auto& [l, p] : percentages)
    if (l == label) return p;
  return 0.0;
}

Distribution class_distribution(const Dataset& dataset, LabelKind kind,
                                std::optional<std::string_view> target) {
  auto names = label_names(kind);
  std::vector<std::size_t> counts(names.size(), 0);
  Distribution d;
  for (const auto& inst : dataset.instances) {
    if (target && inst.target != *target) continue;
    auto label = label_of(inst, kind);
    if (!label) throw DataError("instance '" + inst.id + "' lacks the requested label");
    auto it = std::find(names.begin(), names.end(), *label);
    ++counts[static_cast<std::size_t>(it - names.begin())];
    ++d.total;
  }
  if (d.total == 0)
    throw DataError(target ? "no instances for target '" + std::string(*target) + "'"
                           : std::string("no instances"));
  for (std::size_t i = 0; i < names.size(); ++i) {
    d.counts.emplace_back(names[i], counts[i]);
    d.percentages.emplace_back(names[i], 100.0 * static_cast<double>(counts[i]) /
                                             static_cast<double>(d.total));
  }
  return d;
}

double CrossMatrix::percent(std::string_view row, std::string_view col) const {
  auto r = std::find(rows.begin(), rows.end(), row);
  auto c = std::find(cols.begin(), cols.end(), col);
  if (r == rows.end() || c == cols.end()) return 0.0;
  return percentages[static_cast<std::size_t>(r - rows.begin())]
                    [static_cast<std::size_t>(c - cols.begin())];
}

CrossMatrix cross_distribution(const Dataset& dataset, LabelKind row_kind, LabelKind col_kind) {
  CrossMatrix m;
  m.rows = label_names(row_kind);
  m.cols = label_names(col_kind);
  m.counts.assign(m.rows.size(), std::vector<std::size_t>(m.cols.size(), 0));
  for (const auto& inst : dataset.instances) {
    auto r = label_of(inst, row_kind);
    auto c = label_of(inst, col_kind);
    if (!r || !c) continue;
    auto ri = static_cast<std::size_t>(std::find(m.rows.begin(), m.rows.end(), *r) - m.rows.begin());
    auto ci = static_cast<std::size_t>(std::find(m.cols.begin(), m.cols.end(), *c) - m.cols.begin());
    ++m.counts[ri][ci];
  }
  m.percentages.assign(m.rows.size(), std::vector<double>(m.cols.size(), 0.0));
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::size_t total = 0;
    for (auto c : m.counts[r]) total += c;
    if (total == 0) continue;
    for (std::size_t c = 0; c < m.cols.size(); ++c)
      m.percentages[r][c] = 100.0 * static_cast<double>(m.counts[r][c]) / static_cast<double>(total);
  }
  return m;
}

}  // namespace stance
