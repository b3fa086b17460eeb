#include "stance/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "stance/error.hpp"
#include "stance/rng.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b)
    throw DataError("gold has " + std::to_string(a) + " labels, predictions " + std::to_string(b));
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::string> ordered_targets(std::span<const std::string> targets) {
  std::vector<std::string> out;
  for (const auto& t : targets)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string stance_name(Stance s) { return std::string(to_string(s)); }

struct Annotated {
  std::vector<std::string> gold;
  std::vector<Sentiment> sentiment;
  std::vector<std::optional<OpinionTowards>> opinion;
  std::vector<std::string> targets;
};

Annotated annotations(const Dataset& test, bool need_opinion) {
  Annotated a;
  for (const auto& inst : test.instances) {
    if (!inst.stance) throw DataError("instance '" + inst.id + "' has no stance label");
    if (!inst.sentiment) throw DataError("instance '" + inst.id + "' has no sentiment label");
    if (need_opinion && !inst.opinion_towards)
      throw DataError("instance '" + inst.id + "' has no opinion-towards label");
    a.gold.push_back(stance_name(*inst.stance));
    a.sentiment.push_back(*inst.sentiment);
    a.opinion.push_back(inst.opinion_towards);
    a.targets.push_back(inst.target);
  }
  return a;
}

}  // namespace

ClassScore f1(std::span<const std::string> gold, std::span<const std::string> pred,
              const std::string& cls) {
  check_lengths(gold.size(), pred.size());
  ClassScore s;
  s.label = cls;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == cls, p = pred[i] == cls;
    if (g && p) ++s.tp;
    else if (p) ++s.fp;
    else if (g) ++s.fn;
  }
  s.precision = ratio(s.tp, s.tp + s.fp);
  s.recall = ratio(s.tp, s.tp + s.fn);
  const double pr = s.precision + s.recall;
  s.f1 = pr == 0 ? 0.0 : 2 * s.precision * s.recall / pr;
  return s;
}

double f_average(std::span<const std::string> gold, std::span<const std::string> pred,
                 const std::string& first, const std::string& second) {
  return (f1(gold, pred, first).f1 + f1(gold, pred, second).f1) / 2;
}

MainClasses main_classes(LabelKind kind) {
  switch (kind) {
    case LabelKind::Stance: return {"favor", "against"};
    case LabelKind::Sentiment: return {"positive", "negative"};
    case LabelKind::Opinion: break;
  }
  throw ConfigError("opinion-towards labels have no main classes");
}

double f_microT(std::span<const std::string> gold, std::span<const std::string> pred,
                const MainClasses& main) {
  return f_average(gold, pred, main.first, main.second);
}

double f_macroT(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> targets, const MainClasses& main) {
  check_lengths(gold.size(), pred.size());
  check_lengths(gold.size(), targets.size());
  const auto names = ordered_targets(targets);
  if (names.empty()) return 0;
  double sum = 0;
  for (const auto& t : names) {
    std::vector<std::string> g, p;
    for (std::size_t i = 0; i < gold.size(); ++i)
      if (targets[i] == t) {
        g.push_back(gold[i]);
        p.push_back(pred[i]);
      }
    sum += f_average(g, p, main.first, main.second);
  }
  return sum / static_cast<double>(names.size());
}

EvalReport evaluate(std::span<const std::string> gold, std::span<const std::string> pred,
                    std::span<const std::string> targets, LabelKind kind) {
  check_lengths(gold.size(), pred.size());
  check_lengths(gold.size(), targets.size());
  EvalReport r;
  r.main = main_classes(kind);
  r.n = gold.size();
  for (const auto& l : label_names(kind)) r.classes.push_back(f1(gold, pred, l));
  r.f_average = f_average(gold, pred, r.main.first, r.main.second);
  r.f_microT = r.f_average;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += gold[i] == pred[i];
  r.accuracy = ratio(correct, gold.size());
  double macro = 0;
  for (const auto& t : ordered_targets(targets)) {
    std::vector<std::string> g, p;
    for (std::size_t i = 0; i < gold.size(); ++i)
      if (targets[i] == t) {
        g.push_back(gold[i]);
        p.push_back(pred[i]);
      }
    TargetScore ts;
    ts.target = t;
    ts.n = g.size();
    ts.f_average = f_average(g, p, r.main.first, r.main.second);
    std::size_t c = 0;
    for (std::size_t i = 0; i < g.size(); ++i) c += g[i] == p[i];
    ts.accuracy = ratio(c, g.size());
    macro += ts.f_average;
    r.per_target.push_back(std::move(ts));
  }
  r.f_macroT = r.per_target.empty() ? 0 : macro / static_cast<double>(r.per_target.size());
  return r;
}

std::vector<std::string> gold_labels(const Dataset& data, LabelKind kind) {
  std::vector<std::string> out;
  out.reserve(data.size());
  for (const auto& inst : data.instances) {
    auto l = label_of(inst, kind);
    if (!l) throw DataError("instance '" + inst.id + "' is missing the requested label");
    out.push_back(*l);
  }
  return out;
}

std::vector<std::string> instance_targets(const Dataset& data) {
  std::vector<std::string> out;
  out.reserve(data.size());
  for (const auto& inst : data.instances) out.push_back(inst.target);
  return out;
}

std::vector<std::string> majority_classifier(const Dataset& train, const Dataset& test,
                                             LabelKind kind) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const auto& inst : train.instances)
    if (auto l = label_of(inst, kind)) ++counts[inst.target][*l];
  std::map<std::string, std::string> majority;
  for (const auto& [target, c] : counts) {
    // std::map iterates labels alphabetically, so the first maximum wins ties.
    auto best = c.begin();
    for (auto it = c.begin(); it != c.end(); ++it)
      if (it->second > best->second) best = it;
    majority[target] = best->first;
  }
  std::vector<std::string> out;
  out.reserve(test.size());
  for (const auto& inst : test.instances) {
    auto it = majority.find(inst.target);
    if (it == majority.end())
      throw DataError("target '" + inst.target + "' has no labeled training instances");
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> random_classifier(std::size_t n, std::uint64_t seed, LabelKind kind) {
  const auto labels = label_names(kind);
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(labels[rng.index(labels.size())]);
  return out;
}

RandomExpectation random_expectation(const Dataset& test, std::size_t draws, std::uint64_t seed,
                                     LabelKind kind) {
  if (draws == 0) throw ConfigError("random expectation needs at least one draw");
  const auto gold = gold_labels(test, kind);
  const auto targets = instance_targets(test);
  RandomExpectation r;
  r.draws = draws;
  for (std::size_t d = 0; d < draws; ++d) {
    const auto pred = random_classifier(test.size(), seed + d, kind);
    const auto rep = evaluate(gold, pred, targets, kind);
    r.f_macroT += rep.f_macroT;
    r.f_microT += rep.f_microT;
    if (r.per_target.empty()) {
      r.per_target = rep.per_target;
      continue;
    }
    for (std::size_t t = 0; t < rep.per_target.size(); ++t) {
      r.per_target[t].f_average += rep.per_target[t].f_average;
      r.per_target[t].accuracy += rep.per_target[t].accuracy;
    }
  }
  const double n = static_cast<double>(draws);
  r.f_macroT /= n;
  r.f_microT /= n;
  for (auto& t : r.per_target) {
    t.f_average /= n;
    t.accuracy /= n;
  }
  return r;
}

std::string_view to_string(SentimentMapping m) {
  switch (m) {
    case SentimentMapping::PositiveFavor: return "positive->favor";
    case SentimentMapping::PositiveAgainst: return "positive->against";
    case SentimentMapping::AllNeither: return "all->neither";
  }
  return "?";
}

Stance map_sentiment(Sentiment s, SentimentMapping m) {
  if (s == Sentiment::Neither || m == SentimentMapping::AllNeither) return Stance::Neither;
  const bool pos = s == Sentiment::Positive;
  if (m == SentimentMapping::PositiveFavor) return pos ? Stance::Favor : Stance::Against;
  return pos ? Stance::Against : Stance::Favor;
}

OracleResult oracle_sentiment(const Dataset& test) {
  const auto a = annotations(test, false);
  OracleResult r;
  r.predictions.resize(a.gold.size());
  for (const auto& t : ordered_targets(a.targets)) {
    std::vector<std::size_t> idx;
    std::vector<std::string> gold;
    for (std::size_t i = 0; i < a.gold.size(); ++i)
      if (a.targets[i] == t) {
        idx.push_back(i);
        gold.push_back(a.gold[i]);
      }
    double best = -1;
    for (auto m : {SentimentMapping::PositiveFavor, SentimentMapping::PositiveAgainst}) {
      std::vector<std::string> pred;
      for (auto i : idx) pred.push_back(stance_name(map_sentiment(a.sentiment[i], m)));
      const double f = f_average(gold, pred, "favor", "against");
      if (f > best) {
        best = f;
        r.to_target[t] = m;
        for (std::size_t k = 0; k < idx.size(); ++k) r.predictions[idx[k]] = pred[k];
      }
    }
  }
  r.report = evaluate(a.gold, r.predictions, a.targets, LabelKind::Stance);
  return r;
}

OracleResult oracle_sentiment_target(const Dataset& test) {
  const auto a = annotations(test, true);
  OracleResult r;
  r.predictions.resize(a.gold.size());
  const SentimentMapping polar[] = {SentimentMapping::PositiveFavor,
                                    SentimentMapping::PositiveAgainst};
  const SentimentMapping any[] = {SentimentMapping::PositiveFavor,
                                  SentimentMapping::PositiveAgainst, SentimentMapping::AllNeither};
  for (const auto& t : ordered_targets(a.targets)) {
    std::vector<std::size_t> idx;
    std::vector<std::string> gold;
    for (std::size_t i = 0; i < a.gold.size(); ++i)
      if (a.targets[i] == t) {
        idx.push_back(i);
        gold.push_back(a.gold[i]);
      }
    double best = -1;
    for (auto mt : polar)
      for (auto mo : any) {
        std::vector<std::string> pred;
        for (auto i : idx) {
          Stance s = Stance::Neither;
          if (*a.opinion[i] == OpinionTowards::Target) s = map_sentiment(a.sentiment[i], mt);
          else if (*a.opinion[i] == OpinionTowards::Other) s = map_sentiment(a.sentiment[i], mo);
          pred.push_back(stance_name(s));
        }
        const double f = f_average(gold, pred, "favor", "against");
        if (f > best) {
          best = f;
          r.to_target[t] = mt;
          r.to_other[t] = mo;
          for (std::size_t k = 0; k < idx.size(); ++k) r.predictions[idx[k]] = pred[k];
        }
      }
  }
  r.report = evaluate(a.gold, r.predictions, a.targets, LabelKind::Stance);
  return r;
}

HashtagResult hashtag_stance_classifier(const Dataset& test, const SiHashtagMap& map) {
  HashtagResult r;
  for (const auto& inst : test.instances) {
    if (!inst.query_hashtag || !inst.stance || *inst.stance == Stance::Neither) continue;
    auto tag = strings::to_lower(strings::trim(*inst.query_hashtag));
    if (tag.empty()) continue;
    if (tag.front() != '#') tag.insert(tag.begin(), '#');
    auto it = map.find(tag);
    if (it == map.end()) throw DataError("query hashtag '" + *inst.query_hashtag + "' is not in the hashtag map");
    ++r.n;
    r.correct += it->second == *inst.stance;
  }
  r.accuracy = ratio(r.correct, r.n);
  return r;
}

SubsetReports evaluate_by_opinion_subset(const Dataset& data, std::span<const std::string> pred,
                                         LabelKind kind) {
  check_lengths(data.size(), pred.size());
  SubsetReports out;
  for (auto which : {OpinionTowards::Target, OpinionTowards::Other}) {
    std::vector<std::string> g, p, t;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& inst = data.instances[i];
      if (inst.opinion_towards != which) continue;
      auto l = label_of(inst, kind);
      if (!l) throw DataError("instance '" + inst.id + "' is missing the requested label");
      g.push_back(*l);
      p.push_back(pred[i]);
      t.push_back(inst.target);
    }
    if (g.empty()) continue;
    (which == OpinionTowards::Target ? out.to_target : out.to_other) = evaluate(g, p, t, kind);
  }
  return out;
}

void write_report_text(std::ostream& out, const EvalReport& r, std::string_view prefix) {
  const std::string p(prefix);
  out << p << "n\t" << r.n << '\n';
  out << p << "f_macroT\t" << fixed4(r.f_macroT) << '\n';
  out << p << "f_microT\t" << fixed4(r.f_microT) << '\n';
  out << p << "accuracy\t" << fixed4(r.accuracy) << '\n';
  for (const auto& c : r.classes) {
    out << p << "class." << c.label << ".precision\t" << fixed4(c.precision) << '\n';
    out << p << "class." << c.label << ".recall\t" << fixed4(c.recall) << '\n';
    out << p << "class." << c.label << ".f1\t" << fixed4(c.f1) << '\n';
  }
  for (const auto& t : r.per_target) {
    out << p << "target." << t.target << ".n\t" << t.n << '\n';
    out << p << "target." << t.target << ".f_average\t" << fixed4(t.f_average) << '\n';
  }
}

nlohmann::json report_json(const EvalReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["main_classes"] = {r.main.first, r.main.second};
  j["f_average"] = r.f_average;
  j["f_macroT"] = r.f_macroT;
  j["f_microT"] = r.f_microT;
  j["accuracy"] = r.accuracy;
  auto& classes = j["classes"] = nlohmann::json::object();
  for (const auto& c : r.classes)
    classes[c.label] = {{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1},
                        {"tp", c.tp},               {"fp", c.fp},         {"fn", c.fn}};
  auto& targets = j["per_target"] = nlohmann::json::array();
  for (const auto& t : r.per_target)
    targets.push_back({{"target", t.target}, {"n", t.n}, {"f_average", t.f_average},
                       {"accuracy", t.accuracy}});
  return j;
}

}  // namespace stance
