#include "stance/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "stance/error.hpp"
#include "stance/eval.hpp"
#include "stance/rng.hpp"
#include "stance/strings.hpp"

namespace stance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(std::span<const SparseVector> X) {
  for (std::size_t i = 1; i < X.size(); ++i)
    if (X[i].dim != X[0].dim)
      throw DataError("vector " + std::to_string(i) + " has dimension " +
                      std::to_string(X[i].dim) + ", expected " + std::to_string(X[0].dim));
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out.push_back(s[i]);
      continue;
    }
    switch (s[++i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: out.push_back(s[i]);
    }
  }
  return out;
}

LabelKind label_kind(Task t) { return t == Task::Stance ? LabelKind::Stance : LabelKind::Sentiment; }

Metric task_metric(Task t) {
  const std::string a = t == Task::Stance ? "favor" : "positive";
  const std::string b = t == Task::Stance ? "against" : "negative";
  return [a, b](const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
    return f_average(gold, pred, a, b);
  };
}

}  // namespace

void TrainConfig::validate() const {
  if (!(C > 0)) throw ConfigError("C must be > 0");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (!(tolerance > 0)) throw ConfigError("tolerance must be > 0");
  for (double c : C_grid)
    if (!(c > 0)) throw ConfigError("C grid values must be > 0");
  if (folds < 2) throw ConfigError("folds must be >= 2");
}

BinaryModel train_binary(std::span<const SparseVector> X, std::span<const int> y, double C,
                         const TrainConfig& config) {
  if (X.size() != y.size()) throw DataError("feature and label counts differ");
  if (X.empty()) throw DataError("no training examples");
  if (!(C > 0)) throw ConfigError("C must be > 0");
  check_dims(X);

  const std::size_t l = X.size();
  BinaryModel m;
  m.weights.assign(X[0].dim, 0.0);
  m.alpha.assign(l, 0.0);
  auto& w = m.weights;
  auto& alpha = m.alpha;

  std::vector<double> qd(l);
  for (std::size_t i = 0; i < l; ++i) qd[i] = X[i].squared_norm() + 1.0;
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), 0);

  Rng rng(config.seed);
  std::size_t active = l;
  double pg_max_old = kInf, pg_min_old = -kInf;
  double alpha_sum = 0;

  while (m.epochs < config.max_epochs) {
    double pg_max_new = -kInf, pg_min_new = kInf;
    rng.shuffle(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(active));
    for (std::size_t s = 0; s < active; ++s) {
      const std::size_t i = order[s];
      const double yi = y[i] > 0 ? 1.0 : -1.0;
      const double g = yi * m.decision(X[i]) - 1.0;
      double pg = 0;
      if (alpha[i] == 0) {
        if (config.shrinking && g > pg_max_old) {
          std::swap(order[s], order[--active]);
          --s;
          continue;
        }
        if (g < 0) pg = g;
      } else if (alpha[i] == C) {
        if (config.shrinking && g < pg_min_old) {
          std::swap(order[s], order[--active]);
          --s;
          continue;
        }
        if (g > 0) pg = g;
      } else {
        pg = g;
      }
      pg_max_new = std::max(pg_max_new, pg);
      pg_min_new = std::min(pg_min_new, pg);
      if (std::abs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::min(std::max(old - g / qd[i], 0.0), C);
        const double d = (alpha[i] - old) * yi;
        alpha_sum += alpha[i] - old;
        const auto& x = X[i];
        for (std::size_t k = 0; k < x.nnz(); ++k) w[x.index[k]] += d * x.value[k];
        m.bias += d;
      }
    }
    ++m.epochs;
    double wn = m.bias * m.bias;
    for (double v : w) wn += v * v;
    m.dual_objective.push_back(alpha_sum - 0.5 * wn);

    if (pg_max_new - pg_min_new <= config.tolerance) {
      if (active == l) {
        m.converged = true;
        break;
      }
      active = l;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max_new <= 0 ? kInf : pg_max_new;
    pg_min_old = pg_min_new >= 0 ? -kInf : pg_min_new;
  }
  return m;
}

double primal_objective(const BinaryModel& m, std::span<const SparseVector> X,
                        std::span<const int> y, double C) {
  double p = m.bias * m.bias;
  for (double v : m.weights) p += v * v;
  p *= 0.5;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double yi = y[i] > 0 ? 1.0 : -1.0;
    p += C * std::max(0.0, 1.0 - yi * m.decision(X[i]));
  }
  return p;
}

double dual_objective(std::span<const SparseVector> X, std::span<const int> y,
                      std::span<const double> alpha) {
  if (X.empty()) return 0;
  std::vector<double> w(X[0].dim, 0.0);
  double b = 0, sum = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double c = alpha[i] * (y[i] > 0 ? 1.0 : -1.0);
    sum += alpha[i];
    for (std::size_t k = 0; k < X[i].nnz(); ++k) w[X[i].index[k]] += c * X[i].value[k];
    b += c;
  }
  double wn = b * b;
  for (double v : w) wn += v * v;
  return sum - 0.5 * wn;
}

std::vector<double> LinearModel::decision_values(const SparseVector& x) const {
  if (x.dim != dim)
    throw DataError("vector dimension " + std::to_string(x.dim) + " does not match model " +
                    std::to_string(dim));
  std::vector<double> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) out[c] = x.dot(weights[c]) + bias[c];
  return out;
}

std::size_t LinearModel::predict_index(const SparseVector& x) const {
  const auto dv = decision_values(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < dv.size(); ++c) {
    if (dv[c] > dv[best] || (dv[c] == dv[best] && priors[c] > priors[best])) best = c;
  }
  return best;
}

std::vector<std::string> LinearModel::predict_all(std::span<const SparseVector> X) const {
  std::vector<std::string> out;
  out.reserve(X.size());
  for (const auto& x : X) out.push_back(predict(x));
  return out;
}

LinearModel train_multiclass(std::span<const SparseVector> X,
                             std::span<const std::string> labels, double C,
                             const TrainConfig& config, std::vector<std::string> classes) {
  if (X.size() != labels.size()) throw DataError("feature and label counts differ");
  if (X.empty()) throw DataError("no training examples");
  check_dims(X);
  if (classes.empty()) {
    std::set<std::string> distinct(labels.begin(), labels.end());
    classes.assign(distinct.begin(), distinct.end());
  }
  for (const auto& l : labels)
    if (std::find(classes.begin(), classes.end(), l) == classes.end())
      throw DataError("label '" + l + "' is not one of the model classes");

  LinearModel m;
  m.classes = std::move(classes);
  m.dim = X[0].dim;
  std::vector<int> y(X.size());
  for (const auto& cls : m.classes) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      y[i] = labels[i] == cls ? 1 : -1;
      count += labels[i] == cls;
    }
    auto b = train_binary(X, y, C, config);
    m.weights.push_back(std::move(b.weights));
    m.bias.push_back(b.bias);
    m.priors.push_back(static_cast<double>(count) / static_cast<double>(X.size()));
  }
  return m;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const std::string> labels,
                                                       int folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (labels.size() < static_cast<std::size_t>(folds))
    throw DataError(std::to_string(labels.size()) + " examples cannot fill " +
                    std::to_string(folds) + " folds");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  std::size_t next = 0;
  for (auto& [label, idx] : by_class) {
    rng.shuffle(idx.begin(), idx.end());
    for (auto i : idx) out[next++ % out.size()].push_back(i);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

CvResult cross_validate(std::span<const SparseVector> X, std::span<const std::string> labels,
                        const std::vector<std::string>& classes, const TrainConfig& config,
                        const Metric& metric) {
  config.validate();
  if (config.C_grid.empty()) throw ConfigError("C grid is empty");
  const auto folds = stratified_folds(labels, config.folds, config.seed);
  std::vector<int> fold_of(X.size());
  for (std::size_t f = 0; f < folds.size(); ++f)
    for (auto i : folds[f]) fold_of[i] = static_cast<int>(f);

  CvResult r;
  double best = -kInf;
  for (double C : config.C_grid) {
    double total = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<SparseVector> tx;
      std::vector<std::string> ty;
      for (std::size_t i = 0; i < X.size(); ++i)
        if (fold_of[i] != static_cast<int>(f)) {
          tx.push_back(X[i]);
          ty.push_back(labels[i]);
        }
      auto model = train_multiclass(tx, ty, C, config, classes);
      std::vector<std::string> gold, pred;
      for (auto i : folds[f]) {
        gold.push_back(labels[i]);
        pred.push_back(model.predict(X[i]));
      }
      total += metric(gold, pred);
    }
    const double mean = total / static_cast<double>(folds.size());
    r.scores.emplace_back(C, mean);
    if (mean > best || (mean == best && C < r.best_C)) {
      best = mean;
      r.best_C = C;
    }
  }
  return r;
}

std::string_view to_string(Task t) { return t == Task::Stance ? "stance" : "sentiment"; }

Task parse_task(std::string_view s) {
  auto v = strings::to_lower(strings::trim(s));
  if (v == "stance") return Task::Stance;
  if (v == "sentiment") return Task::Sentiment;
  throw ConfigError("unknown task '" + std::string(s) + "'");
}

TargetModel train_model(Task task, std::string scope, const Dataset& train,
                        const FeatureConfig& features, const FeatureResources& resources,
                        const TrainConfig& config) {
  config.validate();
  if (train.empty()) throw DataError("no training instances for '" + scope + "'");
  const auto kind = label_kind(task);
  std::vector<std::string> labels;
  labels.reserve(train.size());
  for (const auto& inst : train.instances) {
    auto l = label_of(inst, kind);
    if (!l) throw DataError("instance '" + inst.id + "' has no " + std::string(to_string(task)) + " label");
    labels.push_back(*l);
  }
  auto classes = label_names(kind);
  std::sort(classes.begin(), classes.end());

  TargetModel tm;
  tm.task = task;
  tm.scope = std::move(scope);
  tm.features = features;
  const auto maps = extract_all(train, features, resources);
  tm.space = fit_space(maps);
  const auto X = vectorize_all(maps, tm.space);
  if (config.C_grid.empty()) {
    tm.C = config.C;
  } else if (config.C_grid.size() == 1) {
    tm.C = config.C_grid.front();
  } else {
    tm.cv = cross_validate(X, labels, classes, config, task_metric(task));
    tm.C = tm.cv->best_C;
  }
  tm.model = train_multiclass(X, labels, tm.C, config, classes);
  return tm;
}

StanceModelSet train_stance(const Dataset& train, const FeatureConfig& features,
                            const FeatureResources& resources, const TrainConfig& config,
                            const std::vector<std::string>& targets) {
  const auto names = targets.empty() ? train.target_names() : targets;
  if (names.empty()) throw DataError("training data has no targets");
  StanceModelSet out;
  for (const auto& t : names) {
    auto subset = train.only_target(t);
    if (subset.empty()) throw DataError("target '" + t + "' has no training instances");
    out.emplace(t, train_model(Task::Stance, t, subset, features, resources, config));
  }
  return out;
}

TargetModel train_sentiment(const Dataset& train, const FeatureConfig& features,
                            const FeatureResources& resources, const TrainConfig& config) {
  return train_model(Task::Sentiment, "*", train, features, resources, config);
}

std::vector<std::string> predict(const TargetModel& m, const Dataset& data,
                                 const FeatureResources& resources) {
  std::vector<std::string> out;
  out.reserve(data.size());
  for (const auto& inst : data.instances) {
    if (m.scope != "*" && inst.target != m.scope)
      throw DataError("instance '" + inst.id + "' has target '" + inst.target +
                      "' but the model is for '" + m.scope + "'");
    out.push_back(m.model.predict(vectorize(extract(inst, m.features, resources), m.space)));
  }
  return out;
}

void save_model(std::ostream& out, const TargetModel& m) {
  const auto& lm = m.model;
  auto row = [&](std::string_view key, const std::vector<double>& v) {
    out << key;
    for (double x : v) out << '\t' << strings::format_double(x);
    out << '\n';
  };
  out << "stance-svm-model\t1\n";
  out << "task\t" << to_string(m.task) << '\n';
  out << "scope\t" << escape(m.scope) << '\n';
  out << "features\t" << m.features.to_string() << '\n';
  out << "C\t" << strings::format_double(m.C) << '\n';
  if (m.cv)
    for (const auto& [c, s] : m.cv->scores)
      out << "cv\t" << strings::format_double(c) << '\t' << strings::format_double(s) << '\n';
  out << "classes";
  for (const auto& c : lm.classes) out << '\t' << escape(c);
  out << '\n';
  row("priors", lm.priors);
  row("bias", lm.bias);
  out << "dim\t" << lm.dim << '\n';
  for (std::size_t f = 0; f < lm.dim; ++f) {
    out << escape(m.space.names()[f]);
    for (std::size_t c = 0; c < lm.classes.size(); ++c)
      out << '\t' << strings::format_double(lm.weights[c][f]);
    out << '\n';
  }
  out << "end\n";
}

TargetModel load_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> DataError {
    return DataError("model line " + std::to_string(line_no) + ": " + why);
  };
  auto next = [&]() {
    if (!std::getline(in, line)) throw fail("unexpected end of file");
    ++line_no;
    return strings::split(line, '\t');
  };
  auto number = [&](const std::string& s) {
    auto v = strings::parse_double(s);
    if (!v) throw fail("bad number '" + s + "'");
    return *v;
  };

  auto cols = next();
  if (cols.size() != 2 || cols[0] != "stance-svm-model" || cols[1] != "1")
    throw fail("not a model file");
  TargetModel m;
  auto& lm = m.model;
  bool have_dim = false;
  while (!have_dim) {
    cols = next();
    const auto& key = cols[0];
    if (key == "task" && cols.size() == 2) {
      m.task = parse_task(cols[1]);
    } else if (key == "scope" && cols.size() == 2) {
      m.scope = unescape(cols[1]);
    } else if (key == "features" && cols.size() == 2) {
      m.features = FeatureConfig::parse(cols[1]);
    } else if (key == "C" && cols.size() == 2) {
      m.C = number(cols[1]);
    } else if (key == "cv" && cols.size() == 3) {
      if (!m.cv) m.cv = CvResult{};
      m.cv->scores.emplace_back(number(cols[1]), number(cols[2]));
    } else if (key == "classes") {
      for (std::size_t i = 1; i < cols.size(); ++i) lm.classes.push_back(unescape(cols[i]));
    } else if (key == "priors" || key == "bias") {
      auto& dst = key == "priors" ? lm.priors : lm.bias;
      for (std::size_t i = 1; i < cols.size(); ++i) dst.push_back(number(cols[i]));
    } else if (key == "dim" && cols.size() == 2) {
      auto d = strings::parse_int(cols[1]);
      if (!d || *d < 0) throw fail("bad dimension");
      lm.dim = static_cast<std::size_t>(*d);
      have_dim = true;
    } else {
      throw fail("unexpected header '" + key + "'");
    }
  }
  const auto k = lm.classes.size();
  if (k == 0 || lm.priors.size() != k || lm.bias.size() != k)
    throw fail("classes, priors and bias disagree");
  if (m.cv) m.cv->best_C = m.C;
  lm.weights.assign(k, std::vector<double>(lm.dim));
  std::vector<std::string> names;
  names.reserve(lm.dim);
  for (std::size_t f = 0; f < lm.dim; ++f) {
    cols = next();
    if (cols.size() != k + 1) throw fail("expected a name and " + std::to_string(k) + " weights");
    names.push_back(unescape(cols[0]));
    for (std::size_t c = 0; c < k; ++c) lm.weights[c][f] = number(cols[c + 1]);
  }
  cols = next();
  if (cols.size() != 1 || cols[0] != "end") throw fail("expected 'end'");
  m.space = FeatureSpace::from_names(std::move(names));
  if (m.space.size() != lm.dim) throw fail("duplicate feature names");
  return m;
}

}  // namespace stance
