// backend.cc

// Copyright 2026  The childaugment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "childaug/backend.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "childaug/error.h"
#include "childaug/random.h"

namespace childaug {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_dims(std::size_t a, std::size_t b, const char *what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension " << a << " vs " << b;
    throw ShapeError(os.str());
  }
}

std::vector<double> normalized(const std::vector<double> &v) {
  const double n = std::sqrt(norm2(v));
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
  return out;
}

// Operating points of the accept-if-score>=threshold detector, one per
// distinct score, ordered from reject-all to accept-all.
struct RocPoint {
  double p_miss;
  double p_fa;
  double threshold;
};

std::vector<RocPoint> roc_points(std::span<const ScoredTrial> scores) {
  std::size_t n_tar = 0;
  for (const ScoredTrial &s : scores) n_tar += s.is_target ? 1 : 0;
  const std::size_t n_non = scores.size() - n_tar;
  if (n_tar == 0 || n_non == 0)
    throw DomainError("scores need both target and nontarget trials");

  std::vector<ScoredTrial> sorted(scores.begin(), scores.end());
  for (const ScoredTrial &s : sorted)
    if (!std::isfinite(s.score)) throw DomainError("non-finite score");
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredTrial &a, const ScoredTrial &b) {
              return a.score > b.score;
            });

  std::vector<RocPoint> pts;
  pts.push_back({1.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t acc_tar = 0, acc_non = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double s = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == s; ++i)
      (sorted[i].is_target ? acc_tar : acc_non) += 1;
    pts.push_back({static_cast<double>(n_tar - acc_tar) / n_tar,
                   static_cast<double>(acc_non) / n_non, s});
  }
  return pts;
}

}  // namespace

EmbeddingSet::EmbeddingSet(std::vector<Embedding> items)
    : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Embedding &e = items_[i];
    if (i == 0) dim_ = e.vector.size();
    if (e.vector.size() != dim_)
      throw ShapeError("embedding '" + e.id + "' has dimension " +
                       std::to_string(e.vector.size()) + ", expected " +
                       std::to_string(dim_));
    double n = 0.0;
    for (double x : e.vector) {
      if (!std::isfinite(x))
        throw DomainError("embedding '" + e.id + "' is not finite");
      n += x * x;
    }
    if (!(n > 0.0)) throw DomainError("embedding '" + e.id + "' has zero norm");
    if (!index_.emplace(e.id, i).second)
      throw DomainError("duplicate embedding id '" + e.id + "'");
  }
}

const Embedding &EmbeddingSet::at(const std::string &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw DomainError("id '" + id + "' not found in embeddings");
  return items_[it->second];
}

double cosine_score(std::span<const double> e, std::span<const double> t) {
  check_dims(e.size(), t.size(), "cosine score");
  double dot = 0.0, ne = 0.0, nt = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    dot += e[i] * t[i];
    ne += e[i] * e[i];
    nt += t[i] * t[i];
  }
  if (!(ne > 0.0) || !(nt > 0.0))
    throw DomainError("cosine score of a zero-norm vector");
  return std::clamp(dot / std::sqrt(ne * nt), -1.0, 1.0);
}

double weighted_cosine_score(std::span<const double> e,
                             std::span<const double> t,
                             std::span<const double> w) {
  check_dims(e.size(), t.size(), "weighted cosine score");
  check_dims(e.size(), w.size(), "weight vector");
  double dot = 0.0, ne = 0.0, nt = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double a = w[i] * e[i];
    const double b = w[i] * t[i];
    dot += a * b;
    ne += a * a;
    nt += b * b;
  }
  if (!(ne > 0.0) || !(nt > 0.0))
    throw DomainError("weights zero out an embedding entirely");
  return std::clamp(dot / std::sqrt(ne * nt), -1.0, 1.0);
}

EerResult compute_eer(std::span<const ScoredTrial> scores) {
  const std::vector<RocPoint> pts = roc_points(scores);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const RocPoint &a = pts[k - 1];
    const RocPoint &b = pts[k];
    const double da = a.p_miss - a.p_fa;
    const double db = b.p_miss - b.p_fa;
    if (db > 0.0) continue;
    const double t = da == db ? 0.0 : da / (da - db);
    EerResult r;
    r.eer = a.p_miss + t * (b.p_miss - a.p_miss);
    r.threshold = std::isfinite(a.threshold)
                      ? a.threshold + t * (b.threshold - a.threshold)
                      : b.threshold;
    return r;
  }
  // Unreachable: the accept-all point has p_miss = 0, p_fa = 1.
  return {0.0, pts.back().threshold};
}

double compute_min_dcf(std::span<const ScoredTrial> scores, double p_target,
                       double c_miss, double c_fa) {
  if (!(p_target > 0.0 && p_target < 1.0))
    throw DomainError("target prior must lie in (0, 1)");
  if (!(c_miss > 0.0) || !(c_fa > 0.0))
    throw DomainError("detection costs must be positive");
  const std::vector<RocPoint> pts = roc_points(scores);
  const double norm = std::min(p_target * c_miss, (1.0 - p_target) * c_fa);
  double best = std::numeric_limits<double>::infinity();
  for (const RocPoint &p : pts)
    best = std::min(best, p_target * c_miss * p.p_miss +
                              (1.0 - p_target) * c_fa * p.p_fa);
  return best / norm;
}

void TrainConfig::validate() const {
  if (!(lambda_reg >= 0.0) || !std::isfinite(lambda_reg))
    throw ConfigError("lambda must be a nonnegative number");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("learning rate must be positive");
  if (batch_size < 2) throw ConfigError("batch size must be at least 2");
  if (!(heldout_fraction >= 0.0 && heldout_fraction < 1.0))
    throw ConfigError("held-out fraction must lie in [0, 1)");
}

TrialBatchData resolve_trials(std::span<const Trial> trials,
                              const EmbeddingSet &embeddings) {
  TrialBatchData d;
  for (const Trial &t : trials) {
    if (t.label == TrialLabel::kUnlabeled) continue;
    d.enroll.push_back(normalized(embeddings.at(t.enroll_id).vector));
    d.test.push_back(normalized(embeddings.at(t.test_id).vector));
    d.is_target.push_back(t.label == TrialLabel::kTarget);
  }
  return d;
}

double weighted_cosine_loss(const TrialBatchData &data,
                            std::span<const std::size_t> batch,
                            std::span<const double> w, double lambda_reg,
                            bool normalize_in_loss,
                            std::vector<double> *gradient) {
  const std::size_t d = w.size();
  if (data.size() > 0) check_dims(data.dim(), d, "weight vector");
  std::vector<std::size_t> all;
  if (batch.empty()) {
    all.resize(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    batch = all;
  }
  std::size_t n_tar = 0;
  for (std::size_t i : batch) n_tar += data.is_target[i] ? 1 : 0;
  const std::size_t n_non = batch.size() - n_tar;
  if (n_tar == 0 || n_non == 0)
    throw TrainingError("batch needs both target and nontarget trials");

  std::vector<double> u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = w[i] * w[i];
  std::vector<double> gu(d, 0.0);  // d loss / d u

  double loss = 0.0;
  for (std::size_t idx : batch) {
    const std::vector<double> &e = data.enroll[idx];
    const std::vector<double> &t = data.test[idx];
    const bool tar = data.is_target[idx];
    const double sign = tar ? -1.0 / n_tar : 1.0 / n_non;
    double s;
    if (!normalize_in_loss) {
      s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += u[i] * e[i] * t[i];
      if (gradient != nullptr)
        for (std::size_t i = 0; i < d; ++i) gu[i] += sign * e[i] * t[i];
    } else {
      double dot = 0.0, pe = 0.0, pt = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        dot += u[i] * e[i] * t[i];
        pe += u[i] * e[i] * e[i];
        pt += u[i] * t[i] * t[i];
      }
      if (!(pe > 0.0) || !(pt > 0.0))
        throw NumericError("weights zero out an embedding entirely");
      const double den = std::sqrt(pe * pt);
      s = dot / den;
      if (gradient != nullptr)
        for (std::size_t i = 0; i < d; ++i)
          gu[i] += sign * (e[i] * t[i] / den -
                           0.5 * s * (e[i] * e[i] / pe + t[i] * t[i] / pt));
    }
    loss += tar ? (1.0 - s) / n_tar : (1.0 + s) / n_non;
  }
  double reg = 0.0;
  for (std::size_t i = 0; i < d; ++i) reg += u[i];
  loss += lambda_reg * reg;

  if (gradient != nullptr) {
    gradient->assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      (*gradient)[i] = 2.0 * w[i] * (gu[i] + lambda_reg);
  }
  return loss;
}

namespace {

double eer_of(const TrialBatchData &data, std::span<const double> w) {
  std::vector<ScoredTrial> s(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    s[i] = {weighted_cosine_score(data.enroll[i], data.test[i], w),
            data.is_target[i]};
  return compute_eer(s).eer;
}

bool has_both(const TrialBatchData &d) {
  const auto n = std::count(d.is_target.begin(), d.is_target.end(), true);
  return n > 0 && static_cast<std::size_t>(n) < d.size();
}

TrialBatchData subset(const TrialBatchData &d,
                      const std::vector<std::size_t> &idx) {
  TrialBatchData out;
  for (std::size_t i : idx) {
    out.enroll.push_back(d.enroll[i]);
    out.test.push_back(d.test[i]);
    out.is_target.push_back(d.is_target[i]);
  }
  return out;
}

std::string echo(const TrainConfig &c) {
  std::ostringstream os;
  os << "lambda=" << c.lambda_reg << " lr=" << c.learning_rate
     << " batch=" << c.batch_size << " epochs=" << c.epochs
     << " seed=" << c.seed << " normalize_in_loss=" << c.normalize_in_loss;
  return os.str();
}

template <typename T>
void shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

TrainReport train_weighted_cosine(std::span<const Trial> trials,
                                  const EmbeddingSet &embeddings,
                                  const TrainConfig &config,
                                  std::span<const Trial> heldout) {
  config.validate();
  TrialBatchData all = resolve_trials(trials, embeddings);
  if (!has_both(all))
    throw TrainingError("training trials need both target and nontarget labels");

  Rng rng(config.seed);
  TrialBatchData train, held;
  if (!heldout.empty()) {
    train = std::move(all);
    held = resolve_trials(heldout, embeddings);
    if (!has_both(held))
      throw TrainingError("held-out trials need both classes");
  } else {
    // Stratified split so both sides keep both classes.
    std::vector<std::size_t> tar, non;
    for (std::size_t i = 0; i < all.size(); ++i)
      (all.is_target[i] ? tar : non).push_back(i);
    Rng split = rng.derive(1);
    shuffle(tar, split);
    shuffle(non, split);
    const auto n_ht = static_cast<std::size_t>(
        std::floor(config.heldout_fraction * static_cast<double>(tar.size())));
    const auto n_hn = static_cast<std::size_t>(
        std::floor(config.heldout_fraction * static_cast<double>(non.size())));
    if (n_ht == 0 || n_hn == 0 || n_ht == tar.size() || n_hn == non.size()) {
      train = all;
      held = std::move(all);
    } else {
      std::vector<std::size_t> tr, he;
      he.insert(he.end(), tar.begin(), tar.begin() + n_ht);
      he.insert(he.end(), non.begin(), non.begin() + n_hn);
      tr.insert(tr.end(), tar.begin() + n_ht, tar.end());
      tr.insert(tr.end(), non.begin() + n_hn, non.end());
      std::sort(tr.begin(), tr.end());
      std::sort(he.begin(), he.end());
      train = subset(all, tr);
      held = subset(all, he);
    }
  }

  const std::size_t d = embeddings.dim();
  std::vector<double> w(d, 1.0);
  TrainReport rep;
  rep.initial_loss = weighted_cosine_loss(train, {}, w, config.lambda_reg,
                                          config.normalize_in_loss);
  rep.initial_heldout_eer = eer_of(held, w);
  rep.weights = w;
  rep.final_loss = rep.initial_loss;
  rep.selected_heldout_eer = rep.initial_heldout_eer;
  double best_train_eer = eer_of(train, w);

  std::vector<std::size_t> tar, non;
  for (std::size_t i = 0; i < train.size(); ++i)
    (train.is_target[i] ? tar : non).push_back(i);
  const std::size_t half = config.batch_size / 2;
  const std::size_t per_epoch =
      std::max<std::size_t>(1, (train.size() + config.batch_size - 1) /
                                   config.batch_size);

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  std::vector<double> m(d, 0.0), v(d, 0.0), g;
  std::size_t step = 0;
  std::size_t ti = 0, ni = 0;
  Rng order = rng.derive(2);
  shuffle(tar, order);
  shuffle(non, order);
  std::vector<std::size_t> batch;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t b = 0; b < per_epoch; ++b) {
      batch.clear();
      // Class-balanced batch, cycling through reshuffled class lists.
      for (std::size_t k = 0; k < half; ++k) {
        if (ti == tar.size()) {
          shuffle(tar, order);
          ti = 0;
        }
        if (ni == non.size()) {
          shuffle(non, order);
          ni = 0;
        }
        batch.push_back(tar[ti++]);
        batch.push_back(non[ni++]);
      }
      const double loss = weighted_cosine_loss(
          train, batch, w, config.lambda_reg, config.normalize_in_loss, &g);
      if (!std::isfinite(loss))
        throw NumericError("training loss diverged at epoch " +
                           std::to_string(epoch) + " (" + echo(config) + ")");
      ++step;
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (std::size_t i = 0; i < d; ++i) {
        m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
        v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
        w[i] -= config.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + kEps);
      }
    }
    for (double x : w)
      if (!std::isfinite(x))
        throw NumericError("weights diverged at epoch " + std::to_string(epoch) +
                           " (" + echo(config) + ")");
    double norm = 0.0;
    for (double x : w) norm += x * x;
    if (!(norm > 0.0)) continue;

    const double train_loss = weighted_cosine_loss(
        train, {}, w, config.lambda_reg, config.normalize_in_loss);
    if (!std::isfinite(train_loss))
      throw NumericError("training loss diverged at epoch " +
                         std::to_string(epoch) + " (" + echo(config) + ")");
    if (train_loss > rep.initial_loss) continue;
    double held_eer, train_eer;
    try {
      held_eer = eer_of(held, w);
      train_eer = eer_of(train, w);
    } catch (const DomainError &) {
      continue;  // a weight pattern that zeroes some embedding
    }
    if (held_eer < rep.selected_heldout_eer ||
        (held_eer == rep.selected_heldout_eer && train_eer < best_train_eer)) {
      rep.weights = w;
      rep.selected_epoch = epoch;
      rep.selected_heldout_eer = held_eer;
      rep.final_loss = train_loss;
      best_train_eer = train_eer;
    }
  }
  return rep;
}

std::vector<double> score_trials(std::span<const Trial> trials,
                                 const EmbeddingSet &embeddings,
                                 std::span<const double> weights) {
  if (!weights.empty() && trials.size() > 0)
    check_dims(weights.size(), embeddings.dim(), "weights vs embeddings");
  std::vector<double> out;
  out.reserve(trials.size());
  for (const Trial &t : trials) {
    const auto &e = embeddings.at(t.enroll_id).vector;
    const auto &x = embeddings.at(t.test_id).vector;
    out.push_back(weights.empty() ? cosine_score(e, x)
                                  : weighted_cosine_score(e, x, weights));
  }
  return out;
}

}  // namespace childaug
