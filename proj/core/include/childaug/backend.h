// childaug/backend.h

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

#ifndef CHILDAUG_BACKEND_H_
#define CHILDAUG_BACKEND_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace childaug {

struct Embedding {
  std::string id;
  std::vector<double> vector;
};

/// Embeddings of one dimension, addressable by id.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  /// Throws ShapeError on mixed dimensions, DomainError on duplicate ids or
  /// non-finite / zero-norm vectors.
  explicit EmbeddingSet(std::vector<Embedding> items);

  std::size_t size() const { return items_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Embedding> &items() const { return items_; }
  /// Throws DomainError naming the id when absent.
  const Embedding &at(const std::string &id) const;
  bool contains(const std::string &id) const { return index_.count(id) > 0; }

 private:
  std::vector<Embedding> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
};

enum class TrialLabel { kTarget, kNontarget, kUnlabeled };

struct Trial {
  TrialLabel label = TrialLabel::kUnlabeled;
  std::string enroll_id;
  std::string test_id;
};

struct ScoredTrial {
  double score = 0.0;
  bool is_target = false;
};

/// Cosine similarity, in [-1, 1]. Throws DomainError on a zero-norm vector
/// and ShapeError on mismatched dimensions.
double cosine_score(std::span<const double> e, std::span<const double> t);

/// Cosine similarity of w*e and w*t (element-wise).
double weighted_cosine_score(std::span<const double> e,
                             std::span<const double> t,
                             std::span<const double> w);

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// Equal error rate with linear interpolation between adjacent ROC operating
/// points (accept when score >= threshold). Throws DomainError unless both
/// classes are present.
EerResult compute_eer(std::span<const ScoredTrial> scores);

/// Normalized minimum detection cost over all thresholds.
double compute_min_dcf(std::span<const ScoredTrial> scores,
                       double p_target = 0.01, double c_miss = 1.0,
                       double c_fa = 1.0);

struct TrainConfig {
  double lambda_reg = 1e-4;
  double learning_rate = 1e-3;
  std::size_t batch_size = 256;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
  // Score with the normalized weighted cosine inside the loss instead of the
  // plain weighted inner product.
  bool normalize_in_loss = false;
  // Fraction of trials held out for model selection when no explicit
  // held-out set is given.
  double heldout_fraction = 0.1;

  void validate() const;
};

/// Trials resolved against an embedding set. Vectors are length-normalized.
struct TrialBatchData {
  std::vector<std::vector<double>> enroll;
  std::vector<std::vector<double>> test;
  std::vector<bool> is_target;

  std::size_t size() const { return is_target.size(); }
  std::size_t dim() const { return enroll.empty() ? 0 : enroll.front().size(); }
};

/// Resolves labeled trials (unlabeled ones are skipped). Throws DomainError
/// for unknown ids.
TrialBatchData resolve_trials(std::span<const Trial> trials,
                              const EmbeddingSet &embeddings);

/// Batch loss: mean over targets of (1 - s) + mean over nontargets of
/// (1 + s) + lambda * |w|^2, where s is sum_i w_i^2 e_i t_i (or the
/// weighted cosine with normalize_in_loss). Indices select the batch; an
/// empty selection means every trial. Writes the gradient when asked.
double weighted_cosine_loss(const TrialBatchData &data,
                            std::span<const std::size_t> batch,
                            std::span<const double> w, double lambda_reg,
                            bool normalize_in_loss,
                            std::vector<double> *gradient = nullptr);

struct TrainReport {
  std::vector<double> weights;
  double initial_loss = 0.0;
  double final_loss = 0.0;       // full training set, selected weights
  double initial_heldout_eer = 0.0;
  double selected_heldout_eer = 0.0;
  std::size_t selected_epoch = 0;  // 0 = initialization
};

/// Adam on the batch loss from w = 1, with class-balanced batches. After
/// each epoch the weights are scored on the held-out trials; the returned
/// weights have the lowest held-out EER (then training EER, then earliest
/// epoch) among candidates whose training loss does not exceed the initial
/// loss. Throws TrainingError for single-class data and NumericError when
/// the loss diverges.
TrainReport train_weighted_cosine(std::span<const Trial> trials,
                                  const EmbeddingSet &embeddings,
                                  const TrainConfig &config,
                                  std::span<const Trial> heldout = {});

/// Scores trials; unlabeled trials are included with is_target = false.
std::vector<double> score_trials(std::span<const Trial> trials,
                                 const EmbeddingSet &embeddings,
                                 std::span<const double> weights = {});

}  // namespace childaug

#endif  // CHILDAUG_BACKEND_H_
