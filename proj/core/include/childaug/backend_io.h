// childaug/backend_io.h

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

#ifndef CHILDAUG_BACKEND_IO_H_
#define CHILDAUG_BACKEND_IO_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "childaug/backend.h"

namespace childaug {

/// Embedding file: "EMB1", u32 count, u32 dim, then per record a u16 id
/// length, the id bytes and dim float32 values; all little-endian.
std::vector<Embedding> read_embedding_file(const std::filesystem::path &path);
std::vector<Embedding> read_embeddings(std::istream &is, const std::string &name);
void write_embedding_file(const std::filesystem::path &path,
                          std::span<const Embedding> items);
void write_embeddings(std::ostream &os, std::span<const Embedding> items);

/// A weight vector is stored as a one-record embedding file with id "weights".
std::vector<double> read_weight_file(const std::filesystem::path &path);
void write_weight_file(const std::filesystem::path &path,
                       std::span<const double> weights);

/// Trial list, one `<1|0|?> <enroll_id> <test_id>` per line. Blank lines and
/// lines starting with '#' are skipped. Throws FormatError with the line
/// number on malformed input.
std::vector<Trial> read_trial_file(const std::filesystem::path &path);
std::vector<Trial> read_trials(std::istream &is, const std::string &name);

struct ScoreRecord {
  std::string enroll_id;
  std::string test_id;
  double score = 0.0;
};

/// Score file, one `<enroll_id> <test_id> <score>` per line, score as %.6f.
void write_scores(std::ostream &os, std::span<const ScoreRecord> scores);
std::vector<ScoreRecord> read_score_file(const std::filesystem::path &path);
std::vector<ScoreRecord> read_scores(std::istream &is, const std::string &name);

/// Joins scores to trial labels by (enroll, test) pair. Unlabeled trials are
/// dropped. Throws DomainError for a labeled trial without a score.
std::vector<ScoredTrial> label_scores(std::span<const ScoreRecord> scores,
                                      std::span<const Trial> trials);

}  // namespace childaug

#endif  // CHILDAUG_BACKEND_IO_H_
