// backend_io.cc

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

#include "childaug/backend_io.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "childaug/error.h"

namespace childaug {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary readers assume a little-endian host");

template <typename T>
T get(std::istream &is, const std::string &name) {
  T v;
  if (!is.read(reinterpret_cast<char *>(&v), sizeof v))
    throw IoError("truncated embedding file '" + name + "'");
  return v;
}

template <typename T>
void put(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

std::ifstream open_in(const std::filesystem::path &path,
                      std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return is;
}

std::ofstream open_out(const std::filesystem::path &path,
                       std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  return os;
}

}  // namespace

std::vector<Embedding> read_embeddings(std::istream &is,
                                       const std::string &name) {
  char magic[4];
  if (!is.read(magic, 4)) throw IoError("truncated embedding file '" + name + "'");
  if (std::memcmp(magic, "EMB1", 4) != 0)
    throw FormatError("'" + name + "' is not an EMB1 embedding file");
  const auto count = get<std::uint32_t>(is, name);
  const auto dim = get<std::uint32_t>(is, name);
  std::vector<Embedding> out;
  out.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    Embedding e;
    const auto len = get<std::uint16_t>(is, name);
    e.id.resize(len);
    if (len > 0 && !is.read(e.id.data(), len))
      throw IoError("truncated embedding file '" + name + "'");
    e.vector.resize(dim);
    for (std::uint32_t i = 0; i < dim; ++i)
      e.vector[i] = static_cast<double>(get<float>(is, name));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Embedding> read_embedding_file(const std::filesystem::path &path) {
  std::ifstream is = open_in(path, std::ios::binary);
  return read_embeddings(is, path.string());
}

void write_embeddings(std::ostream &os, std::span<const Embedding> items) {
  const std::size_t dim = items.empty() ? 0 : items.front().vector.size();
  os.write("EMB1", 4);
  put(os, static_cast<std::uint32_t>(items.size()));
  put(os, static_cast<std::uint32_t>(dim));
  for (const Embedding &e : items) {
    if (e.vector.size() != dim)
      throw ShapeError("embedding '" + e.id + "' has a different dimension");
    if (e.id.size() > 0xFFFF) throw FormatError("embedding id too long");
    put(os, static_cast<std::uint16_t>(e.id.size()));
    os.write(e.id.data(), static_cast<std::streamsize>(e.id.size()));
    for (double x : e.vector) put(os, static_cast<float>(x));
  }
}

void write_embedding_file(const std::filesystem::path &path,
                          std::span<const Embedding> items) {
  std::ofstream os = open_out(path, std::ios::binary);
  write_embeddings(os, items);
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<double> read_weight_file(const std::filesystem::path &path) {
  std::vector<Embedding> recs = read_embedding_file(path);
  if (recs.size() != 1)
    throw FormatError("weight file '" + path.string() +
                      "' must hold exactly one record");
  for (double x : recs[0].vector)
    if (!std::isfinite(x))
      throw DomainError("weight file '" + path.string() + "' is not finite");
  return std::move(recs[0].vector);
}

void write_weight_file(const std::filesystem::path &path,
                       std::span<const double> weights) {
  Embedding e{"weights", std::vector<double>(weights.begin(), weights.end())};
  write_embedding_file(path, std::span<const Embedding>(&e, 1));
}

std::vector<Trial> read_trials(std::istream &is, const std::string &name) {
  std::vector<Trial> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
    std::istringstream ls(line);
    std::string label;
    if (!(ls >> label) || label[0] == '#') continue;
    Trial t;
    std::string extra;
    if (!(ls >> t.enroll_id >> t.test_id) || (ls >> extra))
      throw FormatError(name + ":" + std::to_string(lineno) +
                        ": expected '<1|0|?> <enroll_id> <test_id>'");
    if (label == "1")
      t.label = TrialLabel::kTarget;
    else if (label == "0")
      t.label = TrialLabel::kNontarget;
    else if (label == "?")
      t.label = TrialLabel::kUnlabeled;
    else
      throw FormatError(name + ":" + std::to_string(lineno) + ": bad label '" +
                        label + "'");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Trial> read_trial_file(const std::filesystem::path &path) {
  std::ifstream is = open_in(path);
  return read_trials(is, path.string());
}

void write_scores(std::ostream &os, std::span<const ScoreRecord> scores) {
  char buf[64];
  for (const ScoreRecord &s : scores) {
    std::snprintf(buf, sizeof buf, "%.6f", s.score);
    os << s.enroll_id << ' ' << s.test_id << ' ' << buf << '\n';
  }
}

std::vector<ScoreRecord> read_scores(std::istream &is, const std::string &name) {
  std::vector<ScoreRecord> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
    std::istringstream ls(line);
    ScoreRecord r;
    if (!(ls >> r.enroll_id)) continue;
    std::string score, extra;
    if (!(ls >> r.test_id >> score) || (ls >> extra))
      throw FormatError(name + ":" + std::to_string(lineno) +
                        ": expected '<enroll_id> <test_id> <score>'");
    char *end = nullptr;
    r.score = std::strtod(score.c_str(), &end);
    if (end == score.c_str() || *end != '\0' || !std::isfinite(r.score))
      throw FormatError(name + ":" + std::to_string(lineno) + ": bad score '" +
                        score + "'");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScoreRecord> read_score_file(const std::filesystem::path &path) {
  std::ifstream is = open_in(path);
  return read_scores(is, path.string());
}

std::vector<ScoredTrial> label_scores(std::span<const ScoreRecord> scores,
                                      std::span<const Trial> trials) {
  std::map<std::pair<std::string, std::string>, double> by_pair;
  for (const ScoreRecord &s : scores)
    by_pair[{s.enroll_id, s.test_id}] = s.score;
  std::vector<ScoredTrial> out;
  for (const Trial &t : trials) {
    if (t.label == TrialLabel::kUnlabeled) continue;
    auto it = by_pair.find({t.enroll_id, t.test_id});
    if (it == by_pair.end())
      throw DomainError("no score for trial '" + t.enroll_id + " " +
                        t.test_id + "'");
    out.push_back({it->second, t.label == TrialLabel::kTarget});
  }
  return out;
}

}  // namespace childaug
