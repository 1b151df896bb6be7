// log.cc

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

#include "childaug/log.h"

#include <iostream>
#include <mutex>
#include <utility>

#include "childaug/error.h"

namespace childaug {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "I/O";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kStability: return "stability";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kSymmetry: return "symmetry";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kTraining: return "training";
  }
  return "unknown";
}

namespace {

void default_sink(LogLevel level, const std::string &msg) {
  if (level == LogLevel::kInfo) return;
  std::cerr << (level == LogLevel::kWarning ? "WARNING: " : "ERROR: ") << msg
            << '\n';
}

std::mutex &sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink &current_sink() {
  static LogSink sink = default_sink;
  return sink;
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  if (!sink) sink = default_sink;
  return std::exchange(current_sink(), std::move(sink));
}

void log_message(LogLevel level, const std::string &msg) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  current_sink()(level, msg);
}

}  // namespace childaug
