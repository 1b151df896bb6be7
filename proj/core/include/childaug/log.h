// childaug/log.h

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

#ifndef CHILDAUG_LOG_H_
#define CHILDAUG_LOG_H_

#include <functional>
#include <string>

namespace childaug {

enum class LogLevel { kInfo, kWarning, kError };

using LogSink = std::function<void(LogLevel, const std::string &)>;

// Replaces the process-wide sink and returns the previous one. The default
// sink writes warnings and errors to stderr. Thread-safe.
LogSink set_log_sink(LogSink sink);

void log_message(LogLevel level, const std::string &msg);

inline void log_warning(const std::string &msg) {
  log_message(LogLevel::kWarning, msg);
}
inline void log_info(const std::string &msg) {
  log_message(LogLevel::kInfo, msg);
}

}  // namespace childaug

#endif  // CHILDAUG_LOG_H_
