// Copyright 2026 The ModalGame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modalgame/log.h"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string_view>

namespace modalgame {
namespace {

LogLevel ParseLevel() {
  const char* env = std::getenv("MODALGAME_LOG");
  if (env == nullptr) return LogLevel::kError;
  const std::string_view value(env);
  if (value == "debug") return LogLevel::kDebug;
  if (value == "info") return LogLevel::kInfo;
  return LogLevel::kError;
}

std::mutex& LogMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

LogLevel CurrentLogLevel() {
  static const LogLevel level = ParseLevel();
  return level;
}

void Log(LogLevel level, const std::string& message) {
  if (level > CurrentLogLevel()) return;
  static constexpr const char* kNames[] = {"error", "info", "debug"};
  std::lock_guard<std::mutex> lock(LogMutex());
  std::fprintf(stderr, "[modalgame %s] %s\n", kNames[static_cast<int>(level)], message.c_str());
}

}  // namespace modalgame
