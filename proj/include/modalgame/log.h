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

#ifndef MODALGAME_LOG_H_
#define MODALGAME_LOG_H_

#include <string>

namespace modalgame {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Read once from MODALGAME_LOG (error, info, debug); defaults to error.
LogLevel CurrentLogLevel();
void Log(LogLevel level, const std::string& message);

}  // namespace modalgame

#define MG_LOG_ERROR(msg) ::modalgame::Log(::modalgame::LogLevel::kError, (msg))
#define MG_LOG_INFO(msg)                                                  \
  do {                                                                    \
    if (::modalgame::CurrentLogLevel() >= ::modalgame::LogLevel::kInfo)   \
      ::modalgame::Log(::modalgame::LogLevel::kInfo, (msg));              \
  } while (0)
#define MG_LOG_DEBUG(msg)                                                 \
  do {                                                                    \
    if (::modalgame::CurrentLogLevel() >= ::modalgame::LogLevel::kDebug)  \
      ::modalgame::Log(::modalgame::LogLevel::kDebug, (msg));             \
  } while (0)

#endif  // MODALGAME_LOG_H_
