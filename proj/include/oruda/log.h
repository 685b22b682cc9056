// Copyright 2026 The ORUDA Lab Authors
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

#ifndef ORUDA_LOG_H_
#define ORUDA_LOG_H_

#include <sstream>
#include <string_view>

namespace oruda {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kOff = 4 };

void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();
// debug|info|warning|error|off; throws std::invalid_argument otherwise.
LogLevel ParseLogLevel(std::string_view name);
void LogMessage(LogLevel level, std::string_view message);

// Streams into a buffer and emits one line on destruction.
class LogLine {
 public:
  explicit LogLine(LogLevel level) : level_(level) {}
  ~LogLine() { LogMessage(level_, buffer_.str()); }
  template <typename T>
  LogLine& operator<<(const T& value) {
    buffer_ << value;
    return *this;
  }

 private:
  LogLevel level_;
  std::ostringstream buffer_;
};

}  // namespace oruda

#define ORUDA_LOG(level) ::oruda::LogLine(::oruda::LogLevel::k##level)

#endif  // ORUDA_LOG_H_
