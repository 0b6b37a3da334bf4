//
// Copyright 2026 The lexsimp Authors
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
//

#ifndef LEXSIMP_COMMON_HPP_
#define LEXSIMP_COMMON_HPP_

#include <cstddef>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace lexsimp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a masked-language-model backend.
class BackendError : public Error {
 public:
  using Error::Error;
};

namespace log {

using Sink = std::function<void(const std::string&)>;

namespace detail {
inline std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}
inline Sink& sink() {
  static Sink s = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}
}  // namespace detail

/// Replaces the warning sink; returns the previous one.
inline Sink set_sink(Sink sink) {
  std::lock_guard<std::mutex> lock(detail::sink_mutex());
  return std::exchange(detail::sink(), std::move(sink));
}

inline void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(detail::sink_mutex());
  if (detail::sink()) detail::sink()(message);
}

/// Captures warnings for the lifetime of the object (used by tests and the CLI).
class ScopedCapture {
 public:
  explicit ScopedCapture(std::function<void(const std::string&)> on_warning)
      : previous_(set_sink(std::move(on_warning))) {}
  ~ScopedCapture() { set_sink(std::move(previous_)); }
  ScopedCapture(const ScopedCapture&) = delete;
  ScopedCapture& operator=(const ScopedCapture&) = delete;

 private:
  Sink previous_;
};

}  // namespace log
}  // namespace lexsimp

#endif  // LEXSIMP_COMMON_HPP_
