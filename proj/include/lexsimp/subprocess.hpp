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

// Line-oriented child process (POSIX). stdin/stdout are pipes, stderr is
// inherited.

#ifndef LEXSIMP_SUBPROCESS_HPP_
#define LEXSIMP_SUBPROCESS_HPP_

#include <cerrno>
#include <csignal>
#include <cstring>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fcntl.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "lexsimp/common.hpp"

namespace lexsimp {

class LineProcess {
 public:
  explicit LineProcess(const std::vector<std::string>& argv) {
    if (argv.empty()) throw BackendError("empty command line");
    // A dead child must surface as EPIPE, not kill the caller.
    struct sigaction current {};
    if (sigaction(SIGPIPE, nullptr, &current) == 0 && current.sa_handler == SIG_DFL)
      std::signal(SIGPIPE, SIG_IGN);

    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0) throw BackendError(std::string("pipe: ") + std::strerror(errno));
    if (pipe(from_child) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      throw BackendError(std::string("pipe: ") + std::strerror(errno));
    }
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_ = fork();
    if (pid_ < 0) throw BackendError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execvp(args[0], args.data());
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
    fcntl(in_fd_, F_SETFD, FD_CLOEXEC);
    fcntl(out_fd_, F_SETFD, FD_CLOEXEC);
  }

  ~LineProcess() {
    if (in_fd_ >= 0) close(in_fd_);
    if (out_fd_ >= 0) close(out_fd_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  void write_line(std::string_view line) {
    std::string buf(line);
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      const ssize_t n = ::write(in_fd_, buf.data() + off, buf.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw BackendError(std::string("worker process closed its input: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    while (true) {
      const std::size_t nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      char chunk[65536];
      const ssize_t n = ::read(out_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw BackendError(std::string("reading from worker failed: ") + std::strerror(errno));
      }
      if (n == 0) throw BackendError("worker process exited unexpectedly");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
};

}  // namespace lexsimp

#endif  // LEXSIMP_SUBPROCESS_HPP_
