#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef SEMPROP_FIXTURE_DIR
#define SEMPROP_FIXTURE_DIR "tests/fixtures"
#endif
#ifndef SEMPROP_CLI_PATH
#define SEMPROP_CLI_PATH "./semprop"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(SEMPROP_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

// Runs the built CLI binary; stderr is routed to a scratch file and ignored
// unless merge_stderr is set.
inline CliResult run_cli(const std::string& arguments, bool merge_stderr = false) {
  CliResult result;
  std::string command = std::string(SEMPROP_CLI_PATH) + " " + arguments;
  command += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Unique scratch directory per test run, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("semprop_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::filesystem::path path() const { return path_; }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
