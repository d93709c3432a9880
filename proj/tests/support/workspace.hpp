#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "olam/cli.hpp"

namespace olam::testing {

/// A scratch directory removed on destruction.
class Workspace {
 public:
  explicit Workspace(const std::string& tag) {
    std::random_device rd;
    dir_ = std::filesystem::temp_directory_path() / ("olam-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(dir_);
  }
  ~Workspace() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::filesystem::path dir_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

inline const std::string kAbDecls = "type A : *\nconst a : A\nconst b : A\n\n";

}  // namespace olam::testing
