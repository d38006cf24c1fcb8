#include "verify_command.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "ccic/certificate.hpp"

namespace fs = std::filesystem;

int run_verify(const std::string& path) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".ccert") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << path << ": no .ccert files\n";
      return 2;
    }
  } else if (fs::is_regular_file(path, ec)) {
    files.push_back(path);
  } else {
    std::cerr << path << ": no such file or directory\n";
    return 2;
  }
  int status = 0;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    ccic::VerifyResult r = ccic::verify(ss.str());
    if (r.ok) {
      std::cout << f.string() << ": ok\n";
      continue;
    }
    status = 1;
    std::cout << f.string() << ": " << ccic::to_string(r.kind);
    if (r.step) std::cout << " at step " << *r.step;
    std::cout << ": " << r.message << "\n";
  }
  return status;
}
