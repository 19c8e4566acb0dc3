#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace pcqg::cli {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Report {
  nlohmann::json result = nlohmann::json::object();
  bool pass = true;
  // optional flat table for --format csv
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

int run(int argc, char** argv);

}  // namespace pcqg::cli
