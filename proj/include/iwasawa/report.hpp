#pragma once

#include <map>
#include <string>
#include <vector>

namespace iwasawa {

// Outcome of a check: parameters it ran with and, on failure, witnesses.
struct Report {
  std::string check;
  std::map<std::string, std::string> params;
  bool pass = true;
  std::vector<std::string> witnesses;
};

}  // namespace iwasawa
