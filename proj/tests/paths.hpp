#pragma once

#include <string>

inline std::string data_file(const std::string& name) {
  return std::string(ASRFIX_DATA_DIR) + "/" + name;
}

inline std::string fixture_file(const std::string& name) {
  return std::string(ASRFIX_FIXTURE_DIR) + "/" + name;
}
