#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace castml::testing {

#ifdef CASTML_TEST_DIR
inline std::string test_path(const std::string& relative) { return std::string(CASTML_TEST_DIR) + "/" + relative; }
#endif

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace castml::testing
