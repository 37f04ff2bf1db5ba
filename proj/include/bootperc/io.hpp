#pragma once

#include <fstream>
#include <string>

#include "bootperc/errors.hpp"

namespace bootperc {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  return os;
}

inline void finish_output(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw io_error("write failed: " + path);
}

}  // namespace bootperc
