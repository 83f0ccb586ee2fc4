#include "fixtures.hpp"

#include <fstream>
#include <stdexcept>

namespace pwakg::fixtures {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace pwakg::fixtures
