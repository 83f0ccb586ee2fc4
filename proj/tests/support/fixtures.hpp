#pragma once

#include <filesystem>
#include <string>

#include "pwakg/rdf/graph.hpp"
#include "pwakg/turtle/turtle.hpp"

namespace pwakg::fixtures {

inline std::filesystem::path data_dir() { return PWAKG_DATA_DIR; }

inline std::string sample_graph_text() { return turtle::read_text_file(data_dir() / "sample_graph.ttl"); }
inline std::string sample_query_text() { return turtle::read_text_file(data_dir() / "sample_query.rq"); }
inline rdf::Graph sample_graph() { return turtle::parse_turtle(sample_graph_text()).graph; }

inline constexpr const char* kPwa = "http://example.org/pwa/ont/";
inline constexpr const char* kData = "http://example.org/data/";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";

inline rdf::Term pwa(const std::string& local) { return rdf::Iri{kPwa + local}; }
inline rdf::Term data(const std::string& local) { return rdf::Iri{kData + local}; }
inline rdf::Term typed(const std::string& lexical, const std::string& xsd_local) {
  return rdf::Literal{lexical, kXsd + xsd_local, {}};
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name) {
    path_ = std::filesystem::temp_directory_path() /
            (name + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pwakg::fixtures
