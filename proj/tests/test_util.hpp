#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fgdict/fg_parser.hpp"
#include "fgdict/fg_statics.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& rel) { return std::string(CORPUS_DIR) + "/" + rel; }

inline fgdict::fg::Program parse_ok(const std::string& src) {
  auto r = fgdict::fg::parse_program(src);
  if (const auto* err = std::get_if<fgdict::fg::SyntaxError>(&r)) {
    FAIL(err->to_string());
  }
  return std::get<fgdict::fg::Program>(r);
}

inline fgdict::fg::DeclTable table_ok(const std::string& src) {
  auto t = fgdict::fg::DeclTable::build(parse_ok(src));
  REQUIRE(t.ok());
  return std::move(t).value();
}

inline std::vector<std::string> corpus_files(const std::string& subdir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_path(subdir))) {
    if (entry.path().extension() == ".fg") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testutil
