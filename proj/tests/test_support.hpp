// Helpers shared by the test binaries.
#pragma once

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "invariantlab/class_table.hpp"
#include "invariantlab/parser.hpp"

namespace invariantlab::testing {

inline std::filesystem::path corpus_dir() { return INVARIANTLAB_CORPUS_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses and builds; fails the current test on any diagnostic.
inline ClassTable table_of(const std::string& source, const std::string& file = "test.minio") {
  ParseResult pr = parse(source, file);
  for (const auto& d : pr.diagnostics) ADD_FAILURE() << d.pos.str() << ": " << d.message;
  return build_class_table(std::move(pr.classes));
}

inline ClassTable corpus_table(const std::string& fixture) {
  const auto path = corpus_dir() / (fixture + ".minio");
  return table_of(read_text(path), "corpus/" + fixture + ".minio");
}

/// Deterministic generator; the seed is printed on failure by callers.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class C>
  const auto& pick(const C& c) {
    return c[static_cast<std::size_t>(uniform(0, static_cast<int>(c.size()) - 1))];
  }

 private:
  std::mt19937 gen_;
};

}  // namespace invariantlab::testing
