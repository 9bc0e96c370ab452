#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "provsum/segmenter.hpp"

namespace test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(PROVSUM_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("provsum-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline provsum::VectorSequence to_sequence(const oracle::Dense& rows) {
  provsum::VectorSequence seq;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<provsum::TermWeight> entries;
    for (std::size_t d = 0; d < rows[i].size(); ++d) {
      if (rows[i][d] != 0.0) entries.push_back({static_cast<provsum::TermId>(d), rows[i][d]});
    }
    const auto at = static_cast<std::int64_t>(i);
    seq.push_back({at + 1, at * 1000, provsum::TermVector(std::move(entries))});
  }
  return seq;
}

/// Piecewise-constant means plus sparse noise; `distinct` > 0 draws rows from
/// a small pool instead, which produces exact gain ties.
inline oracle::Dense random_rows(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                                 std::size_t distinct = 0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  oracle::Dense rows;
  if (distinct > 0) {
    oracle::Dense pool(distinct, std::vector<double>(dim, 0.0));
    for (auto& row : pool) row[rng() % dim] = 1.0;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(pool[rng() % distinct]);
    return rows;
  }
  std::vector<double> mean(dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || rng() % 15 == 0) {
      for (auto& m : mean) m = unit(rng) < 0.3 ? unit(rng) : 0.0;
    }
    std::vector<double> row(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
      double v = mean[d] + (unit(rng) < 0.2 ? 0.3 * unit(rng) : 0.0);
      row[d] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::size_t> breakpoints_of(const std::vector<provsum::Segment>& segments) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].start);
  return out;
}

}  // namespace test
