#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "mppc/rng.hpp"

namespace mppc::test {

// Deterministic generator for property tests, built on the library's keyed
// hash so failures reproduce from the printed case number alone.
class CaseRng {
public:
  explicit CaseRng(std::uint64_t case_id) : case_id_(case_id) {}

  std::uint64_t next_u64() { return counter_hash(0x7e57ull, case_id_, n_++); }
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }
  double uniform() { return uniform53(next_u64()); }

  // strictly increasing distinct values in [1, max_value]
  std::vector<std::uint64_t> increasing(std::size_t count, std::uint64_t max_value) {
    std::vector<std::uint64_t> out;
    std::uint64_t cur = 0;
    const std::uint64_t max_step = max_value / count;
    for (std::size_t i = 0; i < count; ++i) {
      cur += 1 + below(max_step > 1 ? max_step - 1 : 1);
      out.push_back(cur);
    }
    return out;
  }

private:
  std::uint64_t case_id_;
  std::uint64_t n_ = 0;
};

class TempFile {
public:
  TempFile(const std::string& name, const std::string& content)
      : path_("mppc_test_" + name) {
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

}  // namespace mppc::test
