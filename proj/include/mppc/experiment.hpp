#pragma once

#include <cstdint>
#include <vector>

#include "mppc/gcdsum.hpp"
#include "mppc/paircorr.hpp"
#include "mppc/sequences.hpp"

namespace mppc {

struct PipelineRow {
  std::size_t n = 0;
  double s = 0.0;
  double mean_r2 = 0.0;
  double target = 0.0;
  double variance = 0.0;
  double gcd_sum_half = 0.0;  // difference-set gcd sum at sigma = 1/2
  double ratio = 0.0;         // variance * N^3 / (log N * gcd_sum_half)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// For every N in the grid and s in the list: the alpha-variance of R2, the
// difference-set gcd sum of the prefix, and the ratio that monitors the
// variance/gcd-sum inequality.
std::vector<PipelineRow> pipeline_mppc_experiment(
    const IntegerSequence& seq, const std::vector<std::size_t>& n_grid,
    const std::vector<double>& s_list, std::size_t m, std::uint64_t seed);

}  // namespace mppc
