#include "mppc/experiment.hpp"

#include <cmath>

#include "mppc/errors.hpp"

namespace mppc {

std::vector<PipelineRow> pipeline_mppc_experiment(
    const IntegerSequence& seq, const std::vector<std::size_t>& n_grid,
    const std::vector<double>& s_list, std::size_t m, std::uint64_t seed) {
  if (n_grid.empty()) throw DomainError("empty N grid");
  if (s_list.empty()) throw DomainError("empty s list");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw DomainError("N grid must increase");
  if (n_grid.back() > seq.size())
    throw DomainError("N grid exceeds sequence length");

  std::vector<PipelineRow> rows;
  rows.reserve(n_grid.size() * s_list.size());
  for (std::size_t n : n_grid) {
    const IntegerSequence prefix = seq.prefix(n);
    const double gsum = difference_set_gcd_sum(prefix, 0.5).value;
    for (double s : s_list) {
      const auto est = variance_over_alpha(prefix, s, m, seed);
      PipelineRow row;
      row.n = n;
      row.s = s;
      row.mean_r2 = est.mean;
      row.target = est.target;
      row.variance = est.variance;
      row.gcd_sum_half = gsum;
      row.ratio = est.variance * std::pow(static_cast<double>(n), 3.0) /
                  (std::log(static_cast<double>(n)) * gsum);
      row.samples = m;
      row.seed = seed;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mppc
