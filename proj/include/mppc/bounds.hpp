#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mppc {

// beta = -2 sqrt(3) - 6 log(1 - 1/sqrt(3)), the exponent of the dominating
// exponential in the per-factor moment bound. Evaluated with MPFR.
double compute_beta();
double compute_beta_bits(unsigned bits);

// Root of C - beta - 2 sqrt(2C + 1) = 1 on (beta + 5, 100), by bisection to
// 1e-10; checked against the closed form beta + 5 + 2 sqrt(2 beta + 7).
double solve_c_threshold();
double c_threshold_closed_form();

struct ExponentReport {
  double gcd_exponent = 0.0;       // beta - 1 + 2 sqrt(2C+1) - C
  double variance_exponent = 0.0;  // beta + 2 sqrt(2C+1) - C
  double moment_order = 0.0;       // l = (sqrt(2C+1) - 2) / 2
  double v_exponent = 0.0;         // beta/2 + sqrt(2C+1)
};

// Exponent algebra at a given energy exponent C >= 15/2.
ExponentReport variance_exponent(double c);

struct LemmaReport {
  std::string lemma_id;
  std::string grid_spec;
  double min_margin = 0.0;
  bool pass = false;                // min_margin >= -1e-12
  std::vector<double> worst_point;  // parameter tuple at the minimum
};

constexpr double kMarginTolerance = 1e-12;

// min over the (a, x) grid of exp(beta a^2 + 2a cos x)(1 + a^2 - 2a cos x) - 1
// on (0, 1/sqrt 3] x [0, 2pi] at the pointwise order, plus the x = 0 and
// x = pi endpoint margins for each l in l_grid (higher orders follow from the
// first power; the endpoints are where the x-derivative analysis bottoms out).
LemmaReport verify_lemma_beta_inequality(std::size_t a_nodes = 10000,
                                         std::size_t x_nodes = 10000,
                                         const std::vector<unsigned>& l_grid = {1, 2, 4, 8});

// min over [1/2, 3/4] of 2.56/2^{2a} + log(1 - 2^-a), together with the
// decrease margins of consecutive nodes (the function is claimed decreasing).
LemmaReport verify_lemma_2alpha(std::size_t nodes = 10000);

// min over [0, t_max] of t^2/4 - log I0(t).
LemmaReport verify_bessel_bound(std::size_t nodes = 10000, double t_max = 50.0);

// Over sigma in (1/2, 3/4): margins of 1 - |zeta(2 sigma) - 1/(2 sigma - 1)|
// and of log((sigma - 1/2)^-1) - log zeta(2 sigma).
LemmaReport verify_zeta_near_half(std::size_t nodes = 10000);

struct ConstantsTable {
  double beta = 0.0;
  double c_threshold = 0.0;
  std::string variance_exponent_formula;
};

ConstantsTable constants_table();

}  // namespace mppc
