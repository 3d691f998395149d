#pragma once

#include "childstat/exact.hpp"
#include "childstat/moments.hpp"
#include "childstat/poly.hpp"

#include <string>
#include <vector>

namespace childstat {

/// E[X^p1 Y^p2] for a standard (unit-variance) bivariate normal pair with
/// correlation rho, as a polynomial in rho.
struct NormalMomentPoly {
  unsigned p1 = 0;
  unsigned p2 = 0;
  DensePolynomial coefficients;  // in rho
};

/// Stein recurrence M(p1,p2) = (p1-1) M(p1-2,p2) + rho p2 M(p1-1,p2-1),
/// M(0,0) = 1, with M(0,p2) = M(p2,0).
NormalMomentPoly normal_mixed_moment_poly(unsigned p1, unsigned p2);

/// All M(i,j), i <= max_p1, j <= max_p2, indexed [i][j].
std::vector<std::vector<DensePolynomial>> normal_moment_grid(unsigned max_p1, unsigned max_p2);

/// Evaluates a parity-homogeneous polynomial at rho = c*sqrt(r).
Surd evaluate_at(const DensePolynomial& poly, const Surd& rho);

struct NormalMomentValue {
  Surd exact;
  std::string rendered;
};

/// M(p1,p2) at rho = rho_sign * sqrt(rho_squared). Error(InvalidCorrelation)
/// unless 0 <= rho_squared <= 1.
NormalMomentValue normal_mixed_moment_eval(unsigned p1, unsigned p2, const ExactRat& rho_squared,
                                           int rho_sign, unsigned digits = kDefaultDigits);

struct NormalityGapRow {
  unsigned p1 = 0;
  unsigned p2 = 0;
  Surd alpha;
  Surd normal;
  Surd gap;  // alpha - normal
  std::string alpha_rendered;
  std::string normal_rendered;
  std::string gap_rendered;
};

struct NormalityGapReport {
  MomentSpec spec;
  ScaledValue rho;
  std::vector<NormalityGapRow> rows;  // p1-major
};

/// Compares each alpha_{p1,p2} of the tree statistics with the normal
/// reference at the empirical rho = alpha_{1,1}.
NormalityGapReport normality_gap_report(const MomentSpec& spec, unsigned max_p1,
                                        unsigned max_p2, unsigned digits = kDefaultDigits);

}  // namespace childstat
