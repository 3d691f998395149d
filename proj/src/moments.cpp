#include "childstat/moments.hpp"
#include "childstat/error.hpp"
#include "childstat/lagrange.hpp"

#include <algorithm>
#include <stdexcept>

namespace childstat {

namespace {

ExactInt power(const ExactInt& base, unsigned e) {
  ExactInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

ExactRat power(const ExactRat& base, unsigned e) {
  return make_rational(power(base.get_num(), e), power(base.get_den(), e));
}

}  // namespace

MomentTable::MomentTable(MomentSpec spec) : spec_(std::move(spec)) {
  if (spec_.s1 == spec_.s2) {
    throw Error(ErrorCode::InvalidQuery, "moment spec needs two distinct child counts");
  }
  const unsigned p1 = std::max(spec_.max_p1, 2U);
  const unsigned p2 = std::max(spec_.max_p2, 2U);
  numerators_ = numerator_grid(spec_.child_set, spec_.n, spec_.s1, spec_.s2, p1, p2);
  if (numerators_[0][0] == 0) {
    throw Error(ErrorCode::NoTrees, "no trees on " + std::to_string(spec_.n) +
                                        " vertices with child counts in " +
                                        spec_.child_set.to_string());
  }
}

const ExactInt& MomentTable::numerator(unsigned p1, unsigned p2) const {
  if (p1 >= numerators_.size() || p2 >= numerators_[0].size()) {
    throw std::out_of_range("MomentTable: power outside the computed grid");
  }
  return numerators_[p1][p2];
}

ExactRat MomentTable::raw(unsigned p1, unsigned p2) const {
  return make_rational(numerator(p1, p2), tree_count());
}

ExactRat MomentTable::central(unsigned p1, unsigned p2) const {
  // m = (1/N00^{p1+p2}) sum_{r,t} C(p1,r) C(p2,t) (-1)^{r+t} N10^r N01^t
  //       N00^{p1+p2-r-t-1} N_{p1-r,p2-t}
  // Scaled by N00 to keep every term integral.
  const ExactInt& n00 = tree_count();
  const ExactInt& n10 = numerator(1, 0);
  const ExactInt& n01 = numerator(0, 1);
  ExactInt acc = 0;
  for (unsigned r = 0; r <= p1; ++r) {
    for (unsigned t = 0; t <= p2; ++t) {
      ExactInt term = binomial(p1, r) * binomial(p2, t) * power(n10, r) * power(n01, t) *
                      power(n00, p1 + p2 - r - t) * numerator(p1 - r, p2 - t);
      if ((r + t) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
  }
  return make_rational(acc, power(n00, p1 + p2 + 1));
}

bool MomentTable::degenerate() const {
  return sgn(central(2, 0)) == 0 || sgn(central(0, 2)) == 0;
}

ExactRat MomentTable::radicand(unsigned p1, unsigned p2) const {
  ExactRat r = 1;
  if (p1 % 2 == 1) r /= central(2, 0);
  if (p2 % 2 == 1) r /= central(0, 2);
  return r;
}

ScaledValue MomentTable::scaled(unsigned p1, unsigned p2, unsigned digits) const {
  const ExactRat var1 = central(2, 0);
  const ExactRat var2 = central(0, 2);
  if (sgn(var1) == 0 || sgn(var2) == 0) {
    throw Error(ErrorCode::DegenerateVariance,
                "variance of X_{" + std::to_string(spec_.n) + "," +
                    std::to_string(sgn(var1) == 0 ? spec_.s1 : spec_.s2) + "} is zero");
  }
  // alpha = m / (var1^{p1/2} var2^{p2/2}) = m / (var1^{p1/2 floor} ...) * sqrt(radicand)
  ExactRat coeff = central(p1, p2) / (power(var1, p1 / 2) * power(var2, p2 / 2));
  Surd alpha(coeff, radicand(p1, p2));
  ScaledValue out{alpha, alpha.square(), std::nullopt, alpha.render(digits)};
  if (p1 % 2 == 0 && p2 % 2 == 0) out.exact_value = alpha.coeff();
  return out;
}

ExactRat raw_moment(const MomentSpec& spec, unsigned p1, unsigned p2) {
  MomentSpec s = spec;
  s.max_p1 = std::max(s.max_p1, p1);
  s.max_p2 = std::max(s.max_p2, p2);
  return MomentTable(std::move(s)).raw(p1, p2);
}

ExactRat central_moment(const MomentSpec& spec, unsigned p1, unsigned p2) {
  MomentSpec s = spec;
  s.max_p1 = std::max(s.max_p1, p1);
  s.max_p2 = std::max(s.max_p2, p2);
  return MomentTable(std::move(s)).central(p1, p2);
}

ScaledValue scaled_moment(const MomentSpec& spec, unsigned p1, unsigned p2, unsigned digits) {
  MomentSpec s = spec;
  s.max_p1 = std::max(s.max_p1, p1);
  s.max_p2 = std::max(s.max_p2, p2);
  return MomentTable(std::move(s)).scaled(p1, p2, digits);
}

ScaledValue correlation(const MomentSpec& spec, unsigned digits) {
  return MomentTable(spec).correlation(digits);
}

MomentReport moment_report(const MomentSpec& spec, unsigned digits) {
  MomentTable table(spec);
  MomentReport report;
  report.spec = spec;
  report.tree_count = table.tree_count();
  report.digits = digits;
  report.degenerate_variance = table.degenerate();
  for (unsigned p1 = 0; p1 <= spec.max_p1; ++p1) {
    for (unsigned p2 = 0; p2 <= spec.max_p2; ++p2) {
      report.raw[{p1, p2}] = table.raw(p1, p2);
      report.central[{p1, p2}] = table.central(p1, p2);
      if (!report.degenerate_variance) report.scaled[{p1, p2}] = table.scaled(p1, p2, digits);
    }
  }
  if (!report.degenerate_variance) report.correlation = table.correlation(digits);
  return report;
}

}  // namespace childstat
