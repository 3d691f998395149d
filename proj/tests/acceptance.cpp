// Acceptance suite: one PASS/FAIL line per criterion.

#include "childstat/error.hpp"
#include "childstat/gauss.hpp"
#include "childstat/lagrange.hpp"
#include "childstat/moments.hpp"
#include "childstat/oracle.hpp"
#include "childstat/recurrence.hpp"
#include "isserlis_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace childstat;

namespace {

const ChildSet kMotzkin{0, 1, 2};

const std::vector<ChildSet>& test_family() {
  static const std::vector<ChildSet> family = {
      {0, 1, 2}, {0, 2}, {0, 1, 3}, {0, 2, 3}, {0, 1, 2, 3}};
  return family;
}

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (failures_ <= 5) std::printf("    failed: %s\n", what.c_str());
    }
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  bool ok() const { return failures_ == 0; }
  const std::string& name() const { return name_; }
  const std::string& notes() const { return notes_; }
  int failures() const { return failures_; }

 private:
  std::string name_;
  std::string notes_;
  int failures_ = 0;
};

int g_failed = 0;

void run(const std::string& name, double budget_seconds, const std::function<void(Criterion&)>& body) {
  Criterion c(name);
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream budget;
  budget << "runtime " << elapsed << "s within " << budget_seconds << "s";
  c.check(elapsed < budget_seconds, budget.str());
  if (!c.ok()) ++g_failed;
  std::printf("[%s] %s (%.2fs%s%s)\n", c.ok() ? "PASS" : "FAIL", c.name().c_str(), elapsed,
              c.notes().empty() ? "" : "; ", c.notes().c_str());
  std::fflush(stdout);
}

ExactInt big(const char* digits) { return ExactInt(digits); }

}  // namespace

int main() {
  run("AC1 exact values for S={0,1,2}, n=30", 5.0, [](Criterion& c) {
    c.check(count_trees(kMotzkin, 30) == big("593742784829"), "f_30");
    const ExactInt n10 = numerator_mixed({kMotzkin, 30, 0, std::nullopt, 1, 0});
    const ExactInt n01 = numerator_mixed({kMotzkin, 30, 1, std::nullopt, 1, 0});
    const ExactInt n23 = numerator_mixed({kMotzkin, 30, 0, 1U, 2, 3});
    c.check(n10 == big("6186675630819"), "N1(X_{30,0})");
    c.check(n01 == big("6032675068061"), "N1(X_{30,1})");
    c.check(n23 == big("68622906286794431"), "N_{2,3}");
    MomentTable t({kMotzkin, 30, 0, 1, 2, 3});
    const std::string e0 = render_decimal(t.raw(1, 0), 2);
    const std::string e1 = render_decimal(t.raw(0, 1), 2);
    const std::string e23 = render_decimal(t.raw(2, 3), 2);
    c.check(e0 == "10.42", "E[X0] = " + e0);
    c.check(e1 == "10.16", "E[X1] = " + e1);
    c.check(e23 == "115576.83", "E[X0^2 X1^3] = " + e23);
    c.note("E = " + e0 + ", " + e1 + ", " + e23);
  });

  run("AC2 engine numerators equal exhaustive enumeration (n<=12, p1+p2<=4)", 60.0, [](Criterion& c) {
    long cells = 0;
    for (const ChildSet& s : test_family()) {
      for (unsigned n = 1; n <= 12; ++n) {
        for (unsigned s1 : s.elements()) {
          for (unsigned s2 : s.elements()) {
            if (s1 == s2) continue;
            for (unsigned p1 = 0; p1 <= 4; ++p1) {
              for (unsigned p2 = 0; p1 + p2 <= 4; ++p2) {
                ++cells;
                const ExactInt engine = numerator_mixed({s, n, s1, s2, p1, p2});
                const ExactInt oracle = oracle_numerator(s, n, s1, s2, p1, p2);
                c.check(engine == oracle, s.to_string() + " n=" + std::to_string(n) + " s=(" +
                                              std::to_string(s1) + "," + std::to_string(s2) +
                                              ") p=(" + std::to_string(p1) + "," +
                                              std::to_string(p2) + ")");
              }
            }
          }
        }
      }
    }
    c.note(std::to_string(cells) + " cells");
  });

  run("AC3 vertex and edge identities (n<=100)", 60.0, [](Criterion& c) {
    for (const ChildSet& s : test_family()) {
      std::vector<std::vector<ExactInt>> first(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        first[i] = numerator_sequence(s, s.elements()[i], std::nullopt, 1, 0, 100).column(1, 0);
      }
      for (unsigned long n = 1; n <= 100; ++n) {
        ExactInt vertices = 0, edges = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
          vertices += first[i][n - 1];
          edges += s.elements()[i] * first[i][n - 1];
        }
        const ExactInt f = count_trees(s, n);
        c.check(vertices == n * f, s.to_string() + " vertex identity n=" + std::to_string(n));
        c.check(edges == (n - 1) * f, s.to_string() + " edge identity n=" + std::to_string(n));
      }
    }
  });

  run("AC4 binomial central moments equal direct expectation (n<=10, p1+p2<=5)", 60.0, [](Criterion& c) {
    long cells = 0;
    for (const ChildSet& s : test_family()) {
      for (unsigned n = 1; n <= 10; ++n) {
        if (count_trees(s, n) == 0) continue;
        const ProfileTally tally = tally_profiles(s, n);
        for (unsigned s1 : s.elements()) {
          for (unsigned s2 : s.elements()) {
            if (s1 == s2) continue;
            MomentTable table({s, n, s1, s2, 5, 5});
            for (unsigned p1 = 0; p1 <= 5; ++p1) {
              for (unsigned p2 = 0; p1 + p2 <= 5; ++p2) {
                ++cells;
                c.check(table.central(p1, p2) == oracle_central_moment(tally, s, s1, s2, p1, p2),
                        s.to_string() + " n=" + std::to_string(n));
              }
            }
          }
        }
      }
    }
    c.note(std::to_string(cells) + " cells");
  });

  run("AC5 bivariate normal moments equal Isserlis matchings (p1+p2<=8)", 10.0, [](Criterion& c) {
    for (unsigned p1 = 0; p1 <= 8; ++p1) {
      for (unsigned p2 = 0; p1 + p2 <= 8; ++p2) {
        c.check(normal_mixed_moment_poly(p1, p2).coefficients ==
                    testing::isserlis_by_matchings(p1, p2),
                "M(" + std::to_string(p1) + "," + std::to_string(p2) + ")");
      }
    }
    c.check(normal_mixed_moment_poly(4, 0).coefficients == DensePolynomial({3}), "M(4,0)=3");
    c.check(normal_mixed_moment_poly(6, 0).coefficients == DensePolynomial({15}), "M(6,0)=15");
    c.check(normal_mixed_moment_poly(2, 2).coefficients == DensePolynomial({1, 0, 2}),
            "M(2,2)=1+2rho^2");
    c.check(normal_mixed_moment_poly(3, 1).coefficients == DensePolynomial({0, 3}), "M(3,1)=3rho");
  });

  run("AC6 scaled moments approach the normal reference", 120.0, [](Criterion& c) {
    const ExactRat bound(1, 10);
    auto kurtosis_gap = [](unsigned long n) -> ExactRat {
      MomentTable t({kMotzkin, n, 0, 1, 4, 0});
      return abs(*t.scaled(4, 0).exact_value - 3);
    };
    const ExactRat g100 = kurtosis_gap(100), g400 = kurtosis_gap(400), g800 = kurtosis_gap(800);
    c.check(g100 > g400 && g400 > g800, "|alpha40 - 3| decreasing over n = 100, 400, 800");
    unsigned long n_used = 800;
    bool kurtosis_ok = g800 < bound;
    if (!kurtosis_ok) {
      n_used = 1600;
      kurtosis_ok = kurtosis_gap(1600) < bound;
    }
    c.check(kurtosis_ok, "|alpha40 - 3| < 0.1");
    c.note("|alpha40-3| at 100/400/800: " + render_decimal(g100, 4) + "/" + render_decimal(g400, 4) +
           "/" + render_decimal(g800, 4) + " (bound checked at n=" + std::to_string(n_used) + ")");

    auto mixed_gap = [](unsigned long n) -> Surd {
      NormalityGapReport r = normality_gap_report({kMotzkin, n, 0, 1, 2, 2}, 2, 2);
      return r.rows[2 * 3 + 2].gap;
    };
    Surd gap = mixed_gap(800);
    unsigned long mixed_n = 800;
    if (!(gap.square() < bound * bound)) {
      mixed_n = 1600;
      gap = mixed_gap(1600);
    }
    c.check(gap.square() < bound * bound, "|alpha22 - M_rho(2,2)| < 0.1");
    c.note("alpha22 gap at n=" + std::to_string(mixed_n) + ": " + gap.render(4));
  });

  run("AC7 recurrence round trip for f_n, S={0,1,2}", 30.0, [](Criterion& c) {
    IndexedSequence f40{1, numerator_sequence(kMotzkin, 0, std::nullopt, 0, 0, 40).column(0, 0)};
    auto rec = guess_recurrence(f40, {3, 3, 8});
    c.check(rec.has_value(), "recurrence found");
    if (!rec) return;
    Recurrence expected{{DensePolynomial({1, 1}), DensePolynomial({1, -2}), DensePolynomial({6, -3})}};
    c.check(rec->order() == 2 && rec->degree() == 1, "order 2, degree 1");
    c.check(*rec == expected, "(n+1)f(n) = (2n-1)f(n-1) + 3(n-2)f(n-2)");
    c.note(rec->to_string());

    ExtendedSequence ext = extend_sequence(*rec, {1, {1, 1}}, 100);
    const auto f100 = numerator_sequence(kMotzkin, 0, std::nullopt, 0, 0, 100).column(0, 0);
    bool same = ext.terms.size() == 100 && ext.non_integral.empty();
    for (std::size_t i = 0; same && i < 100; ++i) same = ext.terms[i] == ExactRat(f100[i]);
    c.check(same, "extension reproduces f_1..f_100");
    c.check(ext.terms.size() >= 30 && ext.terms[29] == ExactRat(big("593742784829")), "f_30");

    // Candidate tree-count recurrence:
    // (n+1)(n-1) f(n) = (n+2)(2n+3) f(n-1) + 3n(n-1) f(n-2).
    Recurrence candidate{{DensePolynomial({-1, 0, 1}), DensePolynomial({-6, -7, -2}),
                        DensePolynomial({0, 3, -3})}};
    IndexedSequence f100seq{1, f100};
    VerifyResult v = verify_recurrence(candidate, f100seq, 3, 100);
    c.check(!v.ok && v.first_failure == 3, "candidate recurrence fails at n = 3");
  });

  run("AC8 uniform sampler and Monte Carlo", 120.0, [](Criterion& c) {
    const unsigned n = 6;
    const std::uint64_t draws = 100000;
    auto trees = enumerate_trees(kMotzkin, n);
    c.check(trees.size() == 21, "21 trees on 6 vertices");
    TreeSampler sampler(kMotzkin, n);
    std::mt19937_64 rng(20240601);
    std::map<TreeCode, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < draws; ++i) ++freq[sampler.sample(n, rng)];
    const double p = 1.0 / static_cast<double>(trees.size());
    const double mean = p * static_cast<double>(draws);
    const double sigma = std::sqrt(static_cast<double>(draws) * p * (1 - p));
    double worst = 0;
    for (const auto& t : trees) {
      const double z = std::abs(static_cast<double>(freq[t]) - mean) / sigma;
      worst = std::max(worst, z);
      c.check(z < 4.0, "tree " + t.to_string() + " frequency within 4 sigma");
    }
    c.check(freq.size() == trees.size(), "no tree outside the support");

    MonteCarloEstimate mc = monte_carlo_moment(kMotzkin, 30, 0, std::nullopt, 1, 0, 1000000, 7);
    const ExactRat exact = make_rational(big("6186675630819"), big("593742784829"));
    const double z_mc = std::abs(mc.estimate - exact.get_d()) / mc.standard_error;
    c.check(z_mc < 5.0, "Monte Carlo within 5 SE");
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |z| over trees %.2f; MC %.5f +- %.5f (z=%.2f)", worst,
                  mc.estimate, mc.standard_error, z_mc);
    c.note(buf);
  });

  run("AC9a numerator_mixed, S={0,1,2}, n=2000, all p1+p2<=5", 60.0, [](Criterion& c) {
    for (unsigned p1 = 0; p1 <= 5; ++p1) {
      for (unsigned p2 = 0; p1 + p2 <= 5; ++p2) {
        ExactInt v = numerator_mixed({kMotzkin, 2000, 0, 1U, p1, p2});
        c.check(v > 0, "positive numerator");
      }
    }
  });

  run("AC9b count_trees, S={0,1,2}, n=5000", 60.0, [](Criterion& c) {
    ExactInt f = count_trees(kMotzkin, 5000);
    c.check(f > 0, "positive count");
    c.note(std::to_string(mpz_sizeinbase(f.get_mpz_t(), 10)) + " digits");
  });

  std::printf("%s: %d criteria failed\n", g_failed == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failed);
  return g_failed == 0 ? 0 : 1;
}
