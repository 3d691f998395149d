#include "childstat/oracle.hpp"
#include "childstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace childstat {

std::string TreeCode::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(counts[i]);
  }
  return out;
}

bool is_lukasiewicz(std::span<const unsigned> counts) {
  if (counts.empty()) return false;
  long height = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    height += static_cast<long>(counts[i]) - 1;
    if (i + 1 < counts.size() && height < 0) return false;
  }
  return height == -1;
}

unsigned child_count(const TreeCode& tree, unsigned s) {
  return static_cast<unsigned>(std::count(tree.counts.begin(), tree.counts.end(), s));
}

namespace {

void check_cap(unsigned n, unsigned cap, const char* what) {
  if (n == 0) throw Error(ErrorCode::InvalidQuery, "n must be positive");
  if (n > cap) {
    throw Error(ErrorCode::EnumerationTooLarge, std::string(what) + ": n = " +
                                                    std::to_string(n) + " exceeds cap " +
                                                    std::to_string(cap));
  }
}

// Depth-first walk over Lukasiewicz words; `open` counts subtrees still to
// be started.
class Walker {
 public:
  Walker(const ChildSet& s, unsigned n) : set_(s), n_(n), code_(n) {}

  template <class Visit>
  void run(unsigned pos, long open, Visit&& visit) {
    if (pos == n_) {
      if (open == 0) visit(std::span<const unsigned>(code_));
      return;
    }
    const long remaining = static_cast<long>(n_ - pos) - 1;
    for (unsigned c : set_.elements()) {
      const long next = open - 1 + static_cast<long>(c);
      if (next > remaining) break;
      if ((next == 0) != (remaining == 0)) continue;
      code_[pos] = c;
      run(pos + 1, next, visit);
    }
  }

  // Every valid prefix of the given length with its open count.
  void prefixes(unsigned pos, long open, unsigned length,
                std::vector<std::pair<std::vector<unsigned>, long>>& out) {
    if (pos == length || pos == n_) {
      out.emplace_back(std::vector<unsigned>(code_.begin(), code_.begin() + pos), open);
      return;
    }
    const long remaining = static_cast<long>(n_ - pos) - 1;
    for (unsigned c : set_.elements()) {
      const long next = open - 1 + static_cast<long>(c);
      if (next > remaining) break;
      if ((next == 0) != (remaining == 0)) continue;
      code_[pos] = c;
      prefixes(pos + 1, next, length, out);
    }
  }

  std::vector<unsigned>& code() { return code_; }

 private:
  const ChildSet& set_;
  unsigned n_;
  std::vector<unsigned> code_;
};

using CountTally = std::map<std::vector<unsigned>, std::uint64_t>;

void record(const ChildSet& s, std::span<const unsigned> code, std::vector<unsigned>& key,
            CountTally& tally) {
  std::fill(key.begin(), key.end(), 0U);
  for (unsigned c : code) ++key[s.index_of(c)];
  ++tally[key];
}

ProfileTally to_exact(const CountTally& counts) {
  ProfileTally out;
  for (const auto& [key, count] : counts) out.emplace(key, ExactInt(static_cast<unsigned long>(count)));
  return out;
}

}  // namespace

void for_each_tree(const ChildSet& s, unsigned n,
                   const std::function<void(std::span<const unsigned>)>& visit, unsigned cap) {
  check_cap(n, cap, "enumerate_trees");
  Walker walker(s, n);
  walker.run(0, 1, visit);
}

std::vector<TreeCode> enumerate_trees(const ChildSet& s, unsigned n, unsigned cap) {
  std::vector<TreeCode> out;
  for_each_tree(
      s, n,
      [&](std::span<const unsigned> code) {
        out.push_back(TreeCode{std::vector<unsigned>(code.begin(), code.end())});
      },
      cap);
  return out;
}

ProfileTally tally_profiles_serial(const ChildSet& s, unsigned n, unsigned cap) {
  CountTally tally;
  std::vector<unsigned> key(s.size());
  for_each_tree(s, n, [&](std::span<const unsigned> code) { record(s, code, key, tally); }, cap);
  return to_exact(tally);
}

ProfileTally tally_profiles(const ChildSet& s, unsigned n, unsigned cap) {
  check_cap(n, cap, "tally_profiles");
  std::vector<std::pair<std::vector<unsigned>, long>> work;
  Walker(s, n).prefixes(0, 1, std::min(n, 4U), work);

  CountTally merged;
  const long jobs = static_cast<long>(work.size());
#pragma omp parallel
  {
    CountTally local;
    std::vector<unsigned> key(s.size());
    Walker walker(s, n);
#pragma omp for schedule(dynamic, 1) nowait
    for (long j = 0; j < jobs; ++j) {
      const auto& [prefix, open] = work[static_cast<std::size_t>(j)];
      std::copy(prefix.begin(), prefix.end(), walker.code().begin());
      walker.run(static_cast<unsigned>(prefix.size()), open,
                 [&](std::span<const unsigned> code) { record(s, code, key, local); });
    }
#pragma omp critical(childstat_tally_merge)
    for (const auto& [k, count] : local) merged[k] += count;
  }
  return to_exact(merged);
}

ExactInt numerator_from_profiles(const ProfileTally& tally, const ChildSet& s, unsigned s1,
                                 std::optional<unsigned> s2, unsigned p1, unsigned p2) {
  ExactInt sum = 0;
  for (const auto& [key, count] : tally) {
    const unsigned x1 = s.contains(s1) ? key[s.index_of(s1)] : 0;
    const unsigned x2 = s2 && s.contains(*s2) ? key[s.index_of(*s2)] : 0;
    ExactInt a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), x1, p1);
    mpz_ui_pow_ui(b.get_mpz_t(), x2, p2);
    sum += count * a * b;
  }
  return sum;
}

ExactInt oracle_numerator(const ChildSet& s, unsigned n, unsigned s1, std::optional<unsigned> s2,
                          unsigned p1, unsigned p2, unsigned cap) {
  ExactInt sum = 0;
  for_each_tree(
      s, n,
      [&](std::span<const unsigned> code) {
        unsigned x1 = 0, x2 = 0;
        for (unsigned c : code) {
          x1 += c == s1;
          if (s2) x2 += c == *s2;
        }
        ExactInt a, b;
        mpz_ui_pow_ui(a.get_mpz_t(), x1, p1);
        mpz_ui_pow_ui(b.get_mpz_t(), x2, p2);
        sum += a * b;
      },
      cap);
  return sum;
}

ExactRat oracle_central_moment(const ProfileTally& tally, const ChildSet& s, unsigned s1,
                               unsigned s2, unsigned p1, unsigned p2) {
  ExactInt total = 0;
  ExactInt sum1 = 0, sum2 = 0;
  const std::size_t i1 = s.index_of(s1), i2 = s.index_of(s2);
  for (const auto& [key, count] : tally) {
    total += count;
    sum1 += count * key[i1];
    sum2 += count * key[i2];
  }
  if (total == 0) throw Error(ErrorCode::NoTrees, "empty tally");
  const ExactRat mu1 = make_rational(sum1, total);
  const ExactRat mu2 = make_rational(sum2, total);
  ExactRat acc = 0;
  for (const auto& [key, count] : tally) {
    ExactRat d1 = ExactRat(key[i1]) - mu1;
    ExactRat d2 = ExactRat(key[i2]) - mu2;
    ExactRat term = ExactRat(count);
    for (unsigned k = 0; k < p1; ++k) term *= d1;
    for (unsigned k = 0; k < p2; ++k) term *= d2;
    acc += term;
  }
  return acc / ExactRat(total);
}

namespace {

// Truncated multivariate polynomial in x and y_s; key = (deg_x, e_0, ..., e_{k-1}).
using Multi = std::map<std::vector<unsigned>, ExactInt>;

Multi multiply(const Multi& a, const Multi& b, unsigned max_x) {
  Multi out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      if (ka[0] + kb[0] > max_x) continue;
      std::vector<unsigned> key(ka.size());
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = ka[i] + kb[i];
      out[key] += ca * cb;
    }
  }
  return out;
}

}  // namespace

std::map<unsigned, std::vector<JointCoefficient>> joint_gf_fixpoint(const ChildSet& s,
                                                                    unsigned n_max,
                                                                    unsigned cap) {
  check_cap(n_max, cap, "joint_gf_fixpoint");
  const std::size_t k = s.size();
  Multi one;
  one[std::vector<unsigned>(k + 1, 0)] = 1;

  Multi f;  // 0
  for (unsigned round = 0; round < n_max; ++round) {
    // x * sum_i y_{s_i} f^{s_i}
    Multi next;
    Multi power = one;
    unsigned power_exp = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const unsigned target = s.elements()[i];
      for (; power_exp < target; ++power_exp) power = multiply(power, f, n_max - 1);
      for (const auto& [key, coeff] : power) {
        std::vector<unsigned> shifted = key;
        shifted[0] += 1;
        shifted[i + 1] += 1;
        if (shifted[0] > n_max) continue;
        next[shifted] += coeff;
      }
    }
    f = std::move(next);
  }

  std::map<unsigned, std::vector<JointCoefficient>> out;
  for (unsigned n = 1; n <= n_max; ++n) out[n];
  for (const auto& [key, coeff] : f) {
    if (coeff == 0) continue;
    out[key[0]].push_back(
        JointCoefficient{key[0], std::vector<unsigned>(key.begin() + 1, key.end()), coeff});
  }
  return out;
}

ExactInt uniform_below(const ExactInt& bound, std::mt19937_64& rng) {
  if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  if (bits <= 64) {
    const std::uint64_t b = mpz_get_ui(bound.get_mpz_t());
    const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
    for (;;) {
      std::uint64_t r = rng() & mask;
      if (r < b) return ExactInt(static_cast<unsigned long>(r));
    }
  }
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  std::vector<std::uint64_t> buffer(words);
  ExactInt r;
  for (;;) {
    for (auto& w : buffer) w = rng();
    buffer.back() &= top_mask;
    // Least significant word first.
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buffer.data());
    if (r < bound) return r;
  }
}

TreeSampler::TreeSampler(ChildSet s, unsigned n_max) : set_(std::move(s)), n_max_(n_max) {
  const unsigned width = set_.max();
  trees_.assign(n_max + 1, 0);
  forests_.assign(width + 1, std::vector<ExactInt>(n_max + 1, 0));
  forests_[0][0] = 1;
  // forests_[i][0] = [i == 0]; f_m needs forests_[.][m-1], which needs f_1..f_{m-1}.
  for (unsigned m = 1; m <= n_max; ++m) {
    for (unsigned c : set_.elements()) trees_[m] += forests_[c][m - 1];
    for (unsigned i = 1; i <= width; ++i) {
      ExactInt sum = 0;
      for (unsigned a = 1; a <= m; ++a) sum += trees_[a] * forests_[i - 1][m - a];
      forests_[i][m] = sum;
    }
  }
}

TreeCode TreeSampler::sample(unsigned n, std::mt19937_64& rng) const {
  if (n == 0 || n > n_max_) throw std::out_of_range("TreeSampler: n outside table");
  if (trees_[n] == 0) {
    throw Error(ErrorCode::NoTrees, "no trees on " + std::to_string(n) + " vertices with " +
                                        set_.to_string());
  }
  TreeCode tree;
  tree.counts.reserve(n);
  std::vector<unsigned> pending{n};
  std::vector<unsigned> sizes;
  while (!pending.empty()) {
    const unsigned m = pending.back();
    pending.pop_back();

    ExactInt r = uniform_below(trees_[m], rng);
    unsigned arity = 0;
    for (unsigned c : set_.elements()) {
      const ExactInt& w = forests_[c][m - 1];
      if (r < w) {
        arity = c;
        break;
      }
      r -= w;
    }
    tree.counts.push_back(arity);

    // Split the m-1 descendants among the subtrees left to right.
    sizes.clear();
    unsigned rest = m - 1;
    for (unsigned j = arity; j >= 2; --j) {
      ExactInt pick = uniform_below(forests_[j][rest], rng);
      unsigned a = 1;
      for (;; ++a) {
        ExactInt w = trees_[a] * forests_[j - 1][rest - a];
        if (pick < w) break;
        pick -= w;
      }
      sizes.push_back(a);
      rest -= a;
    }
    if (arity >= 1) sizes.push_back(rest);
    for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) pending.push_back(*it);
  }
  return tree;
}

ExactRat TreeSampler::path_probability(const TreeCode& tree) const {
  if (!is_lukasiewicz(tree.counts)) throw std::invalid_argument("not a Lukasiewicz word");
  const std::size_t n = tree.size();
  if (n > n_max_) throw std::out_of_range("TreeSampler: n outside table");
  // Subtree size at each preorder position, from a right-to-left scan.
  std::vector<unsigned> size(n, 1);
  std::vector<std::size_t> roots;
  for (std::size_t i = n; i-- > 0;) {
    for (unsigned c = 0; c < tree.counts[i]; ++c) {
      size[i] += size[roots.back()];
      roots.pop_back();
    }
    roots.push_back(i);
  }

  ExactRat p = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned m = size[i];
    const unsigned arity = tree.counts[i];
    p *= make_rational(forests_[arity][m - 1], trees_[m]);
    unsigned rest = m - 1;
    std::size_t child = i + 1;
    for (unsigned j = arity; j >= 2; --j) {
      const unsigned a = size[child];
      p *= make_rational(trees_[a] * forests_[j - 1][rest - a], forests_[j][rest]);
      rest -= a;
      child += a;
    }
  }
  return p;
}

TreeCode sample_tree_uniform(const ChildSet& s, unsigned n, std::uint64_t seed) {
  TreeSampler sampler(s, n);
  std::mt19937_64 rng(seed);
  return sampler.sample(n, rng);
}

namespace {

constexpr std::uint64_t kBlockSize = 1 << 14;

struct BlockSums {
  ExactInt sum = 0;
  ExactInt sum_sq = 0;
};

BlockSums run_block(const TreeSampler& sampler, unsigned n, unsigned s1,
                    std::optional<unsigned> s2, unsigned p1, unsigned p2, std::uint64_t seed,
                    std::uint64_t block, std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  BlockSums out;
  ExactInt a, b;
  for (std::uint64_t i = 0; i < count; ++i) {
    TreeCode tree = sampler.sample(n, rng);
    unsigned x1 = 0, x2 = 0;
    for (unsigned c : tree.counts) {
      x1 += c == s1;
      if (s2) x2 += c == *s2;
    }
    mpz_ui_pow_ui(a.get_mpz_t(), x1, p1);
    mpz_ui_pow_ui(b.get_mpz_t(), x2, p2);
    a *= b;
    out.sum += a;
    mpz_addmul(out.sum_sq.get_mpz_t(), a.get_mpz_t(), a.get_mpz_t());
  }
  return out;
}

MonteCarloEstimate finish(const BlockSums& total, std::uint64_t samples) {
  MonteCarloEstimate est;
  est.samples = samples;
  const ExactInt count(static_cast<unsigned long>(samples));
  est.sample_mean = make_rational(total.sum, count);
  est.estimate = est.sample_mean.get_d();
  if (samples > 1) {
    // Unbiased sample variance of the values, then SE of the mean.
    ExactRat var = make_rational(total.sum_sq * count - total.sum * total.sum,
                                 count * (count - 1));
    est.standard_error = std::sqrt(var.get_d() / static_cast<double>(samples));
  }
  return est;
}

void check_mc_args(unsigned n, std::uint64_t samples) {
  if (samples == 0) throw Error(ErrorCode::InvalidQuery, "samples must be positive");
  if (n == 0) throw Error(ErrorCode::InvalidQuery, "n must be positive");
}

}  // namespace

MonteCarloEstimate monte_carlo_moment_serial(const ChildSet& s, unsigned n, unsigned s1,
                                             std::optional<unsigned> s2, unsigned p1,
                                             unsigned p2, std::uint64_t samples,
                                             std::uint64_t seed) {
  check_mc_args(n, samples);
  TreeSampler sampler(s, n);
  BlockSums total;
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t count = std::min(kBlockSize, samples - b * kBlockSize);
    BlockSums part = run_block(sampler, n, s1, s2, p1, p2, seed, b, count);
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
  }
  return finish(total, samples);
}

MonteCarloEstimate monte_carlo_moment(const ChildSet& s, unsigned n, unsigned s1,
                                      std::optional<unsigned> s2, unsigned p1, unsigned p2,
                                      std::uint64_t samples, std::uint64_t seed) {
  check_mc_args(n, samples);
  TreeSampler sampler(s, n);
  if (sampler.tree_count(n) == 0) {
    throw Error(ErrorCode::NoTrees, "no trees on " + std::to_string(n) + " vertices with " +
                                        s.to_string());
  }
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> parts(blocks);
  const long count = static_cast<long>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < count; ++b) {
    const auto block = static_cast<std::uint64_t>(b);
    const std::uint64_t size = std::min(kBlockSize, samples - block * kBlockSize);
    parts[block] = run_block(sampler, n, s1, s2, p1, p2, seed, block, size);
  }
  BlockSums total;
  for (const auto& part : parts) {
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
  }
  return finish(total, samples);
}

}  // namespace childstat
