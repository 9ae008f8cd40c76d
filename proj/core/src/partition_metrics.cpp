#include "mlsbm/partition_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlsbm {

namespace {

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

void check_same_nodes(const BlockAssignment& a, const BlockAssignment& b, const char* what) {
  if (a.num_nodes() != b.num_nodes())
    throw std::invalid_argument(std::string(what) + ": labellings cover different node sets");
}

// Contingency counts n_xy = #{i : a(i) = x, b(i) = y}, flattened row-major.
std::vector<std::uint64_t> contingency(const BlockAssignment& a, const BlockAssignment& b) {
  const std::size_t ka = static_cast<std::size_t>(a.num_communities());
  const std::size_t kb = static_cast<std::size_t>(b.num_communities());
  std::vector<std::uint64_t> n(ka * kb, 0);
  for (int i = 0; i < a.num_nodes(); ++i)
    ++n[static_cast<std::size_t>(a.label(i) - 1) * kb + static_cast<std::size_t>(b.label(i) - 1)];
  return n;
}

}  // namespace

PairCounts pair_counts(const BlockAssignment& a, const BlockAssignment& b) {
  check_same_nodes(a, b, "pair_counts");
  const std::size_t ka = static_cast<std::size_t>(a.num_communities());
  const std::size_t kb = static_cast<std::size_t>(b.num_communities());
  const auto n = contingency(a, b);

  std::uint64_t together_both = 0;
  for (std::uint64_t c : n) together_both += choose2(c);

  std::uint64_t together_a = 0;
  for (std::size_t x = 0; x < ka; ++x) {
    std::uint64_t row = 0;
    for (std::size_t y = 0; y < kb; ++y) row += n[x * kb + y];
    together_a += choose2(row);
  }
  std::uint64_t together_b = 0;
  for (std::size_t y = 0; y < kb; ++y) {
    std::uint64_t col = 0;
    for (std::size_t x = 0; x < ka; ++x) col += n[x * kb + y];
    together_b += choose2(col);
  }

  PairCounts pc;
  pc.m11 = together_both;
  pc.m10 = together_a - together_both;
  pc.m01 = together_b - together_both;
  pc.m00 = choose2(static_cast<std::uint64_t>(a.num_nodes())) - pc.m11 - pc.m10 - pc.m01;
  return pc;
}

int hamming_distance(const BlockAssignment& a, const BlockAssignment& b) {
  check_same_nodes(a, b, "hamming_distance");
  int d = 0;
  for (int i = 0; i < a.num_nodes(); ++i)
    if (a.label(i) != b.label(i)) ++d;
  return d;
}

int ace_distance(const BlockAssignment& a, const BlockAssignment& b) {
  check_same_nodes(a, b, "ace_distance");
  const int k = std::max(a.num_communities(), b.num_communities());
  if (k > 8) throw std::invalid_argument("ace_distance: more than 8 communities");
  // confusion[x][y] = #nodes with a-label x+1 and b-label y+1, zero-padded to k x k
  std::vector<std::vector<int>> confusion(static_cast<std::size_t>(k),
                                          std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int i = 0; i < a.num_nodes(); ++i)
    ++confusion[static_cast<std::size_t>(a.label(i) - 1)][static_cast<std::size_t>(b.label(i) - 1)];

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  int best_match = 0;
  do {
    int match = 0;
    for (int y = 0; y < k; ++y) match += confusion[static_cast<std::size_t>(perm[static_cast<std::size_t>(y)])][static_cast<std::size_t>(y)];
    best_match = std::max(best_match, match);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.num_nodes() - best_match;
}

std::uint64_t mirkin_distance(const BlockAssignment& a, const BlockAssignment& b) {
  const PairCounts pc = pair_counts(a, b);
  return 2 * (pc.m01 + pc.m10);
}

std::uint64_t mirkin_two_block(int num_nodes, int hamming) {
  if (num_nodes < 0 || hamming < 0 || hamming > num_nodes)
    throw std::invalid_argument("mirkin_two_block: need 0 <= hamming <= num_nodes");
  const std::uint64_t n = static_cast<std::uint64_t>(num_nodes);
  const std::uint64_t h = static_cast<std::uint64_t>(hamming);
  return 2 * (n - h) * h;
}

double rand_index(const BlockAssignment& a, const BlockAssignment& b) {
  if (a.num_nodes() < 2) throw std::invalid_argument("rand_index: need at least two nodes");
  const PairCounts pc = pair_counts(a, b);
  const std::uint64_t total = pc.m00 + pc.m01 + pc.m10 + pc.m11;
  return static_cast<double>(pc.m00 + pc.m11) / static_cast<double>(total);
}

double adjusted_rand(const BlockAssignment& a, const BlockAssignment& b) {
  if (a.num_nodes() < 2) throw std::invalid_argument("adjusted_rand: need at least two nodes");
  const PairCounts pc = pair_counts(a, b);
  const std::uint64_t total = pc.m00 + pc.m01 + pc.m10 + pc.m11;
  const std::uint64_t sa = pc.m11 + pc.m10;  // together in a
  const std::uint64_t sb = pc.m11 + pc.m01;  // together in b
  // 128-bit products: with N up to ~3e9 pairs the cross terms overflow 64 bits.
  using i128 = __int128;
  const i128 num = 2 * (static_cast<i128>(pc.m11) * static_cast<i128>(total) -
                        static_cast<i128>(sa) * static_cast<i128>(sb));
  const i128 den = static_cast<i128>(total) * (static_cast<i128>(sa) + static_cast<i128>(sb)) -
                   2 * static_cast<i128>(sa) * static_cast<i128>(sb);
  if (den == 0) return (pc.m01 == 0 && pc.m10 == 0) ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace mlsbm
