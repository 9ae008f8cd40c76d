#pragma once

#include <cstdint>

#include "mlsbm/graph.hpp"

namespace mlsbm {

// Counts of unordered node pairs by co-membership in two labellings:
// m11 = together in both, m00 = separated in both, m10 = together only in the
// first, m01 = together only in the second.
struct PairCounts {
  std::uint64_t m00 = 0;
  std::uint64_t m01 = 0;
  std::uint64_t m10 = 0;
  std::uint64_t m11 = 0;
};

PairCounts pair_counts(const BlockAssignment& a, const BlockAssignment& b);

// Number of nodes whose labels differ, without relabelling.
int hamming_distance(const BlockAssignment& a, const BlockAssignment& b);

// Classification error: Hamming distance minimized over all permutations of
// the second labelling's K labels. K is capped at 8 (K! alternatives).
int ace_distance(const BlockAssignment& a, const BlockAssignment& b);

// Mirkin distance 2(m01 + m10), the number of ordered pair disagreements.
std::uint64_t mirkin_distance(const BlockAssignment& a, const BlockAssignment& b);

// For two-block labellings the Mirkin distance collapses to a function of the
// plain Hamming distance h: 2 (N - h) h. Requires K = 2 on both sides.
std::uint64_t mirkin_two_block(int num_nodes, int hamming);

// Fraction of pairs treated the same way: (m00 + m11) / (total pairs).
double rand_index(const BlockAssignment& a, const BlockAssignment& b);

// Chance-corrected pair agreement (Hubert-Arabie). Exact integer arithmetic
// internally; when the correction denominator vanishes the value is 1 if the
// labellings induce the same partition and 0 otherwise.
double adjusted_rand(const BlockAssignment& a, const BlockAssignment& b);

}  // namespace mlsbm
