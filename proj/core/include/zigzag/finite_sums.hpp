#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "zigzag/sequences.hpp"

namespace zigzag {

// Enumerated value sets are sorted ascending with duplicates collapsed.
using ValueSet = std::vector<mpz_class>;

bool contains(const ValueSet& set, const mpz_class& value);

// Default hard caps. Enumeration is exponential; exceeding a cap throws
// CapExceeded instead of truncating silently.
inline constexpr std::size_t kFsLengthCap = 24;
inline constexpr std::size_t kZigzagDepthCap = 16;
inline constexpr std::size_t kZigzagWidthCap = 4;
inline constexpr std::size_t kZigzagResultCap = std::size_t{1} << 21;
inline constexpr std::size_t kIpnDepthCap = 16;
inline constexpr std::size_t kIpnWorkCap = std::size_t{1} << 24;

// All sums over nonempty subsets of the sequence's entries.
ValueSet fs_enumerate(const Sequence& seq, std::size_t length_cap = kFsLengthCap);

// All products over nonempty subsets of the sequence's entries.
ValueSet fp_enumerate(const Sequence& seq, std::size_t length_cap = kFsLengthCap);

// Zigzag finite sums: for every nonempty H inside the common index range
// and every per-index choice among the l sequences, the sum of the chosen
// entries over H.
ValueSet zfs_enumerate(const MultiSeq& mseq,
                       std::size_t depth_cap = kZigzagDepthCap,
                       std::size_t width_cap = kZigzagWidthCap);

// Zigzag finite products, same shape as zfs_enumerate.
ValueSet zfp_enumerate(const MultiSeq& mseq,
                       std::size_t depth_cap = kZigzagDepthCap,
                       std::size_t width_cap = kZigzagWidthCap);

// Block sums over ordered chains H_1 < H_2 < ... < H_n of nonempty sets
// inside [1, depth]: sum_i sum_{t in H_i} seqs[i][t]. With n = 1 this is
// fs_enumerate on the depth-truncation.
ValueSet ipn_enumerate(const std::vector<Sequence>& seqs, int depth,
                       std::size_t depth_cap = kIpnDepthCap,
                       std::size_t work_cap = kIpnWorkCap);

// The sum subsystem y_n = sum over H_n of x_t for an ordered block chain.
Sequence sum_subsystem(const Sequence& seq, const BlockChain& chain);

// Sum of seq entries over one block (indices must be in range).
mpz_class block_sum(const Sequence& seq, const Block& block);

}  // namespace zigzag
