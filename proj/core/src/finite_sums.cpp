#include "zigzag/finite_sums.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

void sort_unique(ValueSet& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

// One DP step of subset enumeration: old values, old values combined with x,
// and x alone. All three ranges are already sorted (entries are >= 1, so
// combining with x preserves order and x itself is a lower bound).
ValueSet fold_entry(const ValueSet& values, const mpz_class& x, bool multiply) {
    ValueSet with_x;
    with_x.reserve(values.size() + 1);
    with_x.push_back(x);
    for (const mpz_class& v : values)
        with_x.push_back(multiply ? mpz_class(v * x) : mpz_class(v + x));

    ValueSet merged;
    merged.reserve(values.size() + with_x.size());
    std::merge(values.begin(), values.end(), with_x.begin(), with_x.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

ValueSet subset_fold(const Sequence& seq, std::size_t length_cap, bool multiply) {
    validate(seq);
    if (seq.size() > length_cap)
        throw CapExceeded("sequence length " + std::to_string(seq.size()) +
                          " exceeds cap " + std::to_string(length_cap));
    ValueSet values;
    for (const mpz_class& x : seq.entries) values = fold_entry(values, x, multiply);
    return values;
}

// Zigzag DP step over index t: for each choice c among the l sequences,
// extend every old value by c and admit c itself as a singleton.
ValueSet fold_index(const ValueSet& values, const MultiSeq& mseq, std::size_t t,
                    bool multiply) {
    ValueSet candidates;
    candidates.reserve((values.size() + 1) * mseq.width());
    for (const Sequence& seq : mseq.seqs) {
        const mpz_class& c = seq.at(t);
        candidates.push_back(c);
        for (const mpz_class& v : values)
            candidates.push_back(multiply ? mpz_class(v * c) : mpz_class(v + c));
    }
    sort_unique(candidates);

    ValueSet merged;
    merged.reserve(values.size() + candidates.size());
    std::merge(values.begin(), values.end(), candidates.begin(), candidates.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    if (merged.size() > kZigzagResultCap)
        throw CapExceeded("zigzag value set exceeds " +
                          std::to_string(kZigzagResultCap) + " elements");
    return merged;
}

ValueSet zigzag_fold(const MultiSeq& mseq, std::size_t depth_cap,
                     std::size_t width_cap, bool multiply) {
    validate(mseq);
    if (mseq.depth() > depth_cap)
        throw CapExceeded("depth " + std::to_string(mseq.depth()) + " exceeds cap " +
                          std::to_string(depth_cap));
    if (mseq.width() > width_cap)
        throw CapExceeded("width " + std::to_string(mseq.width()) + " exceeds cap " +
                          std::to_string(width_cap));
    ValueSet values;
    for (std::size_t t = 1; t <= mseq.depth(); ++t)
        values = fold_index(values, mseq, t, multiply);
    return values;
}

// Chains are walked level by level: every nonempty subset of [lo, depth]
// becomes H_{level+1}, and the next level starts above its maximum.
void ipn_walk(const std::vector<Sequence>& seqs, std::size_t level, int lo, int depth,
              const mpz_class& acc, ValueSet& out, std::size_t& work,
              std::size_t work_cap) {
    const Sequence& seq = seqs[level];
    const int span = depth - lo + 1;
    if (span <= 0) return;
    for (unsigned long mask = 1; mask < (1UL << span); ++mask) {
        if (++work > work_cap)
            throw CapExceeded("block chain enumeration exceeds " +
                              std::to_string(work_cap) + " steps");
        mpz_class partial = acc;
        int top = lo;
        for (int b = 0; b < span; ++b) {
            if (mask & (1UL << b)) {
                partial += seq.at(static_cast<std::size_t>(lo + b));
                top = lo + b;
            }
        }
        if (level + 1 == seqs.size())
            out.push_back(partial);
        else
            ipn_walk(seqs, level + 1, top + 1, depth, partial, out, work, work_cap);
    }
}

}  // namespace

bool contains(const ValueSet& set, const mpz_class& value) {
    return std::binary_search(set.begin(), set.end(), value);
}

ValueSet fs_enumerate(const Sequence& seq, std::size_t length_cap) {
    return subset_fold(seq, length_cap, false);
}

ValueSet fp_enumerate(const Sequence& seq, std::size_t length_cap) {
    return subset_fold(seq, length_cap, true);
}

ValueSet zfs_enumerate(const MultiSeq& mseq, std::size_t depth_cap,
                       std::size_t width_cap) {
    return zigzag_fold(mseq, depth_cap, width_cap, false);
}

ValueSet zfp_enumerate(const MultiSeq& mseq, std::size_t depth_cap,
                       std::size_t width_cap) {
    return zigzag_fold(mseq, depth_cap, width_cap, true);
}

ValueSet ipn_enumerate(const std::vector<Sequence>& seqs, int depth,
                       std::size_t depth_cap, std::size_t work_cap) {
    if (seqs.empty()) throw InputError("need at least one sequence");
    if (depth < 1) throw InputError("depth must be positive");
    if (static_cast<std::size_t>(depth) > depth_cap)
        throw CapExceeded("depth " + std::to_string(depth) + " exceeds cap " +
                          std::to_string(depth_cap));
    for (const Sequence& seq : seqs) {
        validate(seq);
        if (seq.size() < static_cast<std::size_t>(depth))
            throw InputError("sequence has " + std::to_string(seq.size()) +
                             " entries, need " + std::to_string(depth));
    }
    ValueSet out;
    std::size_t work = 0;
    ipn_walk(seqs, 0, 1, depth, mpz_class(0), out, work, work_cap);
    sort_unique(out);
    return out;
}

Sequence sum_subsystem(const Sequence& seq, const BlockChain& chain) {
    validate(seq);
    validate(chain);
    std::vector<mpz_class> entries;
    entries.reserve(chain.size());
    for (const Block& block : chain.blocks) entries.push_back(block_sum(seq, block));
    return Sequence(std::move(entries));
}

mpz_class block_sum(const Sequence& seq, const Block& block) {
    validate(block);
    if (static_cast<std::size_t>(block.max()) > seq.size())
        throw InputError("block index " + std::to_string(block.max()) +
                         " exceeds sequence length " + std::to_string(seq.size()));
    mpz_class total = 0;
    for (int i : block.indices) total += seq.at(static_cast<std::size_t>(i));
    return total;
}

}  // namespace zigzag
