#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zigzag/errors.hpp"

namespace zigzag {

// Finite sequence of positive integers, indexed from 1 in all interfaces.
struct Sequence {
    std::vector<mpz_class> entries;

    Sequence() = default;
    explicit Sequence(std::vector<mpz_class> e) : entries(std::move(e)) {}
    Sequence(std::initializer_list<long> xs) {
        for (long x : xs) entries.emplace_back(x);
    }

    std::size_t size() const { return entries.size(); }

    // 1-based access.
    const mpz_class& at(std::size_t i) const { return entries.at(i - 1); }
};

// Nonempty finite set of positive indices, kept sorted and duplicate-free.
struct Block {
    std::vector<int> indices;

    Block() = default;
    Block(std::initializer_list<int> xs) : indices(xs) {}
    explicit Block(std::vector<int> xs) : indices(std::move(xs)) {}

    bool empty() const { return indices.empty(); }
    int min() const { return indices.front(); }
    int max() const { return indices.back(); }

    bool operator==(const Block&) const = default;
};

// Ordered blocks H_1 < H_2 < ... (max of each below min of the next),
// the skeleton of a sum subsystem.
struct BlockChain {
    std::vector<Block> blocks;

    BlockChain() = default;
    BlockChain(std::initializer_list<Block> bs) : blocks(bs) {}
    explicit BlockChain(std::vector<Block> bs) : blocks(std::move(bs)) {}

    std::size_t size() const { return blocks.size(); }

    bool operator==(const BlockChain&) const = default;
};

// l sequences truncated to one common index range [1, depth].
struct MultiSeq {
    std::vector<Sequence> seqs;

    MultiSeq() = default;
    explicit MultiSeq(std::vector<Sequence> s) : seqs(std::move(s)) {}

    std::size_t width() const { return seqs.size(); }
    std::size_t depth() const { return seqs.empty() ? 0 : seqs.front().size(); }
};

// Validation. Enumeration entry points call these on their inputs and
// throw InputError with a description of the first violation.
void validate(const Sequence& seq);
void validate(const Block& block);
void validate(const BlockChain& chain);
void validate(const MultiSeq& mseq);

// Sorts and deduplicates the indices, then validates.
Block make_block(std::vector<int> indices);

// Truncates every sequence to `depth` entries and validates the result.
MultiSeq truncate_multiseq(const std::vector<Sequence>& seqs, std::size_t depth);

std::string to_string(const Block& block);

}  // namespace zigzag
