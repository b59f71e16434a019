#include "zigzag/sequences.hpp"

#include <algorithm>
#include <sstream>

namespace zigzag {

void validate(const Sequence& seq) {
    if (seq.entries.empty()) throw InputError("sequence must have at least one entry");
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
        if (seq.entries[i] < 1) {
            std::ostringstream os;
            os << "sequence entry " << (i + 1) << " is " << seq.entries[i]
               << "; every entry must be >= 1";
            throw InputError(os.str());
        }
    }
}

void validate(const Block& block) {
    if (block.indices.empty()) throw InputError("block must be a nonempty index set");
    for (std::size_t i = 0; i < block.indices.size(); ++i) {
        if (block.indices[i] < 1) throw InputError("block indices must be >= 1");
        if (i > 0 && block.indices[i] <= block.indices[i - 1])
            throw InputError("block indices must be strictly increasing");
    }
}

void validate(const BlockChain& chain) {
    for (const Block& b : chain.blocks) validate(b);
    for (std::size_t j = 0; j + 1 < chain.blocks.size(); ++j) {
        if (chain.blocks[j].max() >= chain.blocks[j + 1].min()) {
            std::ostringstream os;
            os << "chain ordering violated between blocks " << (j + 1) << " and " << (j + 2)
               << ": max " << chain.blocks[j].max() << " >= min " << chain.blocks[j + 1].min();
            throw InputError(os.str());
        }
    }
}

void validate(const MultiSeq& mseq) {
    if (mseq.seqs.empty()) throw InputError("multi-sequence needs at least one sequence");
    const std::size_t depth = mseq.seqs.front().size();
    for (const Sequence& s : mseq.seqs) {
        validate(s);
        if (s.size() != depth)
            throw InputError("multi-sequence members must share one index range");
    }
}

Block make_block(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    Block b{std::move(indices)};
    validate(b);
    return b;
}

MultiSeq truncate_multiseq(const std::vector<Sequence>& seqs, std::size_t depth) {
    if (depth == 0) throw InputError("depth must be >= 1");
    std::vector<Sequence> cut;
    cut.reserve(seqs.size());
    for (const Sequence& s : seqs) {
        if (s.size() < depth) throw InputError("sequence shorter than requested depth");
        cut.emplace_back(std::vector<mpz_class>(s.entries.begin(), s.entries.begin() + depth));
    }
    MultiSeq m{std::move(cut)};
    validate(m);
    return m;
}

std::string to_string(const Block& block) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < block.indices.size(); ++i) {
        if (i) os << ',';
        os << block.indices[i];
    }
    os << '}';
    return os.str();
}

}  // namespace zigzag
