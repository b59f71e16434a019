#include <doctest.h>

#include "helpers.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/sequences.hpp"

using namespace zigzag;
using namespace zigzag::testing;

TEST_CASE("sequence and block validation") {
    CHECK_THROWS_AS(validate(Sequence{}), InputError);
    CHECK_THROWS_AS(validate(seq({1, 0, 2})), InputError);
    CHECK_NOTHROW(validate(seq({1, 2, 3})));

    CHECK_THROWS_AS(validate(Block{}), InputError);
    CHECK_THROWS_AS(validate(Block{{0, 1}}), InputError);
    CHECK_THROWS_AS(validate(Block{{2, 2}}), InputError);
    CHECK_THROWS_AS(validate(Block{{3, 1}}), InputError);
    CHECK_NOTHROW(validate(Block{{1, 3, 7}}));

    const Block b = make_block({7, 3, 3, 1});
    CHECK(b.indices == std::vector<int>{1, 3, 7});
    CHECK(to_string(b) == "{1,3,7}");

    CHECK_NOTHROW(validate(BlockChain{}));
    CHECK_NOTHROW(validate(BlockChain{{Block{{1, 2}}, Block{{4}}}}));
    CHECK_THROWS_AS(validate(BlockChain{{Block{{1, 4}}, Block{{4}}}}), InputError);
    CHECK_THROWS_AS(validate(BlockChain{{Block{{2}}, Block{{1}}}}), InputError);

    CHECK_THROWS_AS(validate(MultiSeq{}), InputError);
    CHECK_THROWS_AS(validate(MultiSeq{{seq({1, 2}), seq({1})}}), InputError);
    CHECK_NOTHROW(validate(MultiSeq{{seq({1, 2}), seq({3, 4})}}));
}

TEST_CASE("finite sums and products of small sequences") {
    CHECK(fs_enumerate(seq({1, 2, 4})) == values({1, 2, 3, 4, 5, 6, 7}));
    CHECK(fs_enumerate(seq({1, 1})) == values({1, 2}));
    CHECK(fs_enumerate(seq({5})) == values({5}));
    CHECK(fp_enumerate(seq({2, 3})) == values({2, 3, 6}));
    CHECK(fp_enumerate(seq({2, 2, 2})) == values({2, 4, 8}));
}

TEST_CASE("finite sums and products match the subset oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int len = static_cast<int>(rng.range(1, 10));
        const Sequence s = random_seq(rng, len, 1, 50);
        CHECK(fs_enumerate(s) == subset_oracle(s, false));
        CHECK(fp_enumerate(s) == subset_oracle(s, true));
    }
}

TEST_CASE("enumeration caps") {
    Rng rng(1);
    const Sequence long_seq = random_seq(rng, 25, 1, 5);
    CHECK_THROWS_AS(fs_enumerate(long_seq), CapExceeded);
    CHECK_THROWS_AS(fp_enumerate(long_seq), CapExceeded);
    CHECK_NOTHROW(fs_enumerate(seq({1, 2, 3}), 3));
    CHECK_THROWS_AS(fs_enumerate(seq({1, 2, 3, 4}), 3), CapExceeded);
}

TEST_CASE("zigzag finite sums of small families") {
    const MultiSeq m{{seq({1, 2}), seq({10, 20})}};
    CHECK(zfs_enumerate(m) == values({1, 2, 3, 10, 12, 20, 21, 30}));

    const MultiSeq p{{seq({2, 3}), seq({5, 7})}};
    CHECK(zfp_enumerate(p) == values({2, 3, 5, 6, 7, 14, 15, 35}));

    // Width one degenerates to plain FS/FP.
    const MultiSeq single{{seq({1, 2, 4})}};
    CHECK(zfs_enumerate(single) == fs_enumerate(seq({1, 2, 4})));
    CHECK(zfp_enumerate(single) == fp_enumerate(seq({1, 2, 4})));
}

TEST_CASE("zigzag enumerations match the choice-function oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const int width = static_cast<int>(rng.range(1, 3));
        const int depth = static_cast<int>(rng.range(1, 4));
        std::vector<Sequence> seqs;
        for (int j = 0; j < width; ++j) seqs.push_back(random_seq(rng, depth, 1, 30));
        const MultiSeq m{std::move(seqs)};
        CHECK(zfs_enumerate(m) == zigzag_oracle(m, false));
        CHECK(zfp_enumerate(m) == zigzag_oracle(m, true));
    }
}

TEST_CASE("zigzag caps") {
    std::vector<Sequence> wide;
    for (int j = 0; j < 5; ++j) wide.push_back(seq({1, 2}));
    CHECK_THROWS_AS(zfs_enumerate(MultiSeq{wide}), CapExceeded);

    Rng rng(3);
    const MultiSeq deep{{random_seq(rng, 17, 1, 9)}};
    CHECK_THROWS_AS(zfs_enumerate(deep), CapExceeded);
}

TEST_CASE("ordered block chains of depth n") {
    // Canonical even/odd powers, depth 2: the only chain is {1} < {2}.
    const std::vector<Sequence> canonical{seq({4, 16}), seq({8, 32})};
    CHECK(ipn_enumerate(canonical, 2) == values({36}));

    const std::vector<Sequence> ones{seq({1, 1}), seq({1, 1})};
    CHECK(ipn_enumerate(ones, 2) == values({2}));

    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int depth = static_cast<int>(rng.range(n, 6));
        std::vector<Sequence> seqs;
        for (int j = 0; j < n; ++j) seqs.push_back(random_seq(rng, depth, 1, 40));
        CHECK(ipn_enumerate(seqs, depth) == ipn_oracle(seqs, depth));
    }

    CHECK_THROWS_AS(ipn_enumerate(canonical, 0), InputError);
    CHECK_THROWS_AS(ipn_enumerate(canonical, 3), InputError);  // sequences too short
    CHECK_THROWS_AS(ipn_enumerate(std::vector<Sequence>{}, 2), InputError);
    CHECK_THROWS_AS(ipn_enumerate(canonical, 2, kIpnDepthCap, 1), CapExceeded);
}

TEST_CASE("block sums and sum subsystems") {
    const Sequence s = seq({1, 2, 3, 4});
    CHECK(block_sum(s, Block{{1, 2}}) == 3);
    CHECK(block_sum(s, Block{{4}}) == 4);
    CHECK_THROWS_AS(block_sum(s, Block{{5}}), InputError);
    CHECK_THROWS_AS(block_sum(s, Block{}), InputError);

    const BlockChain chain{{Block{{1, 2}}, Block{{4}}}};
    const Sequence sub = sum_subsystem(s, chain);
    CHECK(sub.entries == seq({3, 4}).entries);

    CHECK(sum_subsystem(s, BlockChain{}).entries.empty());
    CHECK_THROWS_AS(sum_subsystem(s, BlockChain{{Block{{2}}, Block{{2}}}}), InputError);
}

TEST_CASE("value set membership helper") {
    const ValueSet v = values({3, 7, 30});
    CHECK(contains(v, 7));
    CHECK(!contains(v, 8));
    CHECK(!contains(ValueSet{}, 1));
}
