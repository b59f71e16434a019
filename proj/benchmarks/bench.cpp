#include <benchmark/benchmark.h>

#include <vector>

#include "zigzag/dynamics.hpp"
#include "zigzag/families.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/rng.hpp"
#include "zigzag/sequences.hpp"
#include "zigzag/witness.hpp"

namespace {

using namespace zigzag;

Sequence arithmetic_seq(int len, long base, long step) {
    Sequence s;
    for (int i = 0; i < len; ++i) s.entries.emplace_back(base + step * i);
    return s;
}

void BM_FsEnumerate(benchmark::State& state) {
    const Sequence s = arithmetic_seq(static_cast<int>(state.range(0)), 1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(fs_enumerate(s));
}
BENCHMARK(BM_FsEnumerate)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_MemberA(benchmark::State& state) {
    // A member whose binary support spans 4 * range bits.
    const int k = static_cast<int>(state.range(0));
    mpz_class n = 0;
    for (int t = 1; t <= k; ++t) mpz_setbit(n.get_mpz_t(), 2UL * static_cast<unsigned long>(t));
    for (int t = k + 1; t <= 2 * k; ++t)
        mpz_setbit(n.get_mpz_t(), 2UL * static_cast<unsigned long>(t) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(member_a(n));
}
BENCHMARK(BM_MemberA)->Arg(8)->Arg(64)->Arg(512);

void BM_EnumerateA(benchmark::State& state) {
    const mpz_class limit = mpz_class(1) << state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_a(limit));
}
BENCHMARK(BM_EnumerateA)->Arg(16)->Arg(20)->Arg(24);

void BM_RefuteIp(benchmark::State& state) {
    static const ValueSet pool = enumerate_a(mpz_class(1) << 20);
    Rng rng(1);
    Sequence s;
    for (int i = 0; i < 10; ++i)
        s.entries.push_back(
            pool[static_cast<std::size_t>(rng.range(0, static_cast<long>(pool.size()) - 1))]);
    for (auto _ : state) benchmark::DoNotOptimize(refute_ip(s));
}
BENCHMARK(BM_RefuteIp);

void BM_IprWitness(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ipr_witness(r));
}
BENCHMARK(BM_IprWitness)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_MultiReturnSet(benchmark::State& state) {
    const int a = static_cast<int>(state.range(0));
    const int b = static_cast<int>(state.range(1));
    const FiniteMPS s = mps_product(mps_rotation(a), mps_rotation(b));
    std::vector<int> points;
    for (int x = 0; x < s.size; x += 3) points.push_back(x);
    const MeasurableSet set = MeasurableSet::from_points(s.size, points);
    for (auto _ : state) benchmark::DoNotOptimize(multi_return_set(s, {set, set}));
}
BENCHMARK(BM_MultiReturnSet)->Args({8, 9})->Args({32, 27})->Args({64, 125});

void BM_ZigzagConstruct(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    const FamilyOracle o = modular_family(4);
    Rng rng(4);
    std::vector<Sequence> seqs;
    for (int j = 0; j < 3; ++j) {
        Sequence s;
        for (int i = 0; i < 40; ++i) s.entries.push_back(rng.range(1, 100));
        seqs.push_back(std::move(s));
    }
    const MultiSeq mseq{seqs};
    for (auto _ : state) benchmark::DoNotOptimize(zigzag_construct(o, mseq, steps, 100000));
}
BENCHMARK(BM_ZigzagConstruct)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
