// Acceptance gate: one line per criterion, PASS only when the check holds
// and finishes inside its pinned time budget. Exit 0 iff every line passes.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "zigzag/certificates.hpp"
#include "zigzag/dynamics.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/families.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/witness.hpp"

namespace fs = std::filesystem;
using namespace zigzag;
using namespace zigzag::testing;

namespace {

struct Outcome {
    bool ok = false;
    std::string note;
};

// 1. The membership test and the independent enumeration agree on [1, 2^20].
constexpr double kLimit1 = 10.0;
Outcome membership_matches_enumeration() {
    const long bound = 1L << 20;
    const ValueSet table = enumerate_a(bound);
    for (mpz_class n = 1; n <= bound; ++n) {
        const bool listed = std::binary_search(table.begin(), table.end(), n);
        if (member_a(n) != listed)
            return {false, "disagreement at n=" + n.get_str()};
    }
    return {true, std::to_string(table.size()) + " members below 2^20, all agree"};
}

// 2. Witness sequences for r = 1..8 have every finite sum inside the set.
constexpr double kLimit2 = 1.0;
Outcome witnesses_land_inside() {
    long sums = 0;
    for (int r = 1; r <= 8; ++r) {
        const Sequence w = ipr_witness(r);
        for (const mpz_class& v : fs_enumerate(w)) {
            if (!member_a(v))
                return {false, "r=" + std::to_string(r) + ": sum " + v.get_str() +
                                   " escapes"};
            ++sums;
        }
    }
    return {true, std::to_string(sums) + " finite sums verified"};
}

// 3. 100 seeded length-10 sequences drawn from the set are all refuted.
constexpr double kLimit3 = 30.0;
Outcome sampled_sequences_refuted() {
    const ValueSet pool = enumerate_a(mpz_class(1) << 24);
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        Sequence s;
        for (int i = 0; i < 10; ++i)
            s.entries.push_back(
                pool[static_cast<std::size_t>(rng.range(0, static_cast<long>(pool.size()) - 1))]);
        auto describe = [&s](const char* what) {
            std::string msg = what;
            msg += " for sequence (";
            for (std::size_t i = 1; i <= s.size(); ++i) {
                if (i > 1) msg += ',';
                msg += s.at(i).get_str();
            }
            return msg + ")";
        };
        const auto rc = refute_ip(s);
        if (!rc) return {false, describe("no refutation")};
        if (member_a(rc->value)) return {false, describe("in-set refutation value")};
    }
    return {true, "100/100 refuted from a pool of " + std::to_string(pool.size())};
}

// 4. For every rotation by d = 2..12, r = d+1 entries force a finite sum
// into the return set, across 200 seeded sequences per d.
constexpr double kLimit4 = 10.0;
Outcome rotations_hit_with_pigeonhole_r() {
    for (int d = 2; d <= 12; ++d) {
        const FiniteMPS s = mps_rotation(d);
        const MeasurableSet a = MeasurableSet::from_points(d, {0});
        const ReturnSet rs = return_set(s, a, a);
        const long r = pigeonhole_r(measure(s, a));
        if (r != d + 1)
            return {false, "d=" + std::to_string(d) + ": pigeonhole r=" +
                               std::to_string(r)};
        Rng rng(static_cast<std::uint64_t>(d));
        std::vector<Sequence> trials;
        trials.reserve(200);
        for (int t = 0; t < 200; ++t)
            trials.push_back(random_seq(rng, static_cast<int>(r), 1, 100));
        const IprReport report = check_ipr_star(rs, static_cast<int>(r), trials);
        if (!report.all_hit)
            return {false, "d=" + std::to_string(d) + ": a trial missed"};
    }
    return {true, "11 rotations, 200 sequences each, every trial hit"};
}

// 5. Power, product and shift identities plus exactness against a direct
// orbit check, on 50 seeded systems of at most 64 points.
constexpr double kLimit5 = 30.0;
Outcome identities_hold() {
    Rng rng(2);
    std::vector<FiniteMPS> systems;
    std::vector<std::vector<MeasurableSet>> slot_sets;
    for (int i = 0; i < 50; ++i) {
        const FiniteMPS s = random_system(rng, static_cast<int>(rng.range(2, 64)));
        std::vector<MeasurableSet> sets;
        const int k = static_cast<int>(rng.range(1, 2));
        for (int j = 0; j < k; ++j) sets.push_back(random_set(rng, s.size));
        systems.push_back(s);
        slot_sets.push_back(std::move(sets));
    }

    for (std::size_t i = 0; i < systems.size(); ++i) {
        const FiniteMPS& s = systems[i];
        const std::vector<MeasurableSet>& sets = slot_sets[i];
        const ReturnSet rs = multi_return_set(s, sets);

        for (long n = 1; n <= 3 * rs.period; ++n)
            if (rs.contains(n) != direct_multi_hit(s, sets, n))
                return {false, "system " + std::to_string(i + 1) +
                                   ": exactness fails at n=" + std::to_string(n)};

        for (long m : {1L, 2L, 3L, 5L, 8L}) {
            const ReturnSet powered = multi_return_set(mps_power(s, m), sets);
            if (!(dilation_preimage(rs, m) == powered))
                return {false, "system " + std::to_string(i + 1) +
                                   ": power identity fails at m=" + std::to_string(m)};
        }

        const long horizon = 2 * rs.period;
        for (long n = 1; n <= horizon; ++n) {
            if (!rs.contains(n)) continue;
            std::vector<MeasurableSet> refined_slots;
            MeasurableSet c = sets[0];
            for (std::size_t j = 1; j < sets.size(); ++j)
                c = intersect(c, preimage(s, sets[j], static_cast<long>(j) * n));
            refined_slots.assign(sets.size(), c);
            const ReturnSet shifted = multi_return_set(s, refined_slots);
            for (long p = 1; p <= horizon; ++p)
                if (shifted.contains(p) && !rs.contains(n + p))
                    return {false, "system " + std::to_string(i + 1) +
                                       ": shift containment fails at n=" +
                                       std::to_string(n) + ", p=" + std::to_string(p)};
        }
    }

    for (std::size_t i = 0; i + 1 < systems.size(); i += 2) {
        const FiniteMPS& s1 = systems[i];
        const FiniteMPS& s2 = systems[i + 1];
        const std::size_t k = std::min(slot_sets[i].size(), slot_sets[i + 1].size());
        std::vector<MeasurableSet> a(slot_sets[i].begin(), slot_sets[i].begin() + k);
        std::vector<MeasurableSet> b(slot_sets[i + 1].begin(),
                                     slot_sets[i + 1].begin() + k);
        const FiniteMPS prod = mps_product(s1, s2);
        std::vector<MeasurableSet> rects;
        for (std::size_t j = 0; j < k; ++j) rects.push_back(rectangle(a[j], b[j]));
        const ReturnSet joint = multi_return_set(prod, rects);
        const ReturnSet left = multi_return_set(s1, a);
        const ReturnSet right = multi_return_set(s2, b);
        const long horizon = 2 * perm_order(prod.perm);
        for (long n = 1; n <= horizon; ++n)
            if (joint.contains(n) != (left.contains(n) && right.contains(n)))
                return {false, "pair " + std::to_string(i + 1) +
                                   ": product identity fails at n=" + std::to_string(n)};
    }
    return {true, "50 systems: exactness, power, shift; 25 product pairs"};
}

// 6. The zigzag construction completes at 4 steps and verifies, for each
// modulus d = 2..6, on seeded length-32 sequences with entries in [1, 100].
constexpr double kLimit6 = 20.0;
Outcome zigzag_constructs() {
    for (long d = 2; d <= 6; ++d) {
        const FamilyOracle o = modular_family(d);
        Rng rng(static_cast<std::uint64_t>(d));
        std::vector<Sequence> seqs;
        for (int j = 0; j < 3; ++j) seqs.push_back(random_seq(rng, 32, 1, 100));
        const ConstructResult res = zigzag_construct(o, MultiSeq(seqs), 4, 10000);
        if (!res.complete)
            return {false, "d=" + std::to_string(d) + ": " + res.note};
        std::string why;
        if (!verify_certificate(res.cert, o, &why))
            return {false, "d=" + std::to_string(d) + ": " + why};
    }
    return {true, "5 moduli, depth 4, every certificate verified"};
}

// 7. 50 sampled sum subsystems at depth 20 all intersect the target set.
constexpr double kLimit7 = 5.0;
Outcome subsystems_always_hit() {
    const auto hits = certify_random_subsystems(20, 50, 1);
    if (hits.size() != 50)
        return {false, std::to_string(hits.size()) + "/50 certified"};
    for (const SampledHit& h : hits) {
        if (!member_a(h.cert.value))
            return {false, "hit value " + h.cert.value.get_str() + " is outside the set"};
        if (recompose(h.cert.decomp) != h.cert.value)
            return {false, "hit value " + h.cert.value.get_str() +
                               " does not match its decomposition"};
    }
    return {true, "50/50 certified"};
}

// 8. Every command is deterministic: two runs, byte-identical output.
constexpr double kLimit8 = 60.0;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome commands_deterministic() {
    const fs::path dir = fs::temp_directory_path() / "zigzag_acceptance";
    fs::create_directories(dir);

    const fs::path pair = dir / "pair.txt";
    std::ofstream(pair) << "36\n144\n";
    const fs::path seqs = dir / "seqs.txt";
    {
        std::ofstream out(seqs);
        Rng rng(4);
        for (int j = 0; j < 3; ++j) {
            const Sequence s = random_seq(rng, 32, 1, 100);
            for (const mpz_class& e : s.entries) out << e.get_str() << "\n";
            out << "\n";
        }
    }

    const fs::path cert = dir / "cert.json";
    {
        const std::string cmd = std::string("\"") + ZIGZAG_CLI_PATH +
                                "\" zigzag mod:4 \"" + seqs.string() +
                                "\" 4 10000 --format json --output \"" + cert.string() +
                                "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
            return {false, "could not produce a certificate to verify"};
    }

    const std::vector<std::string> commands = {
        "member 36 --format json",
        "enumerate 4096 --format json",
        "witness 6 --format json",
        "refute \"" + pair.string() + "\" --format json",
        "recurrence --rotation 7 --set-a 0 --format json",
        "zigzag mod:4 \"" + seqs.string() + "\" 4 10000 --format json",
        "counterexample --depth 20 --trials 50 --seed 1 --format json",
        "check-family mod:5 --format json --seed 3",
        "verify \"" + cert.string() + "\" --format json",
    };

    int run = 0;
    for (const std::string& args : commands) {
        std::string first;
        for (int pass = 0; pass < 2; ++pass) {
            const fs::path out = dir / ("out" + std::to_string(run++) + ".json");
            const std::string cmd = std::string("\"") + ZIGZAG_CLI_PATH + "\" " + args +
                                    " > \"" + out.string() + "\" 2> /dev/null";
            const int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
                return {false, "command failed: " + args};
            const std::string text = slurp(out);
            if (text.empty()) return {false, "no output: " + args};
            if (pass == 0)
                first = text;
            else if (text != first)
                return {false, "outputs differ: " + args};
        }
    }
    return {true, std::to_string(commands.size()) + " commands, both runs identical"};
}

struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"membership-matches-enumeration", kLimit1, membership_matches_enumeration},
        {"witnesses-land-inside", kLimit2, witnesses_land_inside},
        {"sampled-sequences-refuted", kLimit3, sampled_sequences_refuted},
        {"rotations-hit-with-pigeonhole-r", kLimit4, rotations_hit_with_pigeonhole_r},
        {"identities-hold", kLimit5, identities_hold},
        {"zigzag-constructs", kLimit6, zigzag_constructs},
        {"subsystems-always-hit", kLimit7, subsystems_always_hit},
        {"commands-deterministic", kLimit8, commands_deterministic},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        Outcome outcome;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();
        const bool pass = outcome.ok && secs < c.limit;
        all = all && pass;
        std::string note = outcome.note;
        if (outcome.ok && secs >= c.limit) note += " [over the time budget]";
        std::printf("%s %zu %s (%.1fs, limit %.0fs) %s\n", pass ? "PASS" : "FAIL", i + 1,
                    c.name, secs, c.limit, note.c_str());
    }
    return all ? 0 : 1;
}
