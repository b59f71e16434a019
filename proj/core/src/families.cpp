#include "zigzag/families.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "zigzag/errors.hpp"
#include "zigzag/rng.hpp"
#include "zigzag/witness.hpp"

namespace zigzag {

class OracleImpl : public std::enable_shared_from_this<OracleImpl> {
public:
    virtual ~OracleImpl() = default;
    virtual bool member(const mpz_class& n) const = 0;
    virtual std::string description() const = 0;
    virtual std::shared_ptr<const OracleImpl> shift(const mpz_class& b) const;
    virtual std::shared_ptr<const OracleImpl> dilate(const mpz_class& m) const;
    virtual std::shared_ptr<const OracleImpl> intersect(
        std::shared_ptr<const OracleImpl> other) const;
    virtual std::shared_ptr<const OracleImpl> refine() const;
};

namespace {

class LambdaImpl final : public OracleImpl {
public:
    LambdaImpl(std::function<bool(const mpz_class&)> fn, std::string desc)
        : fn_(std::move(fn)), desc_(std::move(desc)) {}

    bool member(const mpz_class& n) const override { return fn_(n); }
    std::string description() const override { return desc_; }

private:
    std::function<bool(const mpz_class&)> fn_;
    std::string desc_;
};

ReturnSet shift_return_set(const ReturnSet& rs, const mpz_class& b) {
    ReturnSet out;
    out.period = rs.period;
    out.residues.assign(static_cast<std::size_t>(rs.period), 0);
    const unsigned long off =
        mpz_fdiv_ui(b.get_mpz_t(), static_cast<unsigned long>(rs.period));
    for (long r = 0; r < rs.period; ++r)
        out.residues[static_cast<std::size_t>(r)] = rs.residues[static_cast<std::size_t>(
            (static_cast<unsigned long>(r) + off) % static_cast<unsigned long>(rs.period))];
    return out;
}

std::optional<ReturnSet> merge_return_sets(const ReturnSet& a, const ReturnSet& b) {
    const long g = std::gcd(a.period, b.period);
    if ((a.period / g) > kPeriodCap / b.period) return std::nullopt;
    const long period = a.period / g * b.period;
    ReturnSet out;
    out.period = period;
    out.residues.assign(static_cast<std::size_t>(period), 0);
    for (long r = 0; r < period; ++r)
        out.residues[static_cast<std::size_t>(r)] =
            a.residues[static_cast<std::size_t>(r % a.period)] &&
            b.residues[static_cast<std::size_t>(r % b.period)];
    return out;
}

class PeriodicImpl final : public OracleImpl {
public:
    PeriodicImpl(const ReturnSet& rs, std::string desc)
        : rs_(rs.canonical()), desc_(std::move(desc)) {}

    bool member(const mpz_class& n) const override { return n >= 1 && rs_.contains(n); }
    std::string description() const override { return desc_; }
    const ReturnSet& rs() const { return rs_; }

    std::shared_ptr<const OracleImpl> shift(const mpz_class& b) const override {
        // Negative shifts would clip the set at 1; no closed form there.
        if (b < 0) return OracleImpl::shift(b);
        const ReturnSet shifted = shift_return_set(rs_, b);
        return std::make_shared<PeriodicImpl>(shifted, to_string(shifted));
    }

    std::shared_ptr<const OracleImpl> dilate(const mpz_class& m) const override {
        if (m < 1) throw InputError("dilation factor must be >= 1");
        const unsigned long md =
            mpz_fdiv_ui(m.get_mpz_t(), static_cast<unsigned long>(rs_.period));
        const ReturnSet dilated =
            dilation_preimage(rs_, md == 0 ? rs_.period : static_cast<long>(md));
        return std::make_shared<PeriodicImpl>(dilated, to_string(dilated));
    }

    std::shared_ptr<const OracleImpl> intersect(
        std::shared_ptr<const OracleImpl> other) const override {
        if (const auto* p = dynamic_cast<const PeriodicImpl*>(other.get())) {
            if (auto merged = merge_return_sets(rs_, p->rs()))
                return std::make_shared<PeriodicImpl>(*merged, to_string(*merged));
        }
        return OracleImpl::intersect(std::move(other));
    }

private:
    ReturnSet rs_;
    std::string desc_;
};

std::string set_description(const MeasurableSet& a) {
    std::ostringstream os;
    os << '{';
    int listed = 0;
    for (int x = 0; x < a.size(); ++x) {
        if (!a.contains(x)) continue;
        if (listed == 8) {
            os << ",...";
            break;
        }
        if (listed) os << ',';
        os << x;
        ++listed;
    }
    os << '}';
    return os.str();
}

class DynamicalImpl final : public OracleImpl {
public:
    DynamicalImpl(FiniteMPS s, MeasurableSet a, std::string desc)
        : s_(std::move(s)), a_(std::move(a)), desc_(std::move(desc)) {
        validate(s_);
        if (!(measure(s_, a_) > 0)) throw InputError("family set has zero mass");
        rs_ = return_set(s_, a_, a_);
    }

    bool member(const mpz_class& n) const override { return n >= 1 && rs_.contains(n); }
    std::string description() const override { return desc_; }

    std::shared_ptr<const OracleImpl> refine() const override {
        // Smallest accepted n; n = period always works since T^period is
        // the identity and mu(A) > 0.
        long n0 = rs_.period;
        for (long n = 1; n < rs_.period; ++n) {
            if (rs_.residues[static_cast<std::size_t>(n)]) {
                n0 = n;
                break;
            }
        }
        MeasurableSet c = zigzag::intersect(a_, preimage(s_, a_, n0));
        return std::make_shared<DynamicalImpl>(s_, std::move(c),
                                               "refine(" + desc_ + ")");
    }

    std::shared_ptr<const OracleImpl> shift(const mpz_class& b) const override {
        if (b < 0) return OracleImpl::shift(b);
        const ReturnSet shifted = shift_return_set(rs_, b);
        return std::make_shared<PeriodicImpl>(shifted, to_string(shifted));
    }

    std::shared_ptr<const OracleImpl> dilate(const mpz_class& m) const override {
        if (m < 1) throw InputError("dilation factor must be >= 1");
        const unsigned long md =
            mpz_fdiv_ui(m.get_mpz_t(), static_cast<unsigned long>(rs_.period));
        const long exp = md == 0 ? rs_.period : static_cast<long>(md);
        return std::make_shared<DynamicalImpl>(mps_power(s_, exp), a_,
                                               desc_ + "^" + std::to_string(exp));
    }

    std::shared_ptr<const OracleImpl> intersect(
        std::shared_ptr<const OracleImpl> other) const override {
        if (const auto* d = dynamic_cast<const DynamicalImpl*>(other.get())) {
            const long long points =
                static_cast<long long>(s_.size) * static_cast<long long>(d->s_.size);
            if (points <= kPointCap) {
                MeasurableSet rect;
                rect.in.assign(static_cast<std::size_t>(points), 0);
                for (int x = 0; x < s_.size; ++x)
                    for (int y = 0; y < d->s_.size; ++y)
                        rect.in[static_cast<std::size_t>(x) *
                                    static_cast<std::size_t>(d->s_.size) +
                                static_cast<std::size_t>(y)] =
                            a_.contains(x) && d->a_.contains(y);
                return std::make_shared<DynamicalImpl>(
                    mps_product(s_, d->s_), std::move(rect),
                    "(" + desc_ + " x " + d->desc_ + ")");
            }
            if (auto merged = merge_return_sets(rs_, d->rs_))
                return std::make_shared<PeriodicImpl>(*merged, to_string(*merged));
        }
        if (const auto* p = dynamic_cast<const PeriodicImpl*>(other.get())) {
            if (auto merged = merge_return_sets(rs_, p->rs()))
                return std::make_shared<PeriodicImpl>(*merged, to_string(*merged));
        }
        return OracleImpl::intersect(std::move(other));
    }

private:
    FiniteMPS s_;
    MeasurableSet a_;
    ReturnSet rs_;
    std::string desc_;
};

}  // namespace

std::shared_ptr<const OracleImpl> OracleImpl::shift(const mpz_class& b) const {
    auto self = shared_from_this();
    return std::make_shared<LambdaImpl>(
        [self, b](const mpz_class& n) { return self->member(n + b); },
        "(" + description() + " shift " + b.get_str() + ")");
}

std::shared_ptr<const OracleImpl> OracleImpl::dilate(const mpz_class& m) const {
    if (m < 1) throw InputError("dilation factor must be >= 1");
    auto self = shared_from_this();
    return std::make_shared<LambdaImpl>(
        [self, m](const mpz_class& n) { return self->member(m * n); },
        "(" + description() + " dilate " + m.get_str() + ")");
}

std::shared_ptr<const OracleImpl> OracleImpl::intersect(
    std::shared_ptr<const OracleImpl> other) const {
    auto self = shared_from_this();
    auto rhs = std::move(other);
    return std::make_shared<LambdaImpl>(
        [self, rhs](const mpz_class& n) { return self->member(n) && rhs->member(n); },
        "(" + description() + " and " + rhs->description() + ")");
}

std::shared_ptr<const OracleImpl> OracleImpl::refine() const { return shared_from_this(); }

FamilyOracle::FamilyOracle(std::shared_ptr<const OracleImpl> impl)
    : impl_(std::move(impl)) {}

namespace {

const OracleImpl& deref(const std::shared_ptr<const OracleImpl>& impl) {
    if (!impl) throw InputError("empty family oracle");
    return *impl;
}

}  // namespace

bool FamilyOracle::member(const mpz_class& n) const { return deref(impl_).member(n); }

FamilyOracle FamilyOracle::shift(const mpz_class& b) const {
    return FamilyOracle(deref(impl_).shift(b));
}

FamilyOracle FamilyOracle::dilate(const mpz_class& m) const {
    return FamilyOracle(deref(impl_).dilate(m));
}

FamilyOracle FamilyOracle::intersect(const FamilyOracle& other) const {
    deref(other.impl_);
    return FamilyOracle(deref(impl_).intersect(other.impl_));
}

FamilyOracle FamilyOracle::refine() const { return FamilyOracle(deref(impl_).refine()); }

std::string FamilyOracle::description() const { return deref(impl_).description(); }

FamilyOracle modular_family(long d) {
    if (d < 1) throw InputError("modulus must be >= 1");
    if (d > kPeriodCap)
        throw CapExceeded("modulus exceeds cap " + std::to_string(kPeriodCap));
    ReturnSet rs;
    rs.period = d;
    rs.residues.assign(static_cast<std::size_t>(d), 0);
    rs.residues[0] = 1;
    return FamilyOracle(std::make_shared<PeriodicImpl>(rs, "mod:" + std::to_string(d)));
}

FamilyOracle dynamical_family(const FiniteMPS& s, const MeasurableSet& a) {
    return FamilyOracle(std::make_shared<DynamicalImpl>(
        s, a, "dyn(points=" + std::to_string(s.size) + ",A=" + set_description(a) + ")"));
}

FamilyOracle predicate_family(std::function<bool(const mpz_class&)> member,
                              std::string description) {
    return FamilyOracle(
        std::make_shared<LambdaImpl>(std::move(member), std::move(description)));
}

FamilyOracle make_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::modular:
            return modular_family(spec.d);
        case FamilySpec::Kind::dynamical:
            return dynamical_family(spec.system,
                                    MeasurableSet::from_points(spec.system.size,
                                                               spec.points));
    }
    throw InputError("unknown family kind");
}

namespace {

std::string entries_brief(const Sequence& seq) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= seq.size(); ++i) {
        if (i > 1) os << ',';
        os << seq.at(i);
    }
    return os.str();
}

// First finite sum of the probe the oracle accepts, if any.
bool probe_hits(const FamilyOracle& o, const Sequence& probe) {
    const ValueSet sums = fs_enumerate(probe);
    return std::any_of(sums.begin(), sums.end(),
                       [&o](const mpz_class& v) { return o.member(v); });
}

}  // namespace

ZfspReport check_zfsp_properties(const FamilyOracle& o, long bound, int samples,
                                 std::uint64_t seed) {
    if (bound < 1) throw InputError("bound must be positive");
    if (samples < 0) throw InputError("samples must be nonnegative");
    constexpr int kProbeLen = 16;
    ZfspReport rep;
    Rng rng(seed);

    // (a) Every IP* set meets the finite sums of every sequence; probe a
    // stock of structured and random sequences. A miss disproves IP*-ness
    // outright; passing is evidence at this bound, nothing stronger.
    std::vector<std::pair<std::string, Sequence>> probes;
    probes.emplace_back("all-ones",
                        Sequence(std::vector<mpz_class>(kProbeLen, mpz_class(1))));
    {
        std::vector<mpz_class> pow;
        for (int t = 1; t <= kProbeLen; ++t) {
            mpz_class x = 0;
            mpz_setbit(x.get_mpz_t(), 2UL * static_cast<unsigned long>(t));
            pow.push_back(std::move(x));
        }
        probes.emplace_back("even-powers", Sequence(std::move(pow)));
    }
    mpz_class first_member = 0;
    for (long n = 1; n <= bound; ++n) {
        if (o.member(mpz_class(n))) {
            first_member = n;
            break;
        }
    }
    if (first_member == 0) {
        rep.ipstar_evidence = {false, "no member found up to " + std::to_string(bound)};
    } else {
        probes.emplace_back("constant-first-member",
                            Sequence(std::vector<mpz_class>(kProbeLen, first_member)));
    }
    for (int i = 0; i < samples; ++i) {
        std::vector<mpz_class> entries;
        entries.reserve(kProbeLen);
        for (int t = 0; t < kProbeLen; ++t)
            entries.emplace_back(static_cast<long>(rng.range(1, bound)));
        probes.emplace_back("random-" + std::to_string(i + 1), Sequence(std::move(entries)));
    }
    if (rep.ipstar_evidence.pass) {
        for (const auto& [name, probe] : probes) {
            if (probe_hits(o, probe)) continue;
            rep.ipstar_evidence = {false, "finite sums of probe " + name + " (" +
                                              entries_brief(probe) +
                                              ") all avoid the set"};
            break;
        }
        if (rep.ipstar_evidence.pass)
            rep.ipstar_evidence.detail =
                "bounded evidence: " + std::to_string(probes.size()) +
                " probe sequences, every finite-sum set met";
    }

    // (b) refine is contained in the set; shifting the refined set by its
    // own members stays evaluable and pointwise consistent.
    const FamilyOracle refined = o.refine();
    std::vector<mpz_class> accepted;
    for (long n = 1; n <= bound && rep.refine_contained.pass; ++n) {
        const mpz_class nn(n);
        if (!refined.member(nn)) continue;
        if (!o.member(nn)) {
            rep.refine_contained = {false, "refine accepts " + nn.get_str() +
                                               " which the set rejects"};
            break;
        }
        if (accepted.size() < 8) accepted.push_back(nn);
    }
    if (rep.refine_contained.pass && accepted.empty())
        rep.refine_contained = {false,
                                "refine accepts nothing up to " + std::to_string(bound)};
    if (rep.refine_contained.pass) {
        for (const mpz_class& b : accepted) {
            const FamilyOracle shifted = refined.shift(b);
            for (int t = 0; t < kProbeLen; ++t) {
                const mpz_class y(static_cast<long>(rng.range(1, bound)));
                if (shifted.member(y) != refined.member(y + b)) {
                    rep.refine_contained = {
                        false, "shift by " + b.get_str() + " inconsistent at y=" +
                                   y.get_str()};
                    break;
                }
            }
            if (!rep.refine_contained.pass) break;
        }
    }
    if (rep.refine_contained.pass)
        rep.refine_contained.detail = "refine contained on [1," + std::to_string(bound) +
                                      "]; shifts consistent at sampled points";

    // (c) Intersections are pointwise conjunctions against shifted, dilated
    // and refined variants.
    for (int s = 0; s < samples && rep.intersect_ok.pass; ++s) {
        FamilyOracle o2 = s % 3 == 0   ? o.shift(mpz_class(static_cast<long>(rng.range(1, bound))))
                          : s % 3 == 1 ? o.dilate(mpz_class(static_cast<long>(rng.range(1, 16))))
                                       : o.refine();
        const FamilyOracle both = o.intersect(o2);
        for (int t = 0; t < kProbeLen; ++t) {
            const mpz_class y(static_cast<long>(rng.range(1, bound)));
            if (both.member(y) != (o.member(y) && o2.member(y))) {
                rep.intersect_ok = {false, "intersection with " + o2.description() +
                                               " wrong at y=" + y.get_str()};
                break;
            }
        }
    }
    if (rep.intersect_ok.pass)
        rep.intersect_ok.detail = "pointwise conjunction at sampled points";

    // (d) Dilation preimages transport membership through multiplication.
    for (int s = 0; s < samples && rep.dilate_ok.pass; ++s) {
        const mpz_class m(static_cast<long>(rng.range(1, 64)));
        const FamilyOracle dilated = o.dilate(m);
        for (int t = 0; t < kProbeLen; ++t) {
            const mpz_class y(static_cast<long>(rng.range(1, bound)));
            if (dilated.member(y) != o.member(m * y)) {
                rep.dilate_ok = {false, "dilation by " + m.get_str() + " wrong at y=" +
                                            y.get_str()};
                break;
            }
        }
    }
    if (rep.dilate_ok.pass) rep.dilate_ok.detail = "pointwise divisibility transport at sampled points";

    return rep;
}

namespace {

// Consecutive runs in (start, end) order, then general index sets in
// (min, lex) order with runs skipped; every tested candidate consumes one
// unit of budget. Returns the first block whose entry sum d accepts.
std::optional<Block> search_block(const Sequence& seq, int start, int n,
                                  const FamilyOracle& d, long& budget) {
    for (int s = start; s <= n; ++s) {
        mpz_class sum = 0;
        for (int e = s; e <= n; ++e) {
            sum += seq.at(static_cast<std::size_t>(e));
            if (budget <= 0) return std::nullopt;
            --budget;
            if (d.member(sum)) {
                Block b;
                for (int i = s; i <= e; ++i) b.indices.push_back(i);
                return b;
            }
        }
    }

    std::vector<int> idx;
    std::optional<Block> found;
    bool stop = false;
    auto walk = [&](auto&& self, int next_min, const mpz_class& sum) -> void {
        for (int x = next_min; x <= n && !stop; ++x) {
            idx.push_back(x);
            const mpz_class total = sum + seq.at(static_cast<std::size_t>(x));
            const bool is_run =
                idx.back() - idx.front() + 1 == static_cast<int>(idx.size());
            if (!is_run) {
                if (budget <= 0) {
                    stop = true;
                    idx.pop_back();
                    return;
                }
                --budget;
                if (d.member(total)) {
                    found = Block(idx);
                    stop = true;
                    idx.pop_back();
                    return;
                }
            }
            self(self, x + 1, total);
            idx.pop_back();
        }
    };
    walk(walk, start, mpz_class(0));
    return found;
}

std::vector<VerifiedElement> enumerate_elements(const std::vector<Sequence>& subsystems,
                                                int depth) {
    std::vector<VerifiedElement> out;
    if (depth == 0) return out;
    const int l = static_cast<int>(subsystems.size());
    for (const char* structure : {"sum", "product"}) {
        const bool product = structure[0] == 'p';
        std::vector<int> h;
        auto walk = [&](auto&& self, int next_min) -> void {
            for (int x = next_min; x <= depth; ++x) {
                h.push_back(x);
                std::vector<int> choices(h.size(), 1);
                while (true) {
                    mpz_class value = product ? 1 : 0;
                    for (std::size_t p = 0; p < h.size(); ++p) {
                        const mpz_class& e =
                            subsystems[static_cast<std::size_t>(choices[p] - 1)].at(
                                static_cast<std::size_t>(h[p]));
                        if (product)
                            value *= e;
                        else
                            value += e;
                    }
                    out.push_back(VerifiedElement{structure, Block(h), choices, value});
                    int p = static_cast<int>(choices.size()) - 1;
                    while (p >= 0 && choices[static_cast<std::size_t>(p)] == l) {
                        choices[static_cast<std::size_t>(p)] = 1;
                        --p;
                    }
                    if (p < 0) break;
                    ++choices[static_cast<std::size_t>(p)];
                }
                self(self, x + 1);
                h.pop_back();
            }
        };
        walk(walk, 1);
    }
    return out;
}

}  // namespace

ConstructResult zigzag_construct(const FamilyOracle& o, const MultiSeq& mseq, int steps,
                                 long budget) {
    validate(mseq);
    if (steps < 1) throw InputError("steps must be positive");
    if (static_cast<std::size_t>(steps) > kZigzagDepthCap)
        throw CapExceeded("steps exceed cap " + std::to_string(kZigzagDepthCap));
    if (mseq.width() > kZigzagWidthCap)
        throw CapExceeded("width " + std::to_string(mseq.width()) + " exceeds cap " +
                          std::to_string(kZigzagWidthCap));
    if (budget < 0) throw InputError("budget must be nonnegative");

    const int l = static_cast<int>(mseq.width());
    const int n = static_cast<int>(mseq.depth());

    ConstructResult res;
    res.cert.family_description = o.description();
    res.cert.sources = mseq.seqs;
    res.cert.chains.assign(static_cast<std::size_t>(l), BlockChain{});
    res.cert.subsystems.assign(static_cast<std::size_t>(l), Sequence{});

    const FamilyOracle c = o.refine();
    ValueSet e1, e2;

    for (int step = 1; step <= steps; ++step) {
        FamilyOracle d = c;
        for (const mpz_class& b : e1) d = d.intersect(c.shift(b));
        for (const mpz_class& b : e2) d = d.intersect(c.dilate(b));

        long step_budget = budget;
        std::vector<Block> staged;
        staged.reserve(static_cast<std::size_t>(l));
        for (int j = 0; j < l; ++j) {
            const BlockChain& chain = res.cert.chains[static_cast<std::size_t>(j)];
            const int start = chain.blocks.empty() ? 1 : chain.blocks.back().max() + 1;
            auto found =
                search_block(mseq.seqs[static_cast<std::size_t>(j)], start, n, d,
                             step_budget);
            if (!found) {
                res.failed_step = step;
                res.note = std::string(step_budget <= 0 ? "budget exhausted"
                                                        : "index range exhausted") +
                           " searching sequence " + std::to_string(j + 1) + " at step " +
                           std::to_string(step);
                break;
            }
            staged.push_back(std::move(*found));
        }
        if (res.failed_step) break;

        for (int j = 0; j < l; ++j) {
            res.cert.chains[static_cast<std::size_t>(j)].blocks.push_back(
                staged[static_cast<std::size_t>(j)]);
            res.cert.subsystems[static_cast<std::size_t>(j)].entries.push_back(
                block_sum(mseq.seqs[static_cast<std::size_t>(j)],
                          staged[static_cast<std::size_t>(j)]));
        }
        res.cert.depth = step;
        const MultiSeq sub{res.cert.subsystems};
        e1 = zfs_enumerate(sub);
        e2 = zfp_enumerate(sub);
    }
    res.complete = res.failed_step == 0;

    res.cert.verified_elements = enumerate_elements(res.cert.subsystems, res.cert.depth);
    for (const VerifiedElement& el : res.cert.verified_elements)
        if (!o.member(el.value))
            throw VerificationError("constructed " + el.structure + " " +
                                    el.value.get_str() + " rejected by the family " +
                                    o.description());
    return res;
}

bool verify_certificate(const ZigzagCertificate& cert, const FamilyOracle& o,
                        std::string* why) {
    auto fail = [why](std::string reason) {
        if (why) *why = std::move(reason);
        return false;
    };
    try {
        const std::size_t l = cert.sources.size();
        if (l == 0) return fail("certificate has no sequences");
        if (cert.chains.size() != l || cert.subsystems.size() != l)
            return fail("certificate has mismatched chain or subsystem counts");
        if (cert.depth < 0) return fail("negative depth");

        for (std::size_t j = 0; j < l; ++j) {
            validate(cert.sources[j]);
            validate(cert.chains[j]);
            if (cert.chains[j].size() != static_cast<std::size_t>(cert.depth))
                return fail("chain " + std::to_string(j + 1) + " has " +
                            std::to_string(cert.chains[j].size()) + " blocks, depth is " +
                            std::to_string(cert.depth));
            const Sequence recomputed = sum_subsystem(cert.sources[j], cert.chains[j]);
            if (recomputed.entries != cert.subsystems[j].entries)
                return fail("subsystem " + std::to_string(j + 1) +
                            " does not recompute from its chain");
        }

        const std::vector<VerifiedElement> expected =
            enumerate_elements(cert.subsystems, cert.depth);
        if (expected.size() != cert.verified_elements.size())
            return fail("expected " + std::to_string(expected.size()) +
                        " verified elements, certificate lists " +
                        std::to_string(cert.verified_elements.size()));
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (!(expected[i] == cert.verified_elements[i]))
                return fail("verified element " + std::to_string(i + 1) +
                            " does not match its recomputation");
            if (!o.member(expected[i].value))
                return fail("element " + expected[i].value.get_str() + " (" +
                            expected[i].structure + " over " + to_string(expected[i].h) +
                            ") is rejected by the family");
        }

        if (cert.depth > 0) {
            const MultiSeq sub{cert.subsystems};
            for (const mpz_class& v : zfs_enumerate(sub))
                if (!o.member(v)) return fail("zigzag sum " + v.get_str() + " rejected");
            for (const mpz_class& v : zfp_enumerate(sub))
                if (!o.member(v)) return fail("zigzag product " + v.get_str() + " rejected");
        }
        return true;
    } catch (const Error& e) {
        return fail(std::string("structural: ") + e.what());
    }
}

Block zero_sum_block(const Sequence& seq, long d, int start) {
    validate(seq);
    if (d < 1) throw InputError("modulus must be >= 1");
    if (d > kPeriodCap)
        throw CapExceeded("modulus exceeds cap " + std::to_string(kPeriodCap));
    if (start < 1) throw InputError("start index must be >= 1");
    const int n = static_cast<int>(seq.size());
    if (n - start + 1 < d)
        throw InputError("need at least " + std::to_string(d) +
                         " entries at or after index " + std::to_string(start));

    // Prefix-sum pigeonhole: two equal residues bracket a zero-sum run.
    std::vector<int> first_at(static_cast<std::size_t>(d), -1);
    first_at[0] = start - 1;  // the empty prefix
    mpz_class sum = 0;
    for (int b = start; b <= n; ++b) {
        sum += seq.at(static_cast<std::size_t>(b));
        const unsigned long r = mpz_fdiv_ui(sum.get_mpz_t(), static_cast<unsigned long>(d));
        if (first_at[r] != -1) {
            const int a = first_at[r] + 1;
            Block blk;
            for (int i = a; i <= b; ++i) blk.indices.push_back(i);
            return blk;
        }
        first_at[r] = b;
    }
    throw VerificationError("no zero-sum run found despite the pigeonhole");
}

}  // namespace zigzag
