#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zigzag/certificates.hpp"
#include "zigzag/dynamics.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/families.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/sequences.hpp"
#include "zigzag/witness.hpp"

namespace {

using namespace zigzag;

mpz_class parse_mpz(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("\"" + s + "\" is not a nonnegative decimal integer");
    return mpz_class(s, 10);
}

int parse_int(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("\"" + s + "\" is not a valid " + what);
    try {
        return std::stoi(s);
    } catch (const std::out_of_range&) {
        throw InputError(std::string(what) + " " + s + " is out of range");
    }
}

std::vector<int> parse_points(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(parse_int(item, "point index"));
    return out;
}

// One positive decimal integer per line; a blank line separates sequences.
std::vector<Sequence> read_sequence_groups(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sequence file " + path);
    std::vector<Sequence> groups;
    Sequence cur;
    std::string line;
    long lineno = 0;
    auto flush = [&] {
        if (!cur.entries.empty()) {
            groups.push_back(std::move(cur));
            cur = Sequence{};
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            flush();
            continue;
        }
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": \"" + tok +
                             "\" is not a positive decimal integer");
        cur.entries.emplace_back(tok, 10);
        if (cur.entries.back() < 1)
            throw InputError(path + ":" + std::to_string(lineno) +
                             ": entries must be >= 1");
    }
    flush();
    if (groups.empty()) throw InputError(path + ": no entries");
    return groups;
}

Sequence read_single_sequence(const std::string& path) {
    auto groups = read_sequence_groups(path);
    if (groups.size() != 1)
        throw InputError(path + ": expected a single sequence, found " +
                         std::to_string(groups.size()) + " blank-line separated groups");
    validate(groups[0]);
    return std::move(groups[0]);
}

// "mod:<d>" or "dyn:<system-file>:<comma-separated points>".
FamilySpec parse_family_spec(const std::string& s) {
    if (s.rfind("mod:", 0) == 0) {
        const std::string num = s.substr(4);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("family spec \"" + s + "\" needs a modulus, e.g. mod:4");
        FamilySpec spec;
        spec.kind = FamilySpec::Kind::modular;
        try {
            spec.d = std::stol(num);
        } catch (const std::out_of_range&) {
            throw InputError("modulus " + num + " is out of range");
        }
        return spec;
    }
    if (s.rfind("dyn:", 0) == 0) {
        const auto colon = s.rfind(':');
        const std::string path = colon > 4 ? s.substr(4, colon - 4) : "";
        if (path.empty())
            throw InputError("family spec \"" + s +
                             "\" needs dyn:<system-file>:<set>, e.g. dyn:sys.txt:0,2");
        std::ifstream in(path);
        if (!in) throw InputError("cannot open system file " + path);
        FamilySpec spec;
        spec.kind = FamilySpec::Kind::dynamical;
        spec.system = load_system(in);
        spec.points = parse_points(s.substr(colon + 1));
        return spec;
    }
    throw InputError("family spec must be mod:<d> or dyn:<system-file>:<set>, got \"" +
                     s + "\"");
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InputError("cannot write " + output);
    out << text;
}

struct Common {
    std::string format;
    std::string output;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c, const char* default_format) {
    c.format = default_format;
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--output", c.output, "write to this path instead of stdout");
    sub->add_option("--seed", c.seed, "seed for randomized corpora");
}

std::string join_entries(const Sequence& s) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        if (i > 1) os << ',';
        os << s.at(i);
    }
    return os.str();
}

Json residues_json(const ReturnSet& rs) {
    Json arr = Json::array();
    for (long r = 0; r < rs.period; ++r)
        if (rs.residues[static_cast<std::size_t>(r)]) arr.push_back(r);
    return arr;
}

int run_member(const std::string& n_str, const Common& c) {
    const mpz_class n = parse_mpz(n_str);
    std::optional<EvenOddDecomp> d;
    if (n >= 1) d = decompose(n);
    if (c.format == "json") {
        Json j;
        j["n"] = n.get_str();
        j["member"] = d.has_value();
        if (d) {
            j["h1"] = to_json(d->h1);
            j["h2"] = to_json(d->h2);
        }
        emit(dump_json(j), c.output);
    } else {
        const std::string line =
            d ? n.get_str() + " ∈ A, H1=" + to_string(d->h1) + ", H2=" + to_string(d->h2)
              : n.get_str() + " ∉ A";
        emit(line + "\n", c.output);
    }
    return 0;
}

int run_enumerate(const std::string& limit_str, const Common& c) {
    const mpz_class limit = parse_mpz(limit_str);
    const ValueSet vals = enumerate_a(limit);
    if (c.format == "json") {
        Json j;
        j["limit"] = limit.get_str();
        Json arr = Json::array();
        for (const mpz_class& v : vals) arr.push_back(v.get_str());
        j["values"] = std::move(arr);
        emit(dump_json(j), c.output);
    } else {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) os << ',';
            os << vals[i];
        }
        os << "]\n";
        emit(os.str(), c.output);
    }
    return 0;
}

int run_witness(int r, const std::string& formula_str, const Common& c) {
    const WitnessFormula f = witness_formula_from_string(formula_str);
    const Sequence entries = ipr_witness(r, f);
    const Json cert = witness_certificate_json(r, f, entries);
    if (c.format == "json") {
        emit(dump_json(cert), c.output);
    } else {
        emit("(" + join_entries(entries) + ") with " +
                 std::to_string(cert.at("fs_count").get<std::size_t>()) +
                 " verified sums\n",
             c.output);
    }
    return 0;
}

int run_refute(const std::string& path, const Common& c) {
    const Sequence seq = read_single_sequence(path);
    const auto rc = refute_ip(seq);
    if (!rc) {
        const std::string note = seq.size() == 1 ? "no refutation (trivially)"
                                                 : "no refutation within the length cap";
        if (c.format == "json") {
            Json j;
            j["found"] = false;
            j["note"] = note;
            emit(dump_json(j), c.output);
        } else {
            emit(note + "\n", c.output);
        }
        return 2;
    }
    if (c.format == "json") {
        emit(dump_json(refutation_certificate_json(seq, *rc)), c.output);
    } else {
        emit("sum over " + to_string(rc->subset) + " = " + rc->value.get_str() +
                 " escapes A (" + rc->reason + ")\n",
             c.output);
    }
    return 0;
}

struct RecurrenceArgs {
    std::string system_path;
    long rotation = 0;
    std::string set_a;
    std::string set_b;
    std::string sets;
};

int run_recurrence(const RecurrenceArgs& a, const Common& c) {
    if (!a.system_path.empty() && a.rotation != 0)
        throw InputError("give either --system or --rotation, not both");
    FiniteMPS s;
    if (!a.system_path.empty()) {
        std::ifstream in(a.system_path);
        if (!in) throw InputError("cannot open system file " + a.system_path);
        s = load_system(in);
    } else if (a.rotation != 0) {
        if (a.rotation < 1) throw InputError("rotation modulus must be >= 1");
        s = mps_rotation(static_cast<int>(a.rotation));
    } else {
        throw InputError("recurrence needs --system FILE or --rotation D");
    }

    ReturnSet rs;
    bool self = false;
    mpq_class mu;
    if (!a.sets.empty()) {
        if (!a.set_a.empty() || !a.set_b.empty())
            throw InputError("--sets excludes --set-a and --set-b");
        std::vector<MeasurableSet> list;
        std::istringstream in(a.sets);
        std::string part;
        while (std::getline(in, part, ';'))
            list.push_back(MeasurableSet::from_points(s.size, parse_points(part)));
        if (list.empty()) throw InputError("--sets lists no sets");
        rs = multi_return_set(s, list);
    } else {
        if (a.set_a.empty())
            throw InputError("recurrence needs --set-a POINTS or --sets LISTS");
        const MeasurableSet set_a =
            MeasurableSet::from_points(s.size, parse_points(a.set_a));
        self = a.set_b.empty();
        const MeasurableSet set_b =
            self ? set_a : MeasurableSet::from_points(s.size, parse_points(a.set_b));
        rs = return_set(s, set_a, set_b);
        if (self) mu = measure(s, set_a);
    }

    const ReturnSet canon = rs.canonical();
    const bool with_r = self && !canon.empty_set();
    if (c.format == "json") {
        Json j;
        j["empty"] = canon.empty_set();
        j["period"] = canon.period;
        j["residues"] = residues_json(canon);
        if (with_r) {
            j["mu"] = mu.get_str();
            j["pigeonhole_r"] = pigeonhole_r(mu);
        }
        emit(dump_json(j), c.output);
    } else {
        std::string line;
        if (canon.empty_set()) {
            line = "empty";
        } else {
            line = to_string(canon);
            if (with_r)
                line += "; μ(A)=" + mu.get_str() +
                        "; r=" + std::to_string(pigeonhole_r(mu));
        }
        emit(line + "\n", c.output);
    }
    return 0;
}

struct ZigzagArgs {
    std::string family;
    std::string seq_path;
    int steps = 4;
    long budget = 10000;
    long bound = 128;
    int samples = 8;
};

int run_zigzag(const ZigzagArgs& a, const Common& c) {
    const FamilySpec spec = parse_family_spec(a.family);
    const FamilyOracle o = make_family(spec);

    auto groups = read_sequence_groups(a.seq_path);
    for (const Sequence& g : groups) validate(g);
    const MultiSeq mseq{std::move(groups)};

    const ZfspReport rep = check_zfsp_properties(o, a.bound, a.samples, c.seed);
    if (!rep.all_pass()) {
        std::cerr << "family property check failed before construction:\n";
        for (const auto* p : {&rep.ipstar_evidence, &rep.refine_contained,
                              &rep.intersect_ok, &rep.dilate_ok})
            if (!p->pass) std::cerr << "  " << p->detail << "\n";
        return 2;
    }

    ConstructResult res = zigzag_construct(o, mseq, a.steps, a.budget);
    res.cert.family = spec;

    const FamilyOracle fresh = make_family(spec);
    std::string why;
    const bool ok = verify_certificate(res.cert, fresh, &why);

    const Json cert =
        family_certificate_json(res.cert, res.complete, res.failed_step, res.note);
    if (c.format == "json") {
        emit(dump_json(cert), c.output);
    } else {
        std::ostringstream os;
        if (res.complete)
            os << "depth=" << res.cert.depth << " complete; "
               << res.cert.verified_elements.size() << " elements verified; family "
               << res.cert.family_description << "\n";
        else
            os << "failed at step " << res.failed_step << ": " << res.note
               << "; partial depth=" << res.cert.depth << "\n";
        emit(os.str(), c.output);
    }
    if (!ok) {
        std::cerr << "certificate verification failed: " << why << "\n";
        return 2;
    }
    return res.complete ? 0 : 3;
}

int run_counterexample(int depth, int trials, const Common& c) {
    const auto hits = certify_random_subsystems(depth, trials, c.seed);
    const Json rep = counterexample_report_json(depth, trials, c.seed, hits);
    if (c.format == "json")
        emit(dump_json(rep), c.output);
    else
        emit(rep.at("summary").get<std::string>() + "\n", c.output);
    return 0;
}

int run_verify(const std::string& path, const Common& c) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open certificate file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + " is not valid JSON: " + e.what());
    }
    const CheckResult r = check_certificate_json(j);
    if (c.format == "json") {
        Json out;
        out["ok"] = r.ok;
        out["why"] = r.why;
        emit(dump_json(out), c.output);
    } else {
        emit(r.ok ? "verified\n" : "verification failed: " + r.why + "\n", c.output);
    }
    return r.ok ? 0 : 2;
}

struct CheckFamilyArgs {
    std::string family;
    long bound = 128;
    int samples = 20;
};

int run_check_family(const CheckFamilyArgs& a, const Common& c) {
    const FamilySpec spec = parse_family_spec(a.family);
    const FamilyOracle o = make_family(spec);
    const ZfspReport rep = check_zfsp_properties(o, a.bound, a.samples, c.seed);
    if (c.format == "json") {
        Json j;
        auto prop = [](const PropertyResult& p) {
            Json q;
            q["pass"] = p.pass;
            q["detail"] = p.detail;
            return q;
        };
        j["family"] = o.description();
        j["ipstar_evidence"] = prop(rep.ipstar_evidence);
        j["refine_contained"] = prop(rep.refine_contained);
        j["intersect"] = prop(rep.intersect_ok);
        j["dilate"] = prop(rep.dilate_ok);
        j["all_pass"] = rep.all_pass();
        emit(dump_json(j), c.output);
    } else {
        std::ostringstream os;
        auto line = [&os](const char* label, const PropertyResult& p) {
            os << label << (p.pass ? "pass" : "FAIL") << " (" << p.detail << ")\n";
        };
        os << "family: " << o.description() << "\n";
        line("(a) finite-sums evidence: ", rep.ipstar_evidence);
        line("(b) refine contained: ", rep.refine_contained);
        line("(c) intersection: ", rep.intersect_ok);
        line("(d) dilation: ", rep.dilate_ok);
        os << (rep.all_pass() ? "all properties hold at this bound"
                              : "property check FAILED")
           << "\n";
        emit(os.str(), c.output);
    }
    return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IP-set combinatorics and finite-dynamics recurrence toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    std::string member_n;
    Common member_c;
    auto* member = app.add_subcommand("member", "membership in A with decomposition");
    member->add_option("n", member_n, "the number to test")->required();
    add_common(member, member_c, "table");
    member->callback([&] { rc = run_member(member_n, member_c); });

    std::string enum_limit;
    Common enum_c;
    auto* enumerate = app.add_subcommand("enumerate", "sorted slice of A up to a limit");
    enumerate->add_option("limit,--limit", enum_limit, "upper bound")->required();
    add_common(enumerate, enum_c, "table");
    enumerate->callback([&] { rc = run_enumerate(enum_limit, enum_c); });

    int witness_r = 1;
    std::string witness_formula = "repaired";
    Common witness_c;
    auto* witness = app.add_subcommand("witness", "verified r-term sequence with FS inside A");
    witness->add_option("r", witness_r, "sequence length")->required();
    witness->add_option("--formula", witness_formula, "witness formula variant")
        ->check(CLI::IsMember({"repaired", "printed"}));
    add_common(witness, witness_c, "json");
    witness->callback([&] { rc = run_witness(witness_r, witness_formula, witness_c); });

    std::string refute_path;
    Common refute_c;
    auto* refute = app.add_subcommand("refute", "finite sum escaping A for an A-valued sequence");
    refute->add_option("file", refute_path, "sequence file")->required();
    add_common(refute, refute_c, "json");
    refute->callback([&] { rc = run_refute(refute_path, refute_c); });

    RecurrenceArgs rec_a;
    Common rec_c;
    auto* recurrence = app.add_subcommand("recurrence", "return sets of a finite system");
    recurrence->add_option("--system", rec_a.system_path, "system file");
    recurrence->add_option("--rotation", rec_a.rotation, "rotation on 0..d-1");
    recurrence->add_option("--set-a", rec_a.set_a, "points of A, comma separated");
    recurrence->add_option("--set-b", rec_a.set_b, "points of B (default: A)");
    recurrence->add_option("--sets", rec_a.sets, "semicolon separated point lists for multi recurrence");
    add_common(recurrence, rec_c, "table");
    recurrence->callback([&] { rc = run_recurrence(rec_a, rec_c); });

    ZigzagArgs zz_a;
    Common zz_c;
    auto* zigzag_cmd = app.add_subcommand("zigzag", "inductive zigzag construction with certificate");
    zigzag_cmd->add_option("family", zz_a.family, "mod:<d> or dyn:<system-file>:<set>")->required();
    zigzag_cmd->add_option("file", zz_a.seq_path, "sequences file, blank-line separated")->required();
    zigzag_cmd->add_option("steps,--steps", zz_a.steps, "construction depth");
    zigzag_cmd->add_option("budget,--budget", zz_a.budget, "candidate blocks per step");
    zigzag_cmd->add_option("--bound", zz_a.bound, "bound for the family property check");
    zigzag_cmd->add_option("--samples", zz_a.samples, "samples for the family property check");
    add_common(zigzag_cmd, zz_c, "json");
    zigzag_cmd->callback([&] { rc = run_zigzag(zz_a, zz_c); });

    int cx_depth = 20;
    int cx_trials = 50;
    Common cx_c;
    auto* counterexample = app.add_subcommand(
        "counterexample", "zigzag sums of the canonical pair landing in A");
    counterexample->add_option("--depth", cx_depth, "index range for sampled chains");
    counterexample->add_option("--trials", cx_trials, "number of sampled chain pairs");
    add_common(counterexample, cx_c, "json");
    counterexample->callback([&] { rc = run_counterexample(cx_depth, cx_trials, cx_c); });

    std::string verify_path;
    Common verify_c;
    auto* verify = app.add_subcommand("verify", "recheck a certificate file");
    verify->add_option("file", verify_path, "certificate JSON")->required();
    add_common(verify, verify_c, "table");
    verify->callback([&] { rc = run_verify(verify_path, verify_c); });

    CheckFamilyArgs cf_a;
    Common cf_c;
    auto* check_family = app.add_subcommand("check-family", "bounded family property evidence");
    check_family->add_option("family", cf_a.family, "mod:<d> or dyn:<system-file>:<set>")->required();
    check_family->add_option("--bound", cf_a.bound, "scan and sample bound");
    check_family->add_option("--samples", cf_a.samples, "random probes per property");
    add_common(check_family, cf_c, "table");
    check_family->callback([&] { rc = run_check_family(cf_a, cf_c); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return rc;
}
