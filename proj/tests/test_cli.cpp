#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "zigzag_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string("\"") + ZIGZAG_CLI_PATH + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult res;
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string zigzag_sources() {
    std::ostringstream os;
    for (long base : {1L, 2L, 3L}) {
        for (long i = 0; i < 24; ++i) os << base + 4 * i << "\n";
        os << "\n";
    }
    return os.str();
}

}  // namespace

TEST_CASE("membership queries") {
    const RunResult in = run_cli("member 36");
    CHECK(in.exit_code == 0);
    CHECK(in.out == "36 ∈ A, H1={1}, H2={2}\n");

    const RunResult out = run_cli("member 4");
    CHECK(out.exit_code == 0);
    CHECK(out.out == "4 ∉ A\n");

    const RunResult j = run_cli("member 36 --format json");
    CHECK(j.exit_code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("member") == true);
    CHECK(parsed.at("n") == "36");

    CHECK(run_cli("member twelve").exit_code == 4);

    const RunResult padded = run_cli("member 00036");
    CHECK(padded.exit_code == 0);
    CHECK(padded.out == "36 ∈ A, H1={1}, H2={2}\n");

    const RunResult zero = run_cli("member 0");
    CHECK(zero.exit_code == 0);
    CHECK(zero.out == "0 ∉ A\n");
}

TEST_CASE("enumeration output") {
    const RunResult r = run_cli("enumerate 40");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "[36]\n");

    const RunResult j = run_cli("enumerate 200 --format json");
    CHECK(j.exit_code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("values").size() == 5);
    CHECK(parsed.at("values")[0] == "36");

    CHECK(run_cli("enumerate 0").exit_code == 4);
}

TEST_CASE("witness construction and its failure modes") {
    const RunResult r = run_cli("witness 2 --format table");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(132,528) with 3 verified sums\n");

    CHECK(run_cli("witness 25").exit_code == 3);

    const RunResult bad = run_cli("witness 2 --formula printed");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("escapes") != std::string::npos);
}

TEST_CASE("refutation of sequence files") {
    const fs::path single = write_file("single.txt", "36\n");
    const RunResult trivial = run_cli("refute \"" + single.string() + "\" --format table");
    CHECK(trivial.exit_code == 2);
    CHECK(trivial.out == "no refutation (trivially)\n");

    const fs::path pair = write_file("pair.txt", "36\n144\n");
    const RunResult found = run_cli("refute \"" + pair.string() + "\" --format table");
    CHECK(found.exit_code == 0);
    CHECK(found.out == "sum over {1,2} = 180 escapes A (case-I)\n");

    const fs::path padded = write_file("padded.txt", "036\n144\n");
    const RunResult padded_found = run_cli("refute \"" + padded.string() + "\" --format table");
    CHECK(padded_found.exit_code == 0);
    CHECK(padded_found.out == "sum over {1,2} = 180 escapes A (case-I)\n");

    const fs::path outside = write_file("outside.txt", "36\n7\n");
    CHECK(run_cli("refute \"" + outside.string() + "\"").exit_code == 4);
    CHECK(run_cli("refute \"" + (scratch_dir() / "absent.txt").string() + "\"").exit_code ==
          4);
}

TEST_CASE("return sets from the command line") {
    const RunResult rot = run_cli("recurrence --rotation 4 --set-a 0");
    CHECK(rot.exit_code == 0);
    CHECK(rot.out == "period=4 residues={0}; μ(A)=1/4; r=5\n");

    const RunResult multi = run_cli("recurrence --rotation 3 --sets \"0;0\"");
    CHECK(multi.exit_code == 0);
    CHECK(multi.out == "period=3 residues={0}\n");

    const fs::path id2 = write_file("id2.txt", "2\n0 1\n1/2 1/2\n");
    const RunResult empty =
        run_cli("recurrence --system \"" + id2.string() + "\" --set-a 0 --set-b 1");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out == "empty\n");

    const RunResult j = run_cli("recurrence --rotation 4 --set-a 0 --format json");
    CHECK(j.exit_code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("period") == 4);
    CHECK(parsed.at("mu") == "1/4");
    CHECK(parsed.at("pigeonhole_r") == 5);

    CHECK(run_cli("recurrence --set-a 0").exit_code == 4);
    CHECK(run_cli("recurrence --rotation 4 --set-a 9").exit_code == 4);
}

TEST_CASE("zigzag construction and certificate verification") {
    const fs::path seqs = write_file("seqs.txt", zigzag_sources());

    const RunResult table = run_cli("zigzag mod:4 \"" + seqs.string() + "\" 3 100000 --format table");
    CHECK(table.exit_code == 0);
    CHECK(table.out == "depth=3 complete; 126 elements verified; family mod:4\n");

    const fs::path cert = scratch_dir() / "cert.json";
    const RunResult emit = run_cli("zigzag mod:4 \"" + seqs.string() +
                                   "\" 3 100000 --format json --output \"" +
                                   cert.string() + "\"");
    CHECK(emit.exit_code == 0);
    const RunResult verified = run_cli("verify \"" + cert.string() + "\"");
    CHECK(verified.exit_code == 0);
    CHECK(verified.out == "verified\n");

    auto tampered = nlohmann::json::parse(slurp(cert));
    tampered["verified_elements"][0]["value"] = "41";
    const fs::path broken = write_file("broken.json", tampered.dump(2) + "\n");
    const RunResult rejected = run_cli("verify \"" + broken.string() + "\"");
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.out.find("verification failed") == 0);

    const RunResult starved = run_cli("zigzag mod:4 \"" + seqs.string() + "\" 3 0 --format table");
    CHECK(starved.exit_code == 3);
    CHECK(starved.out.find("budget exhausted") != std::string::npos);

    const fs::path garbage = write_file("garbage.json", "not json\n");
    CHECK(run_cli("verify \"" + garbage.string() + "\"").exit_code == 4);
}

TEST_CASE("counterexample reports") {
    const RunResult r = run_cli("counterexample --format table");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "no sum subsystems within depth avoid A: 50/50 certified\n");

    const fs::path report = scratch_dir() / "report.json";
    const RunResult j = run_cli(
        "counterexample --depth 12 --trials 10 --format json --output \"" +
        report.string() + "\"");
    CHECK(j.exit_code == 0);
    const RunResult verified = run_cli("verify \"" + report.string() + "\"");
    CHECK(verified.exit_code == 0);
}

TEST_CASE("family property checks") {
    const RunResult r = run_cli("check-family mod:4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all properties hold at this bound") != std::string::npos);

    const fs::path rot5 = write_file("rot5.txt", "5\n1 2 3 4 0\n1/5 1/5 1/5 1/5 1/5\n");
    const RunResult dyn =
        run_cli("check-family \"dyn:" + rot5.string() + ":0\" --samples 6");
    CHECK(dyn.exit_code == 0);

    CHECK(run_cli("check-family mod:x").exit_code == 4);
}

TEST_CASE("repeated runs emit identical bytes") {
    const std::string cmds[] = {
        "enumerate 4096 --format json",
        "counterexample --depth 12 --trials 10 --format json",
        "check-family mod:5 --format json --seed 3",
    };
    for (const std::string& c : cmds) {
        const RunResult a = run_cli(c);
        const RunResult b = run_cli(c);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}
