#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitsq/serialize.hpp"

// Path of the built binary, injected by the build so the tests exercise the
// exact executable that ships.
#ifndef SPLITSQ_CLI_PATH
#error "SPLITSQ_CLI_PATH must point at the splitsq executable"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("splitsq-cli-" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << contents;
}

// Runs the binary through the shell; `env_prefix` may carry VAR=value pairs.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("out-" + std::to_string(counter) + ".txt");
    const fs::path err_path = scratch_dir() / ("err-" + std::to_string(counter) + ".txt");
    ++counter;
    std::string command = env_prefix;
    if (!command.empty()) {
        command += " ";
    }
    command += "\"" SPLITSQ_CLI_PATH "\" " + args + " >\"" + out_path.string() +
               "\" 2>\"" + err_path.string() + "\"";
    const int raw = std::system(command.c_str());
    REQUIRE(raw != -1);
    REQUIRE(WIFEXITED(raw));
    return RunResult{WEXITSTATUS(raw), slurp(out_path), slurp(err_path)};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
    const auto version = run_cli("--version");
    CHECK(version.code == 0);
    CHECK(version.out.find("1.0.0") != std::string::npos);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("classify --help").code == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);                       // subcommand required
    CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
    CHECK(run_cli("classify").code == 2);               // missing number
    CHECK(run_cli("classify 12x").code == 2);           // not a decimal number
    CHECK(run_cli("classify 49 --format yaml").code == 2);
    CHECK(run_cli("gen").code == 2);                    // gen needs a family
    CHECK(run_cli("gen thm1 --alpha 0 --beta 0 --case 1").code == 2);
    CHECK(run_cli("gen thm1 --alpha 1 --beta 2 --case 1").code == 2);
    CHECK(run_cli("gen thm1 --alpha 1 --beta 0 --case 3").code == 2);
    CHECK(run_cli("gen thm2 --alpha 2").code == 2);
    CHECK(run_cli("gen chain --r 1").code == 2);
    CHECK(run_cli("gen chain --r 10").code == 2);
    CHECK(run_cli("search").code == 2);                 // --max-z required
    CHECK(run_cli("search --max-z 1").code == 2);
    CHECK(run_cli("search --max-z 50 --jobs 65").code == 2);
    CHECK(run_cli("density --max-z abc").code == 2);
    // Records have no CSV shape.
    CHECK(run_cli("gen thm1 --alpha 1 --beta 0 --case 1 --format csv").code == 2);
    CHECK(run_cli("gen chain --r 2 --format csv").code == 2);
}

TEST_CASE("classify reports witnesses and signals absence with exit 1") {
    const auto hit = run_cli("classify 49");
    CHECK(hit.code == 0);
    CHECK(hit.out == "total=49 left=2^2=4 zeros=0 right=3^2=9 width=1\n");

    const auto miss = run_cli("classify 289");
    CHECK(miss.code == 1);
    CHECK(miss.out == "none\n");

    const auto jsonl = run_cli("classify 49 --format jsonl");
    CHECK(jsonl.code == 0);
    CHECK(jsonl.out ==
          "{\"total\":\"49\",\"left_root\":\"2\",\"right_root\":\"3\","
          "\"left_square\":\"4\",\"right_square\":\"9\","
          "\"zeros_between\":\"0\",\"right_width\":\"1\"}\n");
}

TEST_CASE("classify flags map onto the scan options") {
    CHECK(run_cli("classify 4900").code == 1);
    const auto relaxed = run_cli("classify 4900 --allow-div10");
    CHECK(relaxed.code == 0);
    CHECK(relaxed.out.find("right=30^2=900") != std::string::npos);

    CHECK(run_cli("classify 2433606240004 --zeros 0").code == 1);
    const auto gap = run_cli("classify 2433606240004 --zeros 1");
    CHECK(gap.code == 0);
    CHECK(gap.out.find("left=156^2=24336 zeros=1 right=2498^2=6240004") !=
          std::string::npos);

    const auto loose = run_cli("classify 94 --no-require-square");
    CHECK(loose.code == 0);
    CHECK(loose.out == "total=94 left=3^2=9 zeros=0 right=2^2=4 width=1\n");
}

TEST_CASE("classify emits CSV witness rows") {
    const auto csv = run_cli("classify 4950625 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out ==
          "total,left_square,zeros_between,right_square\n"
          "4950625,49,0,50625\n"
          "4950625,4,0,950625\n");
}

TEST_CASE("gen thm1 prints the candidate and flags rejections on stderr") {
    const auto good = run_cli("gen thm1 --alpha 1 --beta 0 --case 1 --format jsonl");
    CHECK(good.code == 0);
    const auto record = nlohmann::ordered_json::parse(good.out);
    CHECK(record["status"] == "verified");
    CHECK(record["z"] == "41");
    CHECK(record["witness"]["total"] == "1681");

    const auto bad = run_cli("gen thm1 --alpha 1 --beta 1 --case 1 --format jsonl");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("VALUATION_MISMATCH") != std::string::npos);
    const auto rejected = nlohmann::ordered_json::parse(bad.out);
    CHECK(rejected["status"] == "rejected");
    CHECK(rejected["reason"] == "VALUATION_MISMATCH");
}

TEST_CASE("gen thm2 prints the divisor pair") {
    const auto result = run_cli("gen thm2 --alpha 3 --format jsonl");
    CHECK(result.code == 0);
    const auto record = nlohmann::ordered_json::parse(result.out);
    CHECK(record["c"] == "3844248004");
    CHECK(record["d"] == "15376992016");
}

TEST_CASE("gen chain emits the frozen two-member chain byte for byte") {
    const auto result = run_cli("gen chain --r 2 --format jsonl");
    CHECK(result.code == 0);
    CHECK(result.out ==
          "{\"r\":\"2\",\"alpha\":\"4\",\"length\":\"2\","
          "\"members\":[\"9734424960016\",\"38937699840064\"],"
          "\"ratios\":[\"4\"]}\n");
}

TEST_CASE("gen zeros emits witness rows in CSV and records otherwise") {
    const auto csv = run_cli("gen zeros --zeros 1 --count 2 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out ==
          "total,left_square,zeros_between,right_square\n"
          "961062001,961,1,62001\n"
          "2433606240004,24336,1,6240004\n");

    const auto record = run_cli("gen zeros --zeros 1 --count 2 --format jsonl");
    CHECK(record.code == 0);
    const auto parsed = nlohmann::ordered_json::parse(record.out);
    CHECK(parsed["complete"] == true);
    CHECK(parsed["witnesses"].size() == 2);
}

TEST_CASE("gen zeros reports a partial result when the ceiling is too low") {
    const auto partial =
        run_cli("gen zeros --zeros 1 --count 10 --alpha-ceiling 3 --format jsonl");
    CHECK(partial.code == 1);
    CHECK(partial.err.find("partial result") != std::string::npos);
    const auto parsed = nlohmann::ordered_json::parse(partial.out);
    CHECK(parsed["complete"] == false);
    CHECK(parsed["witnesses"].size() == 1);
    CHECK(parsed["witnesses"][0]["total"] == "961062001");
}

TEST_CASE("gen trailing contrasts default and relaxed scans") {
    const auto result = run_cli("gen trailing --k 1 --format jsonl");
    CHECK(result.code == 0);
    const auto record = nlohmann::ordered_json::parse(result.out);
    CHECK(record["total"] == "4900");
    CHECK(record["default_witnesses"].empty());
    REQUIRE(record["relaxed_witnesses"].size() == 1);
    CHECK(record["relaxed_witnesses"][0]["right_square"] == "900");
}

TEST_CASE("search emits a header line plus one witness per line") {
    const auto result = run_cli("search --max-z 50 --zeros 0 --format jsonl");
    CHECK(result.code == 0);
    const auto lines = lines_of(result.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] ==
          "# {\"schema\":\"split-square-witness/1\",\"z_max\":\"50\","
          "\"zeros\":\"0\",\"version\":\"1.0.0\"}");
    const std::vector<std::string> totals{"49", "169", "361", "1225", "1444", "1681"};
    for (std::size_t i = 0; i < totals.size(); ++i) {
        const auto w = nlohmann::ordered_json::parse(lines[i + 1]);
        CHECK(w["total"] == totals[i]);
    }
    CHECK(result.err.find("totals: 6, witnesses: 6") != std::string::npos);
}

TEST_CASE("search output is byte-identical across runs and job counts") {
    const std::string args = "search --max-z 4000 --format jsonl";
    const auto first = run_cli(args + " --jobs 1");
    const auto again = run_cli(args + " --jobs 1");
    const auto parallel = run_cli(args + " --jobs 4");
    CHECK(first.code == 0);
    REQUIRE(first.out == again.out);
    REQUIRE(first.out == parallel.out);
}

TEST_CASE("search with --progress narrates on stderr only") {
    const auto result = run_cli("search --max-z 5000 --progress --format jsonl");
    CHECK(result.code == 0);
    CHECK(result.err.find("scanned") != std::string::npos);
    CHECK(result.out.find("scanned") == std::string::npos);
}

TEST_CASE("search results written to a file verify cleanly") {
    const fs::path file = scratch_dir() / "roundtrip.jsonl";
    const auto search =
        run_cli("search --max-z 200 --format jsonl --output \"" + file.string() + "\"");
    REQUIRE(search.code == 0);

    // File bytes match what the same invocation prints to stdout.
    const auto direct = run_cli("search --max-z 200 --format jsonl");
    CHECK(slurp(file) == direct.out);

    const auto verify = run_cli("verify --file \"" + file.string() + "\"");
    CHECK(verify.code == 0);
    CHECK(verify.err.find("verified 10 witnesses") != std::string::npos);
}

TEST_CASE("verify rejects tampered and malformed files with distinct codes") {
    const std::string valid =
        "{\"total\":\"49\",\"left_root\":\"2\",\"right_root\":\"3\","
        "\"left_square\":\"4\",\"right_square\":\"9\","
        "\"zeros_between\":\"0\",\"right_width\":\"1\"}\n";

    const fs::path tampered = scratch_dir() / "tampered.jsonl";
    std::string bad_line = valid;
    bad_line.replace(bad_line.find("\"49\""), 4, "\"50\"");
    spit(tampered, valid + bad_line);
    const auto invalid = run_cli("verify --file \"" + tampered.string() + "\"");
    CHECK(invalid.code == 1);
    CHECK(invalid.err.find("line 2: invalid witness (concat_mismatch)") !=
          std::string::npos);

    const fs::path garbled = scratch_dir() / "garbled.jsonl";
    spit(garbled, valid + "this is not json\n");
    const auto malformed = run_cli("verify --file \"" + garbled.string() + "\"");
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("line 2: malformed JSON") != std::string::npos);

    const fs::path truncated = scratch_dir() / "truncated.jsonl";
    spit(truncated, "{\"total\":\"49\"}\n");
    const auto missing_fields = run_cli("verify --file \"" + truncated.string() + "\"");
    CHECK(missing_fields.code == 2);
    CHECK(missing_fields.err.find("malformed witness") != std::string::npos);

    const auto absent = run_cli("verify --file /no/such/file.jsonl");
    CHECK(absent.code == 2);
    CHECK(absent.err.find("cannot open") != std::string::npos);
}

TEST_CASE("verify treats headers and blank lines as padding") {
    const fs::path empty = scratch_dir() / "empty.jsonl";
    spit(empty, "");
    const auto vacuous = run_cli("verify --file \"" + empty.string() + "\"");
    CHECK(vacuous.code == 0);
    CHECK(vacuous.err.find("vacuous pass") != std::string::npos);

    const fs::path header_only = scratch_dir() / "header-only.jsonl";
    spit(header_only, "# {\"schema\":\"split-square-witness/1\"}\n\n");
    CHECK(run_cli("verify --file \"" + header_only.string() + "\"").code == 0);
}

TEST_CASE("verify honors the relaxed divisibility flag") {
    const std::string relaxed_witness =
        "{\"total\":\"4900\",\"left_root\":\"2\",\"right_root\":\"30\","
        "\"left_square\":\"4\",\"right_square\":\"900\","
        "\"zeros_between\":\"0\",\"right_width\":\"3\"}\n";
    const fs::path file = scratch_dir() / "relaxed.jsonl";
    spit(file, relaxed_witness);

    const auto strict = run_cli("verify --file \"" + file.string() + "\"");
    CHECK(strict.code == 1);
    CHECK(strict.err.find("right_divisible_by_10") != std::string::npos);
    CHECK(run_cli("verify --file \"" + file.string() + "\" --allow-div10").code == 0);
}

TEST_CASE("density prints the frozen table in all three formats") {
    const auto human = run_cli("density --max-z 50");
    CHECK(human.code == 0);
    CHECK(human.out ==
          "2-digit totals: 1\n"
          "3-digit totals: 2\n"
          "4-digit totals: 3\n");

    const auto csv = run_cli("density --max-z 50 --format csv");
    CHECK(csv.out == "digits,totals\n2,1\n3,2\n4,3\n");

    const auto jsonl = run_cli("density --max-z 50 --format jsonl");
    CHECK(jsonl.out ==
          "{\"z_max\":\"50\",\"counts_by_digits\":"
          "{\"2\":\"1\",\"3\":\"2\",\"4\":\"3\"}}\n");
}

TEST_CASE("relative output paths land in the requested directory") {
    const fs::path dir = scratch_dir() / "outdir";
    fs::create_directories(dir);

    const auto by_flag = run_cli("classify 49 --format jsonl --output w.jsonl "
                                 "--output-dir \"" + dir.string() + "\"");
    CHECK(by_flag.code == 0);
    CHECK(by_flag.out.empty());
    CHECK(fs::exists(dir / "w.jsonl"));
    CHECK(slurp(dir / "w.jsonl").find("\"total\":\"49\"") != std::string::npos);

    const auto by_env = run_cli("classify 1681 --format jsonl --output env.jsonl",
                                "SPLITSQ_OUTPUT_DIR=\"" + dir.string() + "\"");
    CHECK(by_env.code == 0);
    CHECK(fs::exists(dir / "env.jsonl"));
    CHECK(slurp(dir / "env.jsonl").find("\"total\":\"1681\"") != std::string::npos);

    // Absolute paths ignore the directory prefix.
    const fs::path absolute = scratch_dir() / "absolute.jsonl";
    const auto abs_run = run_cli("classify 49 --format jsonl --output \"" +
                                     absolute.string() + "\" --output-dir \"" +
                                     dir.string() + "\"");
    CHECK(abs_run.code == 0);
    CHECK(fs::exists(absolute));

    const auto unwritable = run_cli("classify 49 --output /no/such/dir/w.jsonl");
    CHECK(unwritable.code == 2);
    CHECK(unwritable.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("a config file supplies defaults for global options") {
    const fs::path cfg = scratch_dir() / "defaults.ini";
    spit(cfg, "alpha-ceiling=3\nformat=jsonl\n");
    const auto result = run_cli("gen zeros --zeros 1 --count 10 --config \"" +
                                cfg.string() + "\"");
    CHECK(result.code == 1);  // ceiling 3 stops after the first total
    const auto parsed = nlohmann::ordered_json::parse(result.out);
    CHECK(parsed["alpha_ceiling"] == "3");
    CHECK(parsed["witnesses"].size() == 1);
}
