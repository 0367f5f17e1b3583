// Command-line front end: classification, generation, enumeration, chain
// construction, and witness-file verification, with machine-readable output.
//
// Exit codes follow one contract everywhere: 0 = found / verified / ok,
// 1 = negative result (no witness, rejected candidate, shortfall),
// 2 = usage or parse error.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitsq/classifier.hpp"
#include "splitsq/generators.hpp"
#include "splitsq/nat.hpp"
#include "splitsq/oracle.hpp"
#include "splitsq/serialize.hpp"

namespace {

using splitsq::Nat;
namespace classifier = splitsq::classifier;
namespace generators = splitsq::generators;
namespace oracle = splitsq::oracle;
namespace io = splitsq::io;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;

struct GlobalOptions {
    std::string format = "human";  // human | jsonl | csv
    std::string output_path;       // empty = stdout
    std::string output_dir;        // prefix for relative output paths
    unsigned alpha_ceiling = 64;
    bool progress = false;
};

// Where data lines go.  Diagnostics, summaries, and progress always go to
// stderr so stdout/file bytes stay deterministic.
struct OutputTarget {
    std::ostream* stream = &std::cout;
    std::ofstream file;
};

OutputTarget open_output(const GlobalOptions& global) {
    OutputTarget target;
    if (global.output_path.empty()) {
        return target;
    }
    std::filesystem::path path = global.output_path;
    if (path.is_relative() && !global.output_dir.empty()) {
        path = std::filesystem::path(global.output_dir) / path;
    }
    target.file.open(path, std::ios::binary);
    if (!target.file) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    target.stream = &target.file;
    return target;
}

std::string human_witness(const classifier::SplitWitness& w) {
    return "total=" + w.total.str() + " left=" + w.left_root.str() + "^2=" +
           w.left_square.str() + " zeros=" + std::to_string(w.zeros_between) +
           " right=" + w.right_root.str() + "^2=" + w.right_square.str() +
           " width=" + std::to_string(w.right_width);
}

void emit_witnesses(const std::vector<classifier::SplitWitness>& witnesses,
                    const GlobalOptions& global, std::ostream& out,
                    const std::string& jsonl_header = {}) {
    if (global.format == "jsonl") {
        if (!jsonl_header.empty()) {
            out << jsonl_header << "\n";
        }
        for (const auto& w : witnesses) {
            out << io::witness_to_json(w).dump() << "\n";
        }
    } else if (global.format == "csv") {
        out << io::csv_header() << "\n";
        for (const auto& w : witnesses) {
            out << io::witness_to_csv(w) << "\n";
        }
    } else {
        if (witnesses.empty()) {
            out << "none\n";
        }
        for (const auto& w : witnesses) {
            out << human_witness(w) << "\n";
        }
    }
}

// Non-witness records have no CSV shape; reject the combination loudly.
void require_record_format(const GlobalOptions& global) {
    if (global.format == "csv") {
        throw std::invalid_argument(
            "csv format is only available for witness streams (classify, search, gen zeros)");
    }
}

void emit_record(const io::ordered_json& record, const GlobalOptions& global,
                 std::ostream& out) {
    if (global.format == "jsonl") {
        out << record.dump() << "\n";
    } else {
        out << record.dump(2) << "\n";
    }
}

// --- subcommand runners -----------------------------------------------------

int run_classify(const std::string& number, bool allow_div10, bool no_require_square,
                 std::optional<std::size_t> zeros, const GlobalOptions& global) {
    classifier::ClassifyOptions opts;
    opts.allow_divisible_by_10_parts = allow_div10;
    opts.require_total_square = !no_require_square;
    opts.zeros_filter = zeros;
    const auto witnesses = classifier::find_split_witnesses(io::parse_nat(number), opts);
    auto target = open_output(global);
    emit_witnesses(witnesses, global, *target.stream);
    return witnesses.empty() ? exit_negative : exit_ok;
}

int run_gen_thm1(unsigned alpha, unsigned beta, int case_id, const GlobalOptions& global) {
    require_record_format(global);
    const auto candidate = generators::thm1_candidate({alpha, beta, case_id});
    auto target = open_output(global);
    emit_record(io::thm1_to_json(candidate), global, *target.stream);
    if (!candidate.verified()) {
        std::cerr << "candidate rejected: " << generators::to_string(*candidate.rejection)
                  << "\n";
        return exit_negative;
    }
    return exit_ok;
}

int run_gen_thm2(unsigned alpha, const GlobalOptions& global) {
    require_record_format(global);
    const auto pair = generators::thm2_pair(alpha);
    auto target = open_output(global);
    emit_record(io::pair_to_json(pair), global, *target.stream);
    return exit_ok;
}

int run_gen_chain(unsigned r, const GlobalOptions& global) {
    require_record_format(global);
    auto target = open_output(global);
    try {
        const auto chain = generators::thm3_chain(r);
        emit_record(io::chain_to_json(chain), global, *target.stream);
        return exit_ok;
    } catch (const generators::ChainShortfall& shortfall) {
        emit_record(io::chain_to_json(shortfall.partial()), global, *target.stream);
        std::cerr << shortfall.what() << "\n";
        return exit_negative;
    }
}

int run_gen_zeros(std::size_t zeros, std::size_t count, unsigned alpha_start,
                  const GlobalOptions& global) {
    const auto result =
        generators::zeros_between_stream(zeros, count, alpha_start, global.alpha_ceiling);
    auto target = open_output(global);
    if (global.format == "csv") {
        emit_witnesses(result.witnesses, global, *target.stream);
    } else {
        emit_record(io::zeros_result_to_json(result), global, *target.stream);
    }
    if (!result.complete) {
        std::cerr << "partial result: found " << result.witnesses.size() << " of " << count
                  << " requested totals before the alpha ceiling ("
                  << result.alpha_ceiling << ")\n";
        return exit_negative;
    }
    return exit_ok;
}

int run_gen_trailing(std::size_t k, const GlobalOptions& global) {
    require_record_format(global);
    const Nat total = generators::trailing_zero_family(k);
    classifier::ClassifyOptions relaxed;
    relaxed.allow_divisible_by_10_parts = true;
    io::ordered_json default_witnesses = io::ordered_json::array();
    for (const auto& w : classifier::find_split_witnesses(total)) {
        default_witnesses.push_back(io::witness_to_json(w));
    }
    io::ordered_json relaxed_witnesses = io::ordered_json::array();
    for (const auto& w : classifier::find_split_witnesses(total, relaxed)) {
        relaxed_witnesses.push_back(io::witness_to_json(w));
    }
    io::ordered_json record{
        {"k", std::to_string(k)},
        {"total", total.str()},
        {"default_witnesses", std::move(default_witnesses)},
        {"relaxed_witnesses", std::move(relaxed_witnesses)},
    };
    auto target = open_output(global);
    emit_record(record, global, *target.stream);
    return exit_ok;
}

int run_search(const std::string& max_z, std::optional<std::size_t> zeros, unsigned jobs,
               const GlobalOptions& global) {
    const Nat z_max = io::parse_nat(max_z);
    oracle::ProgressFn progress;
    if (global.progress) {
        progress = [](std::uint64_t done, std::uint64_t total) {
            std::cerr << "\rscanned " << done << "/" << total << " roots" << std::flush;
        };
    }
    const auto report = oracle::enumerate_split_squares(z_max, zeros, jobs, progress);
    if (global.progress) {
        std::cerr << "\n";
    }
    auto target = open_output(global);
    emit_witnesses(report.witnesses, global, *target.stream,
                   io::search_header_line(z_max, zeros));
    std::size_t totals = 0;
    for (const auto& [digits, count] : report.counts_by_digits) {
        totals += count;
    }
    std::cerr << "totals: " << totals << ", witnesses: " << report.witnesses.size()
              << ", elapsed: " << report.elapsed.count() << "s\n";
    return exit_ok;
}

int run_verify(const std::string& file, bool allow_div10) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot open file: " << file << "\n";
        return exit_usage;
    }
    std::string line;
    std::size_t line_no = 0;
    std::size_t checked = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || io::is_header_line(line)) {
            continue;
        }
        io::ordered_json parsed;
        try {
            parsed = io::ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << "line " << line_no << ": malformed JSON: " << e.what() << "\n";
            return exit_usage;
        }
        classifier::SplitWitness witness;
        try {
            witness = io::witness_from_json(parsed);
        } catch (const std::invalid_argument& e) {
            std::cerr << "line " << line_no << ": malformed witness: " << e.what() << "\n";
            return exit_usage;
        }
        if (const auto fault = classifier::check_witness(witness, allow_div10)) {
            std::cerr << "line " << line_no << ": invalid witness ("
                      << classifier::to_string(*fault) << "): " << line << "\n";
            return exit_negative;
        }
        ++checked;
    }
    if (checked == 0) {
        std::cerr << "warning: no witness lines found; vacuous pass\n";
    } else {
        std::cerr << "verified " << checked << " witnesses\n";
    }
    return exit_ok;
}

int run_density(const std::string& max_z, const GlobalOptions& global) {
    const Nat z_max = io::parse_nat(max_z);
    const auto counts = oracle::density_report(z_max);
    auto target = open_output(global);
    std::ostream& out = *target.stream;
    if (global.format == "csv") {
        out << "digits,totals\n";
        for (const auto& [digits, count] : counts) {
            out << digits << "," << count << "\n";
        }
    } else if (global.format == "jsonl") {
        io::ordered_json by_digits;
        for (const auto& [digits, count] : counts) {
            by_digits[std::to_string(digits)] = std::to_string(count);
        }
        io::ordered_json record{{"z_max", z_max.str()}, {"counts_by_digits", std::move(by_digits)}};
        out << record.dump() << "\n";
    } else {
        if (counts.empty()) {
            out << "none\n";
        }
        for (const auto& [digits, count] : counts) {
            out << digits << "-digit totals: " << count << "\n";
        }
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions global;
    int exit_code = exit_ok;

    CLI::App app{"Split-square toolkit: classify, generate, enumerate, and cross-verify\n"
                 "perfect squares whose decimal digits are a perfect square followed by\n"
                 "s zeros followed by another perfect square."};
    app.set_version_flag("--version", io::format_version);
    app.set_config("--config", "", "Read defaults from a key = value file");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--format", global.format, "Output format")
        ->check(CLI::IsMember({"human", "jsonl", "csv"}))
        ->capture_default_str();
    app.add_option("--output", global.output_path,
                   "Write data lines to this file instead of stdout");
    app.add_option("--output-dir", global.output_dir,
                   "Directory for relative --output paths")
        ->envname("SPLITSQ_OUTPUT_DIR");
    app.add_option("--alpha-ceiling", global.alpha_ceiling,
                   "Largest alpha the zero-stream scan may reach")
        ->check(CLI::Range(2u, 4096u))
        ->capture_default_str();
    app.add_flag("--progress", global.progress, "Report scan progress on stderr");

    // classify
    std::string classify_number;
    bool classify_allow = false;
    bool classify_no_require = false;
    std::optional<std::size_t> classify_zeros;
    auto* classify = app.add_subcommand(
        "classify", "List every witness that a number is a split square");
    classify->fallthrough();
    classify->add_option("number", classify_number, "Decimal number to classify")->required();
    classify->add_option("--zeros", classify_zeros, "Keep only witnesses with exactly this many interior zeros");
    classify->add_flag("--allow-div10", classify_allow, "Permit blocks divisible by 10");
    classify->add_flag("--no-require-square", classify_no_require,
                       "Scan split positions even if the number itself is not a perfect square");
    classify->callback([&] {
        exit_code = run_classify(classify_number, classify_allow, classify_no_require,
                                 classify_zeros, global);
    });

    // gen
    auto* gen = app.add_subcommand("gen", "Run one of the constructive families");
    gen->fallthrough();
    gen->require_subcommand(1);

    unsigned thm1_alpha = 1;
    unsigned thm1_beta = 0;
    int thm1_case = 1;
    auto* gen_thm1 = gen->add_subcommand("thm1", "One parametric candidate with its verification verdict");
    gen_thm1->fallthrough();
    gen_thm1->add_option("--alpha", thm1_alpha)->required()->check(CLI::Range(1u, 4096u));
    gen_thm1->add_option("--beta", thm1_beta)->required();
    gen_thm1->add_option("--case", thm1_case)->required()->check(CLI::Range(1, 2));
    gen_thm1->callback([&] { exit_code = run_gen_thm1(thm1_alpha, thm1_beta, thm1_case, global); });

    unsigned thm2_alpha = 3;
    auto* gen_thm2 = gen->add_subcommand("thm2", "Divisor pair (c, d) with d = 4c, both split squares");
    gen_thm2->fallthrough();
    gen_thm2->add_option("--alpha", thm2_alpha)->required();
    gen_thm2->callback([&] { exit_code = run_gen_thm2(thm2_alpha, global); });

    unsigned chain_r = 2;
    auto* gen_chain = gen->add_subcommand("chain", "Divisibility chain of split squares, each dividing the next");
    gen_chain->fallthrough();
    gen_chain->add_option("--r", chain_r, "Requested chain length")->required();
    gen_chain->callback([&] { exit_code = run_gen_chain(chain_r, global); });

    std::size_t zeros_s = 1;
    std::size_t zeros_count = 1;
    unsigned zeros_alpha_start = 2;
    auto* gen_zeros = gen->add_subcommand("zeros", "Split squares with exactly s interior zeros");
    gen_zeros->fallthrough();
    gen_zeros->add_option("--zeros", zeros_s, "Interior zero count s")->required();
    gen_zeros->add_option("--count", zeros_count, "How many distinct totals to collect")->required();
    gen_zeros->add_option("--alpha-start", zeros_alpha_start)->capture_default_str();
    gen_zeros->callback(
        [&] { exit_code = run_gen_zeros(zeros_s, zeros_count, zeros_alpha_start, global); });

    std::size_t trailing_k = 0;
    auto* gen_trailing = gen->add_subcommand(
        "trailing", "Contrast family 49 * 10^(2k): square, but blocks divisible by 10");
    gen_trailing->fallthrough();
    gen_trailing->add_option("--k", trailing_k)->required()->check(CLI::Range(0, 5000));
    gen_trailing->callback([&] { exit_code = run_gen_trailing(trailing_k, global); });

    // search
    std::string search_max_z;
    std::optional<std::size_t> search_zeros;
    unsigned search_jobs = 1;
    auto* search = app.add_subcommand("search", "Enumerate all split squares with root up to max-z");
    search->fallthrough();
    search->add_option("--max-z", search_max_z, "Scan roots 2..max-z")->required();
    search->add_option("--zeros", search_zeros, "Keep only witnesses with exactly this many interior zeros");
    search->add_option("--jobs", search_jobs, "Worker threads over disjoint root ranges")
        ->check(CLI::Range(1u, 64u))
        ->capture_default_str();
    search->callback([&] { exit_code = run_search(search_max_z, search_zeros, search_jobs, global); });

    // verify
    std::string verify_file;
    bool verify_allow = false;
    auto* verify = app.add_subcommand("verify", "Re-verify every witness in a JSONL file");
    verify->fallthrough();
    verify->add_option("--file", verify_file, "JSONL witness file")->required();
    verify->add_flag("--allow-div10", verify_allow, "Permit blocks divisible by 10");
    verify->callback([&] { exit_code = run_verify(verify_file, verify_allow); });

    // density
    std::string density_max_z;
    auto* density = app.add_subcommand("density", "Distinct split-square totals grouped by digit length");
    density->fallthrough();
    density->add_option("--max-z", density_max_z, "Scan roots 2..max-z")->required();
    density->callback([&] { exit_code = run_density(density_max_z, global); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_code;
}
