#pragma once

// Brute-force ground truth: enumerate every split square up to a root bound,
// cross-check the constructive families against the enumeration, and report
// density statistics.  The enumeration carries no logic of its own — its
// witness set is exactly what the classifier returns for each root, which is
// the point: generators are measured against an independent exhaustive scan.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "splitsq/classifier.hpp"
#include "splitsq/generators.hpp"
#include "splitsq/nat.hpp"

namespace splitsq {
namespace oracle {

using classifier::SplitWitness;

struct SearchReport {
    Nat z_max;
    std::optional<std::size_t> zeros_filter;
    // Sorted strictly increasing by total (a total with several witnesses
    // lists them in increasing right_width order).
    std::vector<SplitWitness> witnesses;
    std::chrono::duration<double> elapsed{};
    // digit length of total -> number of distinct totals of that length
    std::map<std::size_t, std::size_t> counts_by_digits;
};

// Periodic progress callback: (roots processed so far, roots in total).
using ProgressFn = std::function<void(std::uint64_t, std::uint64_t)>;

namespace detail {

// Worker over one inclusive root range.  Workers share nothing; their outputs
// are concatenated in range order, which is already globally sorted because
// totals grow with z.
inline std::vector<SplitWitness> scan_root_range(std::uint64_t z_lo, std::uint64_t z_hi,
                                                 const classifier::ClassifyOptions& opts,
                                                 std::atomic<std::uint64_t>* roots_done) {
    std::vector<SplitWitness> out;
    std::uint64_t since_tick = 0;
    for (std::uint64_t z = z_lo; z <= z_hi; ++z) {
        // 10 | z implies 100 | z^2, so z^2 ends in 0 and every split's right
        // block is divisible by 10 — no default-options witness can exist.
        if (z % 10 != 0) {
            const Nat root = z;
            for (auto& w : classifier::find_split_witnesses(root * root, opts)) {
                out.push_back(std::move(w));
            }
        }
        if (roots_done != nullptr && ++since_tick == 4096) {
            roots_done->fetch_add(since_tick, std::memory_order_relaxed);
            since_tick = 0;
        }
    }
    if (roots_done != nullptr && since_tick != 0) {
        roots_done->fetch_add(since_tick, std::memory_order_relaxed);
    }
    return out;
}

inline std::uint64_t to_desk_scale_u64(const Nat& z_max) {
    if (z_max > Nat(1'000'000'000'000ULL)) {
        throw std::invalid_argument("enumerate_split_squares: z_max beyond desk scale (max 10^12)");
    }
    return z_max.convert_to<std::uint64_t>();
}

}  // namespace detail

// Classifies z^2 for every z in [2, z_max] (skipping 10 | z) and returns all
// totals with at least one witness matching the filter.  With jobs > 1 the
// range is split into disjoint sub-ranges processed concurrently; the merged
// output is bit-identical to a single-threaded run.
inline SearchReport enumerate_split_squares(const Nat& z_max,
                                            std::optional<std::size_t> zeros_filter = std::nullopt,
                                            unsigned jobs = 1,
                                            const ProgressFn& progress = nullptr) {
    if (z_max < 2) {
        throw std::invalid_argument("enumerate_split_squares: z_max must be >= 2");
    }
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t hi = detail::to_desk_scale_u64(z_max);
    const std::uint64_t root_count = hi - 1;  // roots 2..hi

    classifier::ClassifyOptions opts;
    opts.zeros_filter = zeros_filter;

    SearchReport report;
    report.z_max = z_max;
    report.zeros_filter = zeros_filter;

    if (jobs < 1) {
        jobs = 1;
    }
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, root_count));
    jobs = std::min(jobs, 64u);

    if (jobs == 1) {
        std::atomic<std::uint64_t> done{0};
        if (progress) {
            // Single worker: poll from this thread by chunking the range.
            const std::uint64_t chunk = 65536;
            for (std::uint64_t lo = 2; lo <= hi; lo += chunk) {
                const std::uint64_t sub_hi = std::min(hi, lo + chunk - 1);
                auto part = detail::scan_root_range(lo, sub_hi, opts, &done);
                for (auto& w : part) {
                    report.witnesses.push_back(std::move(w));
                }
                progress(done.load(std::memory_order_relaxed), root_count);
            }
        } else {
            report.witnesses = detail::scan_root_range(2, hi, opts, nullptr);
        }
    } else {
        std::vector<std::vector<SplitWitness>> slots(jobs);
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> workers;
        std::atomic<std::uint64_t> done{0};
        std::atomic<unsigned> finished{0};
        const std::uint64_t per_job = root_count / jobs;
        const std::uint64_t extra = root_count % jobs;
        std::uint64_t lo = 2;
        for (unsigned j = 0; j < jobs; ++j) {
            const std::uint64_t span = per_job + (j < extra ? 1 : 0);
            const std::uint64_t sub_hi = lo + span - 1;
            workers.emplace_back([&, j, lo, sub_hi] {
                try {
                    slots[j] = detail::scan_root_range(lo, sub_hi, opts, &done);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
                finished.fetch_add(1, std::memory_order_relaxed);
            });
            lo = sub_hi + 1;
        }
        if (progress) {
            std::uint64_t last = 0;
            while (finished.load(std::memory_order_relaxed) < jobs) {
                const std::uint64_t now = done.load(std::memory_order_relaxed);
                if (now != last) {
                    progress(now, root_count);
                    last = now;
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(200));
            }
        }
        for (auto& worker : workers) {
            worker.join();
        }
        for (auto& error : errors) {
            if (error) {
                std::rethrow_exception(error);
            }
        }
        // Ranges are disjoint and ordered, so concatenation keeps the global
        // sort by total — identical to the single-threaded output.
        for (auto& slot : slots) {
            for (auto& w : slot) {
                report.witnesses.push_back(std::move(w));
            }
        }
    }
    if (progress) {
        progress(root_count, root_count);
    }

    const Nat* previous_total = nullptr;
    for (const auto& w : report.witnesses) {
        if (previous_total == nullptr || *previous_total != w.total) {
            ++report.counts_by_digits[core::digit_count(w.total)];
            previous_total = &w.total;
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - started;
    return report;
}

struct CrossCheckReport {
    Nat z_max;
    std::size_t candidates_checked = 0;
    std::size_t confirmed = 0;
    std::vector<Nat> missing_from_oracle;  // empty on success
    std::size_t oracle_not_generated = 0;  // expected nonzero: families are not exhaustive
};

namespace detail {

// Every total the constructive families produce up to `limit`: verified
// family-1 candidates (both cases), family-2 pairs, and witness-bearing
// ladder steps.  Each family is swept with increasing alpha until even its
// smallest product at that alpha exceeds the limit.
inline std::set<Nat> generated_totals_up_to(const Nat& limit) {
    std::set<Nat> generated;

    constexpr unsigned alpha_hard_cap = 512;  // safety net; the breaks below fire first

    for (unsigned alpha = 1; alpha <= alpha_hard_cap; ++alpha) {
        std::optional<Nat> alpha_min;
        for (int case_id : {1, 2}) {
            for (unsigned beta = 0; beta <= alpha; ++beta) {
                auto cand = generators::thm1_candidate({alpha, beta, case_id});
                if (cand.z < 1) {
                    continue;  // degenerate corner carries no total
                }
                const Nat total = cand.z * cand.z;
                if (!alpha_min || total < *alpha_min) {
                    alpha_min = total;
                }
                if (cand.verified() && total <= limit) {
                    generated.insert(total);
                }
            }
        }
        if (alpha_min && *alpha_min > limit) {
            break;  // totals only grow with alpha
        }
    }

    for (unsigned alpha = 3; alpha <= alpha_hard_cap; ++alpha) {
        auto pair = generators::thm2_pair(alpha);
        if (pair.c > limit) {
            break;  // c is the smaller member and grows with alpha
        }
        generated.insert(pair.c);
        if (pair.d <= limit) {
            generated.insert(pair.d);
        }
    }

    for (unsigned alpha = 2; alpha <= alpha_hard_cap; ++alpha) {
        auto steps = generators::quartering_ladder(alpha);
        Nat ladder_min = steps.back().z_k * steps.back().z_k;
        for (const auto& step : steps) {
            if (step.witness && step.witness->total <= limit) {
                generated.insert(step.witness->total);
            }
        }
        if (ladder_min > limit) {
            break;  // the most-quartered member is the ladder's smallest total
        }
    }

    return generated;
}

}  // namespace detail

// Asserts that every generated total <= z_max^2 is found by the enumeration.
// A non-empty missing list is a fatal correctness failure of the generators
// or the classifier.
inline CrossCheckReport cross_check(const Nat& z_max, unsigned jobs = 1) {
    if (z_max < 2) {
        throw std::invalid_argument("cross_check: z_max must be >= 2");
    }
    CrossCheckReport report;
    report.z_max = z_max;

    const std::set<Nat> generated = detail::generated_totals_up_to(z_max * z_max);
    const SearchReport scan = enumerate_split_squares(z_max, std::nullopt, jobs);

    std::set<Nat> oracle_totals;
    for (const auto& w : scan.witnesses) {
        oracle_totals.insert(w.total);
    }

    report.candidates_checked = generated.size();
    for (const Nat& total : generated) {
        if (oracle_totals.count(total) != 0) {
            ++report.confirmed;
        } else {
            report.missing_from_oracle.push_back(total);
        }
    }
    for (const Nat& total : oracle_totals) {
        if (generated.count(total) == 0) {
            ++report.oracle_not_generated;
        }
    }
    return report;
}

// Distinct split-square totals up to z_max^2, grouped by digit length.
inline std::map<std::size_t, std::size_t> density_report(const Nat& z_max, unsigned jobs = 1) {
    if (z_max < 2) {
        throw std::invalid_argument("density_report: z_max must be >= 2");
    }
    return enumerate_split_squares(z_max, std::nullopt, jobs).counts_by_digits;
}

}  // namespace oracle
}  // namespace splitsq
