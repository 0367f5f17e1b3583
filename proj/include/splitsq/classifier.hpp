#pragma once

// Ground-truth predicate for split squares.  A witness is the concrete
// decomposition N = p * 10^L + q with p and q perfect squares, s interior
// zeros, and (by default) neither block divisible by 10.  Every generator and
// the brute-force enumerator are measured against this module.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitsq/nat.hpp"

namespace splitsq {
namespace classifier {

// One verified decomposition.  right_width is L, the number of trailing digit
// positions allocated to the right part; zeros_between is s, the exact count
// of interior zeros, recovered as L - digit_count(right_square).
struct SplitWitness {
    Nat total;
    Nat left_root;
    Nat right_root;
    Nat left_square;
    Nat right_square;
    std::size_t zeros_between = 0;
    std::size_t right_width = 0;

    friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

struct ClassifyOptions {
    // When on (the default), a number that is not itself a perfect square is
    // rejected before any split position is examined.
    bool require_total_square = true;
    // The relaxed flag exists solely to reproduce the 49 * 10^(2k) contrast
    // family, whose right block IS divisible by 10; default behavior enforces
    // the headline constraint that neither block is.
    bool allow_divisible_by_10_parts = false;
    // When set, only witnesses with exactly this many interior zeros are kept.
    std::optional<std::size_t> zeros_filter;
};

// The first violated witness invariant, in the order the invariants are
// stated on SplitWitness.  Used by verify_witness diagnostics.
enum class WitnessFault {
    concat_mismatch,        // total != left_square * 10^right_width + right_square
    left_root_mismatch,     // left_root^2 != left_square
    right_root_mismatch,    // right_root^2 != right_square
    left_square_zero,       // left_square < 1
    right_square_zero,      // right_square < 1
    left_divisible_by_10,   // left_square ends in 0
    right_divisible_by_10,  // right_square ends in 0
    width_mismatch,         // digit_count(right_square) + zeros_between != right_width
    total_not_square,       // total is not a perfect square
};

inline std::string to_string(WitnessFault fault) {
    switch (fault) {
        case WitnessFault::concat_mismatch: return "concat_mismatch";
        case WitnessFault::left_root_mismatch: return "left_root_mismatch";
        case WitnessFault::right_root_mismatch: return "right_root_mismatch";
        case WitnessFault::left_square_zero: return "left_square_zero";
        case WitnessFault::right_square_zero: return "right_square_zero";
        case WitnessFault::left_divisible_by_10: return "left_divisible_by_10";
        case WitnessFault::right_divisible_by_10: return "right_divisible_by_10";
        case WitnessFault::width_mismatch: return "width_mismatch";
        case WitnessFault::total_not_square: return "total_not_square";
    }
    return "unknown_fault";
}

// Re-checks every invariant from the raw fields; returns the first violation,
// or empty if the witness is fully valid.  The relaxed flag waives only the
// divisible-by-10 constraints, mirroring ClassifyOptions.
inline std::optional<WitnessFault> check_witness(const SplitWitness& w,
                                                 bool allow_divisible_by_10_parts = false) {
    if (w.total != w.left_square * core::pow10(w.right_width) + w.right_square) {
        return WitnessFault::concat_mismatch;
    }
    if (w.left_root * w.left_root != w.left_square) {
        return WitnessFault::left_root_mismatch;
    }
    if (w.right_root * w.right_root != w.right_square) {
        return WitnessFault::right_root_mismatch;
    }
    if (w.left_square < 1) {
        return WitnessFault::left_square_zero;
    }
    if (w.right_square < 1) {
        return WitnessFault::right_square_zero;
    }
    if (!allow_divisible_by_10_parts) {
        if (w.left_square % 10 == 0) {
            return WitnessFault::left_divisible_by_10;
        }
        if (w.right_square % 10 == 0) {
            return WitnessFault::right_divisible_by_10;
        }
    }
    if (core::digit_count(w.right_square) + w.zeros_between != w.right_width) {
        return WitnessFault::width_mismatch;
    }
    if (!core::is_perfect_square(w.total)) {
        return WitnessFault::total_not_square;
    }
    return std::nullopt;
}

inline bool verify_witness(const SplitWitness& w) {
    return !check_witness(w).has_value();
}

// Returns every witness for N, one per valid split position L in
// [1, digit_count(N) - 1], in increasing L order.  An empty list is the
// "not a split square" signal; it is not an error.
inline std::vector<SplitWitness> find_split_witnesses(const Nat& n,
                                                      const ClassifyOptions& opts = {}) {
    if (n < 1) {
        throw std::invalid_argument("find_split_witnesses: input must be >= 1");
    }
    std::vector<SplitWitness> found;
    if (opts.require_total_square && !core::is_perfect_square(n)) {
        return found;
    }
    // Every split's right block q satisfies q = N mod 10^L, so q mod 10 is
    // N mod 10 for all L.  Hence if 10 | N, every right block is divisible by
    // 10 (or zero) and the default options can reject without scanning.
    const bool last_digit_zero = (n % 10 == 0);
    if (last_digit_zero && !opts.allow_divisible_by_10_parts) {
        return found;
    }
    const std::size_t digits = core::digit_count(n);
    const Nat ten = 10;
    Nat p = n;       // N div 10^L
    Nat q = 0;       // N mod 10^L
    Nat place = 1;   // 10^L
    Nat quotient;
    Nat digit;
    std::size_t q_digits = 0;  // digit_count(q), maintained incrementally
    for (std::size_t l = 1; l < digits; ++l) {
        boost::multiprecision::divide_qr(p, ten, quotient, digit);
        p.swap(quotient);
        if (digit != 0) {
            q += digit * place;
            q_digits = l;  // the new leading digit of q is nonzero
        }
        place *= 10;
        if (q == 0) {
            continue;  // empty right block: "putting two squares together" needs two
        }
        if (!opts.allow_divisible_by_10_parts && p % 10 == 0) {
            continue;  // left block would end in 0
        }
        const std::size_t zeros = l - q_digits;
        if (opts.zeros_filter && *opts.zeros_filter != zeros) {
            continue;
        }
        auto right_root = core::is_perfect_square(q);
        if (!right_root) {
            continue;
        }
        auto left_root = core::is_perfect_square(p);
        if (!left_root) {
            continue;
        }
        found.push_back(SplitWitness{
            .total = n,
            .left_root = std::move(*left_root),
            .right_root = std::move(*right_root),
            .left_square = p,
            .right_square = q,
            .zeros_between = zeros,
            .right_width = l,
        });
    }
    return found;
}

// Convenience: squares z, then classifies.
inline std::vector<SplitWitness> classify_root(const Nat& z, const ClassifyOptions& opts = {}) {
    if (z < 1) {
        throw std::invalid_argument("classify_root: root must be >= 1");
    }
    return find_split_witnesses(z * z, opts);
}

}  // namespace classifier
}  // namespace splitsq
