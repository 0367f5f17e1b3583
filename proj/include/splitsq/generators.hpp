#pragma once

// Constructive split-square families: the two parametric cases with their
// verification predicates, divisor pairs (c | d with d = 4c), quartering
// ladders and divisibility chains, the s-zeros streams, and the trailing-zero
// contrast family.  Every emitted object is re-verified through the
// classifier from raw fields — no trust in the constructions themselves.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splitsq/classifier.hpp"
#include "splitsq/nat.hpp"

namespace splitsq {
namespace generators {

using classifier::SplitWitness;

// ---------------------------------------------------------------------------
// Parametric family 1: a = k*n with
//   case 1:  k = 5^alpha * 2^(alpha-beta) - 1,  n = 2^beta  (a = 10^alpha - 2^beta)
//   case 2:  k = 5^(alpha-beta) * 2^alpha - 1,  n = 5^beta  (a = 10^alpha - 5^beta)
// then x = (a-n)(a+n) / (2n) and z = x + n, giving z^2 = x^2 + a^2 exactly.
// The stated parameter range is 0 <= beta <= alpha; validity inside the range
// is determined by verification, never assumed.
// ---------------------------------------------------------------------------

struct Thm1Params {
    unsigned alpha = 1;
    unsigned beta = 0;
    int case_id = 1;
};

// Machine-readable rejection codes for candidates that fail verification.
enum class RejectReason {
    digit_count_mismatch,  // a^2 does not have exactly 2*alpha digits
    valuation_mismatch,    // x^2 is not an exact 10^(2*alpha) shift of a square unit
    degenerate_a_le_n,     // a <= n, which would force x <= 0
    non_integral_x,        // 2n does not divide (a-n)(a+n)
};

inline std::string to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::digit_count_mismatch: return "DIGIT_COUNT_MISMATCH";
        case RejectReason::valuation_mismatch: return "VALUATION_MISMATCH";
        case RejectReason::degenerate_a_le_n: return "DEGENERATE_A_LE_N";
        case RejectReason::non_integral_x: return "NON_INTEGRAL_X";
    }
    return "UNKNOWN";
}

struct Thm1Candidate {
    Thm1Params params;
    Nat k;
    Nat n;
    Nat a;
    Nat x;
    Nat z;
    std::optional<SplitWitness> witness;     // present iff verified
    std::optional<RejectReason> rejection;   // present iff rejected

    bool verified() const { return witness.has_value(); }
};

inline void validate_thm1_params(const Thm1Params& p) {
    if (p.alpha < 1) {
        throw std::invalid_argument("thm1: alpha must be >= 1");
    }
    if (p.beta > p.alpha) {
        throw std::invalid_argument("thm1: beta must satisfy 0 <= beta <= alpha");
    }
    if (p.case_id != 1 && p.case_id != 2) {
        throw std::invalid_argument("thm1: case must be 1 or 2");
    }
}

// Builds one candidate and classifies it.  Verified means the classifier
// found a witness whose right square is exactly a^2 with zero interior zeros;
// otherwise the candidate carries a diagnosis of why the construction fails
// at these parameters.
inline Thm1Candidate thm1_candidate(const Thm1Params& params) {
    validate_thm1_params(params);
    const unsigned alpha = params.alpha;
    const unsigned beta = params.beta;

    Thm1Candidate cand;
    cand.params = params;
    const Nat five_pow = boost::multiprecision::pow(Nat(5), alpha - (params.case_id == 2 ? beta : 0));
    if (params.case_id == 1) {
        cand.n = Nat(1) << beta;
        cand.k = five_pow * (Nat(1) << (alpha - beta)) - 1;
    } else {
        cand.n = boost::multiprecision::pow(Nat(5), beta);
        cand.k = five_pow * (Nat(1) << alpha) - 1;
    }
    cand.a = cand.k * cand.n;

    if (cand.a <= cand.n) {
        // a = n forces x = 0: the left block of the concatenation would be
        // empty.  (a < n cannot occur for k >= 1.)
        cand.x = 0;
        cand.z = cand.n;  // z = x + n still, so z^2 = x^2 + a^2 degenerately
        cand.rejection = RejectReason::degenerate_a_le_n;
        return cand;
    }

    Nat quotient;
    Nat remainder;
    boost::multiprecision::divide_qr((cand.a - cand.n) * (cand.a + cand.n), 2 * cand.n,
                                     quotient, remainder);
    if (remainder != 0) {
        cand.x = 0;
        cand.z = 0;
        cand.rejection = RejectReason::non_integral_x;
        return cand;
    }
    cand.x = std::move(quotient);
    cand.z = cand.x + cand.n;

    const Nat a_sq = cand.a * cand.a;
    for (auto& w : classifier::find_split_witnesses(cand.z * cand.z)) {
        if (w.right_square == a_sq && w.zeros_between == 0) {
            cand.witness = std::move(w);
            return cand;
        }
    }
    // Diagnose: the construction needs a^2 to occupy exactly 2*alpha digits
    // and x^2 to be 10^(2*alpha) times a square not divisible by 10.
    cand.rejection = (core::digit_count(a_sq) != 2 * static_cast<std::size_t>(alpha))
                         ? RejectReason::digit_count_mismatch
                         : RejectReason::valuation_mismatch;
    return cand;
}

// All verified candidates with alpha <= alpha_max and beta in the stated
// range, deduplicated by total (beta values may collide on the same z^2).
inline std::vector<Thm1Candidate> thm1_stream(int case_id, unsigned alpha_max) {
    if (case_id != 1 && case_id != 2) {
        throw std::invalid_argument("thm1_stream: case must be 1 or 2");
    }
    if (alpha_max < 1) {
        throw std::invalid_argument("thm1_stream: alpha_max must be >= 1");
    }
    std::vector<Thm1Candidate> verified;
    std::set<Nat> seen_totals;
    for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
        for (unsigned beta = 0; beta <= alpha; ++beta) {
            Thm1Candidate cand = thm1_candidate({alpha, beta, case_id});
            if (cand.verified() && seen_totals.insert(cand.z * cand.z).second) {
                verified.push_back(std::move(cand));
            }
        }
    }
    return verified;
}

// ---------------------------------------------------------------------------
// Family 2: for alpha > 2, take a = 10^alpha - 2^(alpha-1), n = 2^(alpha-1),
// x and z as above; then c = (x/2)^2 + (a/2)^2 and d = x^2 + a^2 are both
// split squares with c | d and d = 4c.
// ---------------------------------------------------------------------------

struct PairRecord {
    unsigned alpha = 0;
    Nat c;
    Nat d;
    SplitWitness c_witness;
    SplitWitness d_witness;
};

namespace detail {

// Shared base point of families 2 and 3: a = 10^alpha - 2^(alpha-1),
// n = 2^(alpha-1), x = (a-n)(a+n)/(2n) = (5^alpha - 1) * 2^alpha * 5^alpha
// (computed as the direct product), z = x + n.
struct BasePoint {
    Nat n;
    Nat a;
    Nat x;
    Nat z;
};

inline BasePoint base_point(unsigned alpha) {
    BasePoint b;
    b.n = Nat(1) << (alpha - 1);
    b.a = core::pow10(alpha) - b.n;
    b.x = (boost::multiprecision::pow(Nat(5), alpha) - 1) * core::pow10(alpha);
    b.z = b.x + b.n;
    if (b.z * b.z != b.x * b.x + b.a * b.a) {
        throw std::logic_error("base_point: z^2 = x^2 + a^2 identity violated");
    }
    return b;
}

// Classifies `total` and returns the witness whose right square equals
// `right_square` with zero interior zeros; throws if the construction's
// promised witness is absent (a correctness failure, not a user error).
inline SplitWitness expect_witness(const Nat& total, const Nat& right_square,
                                   const char* what) {
    for (auto& w : classifier::find_split_witnesses(total)) {
        if (w.right_square == right_square && w.zeros_between == 0) {
            return std::move(w);
        }
    }
    throw std::runtime_error(std::string(what) +
                             ": expected witness missing for total " + total.str());
}

}  // namespace detail

inline PairRecord thm2_pair(unsigned alpha) {
    if (alpha <= 2) {
        throw std::invalid_argument("thm2_pair: alpha must be > 2");
    }
    const detail::BasePoint b = detail::base_point(alpha);
    // v2(x) = alpha + v2(5^alpha - 1) >= alpha + 2 and v2(a) = alpha - 1 >= 2,
    // so the halvings below are exact.
    const Nat half_x = b.x >> 1;
    const Nat half_a = b.a >> 1;
    PairRecord rec;
    rec.alpha = alpha;
    rec.c = half_x * half_x + half_a * half_a;
    rec.d = b.x * b.x + b.a * b.a;
    if (rec.d != 4 * rec.c) {
        throw std::logic_error("thm2_pair: d = 4c identity violated");
    }
    rec.c_witness = detail::expect_witness(rec.c, half_a * half_a, "thm2_pair(c)");
    rec.d_witness = detail::expect_witness(rec.d, b.a * b.a, "thm2_pair(d)");
    return rec;
}

// ---------------------------------------------------------------------------
// Family 3: quartering ladders and divisibility chains.
// ---------------------------------------------------------------------------

// One quartering step: z_k = z/2^k, x_k = x/2^k, a_k = a/2^k, all exact, with
// z_k^2 = x_k^2 + a_k^2.  deficit is 2*alpha - digit_count(a_k^2).  The
// witness, when present, is the canonical one with right_root = a_k: the
// split of z_k^2 at width L = 2 * v10(x_k), which exists iff a_k^2 fits in
// those L trailing positions.
struct LadderStep {
    std::size_t k = 0;
    Nat z_k;
    Nat x_k;
    Nat a_k;
    std::size_t deficit = 0;
    std::optional<SplitWitness> witness;
};

inline std::vector<LadderStep> quartering_ladder(unsigned alpha) {
    if (alpha < 2) {
        throw std::invalid_argument("quartering_ladder: alpha must be >= 2");
    }
    const detail::BasePoint b = detail::base_point(alpha);
    // x = (5^alpha - 1) * 2^alpha * 5^alpha, so v5(x) = alpha and
    // v2(x) = alpha + v2(5^alpha - 1); halving only ever lowers v2.
    const std::size_t v2_x = core::padic_valuation(b.x, 2);
    const std::size_t v5_x = core::padic_valuation(b.x, 5);

    std::vector<LadderStep> steps;
    Nat zk = b.z;
    Nat xk = b.x;
    Nat ak = b.a;
    for (std::size_t k = 0;; ++k) {
        LadderStep step;
        step.k = k;
        step.z_k = zk;
        step.x_k = xk;
        step.a_k = ak;
        const Nat a_sq = ak * ak;
        const std::size_t a_sq_digits = core::digit_count(a_sq);
        step.deficit = 2 * static_cast<std::size_t>(alpha) - a_sq_digits;

        const std::size_t v10_xk = std::min(v5_x, v2_x - k);
        const std::size_t width = 2 * v10_xk;
        if (a_sq_digits <= width) {
            const Nat left_root = xk / core::pow10(v10_xk);
            SplitWitness w{
                .total = zk * zk,
                .left_root = left_root,
                .right_root = ak,
                .left_square = left_root * left_root,
                .right_square = a_sq,
                .zeros_between = width - a_sq_digits,
                .right_width = width,
            };
            if (auto fault = classifier::check_witness(w)) {
                throw std::logic_error("quartering_ladder: canonical witness invalid (" +
                                       classifier::to_string(*fault) + ") at k=" +
                                       std::to_string(k));
            }
            step.witness = std::move(w);
        }
        steps.push_back(std::move(step));

        // The ladder stops at the last exact step: once x_k or a_k (or z_k)
        // is odd, the next quartering would leave the integers.
        if ((ak & 1) != 0 || (xk & 1) != 0 || (zk & 1) != 0) {
            break;
        }
        zk >>= 1;
        xk >>= 1;
        ak >>= 1;
    }
    return steps;
}

// A divisibility chain l_1 | l_2 | ... of verified split squares, smallest
// first, with each ratio a power of 4.
struct ChainRecord {
    unsigned r = 0;      // requested length
    unsigned alpha = 0;  // 2^(3(r-2)+2)
    std::vector<Nat> members;
    std::vector<Nat> ratios;
};

// Thrown when a ladder yields fewer than r chain members — that would
// falsify the construction's length claim at that alpha, so it is loud.
class ChainShortfall : public std::runtime_error {
  public:
    ChainShortfall(const std::string& message, ChainRecord partial)
        : std::runtime_error(message), partial_(std::move(partial)) {}

    const ChainRecord& partial() const { return partial_; }

  private:
    ChainRecord partial_;
};

// Runs the ladder at alpha = 2^(3(r-2)+2) and keeps the steps whose square is
// a zero-gap concatenation: z_k^2 = (left square) || a_k^2 with no interior
// zeros.  The left block here is x_k^2 shifted down by exactly
// digit_count(a_k^2) positions; it is a perfect square that may itself end in
// zeros (the total and the right block never do), which is what the chain
// construction produces once k exceeds v2(5^alpha - 1).
inline ChainRecord thm3_chain(unsigned r) {
    if (r < 2) {
        throw std::invalid_argument("thm3_chain: r must be >= 2");
    }
    const unsigned exponent = 3 * (r - 2) + 2;
    if (exponent > 24) {
        throw std::invalid_argument("thm3_chain: r too large (alpha = 2^" +
                                    std::to_string(exponent) + " is impractical)");
    }
    const unsigned alpha = 1u << exponent;

    ChainRecord record;
    record.r = r;
    record.alpha = alpha;

    const std::vector<LadderStep> steps = quartering_ladder(alpha);
    // Walk from the most-quartered step up so members come out ascending.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const Nat a_sq = it->a_k * it->a_k;
        const std::size_t m = core::digit_count(a_sq);
        if (m % 2 != 0) {
            continue;  // left block x_k^2 / 10^m cannot be a square
        }
        const std::size_t half_m = m / 2;
        if (core::ten_adic_valuation(it->x_k) < half_m) {
            continue;  // x_k^2 does not end in m zeros
        }
        const Nat left_root = it->x_k / core::pow10(half_m);
        SplitWitness w{
            .total = it->z_k * it->z_k,
            .left_root = left_root,
            .right_root = it->a_k,
            .left_square = left_root * left_root,
            .right_square = a_sq,
            .zeros_between = 0,
            .right_width = m,
        };
        if (auto fault = classifier::check_witness(w, /*allow_divisible_by_10_parts=*/true)) {
            throw std::logic_error("thm3_chain: member witness invalid (" +
                                   classifier::to_string(*fault) + ") at k=" +
                                   std::to_string(it->k));
        }
        record.members.push_back(w.total);
    }

    for (std::size_t i = 0; i + 1 < record.members.size(); ++i) {
        Nat ratio;
        Nat remainder;
        boost::multiprecision::divide_qr(record.members[i + 1], record.members[i],
                                         ratio, remainder);
        Nat reduced = ratio;
        while (remainder == 0 && reduced > 1 && reduced % 4 == 0) {
            reduced /= 4;
        }
        if (remainder != 0 || reduced != 1) {
            throw std::logic_error("thm3_chain: consecutive members with non-power-of-4 ratio");
        }
        record.ratios.push_back(std::move(ratio));
    }

    if (record.members.size() < r) {
        throw ChainShortfall("thm3_chain: only " + std::to_string(record.members.size()) +
                                 " zero-gap members at alpha=" + std::to_string(alpha) +
                                 ", need " + std::to_string(r),
                             std::move(record));
    }
    return record;
}

// ---------------------------------------------------------------------------
// s-zeros streams: scan ladders for canonical witnesses with exactly s
// interior zeros until `count` distinct totals are collected.
// ---------------------------------------------------------------------------

struct ZerosStreamResult {
    std::size_t zeros = 0;
    std::size_t count_requested = 0;
    unsigned alpha_start = 2;
    unsigned alpha_ceiling = 64;
    unsigned alpha_reached = 0;  // last ladder examined
    bool complete = false;       // found count distinct totals before the ceiling
    std::vector<SplitWitness> witnesses;
};

inline ZerosStreamResult zeros_between_stream(std::size_t s, std::size_t count,
                                              unsigned alpha_start = 2,
                                              unsigned alpha_ceiling = 64) {
    if (count < 1) {
        throw std::invalid_argument("zeros_between_stream: count must be >= 1");
    }
    if (alpha_ceiling < 2) {
        throw std::invalid_argument("zeros_between_stream: alpha ceiling must be >= 2");
    }
    ZerosStreamResult result;
    result.zeros = s;
    result.count_requested = count;
    result.alpha_start = std::max(alpha_start, 2u);
    result.alpha_ceiling = alpha_ceiling;

    std::set<Nat> seen_totals;
    for (unsigned alpha = result.alpha_start; alpha <= alpha_ceiling; ++alpha) {
        result.alpha_reached = alpha;
        for (const LadderStep& step : quartering_ladder(alpha)) {
            if (!step.witness || step.witness->zeros_between != s) {
                continue;
            }
            if (!seen_totals.insert(step.witness->total).second) {
                continue;
            }
            result.witnesses.push_back(*step.witness);
            if (result.witnesses.size() == count) {
                result.complete = true;
                return result;
            }
        }
    }
    return result;  // partial: ceiling hit with fewer than count totals
}

// ---------------------------------------------------------------------------
// Contrast family: 49 * 10^(2k) is a perfect square for every k, but for
// k >= 1 its only split decompositions have blocks divisible by 10, so the
// default classifier rejects it — exactly the behavior the headline
// constraint is about.
// ---------------------------------------------------------------------------

inline Nat trailing_zero_family(std::size_t k) {
    return 49 * core::pow10(2 * k);
}

}  // namespace generators
}  // namespace splitsq
