#pragma once

// Exact arbitrary-precision natural-number utilities: integer square root,
// perfect-square testing, decimal digit operations, and 2-/5-adic valuations.
// Everything downstream (classification, generation, enumeration) is built on
// these few primitives, so they are kept small, exact, and exception-clean.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace splitsq {

// Unbounded natural number.  cpp_int is signed; every function below treats a
// negative argument as a precondition violation and throws.
using Nat = boost::multiprecision::cpp_int;

namespace core {

// Floor integer square root: returns r with r^2 <= n < (r+1)^2.
inline Nat isqrt(const Nat& n) {
    if (n < 0) {
        throw std::invalid_argument("isqrt: negative input");
    }
    return boost::multiprecision::sqrt(n);
}

namespace detail {

// Quadratic residues mod 256.  Only 44 of the 256 residue classes contain
// squares, so this table rejects ~83% of non-squares without a big-int sqrt.
inline constexpr std::array<bool, 256> square_mod_256 = [] {
    std::array<bool, 256> table{};
    for (unsigned i = 0; i < 256; ++i) {
        table[(i * i) & 255u] = true;
    }
    return table;
}();

}  // namespace detail

// Returns the exact square root if n is a perfect square, empty otherwise.
inline std::optional<Nat> is_perfect_square(const Nat& n) {
    if (n < 0) {
        return std::nullopt;
    }
    const unsigned low_byte = static_cast<unsigned>(n & 255u);
    if (!detail::square_mod_256[low_byte]) {
        return std::nullopt;
    }
    Nat root = boost::multiprecision::sqrt(n);
    if (root * root == n) {
        return root;
    }
    return std::nullopt;
}

// Number of digits in the decimal expansion; digit_count(0) = 1, matching the
// decimal string "0".
inline std::size_t digit_count(const Nat& n) {
    if (n < 0) {
        throw std::invalid_argument("digit_count: negative input");
    }
    return n.str().size();
}

// 10^k.
inline Nat pow10(std::size_t k) {
    Nat base = 10;
    return boost::multiprecision::pow(base, static_cast<unsigned>(k));
}

// Splits N into (p, q) = (N div 10^L, N mod 10^L).  Defined arithmetically
// rather than on strings so that leading zeros of the right part are never
// ambiguous: they are recovered later as zeros_between = L - digit_count(q).
inline std::pair<Nat, Nat> split_at(const Nat& n, std::size_t l) {
    const std::size_t digits = digit_count(n);
    if (l < 1 || l >= digits) {
        throw std::invalid_argument("split_at: position " + std::to_string(l) +
                                    " outside [1, " + std::to_string(digits - 1) +
                                    "] for a " + std::to_string(digits) +
                                    "-digit number");
    }
    Nat p;
    Nat q;
    boost::multiprecision::divide_qr(n, pow10(l), p, q);
    return {std::move(p), std::move(q)};
}

// p followed by s zeros followed by the digits of q, i.e.
// p * 10^(s + digit_count(q)) + q.  Both blocks must be nonempty.
inline Nat concat_with_zeros(const Nat& p, std::size_t s, const Nat& q) {
    if (p < 1) {
        throw std::invalid_argument("concat_with_zeros: left block must be >= 1");
    }
    if (q < 1) {
        throw std::invalid_argument("concat_with_zeros: right block must be >= 1");
    }
    return p * pow10(s + digit_count(q)) + q;
}

// Largest e with prime^e | n, for prime in {2, 5} — the only primes decimal
// divisibility arguments need.  Rejects n = 0 (valuation undefined).
inline std::size_t padic_valuation(const Nat& n, unsigned prime) {
    if (n < 1) {
        throw std::invalid_argument("padic_valuation: input must be >= 1");
    }
    if (prime == 2) {
        return static_cast<std::size_t>(boost::multiprecision::lsb(n));
    }
    if (prime != 5) {
        throw std::invalid_argument("padic_valuation: only primes 2 and 5 are supported");
    }
    std::size_t e = 0;
    Nat m = n;
    Nat quotient;
    Nat remainder;
    for (;;) {
        boost::multiprecision::divide_qr(m, Nat(5), quotient, remainder);
        if (remainder != 0) {
            return e;
        }
        m = quotient;
        ++e;
    }
}

// min(v2, v5): the exponent of the largest power of 10 dividing n.
inline std::size_t ten_adic_valuation(const Nat& n) {
    return std::min(padic_valuation(n, 2), padic_valuation(n, 5));
}

}  // namespace core
}  // namespace splitsq
