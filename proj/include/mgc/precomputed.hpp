#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mgc {

// A precomputed term: numeral, symbolic constant, or other ordered symbol.
// Total order: numerals (by value) < symbolic constants (lexicographic)
// < other symbols (lexicographic), so numerals stay contiguous.
struct PrecomputedTerm {
    enum class Kind { Numeral, Symbolic, Other };

    Kind kind = Kind::Numeral;
    std::int64_t value = 0;  // Numeral
    std::string name;        // Symbolic / Other

    static PrecomputedTerm numeral(std::int64_t v) {
        PrecomputedTerm t;
        t.kind = Kind::Numeral;
        t.value = v;
        return t;
    }
    static PrecomputedTerm symbolic(std::string n) {
        PrecomputedTerm t;
        t.kind = Kind::Symbolic;
        t.name = std::move(n);
        return t;
    }
    static PrecomputedTerm other(std::string n) {
        PrecomputedTerm t;
        t.kind = Kind::Other;
        t.name = std::move(n);
        return t;
    }

    bool is_numeral() const { return kind == Kind::Numeral; }

    friend bool operator==(const PrecomputedTerm& a, const PrecomputedTerm& b) {
        if (a.kind != b.kind) return false;
        return a.kind == Kind::Numeral ? a.value == b.value : a.name == b.name;
    }
    friend bool operator!=(const PrecomputedTerm& a, const PrecomputedTerm& b) { return !(a == b); }
    friend bool operator<(const PrecomputedTerm& a, const PrecomputedTerm& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.kind == Kind::Numeral ? a.value < b.value : a.name < b.name;
    }
    friend bool operator<=(const PrecomputedTerm& a, const PrecomputedTerm& b) { return a < b || a == b; }
    friend bool operator>(const PrecomputedTerm& a, const PrecomputedTerm& b) { return b < a; }
    friend bool operator>=(const PrecomputedTerm& a, const PrecomputedTerm& b) { return b <= a; }

    std::string str() const {
        return kind == Kind::Numeral ? std::to_string(value) : name;
    }
};

// Checked 64-bit arithmetic; the oracle and translations stay at desk scale,
// so an overflow indicates a malformed input rather than a real workload.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in +");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in -");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in *");
    return r;
}

}  // namespace mgc
