#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace orbcoh {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Integers, Rationals, IntegersMod };

/// Coefficient ring: Z, Q or Z/m (m >= 2).
struct Ring {
    RingKind kind = RingKind::Integers;
    std::int64_t modulus = 0;

    static Ring Z() { return {RingKind::Integers, 0}; }
    static Ring Q() { return {RingKind::Rationals, 0}; }
    static Ring Zmod(std::int64_t m);

    /// Accepts "Z", "Q" and "Zmod:m".
    static Ring parse(const std::string& text);

    bool is_field() const;
    bool is_integers() const { return kind == RingKind::Integers; }
    bool is_rationals() const { return kind == RingKind::Rationals; }
    bool is_modular() const { return kind == RingKind::IntegersMod; }

    /// "Z", "Q" or "Zmod:m".
    std::string name() const;
    /// Symbol used when rendering modules: "Z", "Q", "Z/m".
    std::string symbol() const;

    /// Canonical representative of an integer in this ring (identity for Z and Q).
    Integer reduce(const Integer& x) const;
    bool is_unit(const Integer& x) const;

    bool operator==(const Ring&) const = default;
};

/// A finitely generated module over a Ring, as free rank plus invariant
/// factors d1 | d2 | ... with every di >= 2. Over Z/m the free rank counts
/// summands isomorphic to Z/m itself and torsion holds proper divisors of m.
struct ModuleInvariants {
    Ring ring = Ring::Z();
    std::size_t freeRank = 0;
    std::vector<Integer> torsion;

    /// Builds a record from raw cyclic orders (any order, 1s dropped, 0 meaning
    /// a free summand over Z/Q) and normalises to a divisibility chain.
    static ModuleInvariants from_cyclic_orders(Ring ring, std::size_t free, std::vector<Integer> orders);

    bool is_zero() const { return freeRank == 0 && torsion.empty(); }

    /// "0", "Z", "Z^2 + Z/3", "Q", "Z/2", "(Z/4)^2 + Z/2".
    std::string render() const;

    bool operator==(const ModuleInvariants& other) const;
};

} // namespace orbcoh
