#include "orbcoh/ring.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace orbcoh {

Ring Ring::Zmod(std::int64_t m)
{
    if (m < 2)
        throw ParseError("modulus must be at least 2, got " + std::to_string(m));
    if (m > (std::int64_t{1} << 62))
        throw ParseError("modulus " + std::to_string(m) + " exceeds 2^62");
    return {RingKind::IntegersMod, m};
}

Ring Ring::parse(const std::string& text)
{
    if (text == "Z")
        return Z();
    if (text == "Q")
        return Q();
    const std::string prefix = "Zmod:";
    if (text.rfind(prefix, 0) == 0) {
        std::int64_t m = 0;
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, m);
        if (ec != std::errc() || ptr != last)
            throw ParseError("bad modulus in ring '" + text + "'");
        return Zmod(m);
    }
    throw ParseError("unknown ring '" + text + "' (expected Z, Q or Zmod:m)");
}

bool Ring::is_field() const
{
    if (kind == RingKind::Rationals)
        return true;
    if (kind == RingKind::Integers)
        return false;
    return mpz_probab_prime_p(Integer(std::to_string(modulus)).get_mpz_t(), 30) > 0;
}

std::string Ring::name() const
{
    switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::IntegersMod: return "Zmod:" + std::to_string(modulus);
    }
    return "?";
}

std::string Ring::symbol() const
{
    switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::IntegersMod: return "Z/" + std::to_string(modulus);
    }
    return "?";
}

Integer Ring::reduce(const Integer& x) const
{
    if (kind != RingKind::IntegersMod)
        return x;
    Integer m(static_cast<long>(modulus));
    Integer r = x % m;
    if (r < 0)
        r += m;
    return r;
}

bool Ring::is_unit(const Integer& x) const
{
    switch (kind) {
    case RingKind::Integers: return x == 1 || x == -1;
    case RingKind::Rationals: return x != 0;
    case RingKind::IntegersMod: {
        Integer g;
        Integer m(static_cast<long>(modulus));
        mpz_gcd(g.get_mpz_t(), reduce(x).get_mpz_t(), m.get_mpz_t());
        return g == 1;
    }
    }
    return false;
}

ModuleInvariants ModuleInvariants::from_cyclic_orders(Ring ring, std::size_t free,
                                                      std::vector<Integer> orders)
{
    ModuleInvariants out;
    out.ring = ring;
    out.freeRank = free;

    if (ring.is_rationals()) {
        for (const auto& d : orders)
            if (d == 0)
                ++out.freeRank;
        return out;
    }

    const Integer modulus(static_cast<long>(ring.modulus));
    std::vector<Integer> finite;
    for (auto d : orders) {
        if (d < 0)
            d = -d;
        if (d == 0 || (ring.is_modular() && d == modulus)) {
            ++out.freeRank;
            continue;
        }
        if (d != 1)
            finite.push_back(d);
    }
    std::sort(finite.begin(), finite.end());
    bool chain_already = true;
    for (std::size_t i = 1; i < finite.size(); ++i)
        if (finite[i] % finite[i - 1] != 0)
            chain_already = false;
    if (chain_already) {
        out.torsion = std::move(finite);
        return out;
    }

    // Split every order into prime powers and regroup them into the
    // invariant-factor chain.
    std::map<Integer, std::vector<Integer>> primary;
    for (const auto& d : finite) {
        Integer rest = d;
        for (Integer p = 2; p * p <= rest; ++p) {
            if (rest % p != 0)
                continue;
            Integer pk = 1;
            while (rest % p == 0) {
                rest /= p;
                pk *= p;
            }
            primary[p].push_back(pk);
        }
        if (rest > 1)
            primary[rest].push_back(rest);
    }

    std::size_t longest = 0;
    for (auto& [p, powers] : primary) {
        std::sort(powers.begin(), powers.end(), std::greater<>());
        longest = std::max(longest, powers.size());
    }
    std::vector<Integer> chain(longest, Integer(1));
    for (auto& [p, powers] : primary)
        for (std::size_t i = 0; i < powers.size(); ++i)
            chain[i] *= powers[i];
    std::reverse(chain.begin(), chain.end());
    // over Z/m a regrouped factor equal to m is a free summand
    while (ring.is_modular() && !chain.empty() && chain.back() == modulus) {
        chain.pop_back();
        ++out.freeRank;
    }
    out.torsion = std::move(chain);
    return out;
}

std::string ModuleInvariants::render() const
{
    std::vector<std::string> parts;
    if (freeRank > 0) {
        std::string sym = ring.symbol();
        if (freeRank == 1)
            parts.push_back(sym);
        else if (ring.is_modular())
            parts.push_back("(" + sym + ")^" + std::to_string(freeRank));
        else
            parts.push_back(sym + "^" + std::to_string(freeRank));
    }
    for (const auto& d : torsion)
        parts.push_back("Z/" + d.get_str());
    if (parts.empty())
        return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " + " + parts[i];
    return out;
}

bool ModuleInvariants::operator==(const ModuleInvariants& other) const
{
    if (!(ring == other.ring) || freeRank != other.freeRank || torsion.size() != other.torsion.size())
        return false;
    for (std::size_t i = 0; i < torsion.size(); ++i)
        if (torsion[i] != other.torsion[i])
            return false;
    return true;
}

} // namespace orbcoh
