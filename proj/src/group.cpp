#include "orbcoh/group.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace orbcoh {

namespace {

std::string triple(int a, int b, int c)
{
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

} // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& mul)
{
    const int n = static_cast<int>(mul.size());
    if (n == 0)
        throw GroupAxiomError("group table is empty");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(mul[i].size()) != n)
            throw GroupAxiomError("group table row " + std::to_string(i) + " has " +
                                  std::to_string(mul[i].size()) + " entries, expected " +
                                  std::to_string(n));
        for (int j = 0; j < n; ++j)
            if (mul[i][j] < 0 || mul[i][j] >= n)
                throw GroupAxiomError("group table entry (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ") = " + std::to_string(mul[i][j]) +
                                      " is not an element index");
    }

    FiniteGroup g;
    g.order_ = n;
    g.mul_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.mul_[static_cast<std::size_t>(i) * n + j] = mul[i][j];

    for (int x = 0; x < n; ++x)
        if (g.mul(0, x) != x || g.mul(x, 0) != x)
            throw GroupAxiomError("element 0 is not an identity: fails at element " +
                                  std::to_string(x));

    g.inv_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (g.mul(x, y) == 0 && g.mul(y, x) == 0) {
                g.inv_[x] = y;
                break;
            }
        if (g.inv_[x] < 0)
            throw GroupAxiomError("element " + std::to_string(x) + " has no inverse");
    }

    std::vector<char> seen(n);
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            if (seen[g.mul(i, j)])
                throw GroupAxiomError("row " + std::to_string(i) + " is not a permutation");
            seen[g.mul(i, j)] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            if (seen[g.mul(j, i)])
                throw GroupAxiomError("column " + std::to_string(i) + " is not a permutation");
            seen[g.mul(j, i)] = 1;
        }
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw GroupAxiomError("multiplication is not associative on " +
                                          triple(a, b, c));
    return g;
}

int FiniteGroup::pow(int g, int k) const
{
    int r = 0;
    for (int i = 0; i < k; ++i)
        r = mul(r, g);
    return r;
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const
{
    std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j)
            t[i][j] = mul(i, j);
    return t;
}

FiniteGroup cyclic_group(int n)
{
    if (n < 1)
        throw InvalidOrderError("cyclic group order must be positive, got " + std::to_string(n));
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    return FiniteGroup::from_table(t);
}

FiniteGroup symmetric_group(int n)
{
    if (n < 1 || n > 6)
        throw InvalidOrderError("symmetric group degree must be in 1..6, got " + std::to_string(n));
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i)
        index[perms[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = 0; b < perms.size(); ++b) {
            std::vector<int> c(n);
            for (int x = 0; x < n; ++x)
                c[x] = perms[a][perms[b][x]];
            t[a][b] = index.at(c);
        }
    return FiniteGroup::from_table(t);
}

FiniteGroup group_from_table(const std::vector<std::vector<int>>& mul)
{
    return FiniteGroup::from_table(mul);
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const
{
    return {group, group->mul(index, rhs.index)};
}

} // namespace orbcoh
