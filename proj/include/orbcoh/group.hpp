#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace orbcoh {

/// A finite group presented by its multiplication table. Elements are the
/// indices 0..order-1 and the identity is always element 0.
class FiniteGroup {
public:
    /// Validates every group axiom; throws GroupAxiomError naming the first
    /// failing row, column, element or triple.
    static FiniteGroup from_table(const std::vector<std::vector<int>>& mul);

    int order() const { return order_; }
    static constexpr int identity() { return 0; }

    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }

    /// g^k for k >= 0.
    int pow(int g, int k) const;

    bool is_trivial() const { return order_ == 1; }
    bool is_abelian() const;

    std::vector<std::vector<int>> table() const;

    bool operator==(const FiniteGroup& other) const = default;

private:
    FiniteGroup() = default;

    int order_ = 1;
    std::vector<int> mul_{0};
    std::vector<int> inv_{0};
};

/// C_n with mul(i, j) = (i + j) mod n. Throws InvalidOrderError for n < 1.
FiniteGroup cyclic_group(int n);

/// S_n on permutations in lexicographic order; mul(a, b) = a o b.
FiniteGroup symmetric_group(int n);

FiniteGroup group_from_table(const std::vector<std::vector<int>>& mul);

/// An element of a specific group. The group must outlive the element.
struct GroupElement {
    const FiniteGroup* group = nullptr;
    int index = 0;

    GroupElement operator*(const GroupElement& rhs) const;
    GroupElement inverse() const { return {group, group->inv(index)}; }
    bool operator==(const GroupElement& rhs) const
    {
        return index == rhs.index && (group == rhs.group || *group == *rhs.group);
    }
};

} // namespace orbcoh
