#include "orbcoh/fixtures.hpp"

namespace orbcoh {

namespace {

// Every nonempty subset of tops whose intersection is nonempty, all trivial.
OrbifoldComplex trivial_cover(int dim, const std::vector<std::string>& tops,
                              const std::vector<SubsetMask>& subsets)
{
    auto c = OrbifoldComplex::create(dim, tops);
    const int g = c.add_group("trivial", cyclic_group(1));
    for (SubsetMask m : subsets)
        c.add_intersection(m, g);
    c.finish();
    return c;
}

} // namespace

OrbifoldComplex circle_complex()
{
    // arcs x, y, z; x meets y, y meets z, z meets x, in distinct points
    return trivial_cover(1, {"x", "y", "z"}, {0b001, 0b010, 0b100, 0b011, 0b110, 0b101});
}

OrbifoldComplex sphere_complex()
{
    // faces opposite to the four vertices; any three share a vertex
    std::vector<SubsetMask> subsets;
    for (SubsetMask m = 1; m < 15; ++m)
        subsets.push_back(m);
    return trivial_cover(2, {"f0", "f1", "f2", "f3"}, subsets);
}

OrbifoldComplex single_simplex_complex(const FiniteGroup& group, int dim)
{
    auto c = OrbifoldComplex::create(dim, {"s"});
    const int g = c.add_group("G", group);
    c.add_intersection(1, g);
    c.finish();
    return c;
}

} // namespace orbcoh
