#pragma once

#include "orbcoh/atlas.hpp"

namespace orbcoh {

/// The teardrop: the 2-sphere with one cone point w of order n.
///
/// Base vertices w, t, u, v, z; top simplices a = wtv, b = wtu, c = wuv
/// around the cone point and d = ztv, e = ztu, f = zuv below. The upper
/// chart is a disk with C_n rotating the lifts t_k, u_k, v_k around w; the
/// lower chart is a disk with the trivial group, and six small charts (the
/// equator points t, u, v and the edges tu, uv, tv) overlap both.
struct Teardrop {
    TriangulatedAtlas atlas;
    OrbifoldComplex complex;
};

TriangulatedAtlas teardrop_atlas(int n);
/// Throws InvalidOrderError for n < 2.
Teardrop generate_teardrop(int n);

/// mu for (tau = {a,c,f}, rho = {a,c}) computed once directly and once as a
/// two-step chain v -> m -> w through the midpoint m of the edge vw, using a
/// subdivided upper chart and the equator-side edge chart (v, m).
struct ChainDemo {
    MuFunction single;
    MuFunction chain;
    std::vector<MuDerivationConfig> steps;
};

ChainDemo teardrop_chain_demo(int n, const std::string& from, const std::string& to);

} // namespace orbcoh
