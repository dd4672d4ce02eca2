#pragma once

#include "orbcoh/chart.hpp"
#include "orbcoh/orbifold_complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace orbcoh {

/// A triangulation given by the vertex sets of its top simplices, together
/// with the chart data needed to derive every mu-table.
struct TriangulatedAtlas {
    int dim = 0;
    /// Base vertices; the order breaks ties when choosing v(tau).
    std::vector<std::string> base_vertices;
    std::vector<std::string> top_simplices;
    std::map<std::string, std::vector<std::string>> top_vertices;
    /// Candidate charts W, tried in this order.
    std::vector<ChartPtr> charts;
    EmbeddingCatalog catalog;
    std::map<std::string, VertexChart> vertex_charts;
    std::map<std::string, LiftedSimplex> liftings;

    /// Order of the isotropy group of the lift of a base vertex.
    int isotropy_order(const std::string& vertex) const;
    /// Common base vertices of a set of top simplices, in base order.
    std::vector<std::string> common_vertices(const std::vector<std::string>& tops) const;
    /// The vertex of maximal isotropy of a face, first in base order on ties.
    std::string max_vertex(const std::vector<std::string>& face) const;

    ChartDocument document() const;
};

/// Intersection records for every subset with a common vertex, and the
/// mu-table of every key (tau, rho, from, to) with rho equal to tau or tau
/// minus one element, each derived from the charts.
OrbifoldComplex build_complex(const TriangulatedAtlas& atlas);

/// The derivation choices for one key of a complex built from the atlas.
MuDerivationConfig config_for(const TriangulatedAtlas& atlas, const OrbifoldComplex& complex,
                              const MuKey& key);

} // namespace orbcoh
