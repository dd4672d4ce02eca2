#pragma once

#include "orbcoh/group.hpp"
#include "orbcoh/orbifold_complex.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace orbcoh {

/// A finite simplicial complex with a simplicial action of a finite group.
/// Every vertex carries the name of the base vertex it lies over.
struct CombinatorialChart {
    std::string id;
    FiniteGroup group = cyclic_group(1);
    std::vector<std::string> vertices;
    std::vector<std::string> baseLabel;          // per vertex
    std::vector<std::vector<int>> simplices;     // maximal simplices, sorted vertex lists
    std::vector<std::vector<int>> action;        // action[g][x]

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int vertex(const std::string& name) const;   // throws ChartInconsistencyError
    int act(int g, int x) const { return action[g][x]; }
    /// True when the vertex set spans a face of some maximal simplex.
    bool is_simplex(const std::vector<int>& vs) const;
    /// Elements of the group fixing vertex x.
    std::vector<int> stabilizer(int x) const;

    /// Group action axioms, simpliciality, label invariance under the action
    /// and injectivity of the quotient on orbits. Throws ChartInconsistencyError.
    void validate() const;
};

/// Chart with the identity action of the trivial group.
CombinatorialChart trivial_chart(std::string id, std::vector<std::string> vertices,
                                 std::vector<std::vector<int>> simplices);

using ChartPtr = std::shared_ptr<const CombinatorialChart>;

struct ChartEmbedding {
    ChartPtr source;
    ChartPtr target;
    std::vector<int> vertexMap;
    std::vector<int> groupMap;

    int map_vertex(int x) const { return vertexMap[x]; }
    int map_group(int g) const { return groupMap[g]; }

    /// Injective, simplicial, label preserving, groupMap an injective
    /// homomorphism, and equivariant on every (element, vertex) pair.
    void validate() const;

    bool operator==(const ChartEmbedding& o) const
    {
        return source == o.source && target == o.target && vertexMap == o.vertexMap &&
               groupMap == o.groupMap;
    }
};

/// h o e for h in the target group.
ChartEmbedding act_after(int h, const ChartEmbedding& e);
/// e o g for g in the source group.
ChartEmbedding act_before(const ChartEmbedding& e, int g);
/// b o a (a: X -> Y, b: Y -> Z).
ChartEmbedding compose(const ChartEmbedding& b, const ChartEmbedding& a);
ChartEmbedding identity_embedding(const ChartPtr& chart);

/// The unique h in the common target group with mu_emb = h o lam on all
/// vertices. Throws ChartInconsistencyError when there is none or several.
int match_embeddings(const ChartEmbedding& lam, const ChartEmbedding& mu_emb);

/// All the charts and embeddings of one elementary step of the construction
/// of mu : G_v -> G_w along the edge theta from v to w.
struct MuDerivationConfig {
    ChartEmbedding gamma0, gamma1; // W -> U_{sigma_i}
    ChartEmbedding alpha;          // U_v -> W
    ChartEmbedding beta;           // U_w -> W
    ChartEmbedding lambda0, lambda1; // U_v -> U_{sigma_i}
    ChartEmbedding chi0, chi1;       // U_w -> U_{sigma_i}
    std::vector<int> theta;        // lifted theta, vertices of W
    std::vector<int> sigma0, sigma1; // lifted top simplices in U_{sigma_i}
    int v_tilde = 0;               // lift of v in U_v
    int w_tilde = 0;               // lift of w in U_w

    /// Throws ChartInconsistencyError when the charts do not fit together.
    void check() const;
};

MuFunction derive_mu_single(const MuDerivationConfig& cfg);
/// mu_{n-1} o ... o mu_0; consecutive steps must share the chart at the
/// junction point, otherwise ChainMismatchError.
MuFunction derive_mu_chain(const std::vector<MuDerivationConfig>& cfgs);

/// A top simplex lifted into its chart, as the set of chart vertices over it.
struct LiftedSimplex {
    ChartPtr chart;
    std::vector<int> vertices;
};

/// The chart U_x around a base vertex and the lift of x in it.
struct VertexChart {
    ChartPtr chart;
    int lift = 0;
};

/// Registry of base embeddings; every embedding X -> Y is h o base(X -> Y).
class EmbeddingCatalog {
public:
    void add(ChartEmbedding base);
    /// All embeddings source -> target in a fixed order (h = 0, 1, ...).
    std::vector<ChartEmbedding> between(const ChartPtr& source, const ChartPtr& target) const;
    const std::vector<ChartEmbedding>& bases() const { return bases_; }

private:
    std::vector<ChartEmbedding> bases_;
};

/// Makes the choices of one elementary step: the first W among the
/// candidates and the first embeddings (in catalog order) satisfying the
/// lifting conditions. Throws DerivationError when no choice exists.
MuDerivationConfig assemble_config(const EmbeddingCatalog& catalog,
                                   const std::vector<ChartPtr>& w_candidates,
                                   const LiftedSimplex& sigma0, const LiftedSimplex& sigma1,
                                   const VertexChart& v, const VertexChart& w,
                                   const std::vector<std::string>& theta_labels);

/// Chart document: {"charts": [...], "embeddings": [...], "liftings": [...]}.
struct ChartDocument {
    std::vector<ChartPtr> charts;
    std::vector<ChartEmbedding> embeddings;
    std::map<std::string, LiftedSimplex> liftings;
};

nlohmann::json chart_document_to_json(const ChartDocument& doc);
/// Parses and validates every chart and embedding.
ChartDocument load_chart_document(const nlohmann::json& json);

} // namespace orbcoh
