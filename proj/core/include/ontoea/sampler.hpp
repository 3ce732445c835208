#pragma once

#include "ontoea/dataset.hpp"
#include "ontoea/kg.hpp"
#include "ontoea/losses.hpp"
#include "ontoea/matrix.hpp"
#include "ontoea/ontology.hpp"
#include "ontoea/rng.hpp"

#include <cstdint>
#include <vector>

namespace ontoea {

/// Per-entity candidate pools for truncated negative sampling: the
/// ceil((1 - epsilon) * N) nearest same-KG entities by cosine, the entity
/// itself included. With a full-size pool the table stays empty and sampling
/// is plain uniform.
class NeighborTable {
public:
    NeighborTable() = default;

    /// Builds pools against a snapshot of the entity embeddings. Runs on the
    /// worker pool; the result is independent of the worker count.
    static NeighborTable build(const Matrix& entities, double epsilon_trunc);

    std::size_t pool_size() const { return pool_size_; }
    std::size_t entity_count() const { return n_; }
    bool uniform() const { return pools_.empty(); }

    /// Draws one candidate from the pool of `around`.
    EntityId draw(EntityId around, Rng& rng) const;

private:
    std::size_t n_ = 0;
    std::size_t pool_size_ = 0;
    std::vector<std::vector<std::uint32_t>> pools_;
};

/// Corrupts head or tail (fair coin) of each positive with a draw from the
/// replaced entity's pool; corrupted triples that exist in the KG are
/// resampled up to 10 times, then accepted. Produces neg_per_pos negatives
/// per positive, aligned in consecutive blocks.
std::vector<Triple> sample_neg_triples(std::span<const Triple> pos, const KnowledgeGraph& kg,
                                       const NeighborTable& neighbors, int neg_per_pos, Rng& rng);

/// Uniform corruption of c_head or c_tail over all classes; collisions with
/// declared subclass pairs are resampled up to 10 times.
std::vector<ClassPair> sample_neg_subclass(std::span<const ClassPair> pos, const Ontology& o,
                                           int neg_per_pos, Rng& rng);

/// Uniform replacement of the class of each membership link; collisions with
/// declared links of that entity are resampled up to 10 times.
std::vector<MemberLink> sample_neg_membership(std::span<const MemberLink> pos, KgSide side,
                                              const MembershipSet& m, std::size_t class_count,
                                              int neg_per_pos, Rng& rng);

} // namespace ontoea
