#pragma once

#include "ontoea/ids.hpp"

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

namespace ontoea {

/// One relation triple (h, r, t). Head and tail belong to the same KG's
/// entity namespace.
struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    friend constexpr auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept {
        std::uint64_t k = (std::uint64_t(t.head.value) << 40) ^
                          (std::uint64_t(t.relation.value) << 20) ^
                          std::uint64_t(t.tail.value);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

/// One side of the alignment task: interned entities/relations plus the
/// relation-triple set, with adjacency and occurrence-count degrees.
/// Immutable after construction.
class KnowledgeGraph {
public:
    struct Edge {
        RelationId relation;
        EntityId other;
    };

    KnowledgeGraph() = default;

    /// Validates every handle against the entity/relation counts and drops
    /// duplicate triples (first occurrence kept).
    KnowledgeGraph(std::size_t entity_count, std::size_t relation_count,
                   std::vector<Triple> triples);

    std::size_t entity_count() const { return entity_count_; }
    std::size_t relation_count() const { return relation_count_; }
    const std::vector<Triple>& triples() const { return triples_; }

    bool contains(const Triple& t) const { return triple_set_.contains(t); }
    bool has_entity(EntityId e) const { return e.value < entity_count_; }

    /// Triple occurrences of e as head or tail; a reflexive triple counts twice.
    std::uint32_t degree(EntityId e) const;

    std::span<const Edge> out_edges(EntityId e) const;
    std::span<const Edge> in_edges(EntityId e) const;

private:
    std::size_t entity_count_ = 0;
    std::size_t relation_count_ = 0;
    std::vector<Triple> triples_;
    std::unordered_set<Triple, TripleHash> triple_set_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    std::vector<std::uint32_t> degree_;
};

} // namespace ontoea
