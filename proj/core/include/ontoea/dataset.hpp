#pragma once

#include "ontoea/ids.hpp"
#include "ontoea/interner.hpp"
#include "ontoea/kg.hpp"
#include "ontoea/ontology.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ontoea {

/// Entity-to-class typing links for both KG sides. Per entity the class list
/// is kept sorted by handle and duplicate-free.
class MembershipSet {
public:
    MembershipSet() = default;
    MembershipSet(std::size_t entity_count_kg1, std::size_t entity_count_kg2);

    void add(KgSide side, EntityId e, ClassId c);

    /// Directly declared classes of e, ascending by handle. Throws DataError
    /// when e has no links.
    std::span<const ClassId> declared_classes(KgSide side, EntityId e) const;

    bool has_links(KgSide side, EntityId e) const;
    bool has_link(KgSide side, EntityId e, ClassId c) const;

    /// Flattened (entity, class) links of one side, entity-major order.
    std::vector<std::pair<EntityId, ClassId>> links(KgSide side) const;

    std::size_t entity_count(KgSide side) const {
        return by_entity_[side_index(side)].size();
    }

    std::size_t link_count() const;

private:
    std::array<std::vector<std::vector<ClassId>>, 2> by_entity_;
};

/// Ordered list of (e1 in KG1, e2 in KG2) gold pairs; duplicates rejected.
class MappingSet {
public:
    MappingSet() = default;
    explicit MappingSet(std::vector<std::pair<EntityId, EntityId>> pairs);

    const std::vector<std::pair<EntityId, EntityId>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

private:
    std::vector<std::pair<EntityId, EntityId>> pairs_;
};

/// Everything one alignment run needs: the two KGs, the shared or merged
/// ontology, memberships covering both sides, and the seed splits.
struct AlignmentDataset {
    KnowledgeGraph kg1;
    KnowledgeGraph kg2;
    Ontology ontology;
    MembershipSet memberships;
    MappingSet seeds_train;
    MappingSet seeds_valid;
    MappingSet seeds_test;

    // Interner tables, kept for reporting, SI initialization and dumps.
    Interner entities1;
    Interner entities2;
    Interner relations1;
    Interner relations2;
    Interner classes;

    // Entities that had no declared type and were linked to root at ingestion.
    std::array<std::size_t, 2> root_defaulted{0, 0};

    const KnowledgeGraph& kg(KgSide side) const {
        return side == KgSide::kg1 ? kg1 : kg2;
    }
    const Interner& entity_names(KgSide side) const {
        return side == KgSide::kg1 ? entities1 : entities2;
    }
};

/// deg(e1) + deg(e2) with triple-occurrence counts.
std::uint32_t summed_degree(EntityId e1, EntityId e2, const KnowledgeGraph& kg1,
                            const KnowledgeGraph& kg2);

} // namespace ontoea
