#include "ontoea/kg.hpp"

#include "ontoea/errors.hpp"

#include <string>

namespace ontoea {

KnowledgeGraph::KnowledgeGraph(std::size_t entity_count, std::size_t relation_count,
                               std::vector<Triple> triples)
    : entity_count_(entity_count), relation_count_(relation_count) {
    out_.resize(entity_count_);
    in_.resize(entity_count_);
    degree_.assign(entity_count_, 0);
    triples_.reserve(triples.size());
    for (const Triple& t : triples) {
        if (t.head.value >= entity_count_ || t.tail.value >= entity_count_) {
            throw DataError("triple references entity handle out of range: " +
                            std::to_string(t.head.value) + "/" + std::to_string(t.tail.value));
        }
        if (t.relation.value >= relation_count_) {
            throw DataError("triple references relation handle out of range: " +
                            std::to_string(t.relation.value));
        }
        if (!triple_set_.insert(t).second) continue;
        triples_.push_back(t);
        out_[t.head.value].push_back({t.relation, t.tail});
        in_[t.tail.value].push_back({t.relation, t.head});
        degree_[t.head.value] += 1;
        degree_[t.tail.value] += 1;
    }
}

std::uint32_t KnowledgeGraph::degree(EntityId e) const {
    if (!has_entity(e)) throw DataError("unknown entity handle " + std::to_string(e.value));
    return degree_[e.value];
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::out_edges(EntityId e) const {
    if (!has_entity(e)) throw DataError("unknown entity handle " + std::to_string(e.value));
    return out_[e.value];
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::in_edges(EntityId e) const {
    if (!has_entity(e)) throw DataError("unknown entity handle " + std::to_string(e.value));
    return in_[e.value];
}

} // namespace ontoea
