#include "ontoea/dataset.hpp"

#include "ontoea/errors.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace ontoea {

MembershipSet::MembershipSet(std::size_t entity_count_kg1, std::size_t entity_count_kg2) {
    by_entity_[0].resize(entity_count_kg1);
    by_entity_[1].resize(entity_count_kg2);
}

void MembershipSet::add(KgSide side, EntityId e, ClassId c) {
    auto& table = by_entity_[side_index(side)];
    if (e.value >= table.size()) {
        throw DataError("membership references entity handle out of range: " +
                        std::to_string(e.value));
    }
    auto& classes = table[e.value];
    auto it = std::lower_bound(classes.begin(), classes.end(), c);
    if (it != classes.end() && *it == c) return;
    classes.insert(it, c);
}

std::span<const ClassId> MembershipSet::declared_classes(KgSide side, EntityId e) const {
    const auto& table = by_entity_[side_index(side)];
    if (e.value >= table.size() || table[e.value].empty()) {
        throw DataError("entity not in membership set: handle " + std::to_string(e.value));
    }
    return table[e.value];
}

bool MembershipSet::has_links(KgSide side, EntityId e) const {
    const auto& table = by_entity_[side_index(side)];
    return e.value < table.size() && !table[e.value].empty();
}

bool MembershipSet::has_link(KgSide side, EntityId e, ClassId c) const {
    const auto& table = by_entity_[side_index(side)];
    if (e.value >= table.size()) return false;
    const auto& classes = table[e.value];
    return std::binary_search(classes.begin(), classes.end(), c);
}

std::vector<std::pair<EntityId, ClassId>> MembershipSet::links(KgSide side) const {
    std::vector<std::pair<EntityId, ClassId>> out;
    const auto& table = by_entity_[side_index(side)];
    for (std::uint32_t e = 0; e < table.size(); ++e) {
        for (ClassId c : table[e]) out.emplace_back(EntityId{e}, c);
    }
    return out;
}

std::size_t MembershipSet::link_count() const {
    std::size_t n = 0;
    for (const auto& table : by_entity_) {
        for (const auto& classes : table) n += classes.size();
    }
    return n;
}

MappingSet::MappingSet(std::vector<std::pair<EntityId, EntityId>> pairs)
    : pairs_(std::move(pairs)) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(pairs_.size());
    for (const auto& [a, b] : pairs_) {
        std::uint64_t key = (std::uint64_t(a.value) << 32) | b.value;
        if (!seen.insert(key).second) {
            throw DataError("duplicate mapping pair: " + std::to_string(a.value) + " / " +
                            std::to_string(b.value));
        }
    }
}

std::uint32_t summed_degree(EntityId e1, EntityId e2, const KnowledgeGraph& kg1,
                            const KnowledgeGraph& kg2) {
    return kg1.degree(e1) + kg2.degree(e2);
}

} // namespace ontoea
