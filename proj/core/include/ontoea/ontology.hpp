#pragma once

#include "ontoea/ids.hpp"

#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ontoea {

/// URI of the top class. Every class reaches it: classes with no declared
/// parent are treated as its direct children.
inline constexpr const char* kRootClassUri = "owl:Thing";

/// Class hierarchy plus declared disjointness. The subclass relation must be
/// acyclic; construction throws DataError("ontology cycle") otherwise.
class Ontology {
public:
    Ontology() = default;
    Ontology(std::size_t class_count, ClassId root,
             std::vector<std::pair<ClassId, ClassId>> subclass_pairs,
             std::vector<std::pair<ClassId, ClassId>> disjoint_pairs);

    std::size_t class_count() const { return class_count_; }
    ClassId root() const { return root_; }
    bool has_class(ClassId c) const { return c.value < class_count_; }

    /// Declared (child, parent) pairs, deduplicated, insertion order.
    const std::vector<std::pair<ClassId, ClassId>>& subclass_pairs() const {
        return subclass_pairs_;
    }

    /// Unordered declared-disjoint pairs, stored as (min, max) handles.
    const std::vector<std::pair<ClassId, ClassId>>& disjoint_pairs() const {
        return disjoint_pairs_;
    }

    bool declared_disjoint(ClassId a, ClassId b) const {
        if (a == b) return false;
        return disjoint_set_.contains(pack(a, b));
    }

    /// Declared parents only; empty for root and for isolated classes.
    std::span<const ClassId> declared_parents(ClassId c) const;

    /// Parents under the isolated-class rule: a non-root class with no
    /// declared parent is a direct child of root.
    std::vector<ClassId> effective_parents(ClassId c) const;

    /// Longest directed walk from c to root over effective parent edges;
    /// root itself has depth 0.
    std::uint32_t depth(ClassId c) const;

    bool contains_subclass_pair(ClassId child, ClassId parent) const {
        return subclass_pair_set_.contains(pack_ordered(child, parent));
    }

private:
    static std::uint64_t pack(ClassId a, ClassId b) {
        std::uint32_t lo = a.value < b.value ? a.value : b.value;
        std::uint32_t hi = a.value < b.value ? b.value : a.value;
        return (std::uint64_t(lo) << 32) | hi;
    }
    static std::uint64_t pack_ordered(ClassId a, ClassId b) {
        return (std::uint64_t(a.value) << 32) | b.value;
    }

    void check_acyclic() const;
    void compute_depths();

    std::size_t class_count_ = 0;
    ClassId root_{};
    std::vector<std::pair<ClassId, ClassId>> subclass_pairs_;
    std::vector<std::pair<ClassId, ClassId>> disjoint_pairs_;
    std::vector<std::vector<ClassId>> parents_;
    std::vector<std::uint32_t> depth_;
    std::unordered_set<std::uint64_t> disjoint_set_;
    std::unordered_set<std::uint64_t> subclass_pair_set_;
};

} // namespace ontoea
