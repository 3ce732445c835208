#pragma once

#include "ontoea/dataset.hpp"
#include "ontoea/ids.hpp"
#include "ontoea/ontology.hpp"

#include <filesystem>
#include <set>
#include <vector>

namespace ontoea {

/// Classes passed by routing from c to the root: c itself, every class on
/// any directed path to root, and root.
std::set<ClassId> ancestor_set(ClassId c, const Ontology& o);

/// Symmetric matrix of pairwise class conflict degrees in [0, 1]; only the
/// upper triangle is stored, the diagonal is implicitly zero.
class ClassConflictMatrix {
public:
    ClassConflictMatrix() = default;
    explicit ClassConflictMatrix(std::size_t class_count)
        : n_(class_count), values_(class_count * (class_count - 1) / 2, 0.0) {}

    std::size_t class_count() const { return n_; }

    double at(ClassId a, ClassId b) const {
        if (a == b) return 0.0;
        return values_[tri_index(a, b)];
    }

    void set(ClassId a, ClassId b, double v) { values_[tri_index(a, b)] = v; }

    /// Upper-triangular entries with their (i, j) pair, i < j.
    struct Entry {
        ClassId i;
        ClassId j;
        double degree;
    };
    std::vector<Entry> nonzero_entries() const;

    void dump(const std::filesystem::path& path, const Interner& classes) const;

private:
    std::size_t tri_index(ClassId a, ClassId b) const {
        std::size_t i = a.value < b.value ? a.value : b.value;
        std::size_t j = a.value < b.value ? b.value : a.value;
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t n_ = 0;
    std::vector<double> values_;
};

/// Builds the conflict matrix from the merged ontology, the memberships of
/// both KGs and the *training* seed mappings, applying four rules in order
/// and stopping at the first match per pair:
///   1. identical classes            -> 0
///   2. declared disjoint            -> 1
///   3. common member, or some train seed links a member of one class to a
///      member of the other (either orientation) -> 0
///   4. Jaccard distance of the root-path ancestor sets.
ClassConflictMatrix build_ccm(const Ontology& o, const MembershipSet& m, const MappingSet& seeds);

/// True iff the minimum conflict degree over all declared class pairs of the
/// two entities reaches the threshold.
bool is_conflicted(EntityId e1, EntityId e2, const MembershipSet& m,
                   const ClassConflictMatrix& ccm, double tau);

} // namespace ontoea
