#pragma once

#include "ontoea/dataset.hpp"
#include "ontoea/ids.hpp"
#include "ontoea/interner.hpp"
#include "ontoea/ontology.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ontoea {

enum class MappingProvenance { routing, system, manual };

std::string to_string(MappingProvenance p);
MappingProvenance provenance_from_string(const std::string& s);

/// Function from ontology-2 classes to ontology-1 classes. Each source class
/// appears at most once.
class ClassMapping {
public:
    struct Entry {
        ClassId source;      // ontology-2 class
        ClassId target;      // ontology-1 class
        MappingProvenance provenance;
    };

    ClassMapping() = default;

    /// Inserts or overwrites the pair for `source`.
    void set(ClassId source, ClassId target, MappingProvenance provenance);

    std::optional<ClassId> target_of(ClassId source) const;
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Entry> entries_;            // source-handle order not enforced
    std::vector<std::int64_t> index_;       // source handle -> entry position
};

/// Routes every ontology-2 class through the combined subclass graph (both
/// hierarchies plus the cross-ontology equivalence links, oriented from
/// ontology 2 into ontology 1) and maps it to the deepest reachable
/// ontology-1 class; unreachable classes map to o1's root. Depth is the
/// longest directed walk to the root within ontology 1, and depth ties break
/// toward the smallest handle.
ClassMapping route_fine_grained(const Ontology& o1, const Ontology& o2,
                                const std::vector<std::pair<ClassId, ClassId>>& equiv_pairs);

/// For every source class present in both, the system target overrides the
/// base target; system pairs for new sources are appended.
ClassMapping apply_system_mappings(const ClassMapping& base, const ClassMapping& system);

/// Rewrites every KG2 membership (e, c) to (e, mapping(c)), falling back to
/// o1's root for unmapped classes. The merged ontology is o1 unchanged; the
/// returned set references only ontology-1 classes.
MembershipSet merge(const Ontology& o1, const MembershipSet& o2_memberships,
                    const ClassMapping& mapping);

/// class_mappings.tsv rows: class2 TAB class1 TAB provenance (provenance
/// optional on read, defaults to "system").
void write_class_mappings(const std::filesystem::path& path, const ClassMapping& mapping,
                          const Interner& classes2, const Interner& classes1);
ClassMapping read_class_mappings(const std::filesystem::path& path, Interner& classes2,
                                 Interner& classes1);

} // namespace ontoea
