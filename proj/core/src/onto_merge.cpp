#include "ontoea/onto_merge.hpp"

#include "ontoea/errors.hpp"
#include "ontoea/util.hpp"

#include <algorithm>
#include <fstream>

namespace ontoea {

std::string to_string(MappingProvenance p) {
    switch (p) {
        case MappingProvenance::routing: return "routing";
        case MappingProvenance::system: return "system";
        case MappingProvenance::manual: return "manual";
    }
    return "routing";
}

MappingProvenance provenance_from_string(const std::string& s) {
    if (s == "routing") return MappingProvenance::routing;
    if (s == "system") return MappingProvenance::system;
    if (s == "manual") return MappingProvenance::manual;
    throw DataError("unknown mapping provenance: \"" + s + "\"");
}

void ClassMapping::set(ClassId source, ClassId target, MappingProvenance provenance) {
    if (source.value >= index_.size()) index_.resize(source.value + 1, -1);
    std::int64_t pos = index_[source.value];
    if (pos >= 0) {
        entries_[static_cast<std::size_t>(pos)].target = target;
        entries_[static_cast<std::size_t>(pos)].provenance = provenance;
        return;
    }
    index_[source.value] = static_cast<std::int64_t>(entries_.size());
    entries_.push_back({source, target, provenance});
}

std::optional<ClassId> ClassMapping::target_of(ClassId source) const {
    if (source.value >= index_.size()) return std::nullopt;
    std::int64_t pos = index_[source.value];
    if (pos < 0) return std::nullopt;
    return entries_[static_cast<std::size_t>(pos)].target;
}

namespace {

/// Combined subclass graph: o1 classes keep their handles, o2 classes are
/// shifted by |o1|. Edges point child -> parent; equivalences cross from the
/// o2 node into the o1 node only, so routing walks stay upward.
struct CombinedGraph {
    std::size_t n1;
    std::size_t n_total;
    std::vector<std::vector<std::uint32_t>> succ;

    CombinedGraph(const Ontology& o1, const Ontology& o2,
                  const std::vector<std::pair<ClassId, ClassId>>& equiv_pairs)
        : n1(o1.class_count()), n_total(o1.class_count() + o2.class_count()),
          succ(n_total) {
        for (std::uint32_t c = 0; c < o1.class_count(); ++c) {
            for (ClassId p : o1.effective_parents(ClassId{c})) succ[c].push_back(p.value);
        }
        for (std::uint32_t c = 0; c < o2.class_count(); ++c) {
            for (ClassId p : o2.effective_parents(ClassId{c})) {
                succ[n1 + c].push_back(n1 + p.value);
            }
        }
        for (const auto& [c1, c2] : equiv_pairs) {
            if (!o1.has_class(c1) || !o2.has_class(c2)) {
                throw DataError("equivalence pair references unknown class");
            }
            succ[n1 + c2.value].push_back(c1.value);
        }
    }

    void check_acyclic() const {
        std::vector<std::uint32_t> out(n_total, 0);
        std::vector<std::vector<std::uint32_t>> rev(n_total);
        for (std::uint32_t v = 0; v < n_total; ++v) {
            out[v] = static_cast<std::uint32_t>(succ[v].size());
            for (std::uint32_t w : succ[v]) rev[w].push_back(v);
        }
        std::vector<std::uint32_t> queue;
        for (std::uint32_t v = 0; v < n_total; ++v) {
            if (out[v] == 0) queue.push_back(v);
        }
        std::size_t seen = 0;
        while (!queue.empty()) {
            std::uint32_t v = queue.back();
            queue.pop_back();
            ++seen;
            for (std::uint32_t w : rev[v]) {
                if (--out[w] == 0) queue.push_back(w);
            }
        }
        if (seen != n_total) throw DataError("ontology cycle");
    }
};

} // namespace

ClassMapping route_fine_grained(const Ontology& o1, const Ontology& o2,
                                const std::vector<std::pair<ClassId, ClassId>>& equiv_pairs) {
    CombinedGraph graph(o1, o2, equiv_pairs);
    graph.check_acyclic();

    ClassMapping mapping;
    std::vector<std::uint8_t> visited(graph.n_total, 0);
    std::vector<std::uint32_t> stack;

    for (std::uint32_t src = 0; src < o2.class_count(); ++src) {
        std::fill(visited.begin(), visited.end(), 0);
        stack.clear();
        stack.push_back(static_cast<std::uint32_t>(graph.n1 + src));
        visited[graph.n1 + src] = 1;

        // Deepest reachable o1 class; ties break toward the smaller handle.
        bool found = false;
        ClassId best{0};
        std::uint32_t best_depth = 0;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (v < graph.n1) {
                ClassId c{v};
                std::uint32_t d = o1.depth(c);
                if (!found || d > best_depth || (d == best_depth && c.value < best.value)) {
                    found = true;
                    best = c;
                    best_depth = d;
                }
            }
            for (std::uint32_t w : graph.succ[v]) {
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        mapping.set(ClassId{src}, found ? best : o1.root(), MappingProvenance::routing);
    }
    return mapping;
}

ClassMapping apply_system_mappings(const ClassMapping& base, const ClassMapping& system) {
    ClassMapping out = base;
    for (const ClassMapping::Entry& e : system.entries()) {
        out.set(e.source, e.target, e.provenance);
    }
    return out;
}

MembershipSet merge(const Ontology& o1, const MembershipSet& o2_memberships,
                    const ClassMapping& mapping) {
    MembershipSet out(o2_memberships.entity_count(KgSide::kg1),
                      o2_memberships.entity_count(KgSide::kg2));
    for (const auto& [e, c] : o2_memberships.links(KgSide::kg1)) {
        out.add(KgSide::kg1, e, c);
    }
    for (const auto& [e, c] : o2_memberships.links(KgSide::kg2)) {
        ClassId target = mapping.target_of(c).value_or(o1.root());
        out.add(KgSide::kg2, e, target);
    }
    return out;
}

void write_class_mappings(const std::filesystem::path& path, const ClassMapping& mapping,
                          const Interner& classes2, const Interner& classes1) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    std::vector<ClassMapping::Entry> entries = mapping.entries();
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.source.value < b.source.value; });
    for (const ClassMapping::Entry& e : entries) {
        out << classes2.name(e.source.value) << '\t' << classes1.name(e.target.value) << '\t'
            << to_string(e.provenance) << '\n';
    }
}

ClassMapping read_class_mappings(const std::filesystem::path& path, Interner& classes2,
                                 Interner& classes1) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    ClassMapping mapping;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split(line, '\t');
        if (f.size() != 2 && f.size() != 3) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 2 or 3 tab-separated fields");
        }
        MappingProvenance prov =
            f.size() == 3 ? provenance_from_string(f[2]) : MappingProvenance::system;
        mapping.set(ClassId{classes2.intern(f[0])}, ClassId{classes1.intern(f[1])}, prov);
    }
    return mapping;
}

} // namespace ontoea
