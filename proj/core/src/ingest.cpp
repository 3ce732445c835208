#include "ontoea/ingest.hpp"

#include "ontoea/errors.hpp"
#include "ontoea/rng.hpp"
#include "ontoea/util.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <unordered_set>
#include <utility>

namespace ontoea {

namespace {

namespace fs = std::filesystem;

void require_file(const fs::path& p) {
    if (!fs::exists(p)) throw DataError("missing file: " + p.string());
}

/// Calls fn(fields, line_number) for every non-empty line; enforces the
/// field count.
template <class Fn>
void for_each_row(const fs::path& path, std::size_t n_fields, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split(line, '\t');
        if (fields.size() != n_fields) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(n_fields) + " tab-separated fields, got " +
                            std::to_string(fields.size()));
        }
        fn(fields, line_no);
    }
}

EntityId lookup_entity(const Interner& entities, const std::string& uri, const fs::path& file,
                       std::size_t line_no) {
    auto h = entities.find(uri);
    if (!h) {
        throw DataError(file.string() + ":" + std::to_string(line_no) + ": entity \"" + uri +
                        "\" not present in its knowledge graph");
    }
    return EntityId{*h};
}

std::vector<std::pair<EntityId, EntityId>> parse_links_file(const fs::path& path,
                                                            const Interner& ents1,
                                                            const Interner& ents2) {
    std::vector<std::pair<EntityId, EntityId>> out;
    std::unordered_set<std::uint64_t> seen;
    for_each_row(path, 2, [&](const std::vector<std::string>& f, std::size_t line_no) {
        EntityId a = lookup_entity(ents1, f[0], path, line_no);
        EntityId b = lookup_entity(ents2, f[1], path, line_no);
        std::uint64_t key = (std::uint64_t(a.value) << 32) | b.value;
        if (!seen.insert(key).second) return; // duplicate line
        out.emplace_back(a, b);
    });
    return out;
}

/// The gold mapping must be injective on both sides, otherwise a random
/// split cannot keep the train/valid/test coordinates disjoint.
void check_injective(const std::vector<std::pair<EntityId, EntityId>>& links,
                     const fs::path& file) {
    std::unordered_set<std::uint32_t> left, right;
    for (const auto& [a, b] : links) {
        if (!left.insert(a.value).second || !right.insert(b.value).second) {
            throw DataError(file.string() + ": entity appears in more than one gold link");
        }
    }
}

void load_memberships(const fs::path& path, KgSide side, const Interner& entities,
                      Interner& classes, MembershipSet& memberships) {
    for_each_row(path, 2, [&](const std::vector<std::string>& f, std::size_t line_no) {
        EntityId e = lookup_entity(entities, f[0], path, line_no);
        ClassId c{classes.intern(f[1])};
        memberships.add(side, e, c);
    });
}

} // namespace

std::vector<Triple> parse_triples_file(const std::filesystem::path& path, Interner& entities,
                                       Interner& relations) {
    std::vector<Triple> out;
    std::unordered_set<Triple, TripleHash> seen;
    for_each_row(path, 3, [&](const std::vector<std::string>& f, std::size_t) {
        Triple t{EntityId{entities.intern(f[0])}, RelationId{relations.intern(f[1])},
                 EntityId{entities.intern(f[2])}};
        if (seen.insert(t).second) out.push_back(t);
    });
    return out;
}

AlignmentDataset load_dataset(const std::filesystem::path& dir, SplitRatio ratio,
                              std::uint64_t rng_seed) {
    if (ratio.train < 0 || ratio.valid < 0 || ratio.test < 0 ||
        std::abs(ratio.train + ratio.valid + ratio.test - 1.0) > 1e-9) {
        throw ConfigError("split ratio must be non-negative and sum to 1");
    }

    const fs::path triples1 = dir / "rel_triples_1.tsv";
    const fs::path triples2 = dir / "rel_triples_2.tsv";
    const fs::path subclass1 = dir / "onto_subclass_1.tsv";
    const fs::path disjoint = dir / "onto_disjoint.tsv";
    const fs::path members1 = dir / "memberships_1.tsv";
    const fs::path members2 = dir / "memberships_2.tsv";
    const fs::path links = dir / "ent_links.tsv";
    const fs::path links_train = dir / "ent_links_train.tsv";
    const fs::path links_valid = dir / "ent_links_valid.tsv";
    const fs::path links_test = dir / "ent_links_test.tsv";

    for (const fs::path& p : {triples1, triples2, subclass1, members1, members2}) {
        require_file(p);
    }

    AlignmentDataset ds;

    // Classes: root first, then hierarchy, then whatever memberships add.
    ClassId root{ds.classes.intern(kRootClassUri)};
    std::vector<std::pair<ClassId, ClassId>> subclass_pairs;
    for_each_row(subclass1, 2, [&](const std::vector<std::string>& f, std::size_t) {
        ClassId child{ds.classes.intern(f[0])};
        ClassId parent{ds.classes.intern(f[1])};
        subclass_pairs.emplace_back(child, parent);
    });
    std::vector<std::pair<ClassId, ClassId>> disjoint_pairs;
    if (fs::exists(disjoint)) {
        for_each_row(disjoint, 2, [&](const std::vector<std::string>& f, std::size_t) {
            ClassId a{ds.classes.intern(f[0])};
            ClassId b{ds.classes.intern(f[1])};
            disjoint_pairs.emplace_back(a, b);
        });
    }

    std::vector<Triple> t1 = parse_triples_file(triples1, ds.entities1, ds.relations1);
    std::vector<Triple> t2 = parse_triples_file(triples2, ds.entities2, ds.relations2);
    ds.kg1 = KnowledgeGraph(ds.entities1.size(), ds.relations1.size(), std::move(t1));
    ds.kg2 = KnowledgeGraph(ds.entities2.size(), ds.relations2.size(), std::move(t2));

    ds.memberships = MembershipSet(ds.kg1.entity_count(), ds.kg2.entity_count());
    load_memberships(members1, KgSide::kg1, ds.entities1, ds.classes, ds.memberships);
    load_memberships(members2, KgSide::kg2, ds.entities2, ds.classes, ds.memberships);

    // Untyped entities fall back to the root class here, so the conflict
    // matrix and every loss see one consistent membership set.
    for (KgSide side : {KgSide::kg1, KgSide::kg2}) {
        const KnowledgeGraph& kg = ds.kg(side);
        for (std::uint32_t e = 0; e < kg.entity_count(); ++e) {
            if (!ds.memberships.has_links(side, EntityId{e})) {
                ds.memberships.add(side, EntityId{e}, root);
                ds.root_defaulted[side_index(side)] += 1;
            }
        }
    }

    ds.ontology = Ontology(ds.classes.size(), root, std::move(subclass_pairs),
                           std::move(disjoint_pairs));

    const bool presplit = fs::exists(links_train) || fs::exists(links_valid) ||
                          fs::exists(links_test);
    if (presplit) {
        for (const fs::path& p : {links_train, links_valid, links_test}) require_file(p);
        ds.seeds_train = MappingSet(parse_links_file(links_train, ds.entities1, ds.entities2));
        ds.seeds_valid = MappingSet(parse_links_file(links_valid, ds.entities1, ds.entities2));
        ds.seeds_test = MappingSet(parse_links_file(links_test, ds.entities1, ds.entities2));
        std::vector<std::pair<EntityId, EntityId>> all;
        for (const MappingSet* m : {&ds.seeds_train, &ds.seeds_valid, &ds.seeds_test}) {
            all.insert(all.end(), m->pairs().begin(), m->pairs().end());
        }
        check_injective(all, dir / "ent_links_{train,valid,test}.tsv");
    } else {
        require_file(links);
        std::vector<std::pair<EntityId, EntityId>> all =
            parse_links_file(links, ds.entities1, ds.entities2);
        check_injective(all, links);
        Rng rng(rng_seed);
        rng.shuffle(all);
        const std::size_t n = all.size();
        std::size_t n_train = static_cast<std::size_t>(std::llround(ratio.train * double(n)));
        n_train = std::min(n_train, n);
        std::size_t n_valid = static_cast<std::size_t>(std::llround(ratio.valid * double(n)));
        n_valid = std::min(n_valid, n - n_train);
        ds.seeds_train = MappingSet({all.begin(), all.begin() + n_train});
        ds.seeds_valid = MappingSet({all.begin() + n_train, all.begin() + n_train + n_valid});
        ds.seeds_test = MappingSet({all.begin() + n_train + n_valid, all.end()});
    }

    return ds;
}

} // namespace ontoea
