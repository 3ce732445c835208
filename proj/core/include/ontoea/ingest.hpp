#pragma once

#include "ontoea/dataset.hpp"
#include "ontoea/interner.hpp"
#include "ontoea/kg.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ontoea {

struct SplitRatio {
    double train = 0.2;
    double valid = 0.1;
    double test = 0.7;
};

/// Parses a tab-separated triple file: one triple per non-empty line, three
/// URI fields. URIs are interned on the fly; duplicate lines collapse to one
/// triple. Throws DataError with the line number on malformed lines.
std::vector<Triple> parse_triples_file(const std::filesystem::path& path, Interner& entities,
                                       Interner& relations);

/// Loads the benchmark directory layout into a fully indexed dataset.
///
/// Expected files (UTF-8, tab-separated):
///   rel_triples_1.tsv, rel_triples_2.tsv     entity TAB relation TAB entity
///   onto_subclass_1.tsv                      child_class TAB parent_class
///   onto_disjoint.tsv (optional)             class TAB class
///   memberships_1.tsv, memberships_2.tsv     entity TAB class
///   ent_links.tsv                            entity1 TAB entity2
///   ent_links_{train,valid,test}.tsv         optional pre-split override
///
/// Entities without a declared type are linked to the root class. When the
/// pre-split files are present they are used verbatim; otherwise ent_links is
/// shuffled with rng_seed and split by ratio (sizes within one pair of the
/// exact proportions).
AlignmentDataset load_dataset(const std::filesystem::path& dir, SplitRatio ratio,
                              std::uint64_t rng_seed);

} // namespace ontoea
