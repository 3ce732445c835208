#pragma once

#include "ontoea/ccm.hpp"
#include "ontoea/dataset.hpp"
#include "ontoea/matrix.hpp"
#include "ontoea/model.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ontoea {

struct Metrics {
    double hits1 = 0.0;
    double hits5 = 0.0;
    double mrr = 0.0;
};

/// H@k = fraction of gold ranks <= k; MRR = mean reciprocal rank.
Metrics evaluate(std::span<const std::uint32_t> ranks);

/// Arithmetic mean of the embedding rows of the entity's declared classes.
std::vector<double> class_embedding_of(EntityId e, KgSide side, const MembershipSet& m,
                                       const Matrix& cls);

/// beta * cos_entity + (1 - beta) * cos_class.
inline double mix_similarity(double cos_entity, double cos_class, double beta) {
    return beta * cos_entity + (1.0 - beta) * cos_class;
}

/// Weighted similarity of a cross-KG entity pair: the entity cosine is taken
/// in the alignment-translated space, cos(W_a e1, e2); the class cosine uses
/// the declared-class embedding means. Zero vectors score cosine 0.
double pair_similarity(EntityId e1, EntityId e2, const ModelParams& params,
                       const MembershipSet& m, double beta);

/// Full query x candidate pair-similarity matrix, parallel over queries.
Matrix similarity_matrix(std::span<const EntityId> queries, std::span<const EntityId> candidates,
                         const ModelParams& params, const MembershipSet& m, double beta);

/// CSLS ranking of candidates per query over a similarity matrix:
/// CSLS(x, y) = 2 sim(x, y) - rC(x) - rQ(y), with rC(x) the mean similarity
/// of x's k nearest candidates and rQ(y) the mean over y's k nearest queries
/// (k clamped to the query count on that side). Ties break toward the
/// smaller candidate index. gold[q] is the candidate index of query q's gold
/// match.
struct CslsRanking {
    std::vector<std::uint32_t> gold_rank;                             // 1-based
    std::vector<std::uint32_t> top1;                                  // candidate index
    std::vector<std::vector<std::pair<std::uint32_t, double>>> topk;  // per query
};
CslsRanking csls_rank(const Matrix& sim, std::span<const std::uint32_t> gold, int k,
                      int dump_topk = 10);

/// Ranks one gold split of the dataset: queries are the split's KG1 entities,
/// candidates all KG2 entities.
struct RankingResult {
    std::vector<EntityId> queries;
    std::vector<EntityId> gold;
    std::vector<EntityId> predicted_top1;
    std::vector<std::uint32_t> gold_rank;
    std::vector<std::vector<std::pair<EntityId, double>>> topk;
    Metrics metrics;
};
RankingResult rank_split(const AlignmentDataset& ds, const ModelParams& params,
                         const MappingSet& split, double beta, int csls_k, int dump_topk = 10);

/// Share of class-conflicted pairs among the false-positive top-1
/// predictions; 0 when every prediction is correct.
double conflict_ratio(std::span<const EntityId> queries, std::span<const EntityId> predicted_top1,
                      std::span<const EntityId> gold, const MembershipSet& m,
                      const ClassConflictMatrix& ccm, double tau);

/// Metrics per summed-degree bin [0,w), [w,2w), ...
struct DegreeBin {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    std::size_t count = 0;
    Metrics metrics;
};
std::vector<DegreeBin> degree_binned_eval(std::span<const std::uint32_t> ranks,
                                          std::span<const std::uint32_t> summed_degrees,
                                          std::uint32_t bin_width = 10);

// -- dumps -------------------------------------------------------------------

void write_predictions(const std::filesystem::path& path, const RankingResult& result,
                       const Interner& names1, const Interner& names2);
void write_metrics(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, double>>& values);
void write_degree_bins(const std::filesystem::path& path, const std::vector<DegreeBin>& bins);

} // namespace ontoea
