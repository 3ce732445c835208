#include "ontoea/predictor.hpp"

#include "ontoea/errors.hpp"
#include "ontoea/util.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

namespace ontoea {

Metrics evaluate(std::span<const std::uint32_t> ranks) {
    Metrics m;
    if (ranks.empty()) return m;
    for (std::uint32_t r : ranks) {
        if (r <= 1) m.hits1 += 1.0;
        if (r <= 5) m.hits5 += 1.0;
        m.mrr += 1.0 / double(r);
    }
    const double n = double(ranks.size());
    m.hits1 /= n;
    m.hits5 /= n;
    m.mrr /= n;
    return m;
}

std::vector<double> class_embedding_of(EntityId e, KgSide side, const MembershipSet& m,
                                       const Matrix& cls) {
    auto declared = m.declared_classes(side, e);
    std::vector<double> mean(cls.cols(), 0.0);
    for (ClassId c : declared) axpy(1.0, cls.row(c.value), mean);
    for (double& x : mean) x /= double(declared.size());
    return mean;
}

namespace {

std::vector<double> translate(const Matrix& w_align, std::span<const double> e) {
    std::vector<double> out(w_align.rows());
    matvec(w_align, e, out);
    return out;
}

} // namespace

double pair_similarity(EntityId e1, EntityId e2, const ModelParams& params,
                       const MembershipSet& m, double beta) {
    std::vector<double> translated = translate(params.w_align, params.ent1.row(e1.value));
    double cos_e = cosine(translated, params.ent2.row(e2.value));
    double cos_c = 0.0;
    if (beta < 1.0) {
        std::vector<double> c1 = class_embedding_of(e1, KgSide::kg1, m, params.cls);
        std::vector<double> c2 = class_embedding_of(e2, KgSide::kg2, m, params.cls);
        cos_c = cosine(c1, c2);
    }
    return mix_similarity(cos_e, cos_c, beta);
}

Matrix similarity_matrix(std::span<const EntityId> queries, std::span<const EntityId> candidates,
                         const ModelParams& params, const MembershipSet& m, double beta) {
    Matrix sim(queries.size(), candidates.size());
    const bool with_classes = beta < 1.0;

    // Class means of every candidate, computed once.
    std::vector<std::vector<double>> cand_cls;
    if (with_classes) {
        cand_cls.resize(candidates.size());
        parallel_for(candidates.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t c = lo; c < hi; ++c) {
                cand_cls[c] = class_embedding_of(candidates[c], KgSide::kg2, m, params.cls);
            }
        });
    }

    parallel_for(queries.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t q = lo; q < hi; ++q) {
            std::vector<double> translated =
                translate(params.w_align, params.ent1.row(queries[q].value));
            std::vector<double> q_cls;
            if (with_classes) {
                q_cls = class_embedding_of(queries[q], KgSide::kg1, m, params.cls);
            }
            auto out = sim.row(q);
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                double cos_e = cosine(translated, params.ent2.row(candidates[c].value));
                double cos_c = with_classes ? cosine(q_cls, cand_cls[c]) : 0.0;
                out[c] = mix_similarity(cos_e, cos_c, beta);
            }
        }
    });
    return sim;
}

CslsRanking csls_rank(const Matrix& sim, std::span<const std::uint32_t> gold, int k,
                      int dump_topk) {
    const std::size_t n_q = sim.rows();
    const std::size_t n_c = sim.cols();
    if (k < 1) throw ConfigError("csls k must be >= 1");
    if (static_cast<std::size_t>(k) > n_c) {
        throw ConfigError("csls k exceeds the candidate count");
    }
    if (gold.size() != n_q) throw ConfigError("gold size must match the query count");

    auto topk_mean = [](std::vector<double>& values, std::size_t k_eff) {
        std::nth_element(values.begin(), values.begin() + std::ptrdiff_t(k_eff - 1), values.end(),
                         std::greater<>());
        double s = 0.0;
        for (std::size_t i = 0; i < k_eff; ++i) s += values[i];
        return s / double(k_eff);
    };

    // rC: mean of each query's k nearest candidates.
    std::vector<double> r_c(n_q);
    parallel_for(n_q, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> buf(n_c);
        for (std::size_t q = lo; q < hi; ++q) {
            auto row = sim.row(q);
            buf.assign(row.begin(), row.end());
            r_c[q] = topk_mean(buf, static_cast<std::size_t>(k));
        }
    });

    // rQ: mean of each candidate's nearest queries, k clamped to the query count.
    const std::size_t k_q = std::min<std::size_t>(static_cast<std::size_t>(k), n_q);
    std::vector<double> r_q(n_c);
    parallel_for(n_c, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> buf(n_q);
        for (std::size_t c = lo; c < hi; ++c) {
            for (std::size_t q = 0; q < n_q; ++q) buf[q] = sim.at(q, c);
            r_q[c] = topk_mean(buf, k_q);
        }
    });

    CslsRanking out;
    out.gold_rank.resize(n_q);
    out.top1.resize(n_q);
    out.topk.resize(n_q);
    const std::size_t n_dump = std::min<std::size_t>(static_cast<std::size_t>(dump_topk), n_c);

    parallel_for(n_q, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::pair<double, std::uint32_t>> scored(n_c);
        for (std::size_t q = lo; q < hi; ++q) {
            auto row = sim.row(q);
            for (std::size_t c = 0; c < n_c; ++c) {
                scored[c] = {2.0 * row[c] - r_c[q] - r_q[c], static_cast<std::uint32_t>(c)};
            }
            const double gold_score = scored[gold[q]].first;
            std::uint32_t rank = 1;
            for (std::size_t c = 0; c < n_c; ++c) {
                if (c == gold[q]) continue;
                if (scored[c].first > gold_score ||
                    (scored[c].first == gold_score && c < gold[q])) {
                    ++rank;
                }
            }
            out.gold_rank[q] = rank;

            auto better = [](const auto& a, const auto& b) {
                return a.first > b.first || (a.first == b.first && a.second < b.second);
            };
            std::partial_sort(scored.begin(), scored.begin() + std::ptrdiff_t(n_dump),
                              scored.end(), better);
            out.top1[q] = scored[0].second;
            auto& dump = out.topk[q];
            dump.resize(n_dump);
            for (std::size_t i = 0; i < n_dump; ++i) dump[i] = {scored[i].second, scored[i].first};
        }
    });
    return out;
}

RankingResult rank_split(const AlignmentDataset& ds, const ModelParams& params,
                         const MappingSet& split, double beta, int csls_k, int dump_topk) {
    RankingResult result;
    result.queries.reserve(split.size());
    result.gold.reserve(split.size());
    for (const auto& [e1, e2] : split.pairs()) {
        result.queries.push_back(e1);
        result.gold.push_back(e2);
    }

    std::vector<EntityId> candidates(ds.kg2.entity_count());
    for (std::uint32_t e = 0; e < candidates.size(); ++e) candidates[e] = EntityId{e};

    Matrix sim = similarity_matrix(result.queries, candidates, params, ds.memberships, beta);
    std::vector<std::uint32_t> gold_index(result.gold.size());
    for (std::size_t i = 0; i < result.gold.size(); ++i) gold_index[i] = result.gold[i].value;

    CslsRanking ranking = csls_rank(sim, gold_index, csls_k, dump_topk);
    result.gold_rank = std::move(ranking.gold_rank);
    result.predicted_top1.reserve(ranking.top1.size());
    for (std::uint32_t c : ranking.top1) result.predicted_top1.push_back(EntityId{c});
    result.topk.resize(ranking.topk.size());
    for (std::size_t q = 0; q < ranking.topk.size(); ++q) {
        for (const auto& [c, score] : ranking.topk[q]) {
            result.topk[q].emplace_back(EntityId{c}, score);
        }
    }
    result.metrics = evaluate(result.gold_rank);
    return result;
}

double conflict_ratio(std::span<const EntityId> queries, std::span<const EntityId> predicted_top1,
                      std::span<const EntityId> gold, const MembershipSet& m,
                      const ClassConflictMatrix& ccm, double tau) {
    std::size_t false_positives = 0;
    std::size_t conflicted = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (predicted_top1[i] == gold[i]) continue;
        ++false_positives;
        if (is_conflicted(queries[i], predicted_top1[i], m, ccm, tau)) ++conflicted;
    }
    if (false_positives == 0) return 0.0;
    return double(conflicted) / double(false_positives);
}

std::vector<DegreeBin> degree_binned_eval(std::span<const std::uint32_t> ranks,
                                          std::span<const std::uint32_t> summed_degrees,
                                          std::uint32_t bin_width) {
    if (ranks.size() != summed_degrees.size()) {
        throw ConfigError("ranks and degrees must be aligned");
    }
    if (bin_width == 0) throw ConfigError("bin width must be > 0");

    std::uint32_t max_degree = 0;
    for (std::uint32_t d : summed_degrees) max_degree = std::max(max_degree, d);
    const std::size_t n_bins = ranks.empty() ? 0 : max_degree / bin_width + 1;

    std::vector<std::vector<std::uint32_t>> per_bin(n_bins);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        per_bin[summed_degrees[i] / bin_width].push_back(ranks[i]);
    }

    std::vector<DegreeBin> out;
    for (std::size_t b = 0; b < n_bins; ++b) {
        if (per_bin[b].empty()) continue;
        DegreeBin bin;
        bin.lo = static_cast<std::uint32_t>(b) * bin_width;
        bin.hi = bin.lo + bin_width;
        bin.count = per_bin[b].size();
        bin.metrics = evaluate(per_bin[b]);
        out.push_back(bin);
    }
    return out;
}

void write_predictions(const std::filesystem::path& path, const RankingResult& result,
                       const Interner& names1, const Interner& names2) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    out.precision(17);
    for (std::size_t q = 0; q < result.queries.size(); ++q) {
        out << names1.name(result.queries[q].value);
        for (const auto& [c, score] : result.topk[q]) {
            out << '\t' << names2.name(c.value) << '\t' << score;
        }
        out << '\n';
    }
}

void write_metrics(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, double>>& values) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    out.precision(17);
    for (const auto& [key, value] : values) out << key << '=' << value << '\n';
}

void write_degree_bins(const std::filesystem::path& path, const std::vector<DegreeBin>& bins) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    out.precision(17);
    out << "bin_lo,bin_hi,count,hits1,hits5,mrr\n";
    for (const DegreeBin& b : bins) {
        out << b.lo << ',' << b.hi << ',' << b.count << ',' << b.metrics.hits1 << ','
            << b.metrics.hits5 << ',' << b.metrics.mrr << '\n';
    }
}

} // namespace ontoea
