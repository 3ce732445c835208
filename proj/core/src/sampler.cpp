#include "ontoea/sampler.hpp"

#include "ontoea/util.hpp"

#include <algorithm>
#include <cmath>

namespace ontoea {

namespace {
constexpr int kMaxResample = 10;
}

NeighborTable NeighborTable::build(const Matrix& entities, double epsilon_trunc) {
    NeighborTable table;
    table.n_ = entities.rows();
    if (table.n_ == 0) return table;
    table.pool_size_ = static_cast<std::size_t>(
        std::ceil((1.0 - epsilon_trunc) * static_cast<double>(table.n_)));
    if (table.pool_size_ < 1) table.pool_size_ = 1;
    if (table.pool_size_ >= table.n_) {
        table.pool_size_ = table.n_;
        return table; // uniform mode, no pools stored
    }

    table.pools_.resize(table.n_);
    parallel_for(table.n_, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<double, std::uint32_t>> sims(table.n_);
        for (std::size_t e = begin; e < end; ++e) {
            auto row = entities.row(e);
            for (std::uint32_t o = 0; o < table.n_; ++o) {
                sims[o] = {cosine(row, entities.row(o)), o};
            }
            auto better = [](const auto& a, const auto& b) {
                return a.first > b.first || (a.first == b.first && a.second < b.second);
            };
            std::nth_element(sims.begin(), sims.begin() + std::ptrdiff_t(table.pool_size_ - 1),
                             sims.end(), better);
            std::sort(sims.begin(), sims.begin() + std::ptrdiff_t(table.pool_size_), better);
            auto& pool = table.pools_[e];
            pool.resize(table.pool_size_);
            for (std::size_t k = 0; k < table.pool_size_; ++k) pool[k] = sims[k].second;
        }
    });
    return table;
}

EntityId NeighborTable::draw(EntityId around, Rng& rng) const {
    if (uniform()) return EntityId{rng.uniform_u32(static_cast<std::uint32_t>(n_))};
    const auto& pool = pools_[around.value];
    return EntityId{pool[rng.uniform_u32(static_cast<std::uint32_t>(pool.size()))]};
}

std::vector<Triple> sample_neg_triples(std::span<const Triple> pos, const KnowledgeGraph& kg,
                                       const NeighborTable& neighbors, int neg_per_pos,
                                       Rng& rng) {
    std::vector<Triple> out;
    out.reserve(pos.size() * static_cast<std::size_t>(neg_per_pos));
    for (const Triple& p : pos) {
        for (int j = 0; j < neg_per_pos; ++j) {
            Triple corrupted = p;
            for (int attempt = 0; attempt < kMaxResample; ++attempt) {
                corrupted = p;
                if (rng.coin()) {
                    corrupted.head = neighbors.draw(p.head, rng);
                } else {
                    corrupted.tail = neighbors.draw(p.tail, rng);
                }
                if (!kg.contains(corrupted)) break;
            }
            out.push_back(corrupted);
        }
    }
    return out;
}

std::vector<ClassPair> sample_neg_subclass(std::span<const ClassPair> pos, const Ontology& o,
                                           int neg_per_pos, Rng& rng) {
    std::vector<ClassPair> out;
    out.reserve(pos.size() * static_cast<std::size_t>(neg_per_pos));
    const auto n = static_cast<std::uint32_t>(o.class_count());
    for (const ClassPair& p : pos) {
        for (int j = 0; j < neg_per_pos; ++j) {
            ClassPair corrupted = p;
            for (int attempt = 0; attempt < kMaxResample; ++attempt) {
                corrupted = p;
                ClassId draw{rng.uniform_u32(n)};
                if (rng.coin()) {
                    corrupted.first = draw;
                } else {
                    corrupted.second = draw;
                }
                if (!o.contains_subclass_pair(corrupted.first, corrupted.second)) break;
            }
            out.push_back(corrupted);
        }
    }
    return out;
}

std::vector<MemberLink> sample_neg_membership(std::span<const MemberLink> pos, KgSide side,
                                              const MembershipSet& m, std::size_t class_count,
                                              int neg_per_pos, Rng& rng) {
    std::vector<MemberLink> out;
    out.reserve(pos.size() * static_cast<std::size_t>(neg_per_pos));
    const auto n = static_cast<std::uint32_t>(class_count);
    for (const MemberLink& p : pos) {
        for (int j = 0; j < neg_per_pos; ++j) {
            MemberLink corrupted = p;
            for (int attempt = 0; attempt < kMaxResample; ++attempt) {
                corrupted.second = ClassId{rng.uniform_u32(n)};
                if (!m.has_link(side, corrupted.first, corrupted.second)) break;
            }
            out.push_back(corrupted);
        }
    }
    return out;
}

} // namespace ontoea
