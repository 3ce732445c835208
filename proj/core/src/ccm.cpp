#include "ontoea/ccm.hpp"

#include "ontoea/errors.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <vector>

namespace ontoea {

std::set<ClassId> ancestor_set(ClassId c, const Ontology& o) {
    if (!o.has_class(c)) throw DataError("unknown class handle " + std::to_string(c.value));
    std::set<ClassId> out;
    std::vector<ClassId> stack{c};
    while (!stack.empty()) {
        ClassId cur = stack.back();
        stack.pop_back();
        if (!out.insert(cur).second) continue;
        for (ClassId p : o.effective_parents(cur)) stack.push_back(p);
    }
    out.insert(o.root());
    return out;
}

std::vector<ClassConflictMatrix::Entry> ClassConflictMatrix::nonzero_entries() const {
    std::vector<Entry> out;
    for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t j = i + 1; j < n_; ++j) {
            double v = values_[tri_index(ClassId{i}, ClassId{j})];
            if (v > 0.0) out.push_back({ClassId{i}, ClassId{j}, v});
        }
    }
    return out;
}

void ClassConflictMatrix::dump(const std::filesystem::path& path, const Interner& classes) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    out.precision(17);
    for (const Entry& e : nonzero_entries()) {
        out << classes.name(e.i.value) << '\t' << classes.name(e.j.value) << '\t' << e.degree
            << '\n';
    }
}

namespace {

/// Fixed-width bitset over class handles.
class ClassBitset {
public:
    explicit ClassBitset(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::uint32_t i) { words_[i >> 6] |= (std::uint64_t(1) << (i & 63)); }
    bool test(std::uint32_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    static std::pair<std::size_t, std::size_t> intersection_and_union(const ClassBitset& a,
                                                                      const ClassBitset& b) {
        std::size_t inter = 0, uni = 0;
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            inter += std::popcount(a.words_[w] & b.words_[w]);
            uni += std::popcount(a.words_[w] | b.words_[w]);
        }
        return {inter, uni};
    }

private:
    std::vector<std::uint64_t> words_;
};

} // namespace

ClassConflictMatrix build_ccm(const Ontology& o, const MembershipSet& m,
                              const MappingSet& seeds) {
    const std::size_t n = o.class_count();
    ClassConflictMatrix ccm(n);
    if (n < 2) return ccm;

    // Ancestor bitsets, once per class.
    std::vector<ClassBitset> ancestors;
    ancestors.reserve(n);
    for (std::uint32_t c = 0; c < n; ++c) {
        ClassBitset bits(n);
        for (ClassId a : ancestor_set(ClassId{c}, o)) bits.set(a.value);
        ancestors.push_back(std::move(bits));
    }

    // Pairs with a common member or linked through a train seed.
    std::vector<std::uint8_t> not_conflicted(n * n, 0);
    auto mark = [&](ClassId a, ClassId b) {
        not_conflicted[std::size_t(a.value) * n + b.value] = 1;
        not_conflicted[std::size_t(b.value) * n + a.value] = 1;
    };
    for (KgSide side : {KgSide::kg1, KgSide::kg2}) {
        for (std::uint32_t e = 0; e < m.entity_count(side); ++e) {
            if (!m.has_links(side, EntityId{e})) continue;
            auto classes = m.declared_classes(side, EntityId{e});
            for (std::size_t x = 0; x < classes.size(); ++x) {
                for (std::size_t y = x + 1; y < classes.size(); ++y) {
                    mark(classes[x], classes[y]);
                }
            }
        }
    }
    for (const auto& [e1, e2] : seeds.pairs()) {
        if (!m.has_links(KgSide::kg1, e1) || !m.has_links(KgSide::kg2, e2)) continue;
        for (ClassId c1 : m.declared_classes(KgSide::kg1, e1)) {
            for (ClassId c2 : m.declared_classes(KgSide::kg2, e2)) {
                if (c1 != c2) mark(c1, c2);
            }
        }
    }

    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            ClassId ci{i}, cj{j};
            double v;
            if (o.declared_disjoint(ci, cj)) {
                v = 1.0;
            } else if (not_conflicted[std::size_t(i) * n + j]) {
                v = 0.0;
            } else {
                auto [inter, uni] = ClassBitset::intersection_and_union(ancestors[i], ancestors[j]);
                v = 1.0 - double(inter) / double(uni);
            }
            ccm.set(ci, cj, v);
        }
    }
    return ccm;
}

bool is_conflicted(EntityId e1, EntityId e2, const MembershipSet& m,
                   const ClassConflictMatrix& ccm, double tau) {
    double min_degree = 2.0;
    for (ClassId c1 : m.declared_classes(KgSide::kg1, e1)) {
        for (ClassId c2 : m.declared_classes(KgSide::kg2, e2)) {
            double d = ccm.at(c1, c2);
            if (d < min_degree) min_degree = d;
        }
    }
    return min_degree >= tau;
}

} // namespace ontoea
