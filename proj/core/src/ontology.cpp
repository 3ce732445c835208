#include "ontoea/ontology.hpp"

#include "ontoea/errors.hpp"

#include <algorithm>
#include <string>

namespace ontoea {

Ontology::Ontology(std::size_t class_count, ClassId root,
                   std::vector<std::pair<ClassId, ClassId>> subclass_pairs,
                   std::vector<std::pair<ClassId, ClassId>> disjoint_pairs)
    : class_count_(class_count), root_(root) {
    if (root_.value >= class_count_) throw DataError("root class handle out of range");

    parents_.resize(class_count_);
    for (const auto& [child, parent] : subclass_pairs) {
        if (child.value >= class_count_ || parent.value >= class_count_) {
            throw DataError("subclass pair references class handle out of range");
        }
        if (child == parent) continue;
        if (child == root_) throw DataError("root class must not have a parent");
        std::uint64_t key = pack_ordered(child, parent);
        if (!subclass_pair_set_.insert(key).second) continue;
        subclass_pairs_.emplace_back(child, parent);
        parents_[child.value].push_back(parent);
    }

    for (const auto& [a, b] : disjoint_pairs) {
        if (a.value >= class_count_ || b.value >= class_count_) {
            throw DataError("disjoint pair references class handle out of range");
        }
        if (a == b) {
            throw DataError("class declared disjoint with itself: handle " +
                            std::to_string(a.value));
        }
        if (!disjoint_set_.insert(pack(a, b)).second) continue;
        ClassId lo = a.value < b.value ? a : b;
        ClassId hi = a.value < b.value ? b : a;
        disjoint_pairs_.emplace_back(lo, hi);
    }

    check_acyclic();
    compute_depths();
}

std::span<const ClassId> Ontology::declared_parents(ClassId c) const {
    if (!has_class(c)) throw DataError("unknown class handle " + std::to_string(c.value));
    return parents_[c.value];
}

std::vector<ClassId> Ontology::effective_parents(ClassId c) const {
    if (!has_class(c)) throw DataError("unknown class handle " + std::to_string(c.value));
    if (c == root_) return {};
    if (parents_[c.value].empty()) return {root_};
    return parents_[c.value];
}

std::uint32_t Ontology::depth(ClassId c) const {
    if (!has_class(c)) throw DataError("unknown class handle " + std::to_string(c.value));
    return depth_[c.value];
}

void Ontology::check_acyclic() const {
    // Kahn over declared child->parent edges.
    std::vector<std::uint32_t> out_degree(class_count_, 0);
    std::vector<std::vector<std::uint32_t>> rev(class_count_);
    for (const auto& [child, parent] : subclass_pairs_) {
        out_degree[child.value] += 1;
        rev[parent.value].push_back(child.value);
    }
    std::vector<std::uint32_t> queue;
    for (std::uint32_t c = 0; c < class_count_; ++c) {
        if (out_degree[c] == 0) queue.push_back(c);
    }
    std::size_t seen = 0;
    while (!queue.empty()) {
        std::uint32_t c = queue.back();
        queue.pop_back();
        ++seen;
        for (std::uint32_t child : rev[c]) {
            if (--out_degree[child] == 0) queue.push_back(child);
        }
    }
    if (seen != class_count_) throw DataError("ontology cycle");
}

void Ontology::compute_depths() {
    depth_.assign(class_count_, 0);
    // Topological order: process a class once all its effective parents are done.
    // Longest-path DP over effective parent edges.
    std::vector<int> state(class_count_, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < class_count_; ++start) {
        if (state[start] == 2) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            std::uint32_t c = stack.back();
            if (state[c] == 2) {
                stack.pop_back();
                continue;
            }
            if (state[c] == 0) {
                state[c] = 1;
                for (ClassId p : effective_parents(ClassId{c})) {
                    if (state[p.value] != 2) stack.push_back(p.value);
                }
            } else {
                state[c] = 2;
                stack.pop_back();
                std::uint32_t best = 0;
                for (ClassId p : effective_parents(ClassId{c})) {
                    best = std::max(best, depth_[p.value] + 1);
                }
                depth_[c] = (ClassId{c} == root_) ? 0 : best;
            }
        }
    }
}

} // namespace ontoea
