#pragma once

#include "ontoea/ccm.hpp"
#include "ontoea/hyperparams.hpp"
#include "ontoea/kg.hpp"
#include "ontoea/matrix.hpp"
#include "ontoea/model.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ontoea {

using ClassPair = std::pair<ClassId, ClassId>;   // (child, parent)
using MemberLink = std::pair<EntityId, ClassId>; // (entity, class)
using SeedPair = std::pair<EntityId, EntityId>;  // (e1 in KG1, e2 in KG2)

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Per-pair hinge: [gamma1 + f_pos - f_neg]_+ + alpha * [f_pos - gamma2]_+.
/// Adding a constant to both scores moves only the limit term.
inline double hinge_pair_loss(double f_pos, double f_neg, const HingeTerms& h) {
    return positive_part(h.gamma1 + f_pos - f_neg) + h.alpha * positive_part(f_pos - h.gamma2);
}

// -- scoring ------------------------------------------------------------------

/// ||h + r - t||_2
double score_triple(std::span<const double> h, std::span<const double> r,
                    std::span<const double> t);

/// ||tanh(W c_h + b) - c_t||_2
double score_subclass(std::span<const double> c_head, std::span<const double> c_tail,
                      const Matrix& w_onto, std::span<const double> b_onto);

/// ||tanh(W^T e + b) - c||_2 with W of shape (d_e x d_o).
double score_membership(std::span<const double> e, std::span<const double> c,
                        const Matrix& w_member, std::span<const double> b_member);

/// ||W e1 - e2||_2
double score_alignment(std::span<const double> e1, std::span<const double> e2,
                       const Matrix& w_align);

// -- batched loss values -------------------------------------------------------
// Negative batches are aligned to the positives: neg.size() must be a multiple
// of pos.size(), with consecutive blocks of negatives per positive.

double loss_entity(const Matrix& ent, const Matrix& rel, std::span<const Triple> pos,
                   std::span<const Triple> neg, const HingeTerms& h);

double loss_ontology(const Matrix& cls, const Matrix& w_onto, const std::vector<double>& b_onto,
                     std::span<const ClassPair> pos, std::span<const ClassPair> neg,
                     const HingeTerms& h);

/// -sum over unordered pairs with m_ij > 0 of m_ij * log(max(d_cos, 1e-8)),
/// d_cos = 1 - cos(c_i, c_j). Each unordered pair counted once.
double loss_confliction(const ClassConflictMatrix& ccm, const Matrix& cls);

double loss_membership(const Matrix& ent, const Matrix& cls, const Matrix& w_member,
                       const std::vector<double>& b_member, std::span<const MemberLink> pos,
                       std::span<const MemberLink> neg, const HingeTerms& h);

double loss_alignment(const Matrix& ent1, const Matrix& ent2, const Matrix& w_align,
                      std::span<const SeedPair> seeds);

// -- loss + analytic gradients ---------------------------------------------
// Gradients accumulate into the given containers (callers clear them); the
// loss value is returned. Subgradient 0 is used at hinge kinks, at the L2
// origin and inside the log clamp.

double loss_entity_grad(const Matrix& ent, const Matrix& rel, std::span<const Triple> pos,
                        std::span<const Triple> neg, const HingeTerms& h, RowGrads& g_ent,
                        RowGrads& g_rel);

double loss_ontology_grad(const Matrix& cls, const Matrix& w_onto,
                          const std::vector<double>& b_onto, std::span<const ClassPair> pos,
                          std::span<const ClassPair> neg, const HingeTerms& h, RowGrads& g_cls,
                          Matrix& g_w, std::vector<double>& g_b);

double loss_confliction_grad(const ClassConflictMatrix& ccm, const Matrix& cls, Matrix& g_cls);

double loss_membership_grad(const Matrix& ent, const Matrix& cls, const Matrix& w_member,
                            const std::vector<double>& b_member, std::span<const MemberLink> pos,
                            std::span<const MemberLink> neg, const HingeTerms& h, RowGrads& g_ent,
                            RowGrads& g_cls, Matrix& g_w, std::vector<double>& g_b);

double loss_alignment_grad(const Matrix& ent1, const Matrix& ent2, const Matrix& w_align,
                           std::span<const SeedPair> seeds, RowGrads& g_e1, RowGrads& g_e2,
                           Matrix& g_w);

} // namespace ontoea
