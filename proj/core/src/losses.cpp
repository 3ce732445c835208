#include "ontoea/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace ontoea {

namespace {

constexpr double kNormGuard = 1e-12; // below this, L2 norms get subgradient 0
constexpr double kLogClamp = 1e-8;   // floor inside the confliction log

std::size_t negatives_per_positive(std::size_t n_pos, std::size_t n_neg) {
    if (n_pos == 0) return 0;
    if (n_neg % n_pos != 0) {
        throw std::invalid_argument("negative batch not aligned to positives");
    }
    return n_neg / n_pos;
}

struct HingeCoeffs {
    double on_pos; // dL/df_pos
    double on_neg; // dL/df_neg
};

HingeCoeffs hinge_coeffs(double f_pos, double f_neg, const HingeTerms& h) {
    const bool margin_active = (h.gamma1 + f_pos - f_neg) > 0.0;
    const bool limit_active = (f_pos - h.gamma2) > 0.0;
    return {(margin_active ? 1.0 : 0.0) + (limit_active ? h.alpha : 0.0),
            margin_active ? -1.0 : 0.0};
}

/// Forward pass of the tanh scores: z, a = tanh(z), u = a - target, f = ||u||.
struct TanhForward {
    std::vector<double> activation;
    std::vector<double> diff;
    double f = 0.0;

    void run(std::span<const double> z_affine, std::span<const double> target) {
        activation.resize(z_affine.size());
        diff.resize(z_affine.size());
        double s = 0.0;
        for (std::size_t i = 0; i < z_affine.size(); ++i) {
            activation[i] = std::tanh(z_affine[i]);
            diff[i] = activation[i] - target[i];
            s += diff[i] * diff[i];
        }
        f = std::sqrt(s);
    }
};

} // namespace

double score_triple(std::span<const double> h, std::span<const double> r,
                    std::span<const double> t) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        double v = h[i] + r[i] - t[i];
        s += v * v;
    }
    return std::sqrt(s);
}

double score_subclass(std::span<const double> c_head, std::span<const double> c_tail,
                      const Matrix& w_onto, std::span<const double> b_onto) {
    std::vector<double> z(b_onto.begin(), b_onto.end());
    for (std::size_t i = 0; i < w_onto.rows(); ++i) z[i] += dot(w_onto.row(i), c_head);
    TanhForward fwd;
    fwd.run(z, c_tail);
    return fwd.f;
}

double score_membership(std::span<const double> e, std::span<const double> c,
                        const Matrix& w_member, std::span<const double> b_member) {
    std::vector<double> z(b_member.begin(), b_member.end());
    for (std::size_t i = 0; i < w_member.rows(); ++i) axpy(e[i], w_member.row(i), z);
    TanhForward fwd;
    fwd.run(z, c);
    return fwd.f;
}

double score_alignment(std::span<const double> e1, std::span<const double> e2,
                       const Matrix& w_align) {
    double s = 0.0;
    for (std::size_t i = 0; i < w_align.rows(); ++i) {
        double v = dot(w_align.row(i), e1) - e2[i];
        s += v * v;
    }
    return std::sqrt(s);
}

// -- value-only batched losses ------------------------------------------------
// Kept independent of the gradient path; the finite-difference checks compare
// the two against each other.

double loss_entity(const Matrix& ent, const Matrix& rel, std::span<const Triple> pos,
                   std::span<const Triple> neg, const HingeTerms& h) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        const Triple& p = pos[ip];
        double f_pos = score_triple(ent.row(p.head.value), rel.row(p.relation.value),
                                    ent.row(p.tail.value));
        for (std::size_t j = 0; j < npp; ++j) {
            const Triple& q = neg[ip * npp + j];
            double f_neg = score_triple(ent.row(q.head.value), rel.row(q.relation.value),
                                        ent.row(q.tail.value));
            loss += hinge_pair_loss(f_pos, f_neg, h);
        }
    }
    return loss;
}

double loss_ontology(const Matrix& cls, const Matrix& w_onto, const std::vector<double>& b_onto,
                     std::span<const ClassPair> pos, std::span<const ClassPair> neg,
                     const HingeTerms& h) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        double f_pos = score_subclass(cls.row(pos[ip].first.value), cls.row(pos[ip].second.value),
                                      w_onto, b_onto);
        for (std::size_t j = 0; j < npp; ++j) {
            const ClassPair& q = neg[ip * npp + j];
            double f_neg =
                score_subclass(cls.row(q.first.value), cls.row(q.second.value), w_onto, b_onto);
            loss += hinge_pair_loss(f_pos, f_neg, h);
        }
    }
    return loss;
}

double loss_confliction(const ClassConflictMatrix& ccm, const Matrix& cls) {
    double loss = 0.0;
    const std::size_t n = ccm.class_count();
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double m = ccm.at(ClassId{i}, ClassId{j});
            if (m <= 0.0) continue;
            double d = 1.0 - cosine(cls.row(i), cls.row(j));
            loss -= m * std::log(d > kLogClamp ? d : kLogClamp);
        }
    }
    return loss;
}

double loss_membership(const Matrix& ent, const Matrix& cls, const Matrix& w_member,
                       const std::vector<double>& b_member, std::span<const MemberLink> pos,
                       std::span<const MemberLink> neg, const HingeTerms& h) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        double f_pos = score_membership(ent.row(pos[ip].first.value),
                                        cls.row(pos[ip].second.value), w_member, b_member);
        for (std::size_t j = 0; j < npp; ++j) {
            const MemberLink& q = neg[ip * npp + j];
            double f_neg = score_membership(ent.row(q.first.value), cls.row(q.second.value),
                                            w_member, b_member);
            loss += hinge_pair_loss(f_pos, f_neg, h);
        }
    }
    return loss;
}

double loss_alignment(const Matrix& ent1, const Matrix& ent2, const Matrix& w_align,
                      std::span<const SeedPair> seeds) {
    double loss = 0.0;
    for (const SeedPair& s : seeds) {
        loss += score_alignment(ent1.row(s.first.value), ent2.row(s.second.value), w_align);
    }
    return loss;
}

// -- gradients ------------------------------------------------------------------

namespace {

/// Adds coef * (h + r - t)/f to the triple's embedding gradients.
void accumulate_triple_grad(const Matrix& ent, const Matrix& rel, const Triple& t, double f,
                            double coef, RowGrads& g_ent, RowGrads& g_rel) {
    if (coef == 0.0 || f < kNormGuard) return;
    auto h_row = ent.row(t.head.value);
    auto r_row = rel.row(t.relation.value);
    auto t_row = ent.row(t.tail.value);
    const double c = coef / f;
    auto gh = g_ent.row(t.head.value);
    auto gr = g_rel.row(t.relation.value);
    auto gt = g_ent.row(t.tail.value);
    for (std::size_t i = 0; i < h_row.size(); ++i) {
        double v = c * (h_row[i] + r_row[i] - t_row[i]);
        gh[i] += v;
        gr[i] += v;
        gt[i] -= v;
    }
}

/// Shared backward pass of the two tanh scores. `w_times_head` selects the
/// forward orientation: true for z = W x + b (subclass), false for
/// z = W^T x + b (membership).
struct TanhBackward {
    std::vector<double> gz;     // (dL/df) * u/f ⊙ (1 - a^2)
    std::vector<double> scratch;

    void apply(const TanhForward& fwd, double coef, const Matrix& w, bool w_times_head,
               std::span<const double> head_in, std::span<double> g_head,
               std::span<double> g_tail, Matrix& g_w, std::vector<double>& g_b) {
        if (coef == 0.0 || fwd.f < kNormGuard) return;
        const double c = coef / fwd.f;
        const std::size_t d_out = fwd.diff.size();
        gz.resize(d_out);
        for (std::size_t i = 0; i < d_out; ++i) {
            double g = c * fwd.diff[i];
            g_tail[i] -= g;
            gz[i] = g * (1.0 - fwd.activation[i] * fwd.activation[i]);
            g_b[i] += gz[i];
        }
        if (w_times_head) {
            // z_i = sum_j W(i,j) head_j
            scratch.assign(head_in.size(), 0.0);
            for (std::size_t i = 0; i < d_out; ++i) {
                axpy(gz[i], head_in, g_w.row(i));
                axpy(gz[i], w.row(i), scratch);
            }
            for (std::size_t j = 0; j < head_in.size(); ++j) g_head[j] += scratch[j];
        } else {
            // z_j = sum_i W(i,j) head_i
            for (std::size_t i = 0; i < head_in.size(); ++i) {
                axpy(head_in[i], gz, g_w.row(i));
                g_head[i] += dot(w.row(i), gz);
            }
        }
    }
};

} // namespace

double loss_entity_grad(const Matrix& ent, const Matrix& rel, std::span<const Triple> pos,
                        std::span<const Triple> neg, const HingeTerms& h, RowGrads& g_ent,
                        RowGrads& g_rel) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        const Triple& p = pos[ip];
        double f_pos = score_triple(ent.row(p.head.value), rel.row(p.relation.value),
                                    ent.row(p.tail.value));
        for (std::size_t j = 0; j < npp; ++j) {
            const Triple& q = neg[ip * npp + j];
            double f_neg = score_triple(ent.row(q.head.value), rel.row(q.relation.value),
                                        ent.row(q.tail.value));
            loss += hinge_pair_loss(f_pos, f_neg, h);
            HingeCoeffs c = hinge_coeffs(f_pos, f_neg, h);
            accumulate_triple_grad(ent, rel, p, f_pos, c.on_pos, g_ent, g_rel);
            accumulate_triple_grad(ent, rel, q, f_neg, c.on_neg, g_ent, g_rel);
        }
    }
    return loss;
}

double loss_ontology_grad(const Matrix& cls, const Matrix& w_onto,
                          const std::vector<double>& b_onto, std::span<const ClassPair> pos,
                          std::span<const ClassPair> neg, const HingeTerms& h, RowGrads& g_cls,
                          Matrix& g_w, std::vector<double>& g_b) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    std::vector<double> z;
    TanhForward fwd_pos, fwd_neg;
    TanhBackward bwd;
    auto forward = [&](const ClassPair& pair, TanhForward& fwd) {
        z.assign(b_onto.begin(), b_onto.end());
        auto head = cls.row(pair.first.value);
        for (std::size_t i = 0; i < w_onto.rows(); ++i) z[i] += dot(w_onto.row(i), head);
        fwd.run(z, cls.row(pair.second.value));
    };
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        forward(pos[ip], fwd_pos);
        for (std::size_t j = 0; j < npp; ++j) {
            const ClassPair& q = neg[ip * npp + j];
            forward(q, fwd_neg);
            loss += hinge_pair_loss(fwd_pos.f, fwd_neg.f, h);
            HingeCoeffs c = hinge_coeffs(fwd_pos.f, fwd_neg.f, h);
            bwd.apply(fwd_pos, c.on_pos, w_onto, true, cls.row(pos[ip].first.value),
                      g_cls.row(pos[ip].first.value), g_cls.row(pos[ip].second.value), g_w, g_b);
            bwd.apply(fwd_neg, c.on_neg, w_onto, true, cls.row(q.first.value),
                      g_cls.row(q.first.value), g_cls.row(q.second.value), g_w, g_b);
        }
    }
    return loss;
}

double loss_confliction_grad(const ClassConflictMatrix& ccm, const Matrix& cls, Matrix& g_cls) {
    double loss = 0.0;
    const std::size_t n = ccm.class_count();
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double m = ccm.at(ClassId{i}, ClassId{j});
            if (m <= 0.0) continue;
            auto ci = cls.row(i);
            auto cj = cls.row(j);
            double na = norm2(ci);
            double nb = norm2(cj);
            if (na < kNormGuard || nb < kNormGuard) {
                // cosine treated as 0, d = 1, log term 0
                continue;
            }
            double cos = dot(ci, cj) / (na * nb);
            double d = 1.0 - cos;
            if (d <= kLogClamp) {
                loss -= m * std::log(kLogClamp);
                continue; // inside the clamp, flat
            }
            loss -= m * std::log(d);
            const double coef = m / d; // dL/dcos
            auto gi = g_cls.row(i);
            auto gj = g_cls.row(j);
            const double inv = 1.0 / (na * nb);
            for (std::size_t k = 0; k < ci.size(); ++k) {
                gi[k] += coef * (cj[k] * inv - cos * ci[k] / (na * na));
                gj[k] += coef * (ci[k] * inv - cos * cj[k] / (nb * nb));
            }
        }
    }
    return loss;
}

double loss_membership_grad(const Matrix& ent, const Matrix& cls, const Matrix& w_member,
                            const std::vector<double>& b_member, std::span<const MemberLink> pos,
                            std::span<const MemberLink> neg, const HingeTerms& h, RowGrads& g_ent,
                            RowGrads& g_cls, Matrix& g_w, std::vector<double>& g_b) {
    const std::size_t npp = negatives_per_positive(pos.size(), neg.size());
    double loss = 0.0;
    std::vector<double> z;
    TanhForward fwd_pos, fwd_neg;
    TanhBackward bwd;
    auto forward = [&](const MemberLink& link, TanhForward& fwd) {
        z.assign(b_member.begin(), b_member.end());
        auto e_row = ent.row(link.first.value);
        for (std::size_t i = 0; i < w_member.rows(); ++i) axpy(e_row[i], w_member.row(i), z);
        fwd.run(z, cls.row(link.second.value));
    };
    for (std::size_t ip = 0; ip < pos.size(); ++ip) {
        forward(pos[ip], fwd_pos);
        for (std::size_t j = 0; j < npp; ++j) {
            const MemberLink& q = neg[ip * npp + j];
            forward(q, fwd_neg);
            loss += hinge_pair_loss(fwd_pos.f, fwd_neg.f, h);
            HingeCoeffs c = hinge_coeffs(fwd_pos.f, fwd_neg.f, h);
            bwd.apply(fwd_pos, c.on_pos, w_member, false, ent.row(pos[ip].first.value),
                      g_ent.row(pos[ip].first.value), g_cls.row(pos[ip].second.value), g_w, g_b);
            bwd.apply(fwd_neg, c.on_neg, w_member, false, ent.row(q.first.value),
                      g_ent.row(q.first.value), g_cls.row(q.second.value), g_w, g_b);
        }
    }
    return loss;
}

double loss_alignment_grad(const Matrix& ent1, const Matrix& ent2, const Matrix& w_align,
                           std::span<const SeedPair> seeds, RowGrads& g_e1, RowGrads& g_e2,
                           Matrix& g_w) {
    double loss = 0.0;
    std::vector<double> u(w_align.rows());
    for (const SeedPair& s : seeds) {
        auto e1 = ent1.row(s.first.value);
        auto e2 = ent2.row(s.second.value);
        double sq = 0.0;
        for (std::size_t i = 0; i < w_align.rows(); ++i) {
            u[i] = dot(w_align.row(i), e1) - e2[i];
            sq += u[i] * u[i];
        }
        double f = std::sqrt(sq);
        loss += f;
        if (f < kNormGuard) continue;
        auto ge1 = g_e1.row(s.first.value);
        auto ge2 = g_e2.row(s.second.value);
        for (std::size_t i = 0; i < u.size(); ++i) {
            double g = u[i] / f;
            ge2[i] -= g;
            axpy(g, e1, g_w.row(i));
            axpy(g, w_align.row(i), ge1);
        }
    }
    return loss;
}

} // namespace ontoea
