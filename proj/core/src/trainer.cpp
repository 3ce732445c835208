#include "ontoea/trainer.hpp"

#include "ontoea/errors.hpp"
#include "ontoea/losses.hpp"
#include "ontoea/predictor.hpp"
#include "ontoea/rng.hpp"
#include "ontoea/sampler.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

namespace ontoea {

namespace {

constexpr int kNeighborRefreshEvery = 5;

void check_finite(double loss, const char* name, int iteration) {
    if (!std::isfinite(loss)) {
        throw NumericError(std::string("non-finite ") + name + " loss at iteration " +
                           std::to_string(iteration));
    }
}

class CotrainRun {
public:
    CotrainRun(const AlignmentDataset& ds, const ClassConflictMatrix& ccm, const HyperParams& hp,
               const CotrainOptions& opts)
        : ds_(ds), ccm_(ccm), hp_(hp), opts_(opts), rng_(hp.rng_seed) {
        auto violations = hp_.validate();
        if (!violations.empty()) {
            std::string msg = "invalid hyperparameters:";
            for (const auto& v : violations) msg += " " + v + ";";
            throw ConfigError(msg);
        }
        params_ = init_params(ds_, hp_, rng_, opts_.word_vectors, &result_.init_stats);
        opt_ = std::make_unique<AdaGradState>(params_);

        member_links_.reserve(ds_.memberships.link_count());
        for (KgSide side : {KgSide::kg1, KgSide::kg2}) {
            for (const auto& link : ds_.memberships.links(side)) {
                member_links_.emplace_back(side, link);
            }
        }
    }

    TrainResult run() {
        const bool has_validation =
            opts_.validation_override || !ds_.seeds_valid.empty();
        double best = -std::numeric_limits<double>::infinity();
        int no_improve = 0;
        bool have_best = false;

        int iter = 1;
        for (; iter <= hp_.max_iterations; ++iter) {
            if ((iter - 1) % kNeighborRefreshEvery == 0) refresh_neighbors();

            LogRow row;
            row.iteration = iter;
            row.loss_entity = entity_epoch(KgSide::kg1) + entity_epoch(KgSide::kg2);
            check_finite(row.loss_entity, "entity", iter);
            row.loss_onto = ontology_epoch();
            check_finite(row.loss_onto, "ontology", iter);
            row.loss_conflict = confliction_pass();
            check_finite(row.loss_conflict, "confliction", iter);
            row.loss_member = membership_epoch();
            check_finite(row.loss_member, "membership", iter);
            row.loss_align = alignment_pass();
            check_finite(row.loss_align, "alignment", iter);

            if (has_validation && iter % hp_.eval_every == 0) {
                row.valid_mrr = validation_mrr(iter);
                result_.log.push_back(row);
                if (opts_.progress) {
                    *opts_.progress << "iter " << iter << "  L_E=" << row.loss_entity
                                    << "  L_O=" << row.loss_onto << "  L_C=" << row.loss_conflict
                                    << "  L_M=" << row.loss_member << "  L_A=" << row.loss_align
                                    << "  valid_mrr=" << row.valid_mrr << '\n';
                }
                if (row.valid_mrr > best) {
                    best = row.valid_mrr;
                    result_.best_params = params_;
                    result_.best_valid_mrr = row.valid_mrr;
                    result_.best_iteration = iter;
                    have_best = true;
                    no_improve = 0;
                } else {
                    ++no_improve;
                    if (no_improve >= hp_.patience) break;
                }
            }
        }
        result_.stopped_iteration = std::min(iter, hp_.max_iterations);
        if (!have_best) {
            result_.best_params = params_;
            result_.best_valid_mrr = 0.0;
            result_.best_iteration = result_.stopped_iteration;
            if (!result_.log.empty()) result_.best_valid_mrr = result_.log.back().valid_mrr;
        }
        result_.rng_state = rng_.save_state();
        return std::move(result_);
    }

private:
    void refresh_neighbors() {
        neighbors1_ = NeighborTable::build(params_.ent1, hp_.epsilon_trunc);
        neighbors2_ = NeighborTable::build(params_.ent2, hp_.epsilon_trunc);
    }

    void normalize_touched(Matrix& table, const RowGrads& grads) {
        for (const auto& [r, g] : grads.rows()) normalize_inplace(table.row(r));
    }

    double entity_epoch(KgSide side) {
        const KnowledgeGraph& kg = ds_.kg(side);
        if (kg.triples().empty()) return 0.0;
        Matrix& ent = params_.entities(side);
        Matrix& rel = params_.relations(side);
        Matrix& acc_ent = side == KgSide::kg1 ? opt_->ent1 : opt_->ent2;
        Matrix& acc_rel = side == KgSide::kg1 ? opt_->rel1 : opt_->rel2;
        const NeighborTable& neighbors = side == KgSide::kg1 ? neighbors1_ : neighbors2_;

        std::vector<Triple> order = kg.triples();
        rng_.shuffle(order);

        double loss = 0.0;
        RowGrads g_ent(ent.cols()), g_rel(rel.cols());
        const std::size_t batch = static_cast<std::size_t>(hp_.batch_entity);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::size_t count = std::min(batch, order.size() - start);
            std::span<const Triple> pos(order.data() + start, count);
            std::vector<Triple> neg =
                sample_neg_triples(pos, kg, neighbors, hp_.neg_per_pos, rng_);
            g_ent.clear();
            g_rel.clear();
            loss += loss_entity_grad(ent, rel, pos, neg, hp_.hinge_entity, g_ent, g_rel);
            adagrad_step_rows(ent, acc_ent, g_ent, hp_.learning_rate);
            adagrad_step_rows(rel, acc_rel, g_rel, hp_.learning_rate);
            normalize_touched(ent, g_ent);
        }
        return loss;
    }

    double ontology_epoch() {
        const auto& pairs = ds_.ontology.subclass_pairs();
        if (pairs.empty()) return 0.0;
        std::vector<ClassPair> order = pairs;
        rng_.shuffle(order);

        double loss = 0.0;
        RowGrads g_cls(params_.cls.cols());
        Matrix g_w(params_.w_onto.rows(), params_.w_onto.cols());
        std::vector<double> g_b(params_.b_onto.size(), 0.0);
        const std::size_t batch = static_cast<std::size_t>(hp_.batch_onto);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::size_t count = std::min(batch, order.size() - start);
            std::span<const ClassPair> pos(order.data() + start, count);
            std::vector<ClassPair> neg =
                sample_neg_subclass(pos, ds_.ontology, hp_.neg_per_pos_onto, rng_);
            g_cls.clear();
            g_w.fill(0.0);
            g_b.assign(g_b.size(), 0.0);
            loss += loss_ontology_grad(params_.cls, params_.w_onto, params_.b_onto, pos, neg,
                                       hp_.hinge_onto, g_cls, g_w, g_b);
            adagrad_step_rows(params_.cls, opt_->cls, g_cls, hp_.learning_rate);
            adagrad_step_dense(params_.w_onto, opt_->w_onto, g_w, hp_.learning_rate);
            adagrad_step_dense(params_.b_onto, opt_->b_onto, g_b, hp_.learning_rate);
        }
        return loss;
    }

    double confliction_pass() {
        Matrix g_cls(params_.cls.rows(), params_.cls.cols());
        double loss = loss_confliction_grad(ccm_, params_.cls, g_cls);
        if (hp_.lambda_conflict > 0.0) {
            adagrad_step_dense(params_.cls, opt_->cls, g_cls, hp_.learning_rate,
                               hp_.lambda_conflict);
        }
        return loss;
    }

    double membership_epoch() {
        if (member_links_.empty()) return 0.0;
        std::vector<std::pair<KgSide, MemberLink>> order = member_links_;
        rng_.shuffle(order);

        double loss = 0.0;
        RowGrads g_e1(params_.ent1.cols()), g_e2(params_.ent2.cols());
        RowGrads g_cls(params_.cls.cols());
        Matrix g_w(params_.w_member.rows(), params_.w_member.cols());
        std::vector<double> g_b(params_.b_member.size(), 0.0);
        std::vector<MemberLink> pos1, pos2;
        const std::size_t batch = static_cast<std::size_t>(hp_.batch_entity);
        const bool update = hp_.lambda_member > 0.0;

        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::size_t count = std::min(batch, order.size() - start);
            pos1.clear();
            pos2.clear();
            for (std::size_t i = start; i < start + count; ++i) {
                (order[i].first == KgSide::kg1 ? pos1 : pos2).push_back(order[i].second);
            }
            g_e1.clear();
            g_e2.clear();
            g_cls.clear();
            g_w.fill(0.0);
            g_b.assign(g_b.size(), 0.0);
            if (!pos1.empty()) {
                std::vector<MemberLink> neg =
                    sample_neg_membership(pos1, KgSide::kg1, ds_.memberships,
                                          params_.cls.rows(), hp_.neg_per_pos_onto, rng_);
                loss += loss_membership_grad(params_.ent1, params_.cls, params_.w_member,
                                             params_.b_member, pos1, neg, hp_.hinge_member, g_e1,
                                             g_cls, g_w, g_b);
            }
            if (!pos2.empty()) {
                std::vector<MemberLink> neg =
                    sample_neg_membership(pos2, KgSide::kg2, ds_.memberships,
                                          params_.cls.rows(), hp_.neg_per_pos_onto, rng_);
                loss += loss_membership_grad(params_.ent2, params_.cls, params_.w_member,
                                             params_.b_member, pos2, neg, hp_.hinge_member, g_e2,
                                             g_cls, g_w, g_b);
            }
            if (update) {
                const double lr = hp_.learning_rate;
                const double scale = hp_.lambda_member;
                adagrad_step_rows(params_.ent1, opt_->ent1, g_e1, lr, scale);
                adagrad_step_rows(params_.ent2, opt_->ent2, g_e2, lr, scale);
                adagrad_step_rows(params_.cls, opt_->cls, g_cls, lr, scale);
                adagrad_step_dense(params_.w_member, opt_->w_member, g_w, lr, scale);
                adagrad_step_dense(params_.b_member, opt_->b_member, g_b, lr, scale);
                normalize_touched(params_.ent1, g_e1);
                normalize_touched(params_.ent2, g_e2);
            }
        }
        return loss;
    }

    double alignment_pass() {
        if (ds_.seeds_train.empty()) return 0.0;
        RowGrads g_e1(params_.ent1.cols()), g_e2(params_.ent2.cols());
        Matrix g_w(params_.w_align.rows(), params_.w_align.cols());
        double loss = loss_alignment_grad(params_.ent1, params_.ent2, params_.w_align,
                                          ds_.seeds_train.pairs(), g_e1, g_e2, g_w);
        if (hp_.lambda_align > 0.0) {
            const double lr = hp_.learning_rate;
            const double scale = hp_.lambda_align;
            adagrad_step_rows(params_.ent1, opt_->ent1, g_e1, lr, scale);
            adagrad_step_rows(params_.ent2, opt_->ent2, g_e2, lr, scale);
            adagrad_step_dense(params_.w_align, opt_->w_align, g_w, lr, scale);
            normalize_touched(params_.ent1, g_e1);
            normalize_touched(params_.ent2, g_e2);
        }
        return loss;
    }

    double validation_mrr(int iteration) {
        if (opts_.validation_override) return opts_.validation_override(params_, iteration);
        RankingResult r = rank_split(ds_, params_, ds_.seeds_valid, hp_.beta, opts_.csls_k, 1);
        return r.metrics.mrr;
    }

    const AlignmentDataset& ds_;
    const ClassConflictMatrix& ccm_;
    HyperParams hp_;
    CotrainOptions opts_;
    Rng rng_;
    ModelParams params_;
    std::unique_ptr<AdaGradState> opt_;
    NeighborTable neighbors1_, neighbors2_;
    std::vector<std::pair<KgSide, MemberLink>> member_links_;
    TrainResult result_;
};

} // namespace

TrainResult cotrain(const AlignmentDataset& ds, const ClassConflictMatrix& ccm,
                    const HyperParams& hp, const CotrainOptions& opts) {
    return CotrainRun(ds, ccm, hp, opts).run();
}

void write_train_log_csv(std::ostream& os, const std::vector<LogRow>& log) {
    os.precision(17);
    os << "iteration,loss_entity,loss_onto,loss_conflict,loss_member,loss_align,valid_mrr\n";
    for (const LogRow& row : log) {
        os << row.iteration << ',' << row.loss_entity << ',' << row.loss_onto << ','
           << row.loss_conflict << ',' << row.loss_member << ',' << row.loss_align << ','
           << row.valid_mrr << '\n';
    }
}

} // namespace ontoea
