#include "ontoea/hyperparams.hpp"

namespace ontoea {

namespace {

void check_hinge(const HingeTerms& h, const char* name, std::vector<std::string>& out) {
    if (h.gamma1 <= 0) out.push_back(std::string("gamma1_") + name + " must be > 0");
    if (h.gamma2 <= 0) out.push_back(std::string("gamma2_") + name + " must be > 0");
    if (h.alpha < 0 || h.alpha > 1) out.push_back(std::string("alpha_") + name + " must be in [0,1]");
}

} // namespace

std::vector<std::string> HyperParams::validate() const {
    std::vector<std::string> out;
    if (dim_entity <= 0) out.push_back("dim_entity must be > 0");
    if (dim_onto <= 0) out.push_back("dim_onto must be > 0");
    check_hinge(hinge_entity, "entity", out);
    check_hinge(hinge_onto, "onto", out);
    check_hinge(hinge_member, "member", out);
    if (lambda_conflict < 0) out.push_back("lambda_conflict must be >= 0");
    if (lambda_member < 0) out.push_back("lambda_member must be >= 0");
    if (lambda_align < 0) out.push_back("lambda_align must be >= 0");
    if (beta < 0 || beta > 1) out.push_back("beta must be in [0,1]");
    if (learning_rate <= 0) out.push_back("learning_rate must be > 0");
    if (batch_entity < 1) out.push_back("batch_entity must be >= 1");
    if (batch_onto < 1) out.push_back("batch_onto must be >= 1");
    if (epsilon_trunc < 0 || epsilon_trunc >= 1) out.push_back("epsilon_trunc must be in [0,1)");
    if (neg_per_pos < 1) out.push_back("neg_per_pos must be >= 1");
    if (neg_per_pos_onto < 1) out.push_back("neg_per_pos_onto must be >= 1");
    if (max_iterations < 1) out.push_back("max_iterations must be >= 1");
    if (patience < 1) out.push_back("patience must be >= 1");
    if (eval_every < 1) out.push_back("eval_every must be >= 1");
    return out;
}

} // namespace ontoea
