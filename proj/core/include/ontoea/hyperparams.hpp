#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ontoea {

/// Margin/limit hinge parameters for one loss family.
struct HingeTerms {
    double gamma1 = 0.01;   // relative margin
    double gamma2 = 2.0;    // absolute cap on the positive score
    double alpha = 0.2;     // weight of the limit hinge
};

/// All training hyperparameters. Defaults are the published configuration:
/// AdaGrad at 0.01, batches 4500/64, both dimensions 300, loss weights
/// (1, 1, 5), prediction mix 0.5 and hinge terms (0.01, 2.0, 0.2).
struct HyperParams {
    int dim_entity = 300;
    int dim_onto = 300;

    HingeTerms hinge_entity;
    HingeTerms hinge_onto;
    HingeTerms hinge_member;

    double lambda_conflict = 1.0;  // weight of the confliction loss
    double lambda_member = 1.0;    // weight of the membership loss
    double lambda_align = 5.0;     // weight of the alignment loss
    double beta = 0.5;             // prediction mix of entity vs class cosine

    double learning_rate = 0.01;
    int batch_entity = 4500;
    int batch_onto = 64;

    double epsilon_trunc = 0.9;    // truncated negative-sampling parameter
    int neg_per_pos = 10;          // negatives per positive triple
    int neg_per_pos_onto = 1;      // negatives per positive subclass/membership pair

    int max_iterations = 500;
    int patience = 3;
    int eval_every = 10;
    std::uint64_t rng_seed = 1;

    /// All invariant violations, empty when valid.
    std::vector<std::string> validate() const;
};

} // namespace ontoea
