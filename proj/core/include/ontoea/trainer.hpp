#pragma once

#include "ontoea/ccm.hpp"
#include "ontoea/dataset.hpp"
#include "ontoea/hyperparams.hpp"
#include "ontoea/model.hpp"
#include "ontoea/wordvec.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ontoea {

/// One training-log row, emitted at every validation point. Loss values are
/// the unweighted per-iteration sums.
struct LogRow {
    int iteration = 0;
    double loss_entity = 0.0;
    double loss_onto = 0.0;
    double loss_conflict = 0.0;
    double loss_member = 0.0;
    double loss_align = 0.0;
    double valid_mrr = 0.0;
};

struct TrainResult {
    ModelParams best_params;
    double best_valid_mrr = 0.0;
    int best_iteration = 0;
    int stopped_iteration = 0;
    std::vector<LogRow> log;
    std::string rng_state;
    InitStats init_stats;
};

struct CotrainOptions {
    /// Surface-information initialization when non-null.
    const WordVectorTable* word_vectors = nullptr;
    /// Nearest-neighbor scaling parameter for validation ranking.
    int csls_k = 10;
    /// Progress lines (one per evaluation) when non-null.
    std::ostream* progress = nullptr;
    /// Test hook: replaces the validation-MRR computation.
    std::function<double(const ModelParams&, int iteration)> validation_override;
};

/// Iterative co-training: per outer iteration one epoch of the entity loss
/// per KG and one of the ontology loss, then a full confliction pass, a
/// membership epoch, and a full alignment pass. Validation MRR is computed
/// every eval_every iterations; training stops when it fails to improve for
/// `patience` consecutive evaluations or at max_iterations, returning the
/// best checkpoint. Throws NumericError when any loss turns non-finite.
TrainResult cotrain(const AlignmentDataset& ds, const ClassConflictMatrix& ccm,
                    const HyperParams& hp, const CotrainOptions& opts = {});

void write_train_log_csv(std::ostream& os, const std::vector<LogRow>& log);

} // namespace ontoea
