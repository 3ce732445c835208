#pragma once

#include "ontoea/dataset.hpp"
#include "ontoea/hyperparams.hpp"
#include "ontoea/matrix.hpp"
#include "ontoea/rng.hpp"
#include "ontoea/wordvec.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ontoea {

/// All learnable tensors. Entity rows are kept L2-normalized after every
/// optimizer step that touches them; class rows are not normalized.
struct ModelParams {
    Matrix ent1;       // |E1| x d_e
    Matrix ent2;       // |E2| x d_e
    Matrix rel1;       // |R1| x d_e
    Matrix rel2;       // |R2| x d_e
    Matrix cls;        // |C|  x d_o
    Matrix w_onto;     // d_o x d_o
    std::vector<double> b_onto;    // d_o
    Matrix w_member;   // d_e x d_o (maps entity space into ontology space)
    std::vector<double> b_member;  // d_o
    Matrix w_align;    // d_e x d_e

    Matrix& entities(KgSide side) { return side == KgSide::kg1 ? ent1 : ent2; }
    const Matrix& entities(KgSide side) const { return side == KgSide::kg1 ? ent1 : ent2; }
    Matrix& relations(KgSide side) { return side == KgSide::kg1 ? rel1 : rel2; }

    bool all_finite() const;
};

struct InitStats {
    std::size_t si_hits = 0;       // rows initialized from word vectors
    std::size_t si_fallbacks = 0;  // named rows that fell back to random init
};

/// Random initialization: uniform(-6/sqrt(d), 6/sqrt(d)) per coordinate, then
/// row-normalized for the embedding tables. Transforms start identity-like,
/// biases at zero. When word vectors are given, entity/relation/class rows
/// whose names hit the vocabulary are overridden by the (normalized) token
/// average; the vector width must equal the table dimension to apply.
ModelParams init_params(const AlignmentDataset& ds, const HyperParams& hp, Rng& rng,
                        const WordVectorTable* word_vectors = nullptr,
                        InitStats* stats = nullptr);

/// Per-parameter squared-gradient accumulators for AdaGrad.
struct AdaGradState {
    Matrix ent1, ent2, rel1, rel2, cls, w_onto, w_member, w_align;
    std::vector<double> b_onto, b_member;

    static constexpr double kEpsilon = 1e-8;

    explicit AdaGradState(const ModelParams& p);

    Matrix& accumulator_for(const ModelParams& p, const Matrix& m);
};

/// One AdaGrad update: acc += g^2; theta -= lr * g / (sqrt(acc) + 1e-8).
void adagrad_step(std::span<double> theta, std::span<double> acc, std::span<const double> grad,
                  double lr);

/// Sparse per-row gradient accumulator over one embedding table.
class RowGrads {
public:
    explicit RowGrads(std::size_t cols = 0) : cols_(cols) {}

    void reset(std::size_t cols) {
        cols_ = cols;
        rows_.clear();
    }

    std::span<double> row(std::uint32_t r) {
        auto [it, fresh] = rows_.try_emplace(r);
        if (fresh) it->second.assign(cols_, 0.0);
        return it->second;
    }

    const std::map<std::uint32_t, std::vector<double>>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    void clear() { rows_.clear(); }

private:
    std::size_t cols_ = 0;
    std::map<std::uint32_t, std::vector<double>> rows_;
};

/// Applies accumulated row gradients (optionally scaled) with AdaGrad.
void adagrad_step_rows(Matrix& param, Matrix& acc, const RowGrads& grads, double lr,
                       double scale = 1.0);

/// Dense AdaGrad step over a whole matrix / vector.
void adagrad_step_dense(Matrix& param, Matrix& acc, const Matrix& grads, double lr,
                        double scale = 1.0);
void adagrad_step_dense(std::vector<double>& param, std::vector<double>& acc,
                        const std::vector<double>& grads, double lr, double scale = 1.0);

/// Versioned binary checkpoint: hyperparameters, all tensors, RNG state.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const HyperParams& hp, const std::string& rng_state);
struct Checkpoint {
    ModelParams params;
    HyperParams hp;
    std::string rng_state;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace ontoea
