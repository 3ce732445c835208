#include "ontoea/model.hpp"

#include "ontoea/errors.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace ontoea {

namespace {

bool finite_span(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

bool finite_matrix(const Matrix& m) {
    return finite_span({m.data(), m.size()});
}

void random_rows(Matrix& m, Rng& rng) {
    if (m.cols() == 0) return;
    double bound = 6.0 / std::sqrt(double(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        for (double& x : row) x = rng.uniform_real(-bound, bound);
        normalize_inplace(row);
    }
}

void si_override(Matrix& table, const Interner& names, const WordVectorTable& wv,
                 InitStats* stats) {
    if (wv.dim() != table.cols()) return;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        auto emb = wv.name_embedding(local_name(names.name(static_cast<std::uint32_t>(r))));
        if (emb) {
            auto row = table.row(r);
            for (std::size_t i = 0; i < row.size(); ++i) row[i] = (*emb)[i];
            if (stats) stats->si_hits += 1;
        } else if (stats) {
            stats->si_fallbacks += 1;
        }
    }
}

} // namespace

bool ModelParams::all_finite() const {
    return finite_matrix(ent1) && finite_matrix(ent2) && finite_matrix(rel1) &&
           finite_matrix(rel2) && finite_matrix(cls) && finite_matrix(w_onto) &&
           finite_matrix(w_member) && finite_matrix(w_align) && finite_span(b_onto) &&
           finite_span(b_member);
}

ModelParams init_params(const AlignmentDataset& ds, const HyperParams& hp, Rng& rng,
                        const WordVectorTable* word_vectors, InitStats* stats) {
    const std::size_t de = static_cast<std::size_t>(hp.dim_entity);
    const std::size_t dn = static_cast<std::size_t>(hp.dim_onto);

    ModelParams p;
    p.ent1 = Matrix(ds.kg1.entity_count(), de);
    p.ent2 = Matrix(ds.kg2.entity_count(), de);
    p.rel1 = Matrix(ds.kg1.relation_count(), de);
    p.rel2 = Matrix(ds.kg2.relation_count(), de);
    p.cls = Matrix(ds.classes.size(), dn);
    p.w_onto = Matrix(dn, dn);
    p.w_member = Matrix(de, dn);
    p.w_align = Matrix(de, de);
    p.b_onto.assign(dn, 0.0);
    p.b_member.assign(dn, 0.0);

    random_rows(p.ent1, rng);
    random_rows(p.ent2, rng);
    random_rows(p.rel1, rng);
    random_rows(p.rel2, rng);
    random_rows(p.cls, rng);
    p.w_onto.set_identity_block();
    p.w_member.set_identity_block();
    p.w_align.set_identity_block();

    if (word_vectors) {
        si_override(p.ent1, ds.entities1, *word_vectors, stats);
        si_override(p.ent2, ds.entities2, *word_vectors, stats);
        si_override(p.rel1, ds.relations1, *word_vectors, stats);
        si_override(p.rel2, ds.relations2, *word_vectors, stats);
        si_override(p.cls, ds.classes, *word_vectors, stats);
    }
    return p;
}

AdaGradState::AdaGradState(const ModelParams& p)
    : ent1(p.ent1.rows(), p.ent1.cols()), ent2(p.ent2.rows(), p.ent2.cols()),
      rel1(p.rel1.rows(), p.rel1.cols()), rel2(p.rel2.rows(), p.rel2.cols()),
      cls(p.cls.rows(), p.cls.cols()), w_onto(p.w_onto.rows(), p.w_onto.cols()),
      w_member(p.w_member.rows(), p.w_member.cols()),
      w_align(p.w_align.rows(), p.w_align.cols()), b_onto(p.b_onto.size(), 0.0),
      b_member(p.b_member.size(), 0.0) {}

void adagrad_step(std::span<double> theta, std::span<double> acc, std::span<const double> grad,
                  double lr) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double g = grad[i];
        acc[i] += g * g;
        theta[i] -= lr * g / (std::sqrt(acc[i]) + AdaGradState::kEpsilon);
    }
}

void adagrad_step_rows(Matrix& param, Matrix& acc, const RowGrads& grads, double lr,
                       double scale) {
    std::vector<double> scaled;
    for (const auto& [r, g] : grads.rows()) {
        if (scale == 1.0) {
            adagrad_step(param.row(r), acc.row(r), g, lr);
        } else {
            scaled.assign(g.begin(), g.end());
            for (double& x : scaled) x *= scale;
            adagrad_step(param.row(r), acc.row(r), scaled, lr);
        }
    }
}

void adagrad_step_dense(Matrix& param, Matrix& acc, const Matrix& grads, double lr,
                        double scale) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        double g = grads.data()[i] * scale;
        acc.data()[i] += g * g;
        param.data()[i] -= lr * g / (std::sqrt(acc.data()[i]) + AdaGradState::kEpsilon);
    }
}

void adagrad_step_dense(std::vector<double>& param, std::vector<double>& acc,
                        const std::vector<double>& grads, double lr, double scale) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        double g = grads[i] * scale;
        acc[i] += g * g;
        param[i] -= lr * g / (std::sqrt(acc[i]) + AdaGradState::kEpsilon);
    }
}

// -- checkpoint i/o ----------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'O', 'N', 'T', 'O', 'E', 'A', 'C', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_matrix(std::ostream& os, const Matrix& m) {
    write_u64(os, m.rows());
    write_u64(os, m.cols());
    os.write(reinterpret_cast<const char*>(m.data()),
             static_cast<std::streamsize>(m.size() * sizeof(double)));
}
void write_vec(std::ostream& os, const std::vector<double>& v) {
    write_u64(os, v.size());
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
}
void write_string(std::ostream& os, const std::string& s) {
    write_u64(os, s.size());
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
Matrix read_matrix(std::istream& is) {
    std::uint64_t rows = read_u64(is);
    std::uint64_t cols = read_u64(is);
    Matrix m(rows, cols);
    is.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
    return m;
}
std::vector<double> read_vec(std::istream& is) {
    std::uint64_t n = read_u64(is);
    std::vector<double> v(n, 0.0);
    is.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    return v;
}
std::string read_string(std::istream& is) {
    std::uint64_t n = read_u64(is);
    std::string s(n, '\0');
    is.read(s.data(), static_cast<std::streamsize>(n));
    return s;
}

void write_hp(std::ostream& os, const HyperParams& hp) {
    write_u64(os, static_cast<std::uint64_t>(hp.dim_entity));
    write_u64(os, static_cast<std::uint64_t>(hp.dim_onto));
    for (const HingeTerms* h : {&hp.hinge_entity, &hp.hinge_onto, &hp.hinge_member}) {
        write_f64(os, h->gamma1);
        write_f64(os, h->gamma2);
        write_f64(os, h->alpha);
    }
    write_f64(os, hp.lambda_conflict);
    write_f64(os, hp.lambda_member);
    write_f64(os, hp.lambda_align);
    write_f64(os, hp.beta);
    write_f64(os, hp.learning_rate);
    write_u64(os, static_cast<std::uint64_t>(hp.batch_entity));
    write_u64(os, static_cast<std::uint64_t>(hp.batch_onto));
    write_f64(os, hp.epsilon_trunc);
    write_u64(os, static_cast<std::uint64_t>(hp.neg_per_pos));
    write_u64(os, static_cast<std::uint64_t>(hp.neg_per_pos_onto));
    write_u64(os, static_cast<std::uint64_t>(hp.max_iterations));
    write_u64(os, static_cast<std::uint64_t>(hp.patience));
    write_u64(os, static_cast<std::uint64_t>(hp.eval_every));
    write_u64(os, hp.rng_seed);
}

HyperParams read_hp(std::istream& is) {
    HyperParams hp;
    hp.dim_entity = static_cast<int>(read_u64(is));
    hp.dim_onto = static_cast<int>(read_u64(is));
    for (HingeTerms* h : {&hp.hinge_entity, &hp.hinge_onto, &hp.hinge_member}) {
        h->gamma1 = read_f64(is);
        h->gamma2 = read_f64(is);
        h->alpha = read_f64(is);
    }
    hp.lambda_conflict = read_f64(is);
    hp.lambda_member = read_f64(is);
    hp.lambda_align = read_f64(is);
    hp.beta = read_f64(is);
    hp.learning_rate = read_f64(is);
    hp.batch_entity = static_cast<int>(read_u64(is));
    hp.batch_onto = static_cast<int>(read_u64(is));
    hp.epsilon_trunc = read_f64(is);
    hp.neg_per_pos = static_cast<int>(read_u64(is));
    hp.neg_per_pos_onto = static_cast<int>(read_u64(is));
    hp.max_iterations = static_cast<int>(read_u64(is));
    hp.patience = static_cast<int>(read_u64(is));
    hp.eval_every = static_cast<int>(read_u64(is));
    hp.rng_seed = read_u64(is);
    return hp;
}

} // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const HyperParams& hp, const std::string& rng_state) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot write checkpoint: " + path.string());
    os.write(kMagic, sizeof kMagic);
    write_hp(os, hp);
    write_matrix(os, params.ent1);
    write_matrix(os, params.ent2);
    write_matrix(os, params.rel1);
    write_matrix(os, params.rel2);
    write_matrix(os, params.cls);
    write_matrix(os, params.w_onto);
    write_vec(os, params.b_onto);
    write_matrix(os, params.w_member);
    write_vec(os, params.b_member);
    write_matrix(os, params.w_align);
    write_string(os, rng_state);
    if (!os) throw DataError("short write on checkpoint: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open checkpoint: " + path.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw DataError("not a checkpoint file (bad magic): " + path.string());
    }
    Checkpoint ck;
    ck.hp = read_hp(is);
    ck.params.ent1 = read_matrix(is);
    ck.params.ent2 = read_matrix(is);
    ck.params.rel1 = read_matrix(is);
    ck.params.rel2 = read_matrix(is);
    ck.params.cls = read_matrix(is);
    ck.params.w_onto = read_matrix(is);
    ck.params.b_onto = read_vec(is);
    ck.params.w_member = read_matrix(is);
    ck.params.b_member = read_vec(is);
    ck.params.w_align = read_matrix(is);
    ck.rng_state = read_string(is);
    if (!is) throw DataError("truncated checkpoint: " + path.string());
    return ck;
}

} // namespace ontoea
