#include "tlsrand.h"

#include <cstring>
#include <string>

#include "tlsrand/bench.hpp"
#include "tlsrand/io.hpp"
#include "tlsrand/problems.hpp"
#include "tlsrand/randomized.hpp"
#include "tlsrand/tls.hpp"

using namespace tlsrand;

struct tlsrand_mat {
    Mat m;
};
struct tlsrand_problem {
    TlsProblem p;
};
struct tlsrand_solution {
    TlsSolution s;
};
struct tlsrand_table {
    Table t;
    // Lazily rendered cell texts handed out by tlsrand_table_cell_text.
    mutable std::vector<std::string> texts;
};

namespace {

thread_local std::string g_last_error;

tlsrand_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return TLSRAND_INVALID_ARGUMENT;
        case ErrorCode::ConvergenceFailure: return TLSRAND_CONVERGENCE_FAILURE;
        case ErrorCode::NotPositiveDefinite: return TLSRAND_NOT_POSITIVE_DEFINITE;
        case ErrorCode::NonGeneric: return TLSRAND_NON_GENERIC;
        case ErrorCode::DegenerateV22: return TLSRAND_DEGENERATE_V22;
        case ErrorCode::NonGenericTruncation: return TLSRAND_NON_GENERIC_TRUNCATION;
        case ErrorCode::RankCollapse: return TLSRAND_RANK_COLLAPSE;
        case ErrorCode::BasisExhausted: return TLSRAND_BASIS_EXHAUSTED;
        case ErrorCode::SizeOverflow: return TLSRAND_SIZE_OVERFLOW;
        case ErrorCode::ZeroSolution: return TLSRAND_ZERO_SOLUTION;
        case ErrorCode::ZeroResidual: return TLSRAND_ZERO_RESIDUAL;
        case ErrorCode::FormulaMismatch: return TLSRAND_FORMULA_MISMATCH;
        case ErrorCode::HypothesisViolated: return TLSRAND_HYPOTHESIS_VIOLATED;
        case ErrorCode::UnknownProblem: return TLSRAND_UNKNOWN_PROBLEM;
        case ErrorCode::BadSize: return TLSRAND_BAD_SIZE;
        case ErrorCode::ParseError: return TLSRAND_PARSE_ERROR;
        case ErrorCode::IoError: return TLSRAND_IO_ERROR;
    }
    return TLSRAND_INTERNAL_ERROR;
}

template <typename F>
tlsrand_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return TLSRAND_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TLSRAND_INTERNAL_ERROR;
    } catch (...) {
        g_last_error = "unknown failure";
        return TLSRAND_INTERNAL_ERROR;
    }
}

tlsrand_status invalid(const char* what) {
    g_last_error = what;
    return TLSRAND_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* tlsrand_status_name(tlsrand_status status) {
    switch (status) {
        case TLSRAND_OK: return "ok";
        case TLSRAND_INVALID_ARGUMENT: return "invalid argument";
        case TLSRAND_CONVERGENCE_FAILURE: return "convergence failure";
        case TLSRAND_NOT_POSITIVE_DEFINITE: return "not positive definite";
        case TLSRAND_NON_GENERIC: return "non-generic problem";
        case TLSRAND_DEGENERATE_V22: return "degenerate v22";
        case TLSRAND_NON_GENERIC_TRUNCATION: return "non-generic truncation";
        case TLSRAND_RANK_COLLAPSE: return "rank collapse";
        case TLSRAND_BASIS_EXHAUSTED: return "basis exhausted";
        case TLSRAND_SIZE_OVERFLOW: return "size overflow";
        case TLSRAND_ZERO_SOLUTION: return "zero solution";
        case TLSRAND_ZERO_RESIDUAL: return "zero residual";
        case TLSRAND_FORMULA_MISMATCH: return "formula mismatch";
        case TLSRAND_HYPOTHESIS_VIOLATED: return "hypothesis violated";
        case TLSRAND_UNKNOWN_PROBLEM: return "unknown problem";
        case TLSRAND_BAD_SIZE: return "bad size";
        case TLSRAND_PARSE_ERROR: return "parse error";
        case TLSRAND_IO_ERROR: return "io error";
        case TLSRAND_INTERNAL_ERROR: return "internal error";
    }
    return "unknown";
}

const char* tlsrand_last_error(void) { return g_last_error.c_str(); }

tlsrand_status tlsrand_mat_create(size_t rows, size_t cols, const double* row_major,
                                  tlsrand_mat** out) {
    if (!out || !row_major || rows == 0 || cols == 0) return invalid("bad mat_create arguments");
    return guarded([&] {
        Mat m(rows, cols, Vec(row_major, row_major + rows * cols));
        *out = new tlsrand_mat{std::move(m)};
    });
}

tlsrand_status tlsrand_mat_load(const char* path, tlsrand_mat** out) {
    if (!out || !path) return invalid("bad mat_load arguments");
    return guarded([&] { *out = new tlsrand_mat{load_matrix(path)}; });
}

tlsrand_status tlsrand_mat_save(const tlsrand_mat* m, const char* path, const char* format) {
    if (!m || !path || !format) return invalid("bad mat_save arguments");
    return guarded([&] {
        MatFileFormat f;
        if (std::strcmp(format, "csv") == 0) f = MatFileFormat::Csv;
        else if (std::strcmp(format, "mm") == 0) f = MatFileFormat::MatrixMarket;
        else fail(ErrorCode::InvalidArgument, "format must be csv or mm");
        save_matrix(m->m, path, f);
    });
}

size_t tlsrand_mat_rows(const tlsrand_mat* m) { return m ? m->m.rows() : 0; }
size_t tlsrand_mat_cols(const tlsrand_mat* m) { return m ? m->m.cols() : 0; }
const double* tlsrand_mat_data(const tlsrand_mat* m) { return m ? m->m.data() : nullptr; }
void tlsrand_mat_free(tlsrand_mat* m) { delete m; }

tlsrand_status tlsrand_problem_from_mats(const tlsrand_mat* a, const tlsrand_mat* b,
                                         tlsrand_problem** out) {
    if (!a || !b || !out) return invalid("bad problem_from_mats arguments");
    return guarded([&] {
        if (b->m.cols() != 1)
            fail(ErrorCode::InvalidArgument, "right-hand side must be a single column");
        TlsProblem p{a->m, column_of(b->m, 0), {}};
        validate_problem(p);
        *out = new tlsrand_problem{std::move(p)};
    });
}

tlsrand_status tlsrand_problem_generate(const char* name, size_t m, size_t n, double eps_p,
                                        double sample_period, uint64_t seed,
                                        tlsrand_problem** out) {
    if (!name || !out) return invalid("bad problem_generate arguments");
    return guarded([&] {
        const std::string tag = name;
        TlsProblem p;
        if (tag == "example1") {
            const std::size_t nn = n == 0 ? (2 * m) / 5 : n;
            p = example1(m, nn, eps_p == 0.0 ? 9.99976032e-1 : eps_p, RngSeed{seed});
        } else if (tag == "example2") {
            p = example2(m);
        } else if (tag == "prony") {
            const std::size_t nn = n == 0 ? m / 2 : n;
            p = prony(standard_prony_spec(m, nn, sample_period == 0.0 ? 0.2 : sample_period));
        } else {
            p = ill_posed(tag, m);
        }
        *out = new tlsrand_problem{std::move(p)};
    });
}

tlsrand_status tlsrand_problem_add_noise(const tlsrand_problem* p, double level, uint64_t seed,
                                         tlsrand_problem** out) {
    if (!p || !out) return invalid("bad add_noise arguments");
    return guarded([&] {
        *out = new tlsrand_problem{add_noise(p->p, NoiseSpec{level, RngSeed{seed}})};
    });
}

tlsrand_status tlsrand_problem_matrix(const tlsrand_problem* p, const char* which,
                                      tlsrand_mat** out) {
    if (!p || !which || !out) return invalid("bad problem_matrix arguments");
    return guarded([&] {
        const std::string w = which;
        if (w == "A") *out = new tlsrand_mat{p->p.a};
        else if (w == "b") *out = new tlsrand_mat{Mat::column(p->p.b)};
        else if (w == "x_true") {
            if (!p->p.x_true)
                fail(ErrorCode::InvalidArgument, "problem has no attached true solution");
            *out = new tlsrand_mat{Mat::column(*p->p.x_true)};
        } else {
            fail(ErrorCode::InvalidArgument, "which must be A, b or x_true");
        }
    });
}

int tlsrand_problem_has_true_solution(const tlsrand_problem* p) {
    return p && p->p.x_true ? 1 : 0;
}

void tlsrand_problem_free(tlsrand_problem* p) { delete p; }

void tlsrand_solve_options_init(tlsrand_solve_options* opts) {
    if (!opts) return;
    opts->trunc_k = 0;
    opts->samples_l = 10;
    opts->probes_r = 7;
    opts->tolerance_eps = 5e-1;
    opts->seed = 1;
}

tlsrand_status tlsrand_solve(const tlsrand_problem* p, const char* method,
                             const tlsrand_solve_options* opts, tlsrand_solution** out) {
    if (!p || !method || !out) return invalid("bad solve arguments");
    tlsrand_solve_options defaults;
    tlsrand_solve_options_init(&defaults);
    const tlsrand_solve_options& o = opts ? *opts : defaults;
    return guarded([&] {
        const std::string tag = method;
        TlsSolution s;
        if (tag == "tls") {
            s = tls_svd(p->p);
        } else if (tag == "tls_closed") {
            s = tls_closed(p->p);
        } else if (tag == "ttls") {
            const std::size_t k = o.trunc_k == 0 ? p->p.a.cols() : o.trunc_k;
            s = ttls(p->p, k);
        } else if (tag == "rtls") {
            RandConfig rc;
            rc.samples_l = o.samples_l;
            rc.trunc_k = 1;
            rc.seed = RngSeed{o.seed};
            s = rtls(p->p, rc);
        } else if (tag == "rttls") {
            RandConfig rc;
            rc.samples_l = o.samples_l;
            rc.trunc_k = o.trunc_k == 0 ? o.samples_l : o.trunc_k;
            rc.seed = RngSeed{o.seed};
            s = rttls(p->p, rc);
        } else if (tag == "arttls") {
            AdaptiveConfig ac;
            ac.tolerance_eps = o.tolerance_eps;
            ac.num_probes = o.probes_r;
            ac.seed = RngSeed{o.seed};
            s = arttls(p->p, ac);
        } else {
            fail(ErrorCode::InvalidArgument, "unknown method '" + tag + "'");
        }
        *out = new tlsrand_solution{std::move(s)};
    });
}

size_t tlsrand_solution_size(const tlsrand_solution* s) { return s ? s->s.x.size() : 0; }
const double* tlsrand_solution_x(const tlsrand_solution* s) {
    return s ? s->s.x.data() : nullptr;
}
const double* tlsrand_solution_residual(const tlsrand_solution* s) {
    return s ? s->s.residual.data() : nullptr;
}
double tlsrand_solution_sigma(const tlsrand_solution* s) { return s ? s->s.sigma_small : 0.0; }
double tlsrand_solution_seconds(const tlsrand_solution* s) {
    return s ? s->s.elapsed_seconds : 0.0;
}
const char* tlsrand_solution_method(const tlsrand_solution* s) {
    return s ? s->s.method.c_str() : "";
}
void tlsrand_solution_free(tlsrand_solution* s) { delete s; }

tlsrand_status tlsrand_experiment_run(const char* config_text, tlsrand_table** out) {
    if (!config_text || !out) return invalid("bad experiment_run arguments");
    return guarded([&] {
        const ExperimentConfig cfg = parse_config(config_text);
        *out = new tlsrand_table{run_experiment(cfg), {}};
    });
}

size_t tlsrand_table_rows(const tlsrand_table* t) { return t ? t->t.rows.size() : 0; }
size_t tlsrand_table_cols(const tlsrand_table* t) { return t ? t->t.header.size() : 0; }

const char* tlsrand_table_header(const tlsrand_table* t, size_t col) {
    if (!t || col >= t->t.header.size()) return "";
    return t->t.header[col].c_str();
}

int tlsrand_table_cell_number(const tlsrand_table* t, size_t row, size_t col, double* out) {
    if (!t || !out || row >= t->t.rows.size() || col >= t->t.rows[row].size()) return 0;
    const Cell& c = t->t.rows[row][col];
    if (c.kind != Cell::Kind::Number) return 0;
    *out = c.num;
    return 1;
}

const char* tlsrand_table_cell_text(const tlsrand_table* t, size_t row, size_t col) {
    if (!t || row >= t->t.rows.size() || col >= t->t.rows[row].size()) return "";
    const Cell& c = t->t.rows[row][col];
    switch (c.kind) {
        case Cell::Kind::Empty: return "";
        case Cell::Kind::Text: return c.text.c_str();
        case Cell::Kind::Number: {
            t->texts.push_back(format_full_precision(c.num));
            return t->texts.back().c_str();
        }
    }
    return "";
}

tlsrand_status tlsrand_table_write(const tlsrand_table* t, const char* path, const char* format) {
    if (!t || !path || !format) return invalid("bad table_write arguments");
    return guarded([&] { emit(t->t, path, format); });
}

void tlsrand_table_free(tlsrand_table* t) { delete t; }

}  // extern "C"
