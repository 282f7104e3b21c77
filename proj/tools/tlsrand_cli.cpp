// Command-line front end for the TLS solver library. Everything goes through
// the C API in tlsrand.h; this file owns only argument parsing and printing.

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "tlsrand.h"

namespace {

int exit_code_for(tlsrand_status status) {
    if (status == TLSRAND_OK) return 0;
    if (status == TLSRAND_PARSE_ERROR || status == TLSRAND_IO_ERROR) return 3;
    return 2;
}

int report_failure(tlsrand_status status) {
    std::fprintf(stderr, "error: %s: %s\n", tlsrand_status_name(status), tlsrand_last_error());
    return exit_code_for(status);
}

void print_table_csv(const tlsrand_table* table, std::FILE* out) {
    const size_t cols = tlsrand_table_cols(table);
    for (size_t j = 0; j < cols; ++j)
        std::fprintf(out, "%s%s", j ? "," : "", tlsrand_table_header(table, j));
    std::fprintf(out, "\n");
    for (size_t i = 0; i < tlsrand_table_rows(table); ++i) {
        for (size_t j = 0; j < cols; ++j)
            std::fprintf(out, "%s%s", j ? "," : "", tlsrand_table_cell_text(table, i, j));
        std::fprintf(out, "\n");
    }
}

int run_table_experiment(const std::string& config_text, const std::string& out_path,
                         const std::string& format) {
    tlsrand_table* table = nullptr;
    const tlsrand_status status = tlsrand_experiment_run(config_text.c_str(), &table);
    if (status != TLSRAND_OK) return report_failure(status);
    int rc = 0;
    if (out_path.empty()) {
        print_table_csv(table, stdout);
    } else {
        const tlsrand_status ws = tlsrand_table_write(table, out_path.c_str(), format.c_str());
        if (ws != TLSRAND_OK) rc = report_failure(ws);
        else std::fprintf(stderr, "wrote %zu rows to %s\n", tlsrand_table_rows(table), out_path.c_str());
    }
    tlsrand_table_free(table);
    return rc;
}

struct SolveArgs {
    std::string method;
    std::string a_path, b_path, out_path;
    std::size_t k = 0, l = 10, probes = 7;
    double eps = 5e-1;
    std::uint64_t seed = 1;
};

int cmd_solve(const SolveArgs& args) {
    tlsrand_mat* a = nullptr;
    tlsrand_mat* b = nullptr;
    tlsrand_status status = tlsrand_mat_load(args.a_path.c_str(), &a);
    if (status != TLSRAND_OK) return report_failure(status);
    status = tlsrand_mat_load(args.b_path.c_str(), &b);
    if (status != TLSRAND_OK) {
        tlsrand_mat_free(a);
        return report_failure(status);
    }

    tlsrand_problem* problem = nullptr;
    status = tlsrand_problem_from_mats(a, b, &problem);
    tlsrand_mat_free(a);
    tlsrand_mat_free(b);
    if (status != TLSRAND_OK) return report_failure(status);

    tlsrand_solve_options opts;
    tlsrand_solve_options_init(&opts);
    opts.trunc_k = args.k;
    opts.samples_l = args.l;
    opts.probes_r = args.probes;
    opts.tolerance_eps = args.eps;
    opts.seed = args.seed;

    tlsrand_solution* solution = nullptr;
    status = tlsrand_solve(problem, args.method.c_str(), &opts, &solution);
    tlsrand_problem_free(problem);
    if (status != TLSRAND_OK) return report_failure(status);

    const size_t n = tlsrand_solution_size(solution);
    const double* x = tlsrand_solution_x(solution);
    int rc = 0;
    if (args.out_path.empty()) {
        for (size_t i = 0; i < n; ++i) std::printf("%.17g\n", x[i]);
    } else {
        tlsrand_mat* xm = nullptr;
        status = tlsrand_mat_create(n, 1, x, &xm);
        if (status == TLSRAND_OK) {
            status = tlsrand_mat_save(xm, args.out_path.c_str(), "csv");
            tlsrand_mat_free(xm);
        }
        if (status != TLSRAND_OK) rc = report_failure(status);
    }
    std::fprintf(stderr, "method=%s sigma=%.6g elapsed=%.4fs\n",
                 tlsrand_solution_method(solution), tlsrand_solution_sigma(solution),
                 tlsrand_solution_seconds(solution));
    tlsrand_solution_free(solution);
    return rc;
}

struct ProblemsArgs {
    std::string name, out_dir, format = "csv";
    std::size_t m = 100, n = 0;
    double noise = 0.0, eps_p = 0.0, sample_period = 0.0;
    std::uint64_t seed = 1;
};

int cmd_problems(const ProblemsArgs& args) {
    tlsrand_problem* problem = nullptr;
    tlsrand_status status = tlsrand_problem_generate(args.name.c_str(), args.m, args.n,
                                                     args.eps_p, args.sample_period, args.seed,
                                                     &problem);
    if (status != TLSRAND_OK) return report_failure(status);
    if (args.noise > 0.0) {
        tlsrand_problem* noisy = nullptr;
        status = tlsrand_problem_add_noise(problem, args.noise, args.seed, &noisy);
        tlsrand_problem_free(problem);
        if (status != TLSRAND_OK) return report_failure(status);
        problem = noisy;
    }

    const char* ext = args.format == "mm" ? ".mtx" : ".csv";
    const char* parts[] = {"A", "b", "x_true"};
    for (const char* part : parts) {
        if (std::string(part) == "x_true" && !tlsrand_problem_has_true_solution(problem)) continue;
        tlsrand_mat* m = nullptr;
        status = tlsrand_problem_matrix(problem, part, &m);
        if (status != TLSRAND_OK) break;
        const std::string path = args.out_dir + "/" + part + ext;
        status = tlsrand_mat_save(m, path.c_str(), args.format.c_str());
        tlsrand_mat_free(m);
        if (status != TLSRAND_OK) break;
        std::fprintf(stderr, "wrote %s\n", path.c_str());
    }
    tlsrand_problem_free(problem);
    return status == TLSRAND_OK ? 0 : report_failure(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total least squares solvers, perturbation bounds, and randomized benchmarks"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Solve a TLS problem from matrix files");
    solve->add_option("--method", solve_args.method, "tls|tls_closed|ttls|rtls|rttls|arttls")
        ->required();
    solve->add_option("--A", solve_args.a_path, "coefficient matrix file")->required();
    solve->add_option("--b", solve_args.b_path, "right-hand side file")->required();
    solve->add_option("--k", solve_args.k, "truncation index");
    solve->add_option("--l", solve_args.l, "sketch width");
    solve->add_option("--eps", solve_args.eps, "adaptive tolerance");
    solve->add_option("--probes", solve_args.probes, "adaptive probe count");
    solve->add_option("--seed", solve_args.seed, "random seed");
    solve->add_option("--out", solve_args.out_path, "write the solution vector here (CSV)");

    ProblemsArgs problems_args;
    CLI::App* problems = app.add_subcommand("problems", "Generate a named test problem");
    problems->add_option("--name", problems_args.name, "problem tag")->required();
    problems->add_option("--m", problems_args.m, "problem size")->required();
    problems->add_option("--n", problems_args.n, "columns (where applicable)");
    problems->add_option("--noise", problems_args.noise, "relative noise level");
    problems->add_option("--eps-p", problems_args.eps_p, "spectrum parameter for example1");
    problems->add_option("--T", problems_args.sample_period, "prony sample period");
    problems->add_option("--seed", problems_args.seed, "random seed");
    problems->add_option("--out", problems_args.out_dir, "output directory")->required();
    problems->add_option("--format", problems_args.format, "csv|mm")
        ->check(CLI::IsMember({"csv", "mm"}));

    std::string bench_experiment, bench_config, bench_out, bench_format = "csv";
    std::string bench_problem, bench_m;
    std::vector<std::string> bench_set;
    CLI::App* bench = app.add_subcommand("bench", "Run a timed experiment");
    bench->add_option("--experiment", bench_experiment, "perturb|rtls|rttls|arttls|prony");
    bench->add_option("--config", bench_config, "key = value config file");
    bench->add_option("--set", bench_set, "extra config overrides, key=value");
    bench->add_option("--problem", bench_problem, "problem tag override");
    bench->add_option("--m", bench_m, "problem size override");
    bench->add_option("--out", bench_out, "output file (default: CSV to stdout)");
    bench->add_option("--format", bench_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string perturb_problem = "example1";
    std::size_t perturb_m = 100, perturb_n = 0, perturb_reps = 1;
    double perturb_scale = 1e-10;
    std::uint64_t perturb_seed = 1;
    std::string perturb_out, perturb_format = "csv";
    double perturb_eps_p = 9.99976032e-1;
    CLI::App* perturb = app.add_subcommand("perturb", "Forward-error bound study");
    perturb->add_option("--problem", perturb_problem, "example1|example2")->required();
    perturb->add_option("--m", perturb_m, "rows")->required();
    perturb->add_option("--n", perturb_n, "columns (example1)");
    perturb->add_option("--scale", perturb_scale, "Frobenius norm of the perturbation");
    perturb->add_option("--eps-p", perturb_eps_p, "spectrum parameter for example1");
    perturb->add_option("--seed", perturb_seed, "random seed");
    perturb->add_option("--reps", perturb_reps, "number of draws");
    perturb->add_option("--out", perturb_out, "output file (default: CSV to stdout)");
    perturb->add_option("--format", perturb_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return cmd_solve(solve_args);
    if (problems->parsed()) return cmd_problems(problems_args);

    if (bench->parsed()) {
        std::string config_text;
        if (!bench_config.empty()) {
            std::FILE* f = std::fopen(bench_config.c_str(), "rb");
            if (!f) {
                std::fprintf(stderr, "error: io error: cannot open config '%s'\n",
                             bench_config.c_str());
                return 3;
            }
            char buf[4096];
            size_t got;
            while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) config_text.append(buf, got);
            std::fclose(f);
            config_text += "\n";
        }
        if (!bench_experiment.empty()) config_text += "experiment = " + bench_experiment + "\n";
        if (!bench_problem.empty()) config_text += "problem = " + bench_problem + "\n";
        if (!bench_m.empty()) config_text += "m = " + bench_m + "\n";
        for (const std::string& kv : bench_set) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "error: parse error: --set expects key=value, got '%s'\n",
                             kv.c_str());
                return 3;
            }
            config_text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
        }
        return run_table_experiment(config_text, bench_out, bench_format);
    }

    if (perturb->parsed()) {
        std::string config_text = "experiment = perturb\n";
        config_text += "problem = " + perturb_problem + "\n";
        config_text += "m = " + std::to_string(perturb_m) + "\n";
        if (perturb_n != 0) config_text += "n = " + std::to_string(perturb_n) + "\n";
        char num_buf[64];
        std::snprintf(num_buf, sizeof(num_buf), "scale = %.17g\n", perturb_scale);
        config_text += num_buf;
        std::snprintf(num_buf, sizeof(num_buf), "eps_p = %.17g\n", perturb_eps_p);
        config_text += num_buf;
        config_text += "seed = " + std::to_string(perturb_seed) + "\n";
        config_text += "repetitions = " + std::to_string(perturb_reps) + "\n";
        return run_table_experiment(config_text, perturb_out, perturb_format);
    }

    return 0;
}
