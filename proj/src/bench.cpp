#include "tlsrand/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tlsrand/io.hpp"
#include "tlsrand/perturbation.hpp"
#include "tlsrand/problems.hpp"
#include "tlsrand/randomized.hpp"

namespace tlsrand {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_inf_err(const Vec& reference, const Vec& candidate) {
    return norm_inf(candidate - reference) / norm_inf(reference);
}

bool is_ill_posed_name(const std::string& s) {
    return s == "shaw" || s == "baart" || s == "deriv2" || s == "foxgood" || s == "gravity" ||
           s == "heat" || s == "phillips";
}

std::size_t default_n(const ExperimentConfig& cfg) {
    if (cfg.n != 0) return cfg.n;
    if (cfg.problem == "example1") return (2 * cfg.m) / 5;
    if (cfg.problem == "prony") return cfg.m / 2;
    return cfg.m;
}

TlsProblem make_problem(const ExperimentConfig& cfg, std::uint64_t rep) {
    const RngSeed gen_seed = derive_seed(RngSeed{cfg.seed}, 100 + rep);
    if (cfg.problem == "example1") return example1(cfg.m, default_n(cfg), cfg.eps_p, gen_seed);
    if (cfg.problem == "example2") return example2(cfg.m);
    if (cfg.problem == "prony")
        return prony(standard_prony_spec(cfg.m, default_n(cfg), cfg.sample_period));
    if (is_ill_posed_name(cfg.problem)) return ill_posed(cfg.problem, cfg.m);
    fail(ErrorCode::UnknownProblem, "unknown problem tag '" + cfg.problem + "'");
}

TlsProblem noisy_problem(const ExperimentConfig& cfg, std::uint64_t rep) {
    TlsProblem p = make_problem(cfg, rep);
    if (cfg.noise_level > 0.0)
        p = add_noise(p, NoiseSpec{cfg.noise_level, derive_seed(RngSeed{cfg.seed}, 300 + rep)});
    return p;
}

std::size_t pick_truncation(const TlsProblem& p, const ExperimentConfig& cfg, std::uint64_t rep) {
    if (cfg.trunc_k != 0) return cfg.trunc_k;
    RandConfig gcv;
    gcv.samples_l = cfg.gcv_l;
    gcv.trunc_k = 1;
    gcv.seed = derive_seed(RngSeed{cfg.seed}, 500 + rep);
    return select_truncation_gcv(p, gcv);
}

Cell opt_cell(const std::optional<double>& v) {
    return v ? Cell::number(*v) : Cell::empty();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos)
            fail(ErrorCode::ParseError, "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment") cfg.experiment = value;
            else if (key == "problem") cfg.problem = value;
            else if (key == "m") cfg.m = std::stoull(value);
            else if (key == "n") cfg.n = std::stoull(value);
            else if (key == "eps_p") cfg.eps_p = std::stod(value);
            else if (key == "noise") cfg.noise_level = std::stod(value);
            else if (key == "l") cfg.samples_l = std::stoull(value);
            else if (key == "k") cfg.trunc_k = std::stoull(value);
            else if (key == "gcv_l") cfg.gcv_l = std::stoull(value);
            else if (key == "eps") cfg.eps = std::stod(value);
            else if (key == "probes") cfg.probes_r = std::stoull(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "repetitions") cfg.repetitions = std::stoull(value);
            else if (key == "scale") cfg.scale = std::stod(value);
            else if (key == "sample_period") cfg.sample_period = std::stod(value);
            else if (key == "out") cfg.output_path = value;
            else if (key == "format") cfg.output_format = value;
            else fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "config line " + std::to_string(line_no) +
                                            ": bad value for '" + key + "'");
        }
    }
    if (cfg.repetitions < 1) fail(ErrorCode::ParseError, "repetitions must be >= 1");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        fail(ErrorCode::ParseError, "format must be csv or json");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Table run_perturb(const ExperimentConfig& cfg) {
    if (cfg.problem != "example1" && cfg.problem != "example2")
        fail(ErrorCode::InvalidArgument, "perturb experiment supports example1 and example2");
    Table t;
    t.header = {"delta_ratio", "observed_rel_err", "k_zlwq", "k_bg", "k_lj",
                "bound_thm", "bound_cor", "bound_rem", "cond_eff"};
    for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
        const TlsProblem p = make_problem(cfg, rep);
        const std::size_t m = p.a.rows(), n = p.a.cols();
        Mat dir = gaussian_matrix(m, n + 1, derive_seed(RngSeed{cfg.seed}, 200 + rep));
        const double s = cfg.scale / frobenius_norm(dir);
        for (std::size_t i = 0; i < dir.size(); ++i) dir.data()[i] *= s;
        const Mat da = block(dir, 0, 0, m, n);
        const Vec db = column_of(dir, n);
        const PerturbReport rep_row = perturb_report(p, da, db);
        t.rows.push_back({Cell::number(rep_row.delta_ratio), opt_cell(rep_row.observed_rel_err),
                          opt_cell(rep_row.k_zlwq), Cell::number(rep_row.k_bg),
                          Cell::number(rep_row.k_lj), Cell::number(rep_row.bound_thm),
                          Cell::number(rep_row.bound_cor), Cell::number(rep_row.bound_rem),
                          Cell::number(rep_row.cond_eff)});
    }
    return t;
}

Table run_rtls_bench(const ExperimentConfig& cfg) {
    if (cfg.problem != "example1" && cfg.problem != "example2" && cfg.problem != "deriv2")
        fail(ErrorCode::InvalidArgument, "rtls experiment supports example1, example2, deriv2");
    Table t;
    t.header = {"problem", "m", "n", "l", "time_tls", "time_rtls", "err_rtls"};
    for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
        const TlsProblem p = make_problem(cfg, rep);
        TlsSolution base, randomized;
        const double time_tls = timed([&] { base = tls_svd(p); });
        RandConfig rc;
        rc.samples_l = cfg.samples_l;
        rc.trunc_k = 1;
        rc.seed = derive_seed(RngSeed{cfg.seed}, 400 + rep);
        const double time_rtls = timed([&] { randomized = rtls(p, rc); });
        t.rows.push_back({Cell::of_text(cfg.problem), Cell::number(double(p.a.rows())),
                          Cell::number(double(p.a.cols())), Cell::number(double(cfg.samples_l)),
                          Cell::number(time_tls), Cell::number(time_rtls),
                          Cell::number(rel_inf_err(base.x, randomized.x))});
    }
    return t;
}

Table run_rttls_bench(const ExperimentConfig& cfg) {
    if (!is_ill_posed_name(cfg.problem))
        fail(ErrorCode::InvalidArgument, "rttls experiment needs an ill-posed problem tag");
    Table t;
    t.header = {"problem", "m", "n", "k", "time_ttls", "time_rttls", "time_arttls",
                "err_rttls", "err_arttls", "basis_j"};
    for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
        const TlsProblem p = noisy_problem(cfg, rep);
        const std::size_t k = pick_truncation(p, cfg, rep);
        TlsSolution base, randomized;
        const double time_ttls = timed([&] { base = ttls(p, k); });
        RandConfig rc;
        rc.samples_l = cfg.samples_l;
        rc.trunc_k = k;
        rc.seed = derive_seed(RngSeed{cfg.seed}, 400 + rep);
        const double time_rttls = timed([&] { randomized = rttls(p, rc); });
        t.rows.push_back({Cell::of_text(cfg.problem), Cell::number(double(p.a.rows())),
                          Cell::number(double(p.a.cols())), Cell::number(double(k)),
                          Cell::number(time_ttls), Cell::number(time_rttls), Cell::empty(),
                          Cell::number(rel_inf_err(base.x, randomized.x)), Cell::empty(),
                          Cell::empty()});
    }
    return t;
}

Table run_arttls_bench(const ExperimentConfig& cfg) {
    if (!is_ill_posed_name(cfg.problem))
        fail(ErrorCode::InvalidArgument, "arttls experiment needs an ill-posed problem tag");
    Table t;
    t.header = {"problem", "m", "n", "k", "time_ttls", "time_rttls", "time_arttls",
                "err_rttls", "err_arttls", "basis_j"};
    for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
        const TlsProblem p = noisy_problem(cfg, rep);
        const std::size_t k = pick_truncation(p, cfg, rep);
        TlsSolution base, sketch, adaptive;
        const double time_ttls = timed([&] { base = ttls(p, k); });
        RandConfig rc;
        rc.samples_l = cfg.samples_l;
        rc.trunc_k = k;
        rc.seed = derive_seed(RngSeed{cfg.seed}, 400 + rep);
        const double time_rttls = timed([&] { sketch = rttls(p, rc); });
        AdaptiveConfig ac;
        ac.tolerance_eps = cfg.eps;
        ac.num_probes = cfg.probes_r;
        ac.seed = derive_seed(RngSeed{cfg.seed}, 600 + rep);
        const double time_arttls = timed([&] { adaptive = arttls(p, ac); });
        const std::size_t basis_j =
            adaptive_range_finder(augmented(p), ac).q.cols();  // same seed, same basis
        t.rows.push_back({Cell::of_text(cfg.problem), Cell::number(double(p.a.rows())),
                          Cell::number(double(p.a.cols())), Cell::number(double(k)),
                          Cell::number(time_ttls), Cell::number(time_rttls),
                          Cell::number(time_arttls), Cell::number(rel_inf_err(base.x, sketch.x)),
                          Cell::number(rel_inf_err(base.x, adaptive.x)),
                          Cell::number(double(basis_j))});
    }
    return t;
}

Table run_prony_bench(const ExperimentConfig& cfg) {
    Table t;
    t.header = {"problem", "m", "n", "k", "time_ttls", "time_rttls", "time_arttls",
                "err_rttls", "err_arttls", "basis_j"};
    for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
        ExperimentConfig pc = cfg;
        pc.problem = "prony";
        const TlsProblem p = make_problem(pc, rep);
        const std::size_t k = cfg.trunc_k == 0 ? 12 : cfg.trunc_k;
        TlsSolution base, randomized;
        const double time_ttls = timed([&] { base = ttls(p, k); });
        RandConfig rc;
        rc.samples_l = cfg.samples_l == 0 ? k + 1 : cfg.samples_l;
        rc.trunc_k = k;
        rc.seed = derive_seed(RngSeed{cfg.seed}, 400 + rep);
        const double time_rttls = timed([&] { randomized = rttls(p, rc); });
        t.rows.push_back({Cell::of_text("prony"), Cell::number(double(p.a.rows())),
                          Cell::number(double(p.a.cols())), Cell::number(double(k)),
                          Cell::number(time_ttls), Cell::number(time_rttls), Cell::empty(),
                          Cell::number(rel_inf_err(base.x, randomized.x)), Cell::empty(),
                          Cell::empty()});
    }
    return t;
}

Table run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "perturb") return run_perturb(cfg);
    if (cfg.experiment == "rtls") return run_rtls_bench(cfg);
    if (cfg.experiment == "rttls") return run_rttls_bench(cfg);
    if (cfg.experiment == "arttls") return run_arttls_bench(cfg);
    if (cfg.experiment == "prony") return run_prony_bench(cfg);
    fail(ErrorCode::InvalidArgument, "unknown experiment '" + cfg.experiment + "'");
}

std::string render_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) out << ',';
        out << table.header[j];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            switch (row[j].kind) {
                case Cell::Kind::Empty: break;
                case Cell::Kind::Number: out << format_full_precision(row[j].num); break;
                case Cell::Kind::Text: out << row[j].text; break;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const Table& table) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size() && j < table.header.size(); ++j) {
            switch (row[j].kind) {
                case Cell::Kind::Empty: obj[table.header[j]] = nullptr; break;
                case Cell::Kind::Number: obj[table.header[j]] = row[j].num; break;
                case Cell::Kind::Text: obj[table.header[j]] = row[j].text; break;
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void emit(const Table& table, const std::string& path, const std::string& format) {
    std::string body;
    if (format == "csv") body = render_csv(table);
    else if (format == "json") body = render_json(table);
    else fail(ErrorCode::InvalidArgument, "emit format must be csv or json");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << body;
    if (!out.good()) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

bool is_timing_column(const std::string& name) {
    return name.rfind("time_", 0) == 0;
}

}  // namespace tlsrand
