#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsrand/mat.hpp"

namespace tlsrand {

/// Flat key-value experiment configuration; every key has a default so a
/// bare command line like `bench --experiment rttls --problem shaw --m 100`
/// runs without a file.
struct ExperimentConfig {
    std::string experiment = "rttls";  // perturb | rtls | rttls | arttls | prony
    std::string problem = "shaw";
    std::size_t m = 100;
    std::size_t n = 0;  // 0 = per-problem default
    double eps_p = 9.99976032e-1;
    double noise_level = 1e-3;
    std::size_t samples_l = 10;
    std::size_t trunc_k = 0;  // 0 = choose via GCV
    std::size_t gcv_l = 15;
    double eps = 5e-1;  // adaptive tolerance
    std::size_t probes_r = 7;
    std::uint64_t seed = 1;
    std::size_t repetitions = 1;
    double scale = 1e-10;  // perturbation Frobenius norm
    double sample_period = 0.2;
    std::string output_path;
    std::string output_format = "csv";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct Cell {
    enum class Kind { Empty, Number, Text } kind = Kind::Empty;
    double num = 0.0;
    std::string text;

    static Cell empty() { return Cell{}; }
    static Cell number(double v) { return Cell{Kind::Number, v, {}}; }
    static Cell of_text(std::string t) { return Cell{Kind::Text, 0.0, std::move(t)}; }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// One perturbation-report row per repetition (fresh problem and fresh
/// perturbation draw each time).
Table run_perturb(const ExperimentConfig& cfg);

/// Baseline tls_svd against rtls; columns mirror the well-conditioned table.
Table run_rtls_bench(const ExperimentConfig& cfg);

/// Full-SVD ttls against rttls on an ill-posed problem; the truncation index
/// comes from the config or from GCV.
Table run_rttls_bench(const ExperimentConfig& cfg);

/// ttls / rttls / arttls comparison with the adaptive basis size recorded.
Table run_arttls_bench(const ExperimentConfig& cfg);

/// ttls against rttls on the linear-prediction system.
Table run_prony_bench(const ExperimentConfig& cfg);

Table run_experiment(const ExperimentConfig& cfg);

void emit(const Table& table, const std::string& path, const std::string& format);
std::string render_csv(const Table& table);
std::string render_json(const Table& table);

/// True for the wall-clock columns excluded from determinism comparisons.
bool is_timing_column(const std::string& name);

}  // namespace tlsrand
