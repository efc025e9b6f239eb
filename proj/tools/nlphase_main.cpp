// Copyright 2026 The nlphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlphase/nlphase.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitEstimationFailure = 3;
constexpr int kExitInternalError = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw nlphase::config_error("config: cannot read file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw nlphase::config_error("out: cannot write file " + out_path);
    }
    out << content;
}

nlphase::ExperimentConfig load_config(const std::string& path) {
    return nlphase::parse_experiment_config_text(read_file(path));
}

void require_format(const std::string& format) {
    if (format != "json" && format != "csv") {
        throw nlphase::config_error("format: expected json or csv");
    }
}

int run_exact_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format) {
    require_format(format);
    const nlphase::ExperimentConfig config = load_config(config_path);
    const nlphase::ExactRun run = nlphase::run_exact(config);
    write_output(out_path, format == "json" ? nlphase::emit_exact_report_json(run)
                                            : nlphase::emit_exact_report_csv(run));
    return 0;
}

int run_sample_cmd(const std::string& config_path, const std::string& out_path,
                   const std::string& format, bool parallel) {
    require_format(format);
    const nlphase::ExperimentConfig config = load_config(config_path);
    const nlphase::SampleRun run = nlphase::run_sample(config, parallel);
    write_output(out_path,
                 format == "json"
                     ? nlphase::emit_sample_report_json(config, run)
                     : nlphase::emit_record_csv(run.record, run.exact.detector_dist.port_count));
    return 0;
}

int run_estimate_cmd(const std::string& config_path,
                     const std::vector<std::string>& record_paths,
                     const std::string& out_path, const std::string& format) {
    require_format(format);
    if (record_paths.size() != 2) {
        throw nlphase::config_error("records: expected exactly two record files");
    }
    const nlphase::SampleReport at_phi =
        nlphase::parse_sample_report_text(read_file(record_paths[0]));
    const nlphase::SampleReport at_quadrature =
        nlphase::parse_sample_report_text(read_file(record_paths[1]));
    if (!config_path.empty()) {
        const nlphase::ExperimentConfig config = load_config(config_path);
        if (config.setup != nlphase::SetupKind::two_photon) {
            throw nlphase::config_error("setup: estimate expects a two_photon config");
        }
        if (std::abs(config.phi - at_phi.config.phi) > 1e-12 ||
            std::abs(config.theta - at_phi.config.theta) > 1e-12) {
            throw nlphase::config_error(
                "config: does not match the first record's theta/phi settings");
        }
    }
    const nlphase::PhaseEstimate estimate = nlphase::run_estimate(at_phi, at_quadrature);
    write_output(out_path, format == "json" ? nlphase::emit_estimate_report_json(estimate)
                                            : nlphase::emit_estimate_report_csv(estimate));
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  double from, double to, int points) {
    const nlphase::ExperimentConfig config = load_config(config_path);
    write_output(out_path, nlphase::run_sweep_csv(config, from, to, points));
    return 0;
}

int run_info_cmd(const std::string& out_path, int n_min, int n_max) {
    write_output(out_path, nlphase::run_info_csv(n_min, n_max));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact few-photon interference simulator and nonlocal-phase decoder"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::vector<std::string> record_paths;
    double sweep_from = -std::numbers::pi;
    double sweep_to = std::numbers::pi;
    int sweep_points = 73;
    int info_n_min = 2;
    int info_n_max = 6;
    bool parallel = false;

    CLI::App* exact = app.add_subcommand("exact", "Exact outcome distribution of a run");
    exact->add_option("--config", config_path, "Run configuration JSON")->required();
    exact->add_option("--out", out_path, "Output path (default: stdout)");
    exact->add_option("--format", format, "json or csv");

    CLI::App* sample_cmd = app.add_subcommand("sample", "Draw detection events");
    sample_cmd->add_option("--config", config_path, "Run configuration JSON")->required();
    sample_cmd->add_option("--out", out_path, "Output path (default: stdout)");
    sample_cmd->add_option("--format", format, "json or csv");
    sample_cmd->add_flag("--parallel", parallel, "Sample trials on multiple threads");

    CLI::App* estimate = app.add_subcommand("estimate", "Phase estimate from two records");
    estimate->add_option("--records", record_paths,
                         "Two sample-report JSON files at quadrature settings")
        ->expected(2);
    estimate->add_option("--config", config_path, "Optional config to cross-check");
    estimate->add_option("--out", out_path, "Output path (default: stdout)");
    estimate->add_option("--format", format, "json or csv");

    CLI::App* sweep = app.add_subcommand("sweep", "Coincidence aggregates over theta (CSV)");
    sweep->add_option("--config", config_path, "Run configuration JSON")->required();
    sweep->add_option("--out", out_path, "Output path (default: stdout)");
    sweep->add_option("--from", sweep_from, "First theta (radians)");
    sweep->add_option("--to", sweep_to, "Last theta (radians)");
    sweep->add_option("--points", sweep_points, "Number of grid points");

    CLI::App* info = app.add_subcommand("info", "Protocol information gain per N (CSV)");
    info->add_option("--out", out_path, "Output path (default: stdout)");
    info->add_option("--n-min", info_n_min, "Smallest N");
    info->add_option("--n-max", info_n_max, "Largest N");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed()) {
            return run_exact_cmd(config_path, out_path, format);
        }
        if (sample_cmd->parsed()) {
            return run_sample_cmd(config_path, out_path, format, parallel);
        }
        if (estimate->parsed()) {
            return run_estimate_cmd(config_path, record_paths, out_path, format);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(config_path, out_path, sweep_from, sweep_to, sweep_points);
        }
        if (info->parsed()) {
            return run_info_cmd(out_path, info_n_min, info_n_max);
        }
    } catch (const nlphase::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlphase::estimation_error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return kExitEstimationFailure;
    } catch (const nlphase::internal_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kExitInternalError;
    }
    return 0;
}
