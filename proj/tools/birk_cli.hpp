#pragma once

#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

#include "birk/precision.hpp"

namespace birk::cli {

/// One fully-specified job. Every field is either set explicitly on the
/// command line or defaulted from the table in build_app; the canonical
/// config string (and its hash) is echoed into every output file.
struct JobConfig {
    std::string command;

    // precision / averaging
    std::string precision = "fast";
    int p = 1;
    int threads = 0;  // 0 = all cores

    // data source
    std::string curve;              // fish | flower | circle
    std::string system;             // standard-map
    double r = 1.4;                 // standard-map parameter
    std::vector<double> seed;       // x,y (map) or q1,p1 (three-body)
    std::string input;              // trajectory CSV
    double rho = -1;                // generation rho for curves;
                                    // negative = golden
    std::size_t n = 20000;

    // rotnum / conjugacy
    std::vector<double> base_point;  // --P
    bool base_centroid = false;
    int k = 2;
    std::vector<double> center;     // conjugacy center override
    int kmax = 1000;
    std::uint64_t predict = 0;
    bool check_direct = false;
    std::string coeffs_out;
    std::string save_traj;
    std::string save_model;
    std::string load_model;

    // grid / embed3
    std::string res = "100x100";
    std::vector<double> region;     // x0 x1 y0 y1
    std::string f = "sin_xy";
    std::string f2 = "cos_x";
    std::string f3 = "sin_y";
    std::string img;
    std::size_t diag = 0;           // embed3: seed count on the diagonal
    std::string seeds_file;

    // three-body
    double mu = 0.1;
    double hamiltonian = -2.63;
    double step = 2e-5;
    std::size_t returns = 20000;
    std::string scan;               // q1min:q1max:count
    double scan_p1 = 0.0;
    std::size_t scan_n = 20000;

    // lyapunov
    bool weighted = true;
    bool uniform = false;

    // outputs
    std::string out;
    std::string json;

    std::string canonical() const;
};

/// Wire the subcommands and flags onto a CLI11 app.
void build_app(CLI::App& app, JobConfig& cfg);

/// Parse argv; throws CLI::ParseError for usage problems.
JobConfig parse_args(const std::vector<std::string>& argv);

/// Execute one job. Returns the process exit code: 0 success, 3 domain
/// error, 4 numerical failure.
int run_job(const JobConfig& cfg);

} // namespace birk::cli
