#include "birk_cli.hpp"

#include <json.hpp>
#include <omp.h>

#include <iostream>
#include <memory>
#include <sstream>

#include "birk/classify.hpp"
#include "birk/conjugacy.hpp"
#include "birk/curves.hpp"
#include "birk/io.hpp"
#include "birk/rotation.hpp"
#include "birk/three_body.hpp"

namespace birk::cli {

namespace {

constexpr const char* kVersion = "birk 1.0.0";

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << format_real(v[i]);
    }
    return os.str();
}

std::vector<double> parse_colon_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string cell;
    while (std::getline(is, cell, ':')) out.push_back(std::stod(cell));
    return out;
}

/// Report rows, rendered as text and optionally as JSON.
class Report {
public:
    void add(const std::string& key, const std::string& value) {
        rows_.emplace_back(key, value);
    }
    template <class R>
    void add_real(const std::string& key, const R& v) {
        add(key, format_real(v));
    }

    std::string text() const {
        std::ostringstream os;
        for (const auto& [k, v] : rows_) os << k << ": " << v << "\n";
        return os.str();
    }

    void write(const JobConfig& cfg) const {
        std::cout << text();
        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out);
            if (!f) throw contract_error("cannot open report file: " + cfg.out);
            for (const auto& l : header_lines(cfg)) f << "# " << l << "\n";
            f << text();
        }
        if (!cfg.json.empty()) {
            nlohmann::json j;
            j["tool"] = kVersion;
            j["config"] = cfg.canonical();
            j["config_hash"] = hash_hex(fnv1a64(cfg.canonical()));
            for (const auto& [k, v] : rows_) j[k] = v;
            std::ofstream f(cfg.json);
            if (!f) throw contract_error("cannot open json file: " + cfg.json);
            f << j.dump(2) << "\n";
        }
    }

    static std::vector<std::string> header_lines(const JobConfig& cfg) {
        return {kVersion, "config: " + cfg.canonical(),
                "config-hash: " + hash_hex(fnv1a64(cfg.canonical()))};
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

template <class R>
R golden_or(double rho) {
    return rho < 0 ? golden_rotation<R>() : R(rho);
}

/// Build the input trajectory for rotnum/conjugacy/wba.
template <class R>
Trajectory<R> make_trajectory(const JobConfig& cfg) {
    if (!cfg.input.empty()) return read_trajectory_csv<R>(cfg.input);
    if (!cfg.curve.empty()) {
        R rho = golden_or<R>(cfg.rho);
        if (cfg.curve == "fish") return CurveSpec<R>::fish(rho).trajectory(cfg.n);
        if (cfg.curve == "flower") return CurveSpec<R>::flower(rho).trajectory(cfg.n);
        if (cfg.curve == "circle")
            return CurveSpec<R>::pure_circle(rho).trajectory(cfg.n);
        throw contract_error("unknown curve: " + cfg.curve);
    }
    if (cfg.system == "standard-map") {
        if (cfg.seed.size() != 2)
            throw contract_error("--seed x,y is required for standard-map input");
        StandardMap<R> map(R(cfg.r));
        auto traj = map.orbit({R(cfg.seed[0]), R(cfg.seed[1])}, cfg.n);
        // invariant circles may straddle the mod-2pi seam
        return unwrap_torus(traj, two_pi_v<R>());
    }
    throw contract_error("no input source: give --curve, --system or --input");
}

template <class R>
Vec2<R> centroid(const Trajectory<R>& t) {
    Kahan<R> sx, sy;
    for (const auto& p : t.pts) {
        sx.add(p.x);
        sy.add(p.y);
    }
    R n = R(static_cast<long long>(t.size()));
    return {sx.value() / n, sy.value() / n};
}

template <class R>
Vec2<R> resolve_point(const std::vector<double>& opt, bool use_centroid,
                      const Trajectory<R>& traj, const char* what) {
    if (use_centroid || opt.empty()) {
        if (!use_centroid && opt.empty())
            throw contract_error(std::string("--") + what +
                                 " x,y (or 'centroid') is required");
        return centroid(traj);
    }
    return {R(opt[0]), R(opt[1])};
}

// ---------------------------------------------------------------- commands

template <class R>
int run_wba(const JobConfig& cfg) {
    auto traj = make_trajectory<R>(cfg);
    if (!cfg.save_traj.empty())
        write_trajectory_csv(cfg.save_traj, traj, Report::header_lines(cfg));
    std::size_t n = std::min(cfg.n, traj.size());
    auto f = observable<R>(cfg.f);
    std::vector<R> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = f(traj[i]);
    auto scheme = WeightScheme<R>::make(n, cfg.p);
    Report rep;
    rep.add("command", "wba");
    rep.add("precision", precision_traits<R>::name);
    rep.add("f", cfg.f);
    rep.add("N", std::to_string(n));
    rep.add_real("weighted_average", weighted_birkhoff(vals, scheme));
    rep.add_real("uniform_average", uniform_average(vals));
    rep.write(cfg);
    return 0;
}

template <class R>
int run_rotnum(const JobConfig& cfg) {
    auto traj = make_trajectory<R>(cfg);
    if (!cfg.save_traj.empty())
        write_trajectory_csv(cfg.save_traj, traj, Report::header_lines(cfg));
    std::size_t n = std::min(cfg.n, traj.size());
    Vec2<R> base = resolve_point(cfg.base_point, cfg.base_centroid, traj, "P");
    auto scheme = WeightScheme<R>::make(n - static_cast<std::size_t>(cfg.k) + 1, cfg.p);
    auto res = rotation_number(traj, base, cfg.k, n, scheme);
    Report rep;
    rep.add("command", "rotnum");
    rep.add("precision", precision_traits<R>::name);
    rep.add("source", traj.meta.system);
    rep.add("N", std::to_string(n));
    rep.add("K", std::to_string(cfg.k));
    rep.add("P", format_real(base.x) + "," + format_real(base.y));
    rep.add_real("rho", res.rho);
    rep.add_real("rho_complement", frac(R(1) - res.rho));
    rep.add("winding", std::to_string(res.winding));
    rep.add_real("max_residual", res.max_residual);
    rep.add_real("fluctuation", res.fluctuation);
    rep.write(cfg);
    return 0;
}

template <class R>
int run_conjugacy(const JobConfig& cfg) {
    Report rep;
    rep.add("command", "conjugacy");
    rep.add("precision", precision_traits<R>::name);

    FourierModel<R> model;
    if (!cfg.load_model.empty()) {
        model = load_model<R>(cfg.load_model);
        rep.add("model", cfg.load_model);
    } else {
        auto traj = make_trajectory<R>(cfg);
        std::size_t n = std::min(cfg.n, traj.size());
        traj.pts.resize(n);
        Vec2<R> center = resolve_point(cfg.center, cfg.center.empty(), traj, "center");

        R rho;
        if (cfg.rho >= 0 && !cfg.curve.empty()) {
            rho = R(cfg.rho);
        } else {
            auto scheme =
                WeightScheme<R>::make(n - static_cast<std::size_t>(cfg.k) + 1, cfg.p);
            rho = rotation_number(traj, center, cfg.k, n, scheme).rho;
        }
        rep.add_real("rho", rho);

        auto samples = conjugacy_samples(traj, rho, center);
        auto scheme_n = WeightScheme<R>::make(n, cfg.p);
        model = build_model(samples, cfg.kmax, scheme_n);
        rep.add("N", std::to_string(n));
        rep.add("center", format_real(center.x) + "," + format_real(center.y));
    }
    rep.add("kmax", std::to_string(model.kmax));
    rep.add_real("noise_floor", model.noise_floor);
    rep.add_real("noise_floor_radial", model.noise_floor_b);

    try {
        auto fit = analyticity_fit(model);
        rep.add_real("decay_beta", fit.beta);
        rep.add_real("fit_r2", fit.r2);
        rep.add("fit_points", std::to_string(fit.points));
        rep.add("verdict", fit.analytic ? "real-analytic at working precision"
                                        : "not resolved as analytic");
    } catch (const insufficient_data& e) {
        rep.add("verdict", std::string("insufficient data: ") + e.what());
    }

    if (!cfg.coeffs_out.empty()) {
        CsvWriter w(cfg.coeffs_out, Report::header_lines(cfg),
                    "k,re_a,im_a,abs_a,re_b,im_b,abs_b");
        using std::abs;
        for (long k = -model.kmax; k <= model.kmax; ++k) {
            auto a = model.coeff_a(k);
            auto b = model.coeff_b(k);
            w.row(std::to_string(k) + "," + format_real(creal(a)) + "," +
                  format_real(cimag(a)) + "," + format_real(abs(a)) + "," +
                  format_real(creal(b)) + "," + format_real(cimag(b)) + "," +
                  format_real(abs(b)));
        }
        rep.add("coefficients", cfg.coeffs_out);
    }
    if (!cfg.save_model.empty()) {
        save_model(model, cfg.save_model);
        rep.add("model_saved", cfg.save_model);
    }

    if (cfg.predict > 0) {
        auto pt = predict_sample(model, cfg.predict);
        rep.add("predict_n", std::to_string(cfg.predict));
        rep.add("predict_x", format_real(pt.x));
        rep.add("predict_y", format_real(pt.y));
        if (cfg.check_direct) {
            Vec2<R> direct;
            if (!cfg.curve.empty()) {
                R rho = golden_or<R>(cfg.rho);
                auto spec = cfg.curve == "fish"     ? CurveSpec<R>::fish(rho)
                            : cfg.curve == "flower" ? CurveSpec<R>::flower(rho)
                                                    : CurveSpec<R>::pure_circle(rho);
                auto z = spec.point(RotationGrid<R>::at(rho, cfg.predict));
                direct = {creal(z), cimag(z)};
            } else if (cfg.system == "standard-map") {
                StandardMap<R> map(R(cfg.r));
                Vec2<R> s{R(cfg.seed[0]), R(cfg.seed[1])};
                for (std::uint64_t i = 0; i < cfg.predict; ++i) s = map.step(s);
                // compare in the unwrapped frame of the model center
                auto wrap = [&](R v, R c) {
                    using std::floor;
                    return v - two_pi_v<R>() * floor((v - c) / two_pi_v<R>() + R(0.5));
                };
                direct = {wrap(s.x, model.center.x), wrap(s.y, model.center.y)};
            } else {
                throw contract_error("--check-direct needs a generated source");
            }
            rep.add_real("direct_x", direct.x);
            rep.add_real("direct_y", direct.y);
            rep.add_real("prediction_error", norm(pt - direct));
        }
    }
    rep.write(cfg);
    return 0;
}

template <class R>
int run_grid(const JobConfig& cfg) {
    int nx = 0, ny = 0;
    if (std::sscanf(cfg.res.c_str(), "%dx%d", &nx, &ny) != 2)
        throw contract_error("--res must look like 500x500");
    GridRegion region{0.0, static_cast<double>(two_pi_v<double>()), 0.0,
                      static_cast<double>(two_pi_v<double>())};
    if (!cfg.region.empty()) {
        if (cfg.region.size() != 4)
            throw contract_error("--region must be x0:x1:y0:y1");
        region = {cfg.region[0], cfg.region[1], cfg.region[2], cfg.region[3]};
    }
    auto scheme = WeightScheme<R>::make(cfg.n, cfg.p);
    auto grid = classify_grid<R>(region, nx, ny, cfg.n, cfg.f, R(cfg.r), scheme);
    if (!cfg.out.empty()) write_grid_csv(grid, cfg.out, Report::header_lines(cfg));
    if (!cfg.img.empty())
        write_grid_pgm(grid, cfg.img, precision_traits<R>::significant_digits);
    double lo = grid.values[0], hi = grid.values[0];
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    Report rep;
    rep.add("command", "grid");
    rep.add("precision", precision_traits<R>::name);
    rep.add("cells", std::to_string(grid.values.size()));
    rep.add_real("zeros_min", lo);
    rep.add_real("zeros_max", hi);
    std::cout << rep.text();
    return 0;
}

template <class R>
int run_embed3(const JobConfig& cfg) {
    std::vector<Vec2<R>> seeds;
    if (cfg.diag > 0) {
        for (std::size_t i = 0; i < cfg.diag; ++i) {
            R t = two_pi_v<R>() * (R(static_cast<long long>(i)) + R(0.5)) /
                  R(static_cast<long long>(cfg.diag));
            seeds.push_back({t, t});
        }
    } else if (!cfg.seeds_file.empty()) {
        auto t = read_trajectory_csv<R>(cfg.seeds_file);
        seeds = t.pts;
    } else {
        throw contract_error("embed3 needs --diag COUNT or --seeds-file");
    }
    auto scheme = WeightScheme<R>::make(cfg.n, cfg.p);
    auto triples = embed3<R>(seeds, cfg.f, cfg.f2, cfg.f3, cfg.n, R(cfg.r), scheme);
    if (!cfg.out.empty()) {
        CsvWriter w(cfg.out, Report::header_lines(cfg), "x,y,wb1,wb2,wb3");
        for (std::size_t i = 0; i < seeds.size(); ++i)
            w.row(format_real(seeds[i].x) + "," + format_real(seeds[i].y) + "," +
                  format_real(triples[i][0]) + "," + format_real(triples[i][1]) + "," +
                  format_real(triples[i][2]));
    }
    std::cout << "seeds: " << seeds.size() << "\n";
    return 0;
}

template <class R>
int run_threebody(const JobConfig& cfg) {
    ThreeBody<R> sys(R(cfg.mu));
    if (!cfg.scan.empty()) {
        auto parts = parse_colon_list(cfg.scan);
        if (parts.size() != 3) throw contract_error("--scan must be q1min:q1max:count");
        int count = static_cast<int>(parts[2]);
        if (count < 1) throw contract_error("scan count must be >= 1");
        auto scheme = WeightScheme<R>::make(cfg.scan_n, cfg.p);
        std::unique_ptr<CsvWriter> w;
        if (!cfg.out.empty())
            w = std::make_unique<CsvWriter>(cfg.out, Report::header_lines(cfg),
                                            "q1,p1,status,zeros");
        for (int i = 0; i < count; ++i) {
            double q1 = parts[0] + (parts[1] - parts[0]) *
                                       (count == 1 ? 0.0 : double(i) / (count - 1));
            std::string status = "ok";
            R zeros = R(0);
            try {
                auto seed = ThreeBody<R>::section_seed(R(q1), R(cfg.scan_p1),
                                                       R(cfg.hamiltonian), R(cfg.mu));
                auto pts = sys.poincare_returns(seed, 2 * cfg.scan_n, R(cfg.step));
                std::vector<R> vals(2 * cfg.scan_n);
                for (std::size_t m = 0; m < pts.size(); ++m) {
                    using std::sin;
                    vals[m] = sin(pts[m].q1 + pts[m].p1);
                }
                zeros = zeros_n(std::span<const R>(vals), scheme).zeros;
            } catch (const domain_error& e) {
                status = e.what();
            }
            std::cout << "q1=" << q1 << " status=" << status
                      << " zeros=" << static_cast<double>(zeros) << "\n";
            if (w)
                w->row(format_real(q1) + "," + format_real(cfg.scan_p1) + "," + status +
                       "," + format_real(zeros));
        }
        return 0;
    }
    if (cfg.seed.size() != 2) throw contract_error("--seed q1,p1 is required");
    auto seed = ThreeBody<R>::section_seed(R(cfg.seed[0]), R(cfg.seed[1]),
                                           R(cfg.hamiltonian), R(cfg.mu));
    auto pts = sys.poincare_returns(seed, cfg.returns, R(cfg.step));
    if (!cfg.out.empty()) {
        CsvWriter w(cfg.out, Report::header_lines(cfg), "n,q1,p1,t");
        for (std::size_t i = 0; i < pts.size(); ++i)
            w.row(std::to_string(i) + "," + format_real(pts[i].q1) + "," +
                  format_real(pts[i].p1) + "," + format_real(pts[i].crossing_time));
    }
    Report rep;
    rep.add("command", "threebody");
    rep.add("precision", precision_traits<R>::name);
    rep.add("returns", std::to_string(pts.size()));
    rep.add_real("H", sys.hamiltonian(seed));
    std::cout << rep.text();
    return 0;
}

template <class R>
int run_lyapunov(const JobConfig& cfg) {
    if (cfg.seed.size() != 2) throw contract_error("--seed x,y is required");
    auto scheme = WeightScheme<R>::make(cfg.n, cfg.p);
    R lambda = lyapunov<R>({R(cfg.seed[0]), R(cfg.seed[1])}, R(cfg.r), cfg.n, scheme,
                           !cfg.uniform);
    Report rep;
    rep.add("command", "lyapunov");
    rep.add("precision", precision_traits<R>::name);
    rep.add("N", std::to_string(cfg.n));
    rep.add("weighted", cfg.uniform ? "false" : "true");
    rep.add_real("lyapunov_exponent", lambda);
    rep.write(cfg);
    return 0;
}

template <class R>
int dispatch(const JobConfig& cfg) {
    if (cfg.command == "wba") return run_wba<R>(cfg);
    if (cfg.command == "rotnum") return run_rotnum<R>(cfg);
    if (cfg.command == "conjugacy") return run_conjugacy<R>(cfg);
    if (cfg.command == "grid") return run_grid<R>(cfg);
    if (cfg.command == "embed3") return run_embed3<R>(cfg);
    if (cfg.command == "threebody") return run_threebody<R>(cfg);
    if (cfg.command == "lyapunov") return run_lyapunov<R>(cfg);
    throw contract_error("unknown command: " + cfg.command);
}

} // namespace

std::string JobConfig::canonical() const {
    std::ostringstream os;
    os << "command=" << command << " precision=" << precision << " p=" << p
       << " N=" << n << " curve=" << curve << " system=" << system << " r=" << r
       << " seed=" << join_doubles(seed) << " input=" << input << " rho=" << rho
       << " P=" << join_doubles(base_point) << (base_centroid ? " P=centroid" : "")
       << " K=" << k << " center=" << join_doubles(center) << " kmax=" << kmax
       << " res=" << res << " region=" << join_doubles(region) << " f=" << f
       << " f2=" << f2 << " f3=" << f3 << " diag=" << diag
       << " seeds_file=" << seeds_file << " mu=" << mu << " H=" << hamiltonian
       << " step=" << step << " returns=" << returns << " scan=" << scan
       << " scan_p1=" << scan_p1 << " scan_N=" << scan_n
       << " save_traj=" << save_traj
       << " weighted=" << (uniform ? 0 : 1) << " predict=" << predict;
    return os.str();
}

void build_app(CLI::App& app, JobConfig& cfg) {
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "fast (double) or high (quad)")
            ->check(CLI::IsMember({"fast", "high"}))
            ->capture_default_str();
        sub->add_option("--p", cfg.p, "weight exponent")->check(CLI::PositiveNumber);
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
        sub->add_option("--out", cfg.out, "output file");
    };
    auto add_source = [&cfg](CLI::App* sub) {
        sub->add_option("--save-traj", cfg.save_traj, "export the input trajectory CSV");
        sub->add_option("--curve", cfg.curve, "fish | flower | circle");
        sub->add_option("--system", cfg.system, "standard-map");
        sub->add_option("--r", cfg.r, "standard-map parameter")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed x,y")->delimiter(',')->expected(2);
        sub->add_option("--input", cfg.input, "trajectory CSV (n,x,y)");
        sub->add_option("--rho", cfg.rho,
                        "generation rotation number (curves; default golden)");
        sub->add_option("--N", cfg.n, "trajectory length")->capture_default_str();
    };

    auto* wba = app.add_subcommand("wba", "weighted Birkhoff average of an observable");
    add_common(wba);
    add_source(wba);
    wba->add_option("--f", cfg.f, "observable tag")->capture_default_str();

    auto* rot = app.add_subcommand("rotnum", "rotation number from trajectory data");
    add_common(rot);
    add_source(rot);
    rot->add_option("--P", cfg.base_point, "base point x,y")
        ->delimiter(',')
        ->expected(2);
    rot->add_flag("--P-centroid", cfg.base_centroid, "use the trajectory centroid");
    rot->add_option("--K", cfg.k, "delay embedding depth")->capture_default_str();
    rot->add_option("--json", cfg.json, "JSON report path");

    auto* con = app.add_subcommand("conjugacy",
                                   "Fourier model of the conjugacy to pure rotation");
    add_common(con);
    add_source(con);
    con->add_option("--center", cfg.center, "polar center x,y (default centroid)")
        ->delimiter(',')
        ->expected(2);
    con->add_option("--K", cfg.k, "embedding depth for the rho estimate");
    con->add_option("--kmax", cfg.kmax, "coefficient range")->capture_default_str();
    con->add_option("--coeffs", cfg.coeffs_out, "coefficient CSV path");
    con->add_option("--save-model", cfg.save_model, "model file to write");
    con->add_option("--load-model", cfg.load_model, "model file to read");
    con->add_option("--predict", cfg.predict, "evaluate the model at sample n");
    con->add_flag("--check-direct", cfg.check_direct,
                  "compare the prediction against direct iteration");
    con->add_option("--json", cfg.json, "JSON report path");

    auto* grid = app.add_subcommand("grid", "zeros scan over initial conditions");
    add_common(grid);
    grid->add_option("--r", cfg.r, "standard-map parameter")->capture_default_str();
    grid->add_option("--N", cfg.n, "window length")->capture_default_str();
    grid->add_option("--res", cfg.res, "grid resolution NXxNY")->capture_default_str();
    grid->add_option("--region", [&cfg](const std::vector<std::string>& v) {
        cfg.region = parse_colon_list(v.back());
        return true;
    }, "region x0:x1:y0:y1 (default the full torus)");
    grid->add_option("--f", cfg.f, "observable tag")->capture_default_str();
    grid->add_option("--img", cfg.img, "PGM image path");

    auto* emb = app.add_subcommand("embed3", "three-observable embedding of seeds");
    add_common(emb);
    emb->add_option("--r", cfg.r, "standard-map parameter")->capture_default_str();
    emb->add_option("--N", cfg.n, "window length")->capture_default_str();
    emb->add_option("--f1", cfg.f, "first observable")->capture_default_str();
    emb->add_option("--f2", cfg.f2, "second observable")->capture_default_str();
    emb->add_option("--f3", cfg.f3, "third observable")->capture_default_str();
    emb->add_option("--diag", cfg.diag, "seed count along the diagonal");
    emb->add_option("--seeds-file", cfg.seeds_file, "seeds CSV (n,x,y)");

    auto* tb = app.add_subcommand("threebody", "Poincare sections of the PCR3BP");
    add_common(tb);
    tb->add_option("--mu", cfg.mu, "mass ratio")->capture_default_str();
    tb->add_option("--H", cfg.hamiltonian, "energy level")->capture_default_str();
    tb->add_option("--seed", cfg.seed, "section seed q1,p1")
        ->delimiter(',')
        ->expected(2);
    tb->add_option("--step", cfg.step, "integration step")->capture_default_str();
    tb->add_option("--returns", cfg.returns, "section returns to collect")
        ->capture_default_str();
    tb->add_option("--scan", cfg.scan, "seed hunt q1min:q1max:count");
    tb->add_option("--scan-p1", cfg.scan_p1, "p1 for the scan");
    tb->add_option("--scan-N", cfg.scan_n, "zeros window for the scan");

    auto* ly = app.add_subcommand("lyapunov", "largest Lyapunov exponent");
    add_common(ly);
    ly->add_option("--r", cfg.r, "standard-map parameter")->capture_default_str();
    ly->add_option("--seed", cfg.seed, "seed x,y")->delimiter(',')->expected(2);
    ly->add_option("--N", cfg.n, "window length")->capture_default_str();
    ly->add_flag("--uniform", cfg.uniform, "uniform instead of weighted averaging");

    for (CLI::App* sub : {wba, rot, con, grid, emb, tb, ly})
        sub->callback([&cfg, sub]() { cfg.command = sub->get_name(); });
}

JobConfig parse_args(const std::vector<std::string>& argv) {
    CLI::App app{kVersion};
    JobConfig cfg;
    build_app(app, cfg);
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
    return cfg;
}

int run_job(const JobConfig& cfg) {
    try {
        if (cfg.threads > 0)
            omp_set_num_threads(cfg.threads);
        else
            omp_set_num_threads(omp_get_num_procs());
        if (parse_precision(cfg.precision) == PrecisionMode::high)
            return dispatch<quad>(cfg);
        return dispatch<double>(cfg);
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const contract_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
}

} // namespace birk::cli
