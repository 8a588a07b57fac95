#include "ridgelab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ridgelab/data.hpp"
#include "ridgelab/errors.hpp"
#include "ridgelab/experiments.hpp"
#include "ridgelab/io.hpp"
#include "ridgelab/operators.hpp"
#include "ridgelab/parallel.hpp"
#include "ridgelab/selftest.hpp"
#include "ridgelab/special.hpp"
#include "ridgelab/svg.hpp"
#include "ridgelab/train.hpp"

namespace ridgelab {

namespace {

namespace fs = std::filesystem;

struct GenArgs {
    std::string dataset;
    long s = 0;  // 0 -> per-dataset default
    double noise = 0.0;
    double mu = 0.0;
    std::uint64_t seed = 0;
    std::string out = "dataset.csv";
};

struct TrainArgs {
    std::string data;
    std::string dataset_hint;  // optional kind name, sets the default p
    int p = 0;                 // 0 -> default for the hinted kind (10 otherwise)
    long n = 100;
    std::string opt = "adam";
    std::string act = "tanh";
    double lr = 1e-3;
    int epochs = 1000;
    int batch = 0;
    std::uint64_t seed = 0;
    double init_scale = 1.0;
    double filter_low = 0.02;
    double filter_high = 0.98;
    std::string out_ensemble = "ensemble.csv";
    std::string out_units = "units.csv";
    std::string traces_dir;
};

struct SpectrumArgs {
    std::string data;
    std::string act = "tanh";
    double a_min = -25.0, a_max = 25.0, b_min = -25.0, b_max = 25.0;
    int a_steps = 128, b_steps = 128;
    bool raw = false;
    std::string out_csv = "spectrum.csv";
    std::string out_svg = "spectrum.svg";
    std::string out_bin;  // optional binary dump
};

struct OptimizeArgs {
    std::string data;
    std::string act = "tanh";
    double a_min = -30.0, a_max = 30.0, b_min = -30.0, b_max = 30.0;
    int a_steps = 64, b_steps = 64;
    double beta = 1e-3;
    int eval_points = 512;
    bool rho_star = false;
    bool dump_gram = false;
    std::string out_coeff = "coeff.json";
    std::string out_recon = "recon.csv";
    std::string out_fit_svg = "fit.svg";
    std::string out_heatmap_svg = "gamma.svg";
};

struct CompareArgs {
    std::string spectrum;
    std::string units;
    std::string coeff;
    std::string out_report = "report.json";
    std::string out_svg = "overlay.svg";
};

int cmd_gen(const GenArgs& args) {
    const DatasetKind kind = dataset_kind_from_name(args.dataset);
    const long s = args.s > 0 ? args.s : default_sample_count(kind);
    const Dataset ds = gen_dataset(kind, s, args.noise, args.mu, args.seed);
    write_dataset_csv(args.out, ds);
    std::cout << "wrote " << ds.size() << " samples to " << args.out << "  (y in ["
              << format_double(ds.y.minCoeff()) << ", " << format_double(ds.y.maxCoeff())
              << "], suggested --p " << default_hidden_units(kind) << ")\n";
    return 0;
}

int cmd_train(const TrainArgs& args) {
    const Dataset ds = read_dataset_csv(args.data);
    const Activation act = activation_from_name(args.act);
    TrainConfig cfg;
    cfg.p = args.p;
    if (cfg.p <= 0)
        cfg.p = args.dataset_hint.empty()
                    ? 10
                    : default_hidden_units(dataset_kind_from_name(args.dataset_hint));
    if (args.opt == "adam")
        cfg.optimizer = OptimizerKind::Adam;
    else if (args.opt == "lbfgs")
        cfg.optimizer = OptimizerKind::Lbfgs;
    else
        throw std::invalid_argument("train: --opt expects adam or lbfgs");
    cfg.adam.lr = args.lr;
    cfg.epochs = args.epochs;
    cfg.batch_size = args.batch;
    cfg.seed = args.seed;
    cfg.init.scale = args.init_scale;

    const EnsembleResult ens = train_ensemble(ds, act, cfg, args.n);
    write_ensemble_csv(args.out_ensemble, ens, ds.dim());
    const Eigen::MatrixXd units = ens.units(ds.dim());
    const Eigen::MatrixXd kept = filter_units(units, args.filter_low, args.filter_high);
    write_units_csv(args.out_units, kept, ds.dim());
    if (!args.traces_dir.empty()) {
        fs::create_directories(args.traces_dir);
        for (std::size_t r = 0; r < ens.runs.size(); ++r) {
            write_trace_csv(fs::path(args.traces_dir) /
                                ("trace_" + std::to_string(ens.run_ids[r]) + ".csv"),
                            ens.runs[r].loss_trace);
        }
    }
    double median_loss = 0.0;
    if (!ens.final_losses.empty()) {
        std::vector<double> sorted = ens.final_losses;
        std::sort(sorted.begin(), sorted.end());
        median_loss = sorted[sorted.size() / 2];
    }
    std::cout << ens.runs.size() << "/" << args.n << " runs finished, median final loss "
              << format_double(median_loss) << "; kept " << kept.rows() << "/" << units.rows()
              << " units after the |c| quantile filter\n";
    return 0;
}

int cmd_spectrum(const SpectrumArgs& args) {
    const Dataset ds = read_dataset_csv(args.data);
    const Activation act = activation_from_name(args.act);
    const RidgeletFn rf = ridgelet_for_activation(act);
    // cell-center nodes, so the lattice lines up with optimize's grid measure
    const GridSpec grid{args.a_min, args.a_max, args.b_min, args.b_max, args.a_steps, args.b_steps};
    Eigen::VectorXd a_nodes(grid.a_steps), b_nodes(grid.b_steps);
    for (int i = 0; i < grid.a_steps; ++i) a_nodes(i) = grid.a_node(i);
    for (int i = 0; i < grid.b_steps; ++i) b_nodes(i) = grid.b_node(i);
    const Spectrum spec = classic_spectrum(
        ds, rf, a_nodes, b_nodes,
        args.raw ? SpectrumNormalization::RawSum : SpectrumNormalization::MaxAbsOne);
    write_spectrum_csv(args.out_csv, spec);
    write_heatmap_svg(args.out_svg, spec);
    if (!args.out_bin.empty()) write_spectrum_bin(args.out_bin, spec);
    std::cout << "wrote " << spec.a_grid.size() << "x" << spec.b_grid.size() << " spectrum ("
              << rf.name() << ") to " << args.out_csv << " and " << args.out_svg << "\n";
    return 0;
}

int cmd_optimize(const OptimizeArgs& args) {
    const Dataset ds = read_dataset_csv(args.data);
    if (ds.dim() != 1)
        throw std::invalid_argument("optimize: the (a, b) grid path needs a 1-D dataset");
    const Activation act = activation_from_name(args.act);
    GridSpec grid{args.a_min, args.a_max, args.b_min, args.b_max, args.a_steps, args.b_steps};
    const ParamMeasure meas = ParamMeasure::make_grid(grid);

    const Eigen::VectorXd eval_nodes =
        linspace_nodes(ds.x.col(0).minCoeff(), ds.x.col(0).maxCoeff(), args.eval_points);
    Eigen::MatrixXd xs_eval(eval_nodes.size(), 1);
    xs_eval.col(0) = eval_nodes;

    Reconstruction rec = reconstruct(meas, act, ds, args.beta, xs_eval);
    if (args.rho_star) {
        const GramOperator gram = build_gram(meas, act, ds);
        const RidgeletKernel kernel = solve_ridgelet_kernel(gram, ds, args.beta);
        const Eigen::VectorXd via_kernel = apply_ridgelet_kernel(kernel, ds, ds.y).real_values();
        const Eigen::VectorXd direct = rec.gamma.real_values();
        const double diff = (via_kernel - direct).norm();
        if (diff > 1e-8) {
            throw NumericError("optimize: ridgelet-kernel route disagrees with the direct solve (|diff| = " +
                               format_double(diff) + ")");
        }
        rec.gamma = Coefficient::from_real(via_kernel);
        if (args.dump_gram) write_matrix_csv("gram.csv", gram.matrix);
    } else if (args.dump_gram) {
        write_matrix_csv("gram.csv", build_gram(meas, act, ds).matrix);
    }

    write_measure_coefficient_json(args.out_coeff, meas, rec.gamma);
    {  // reconstruction table x,fit
        std::ofstream out(args.out_recon);
        if (!out) throw IoError("cannot open '" + args.out_recon + "' for writing");
        out << "x,fit\n";
        for (long i = 0; i < eval_nodes.size(); ++i)
            out << format_double(eval_nodes(i)) << "," << format_double(rec.fitted(i)) << "\n";
        out.flush();
        if (!out) throw IoError("write to '" + args.out_recon + "' failed");
    }
    write_fit_svg(args.out_fit_svg, ds, eval_nodes, rec.fitted);
    write_heatmap_svg(args.out_heatmap_svg,
                      spectrum_from_coefficient(meas, rec.gamma, SpectrumNormalization::MaxAbsOne));
    std::cout << "relative L2(mu) fit error: " << format_double(rec.relative_l2_error) << "\n";
    return 0;
}

int cmd_compare(const CompareArgs& args) {
    const Spectrum spec = read_spectrum_csv(args.spectrum);
    const Eigen::MatrixXd units = read_units_csv(args.units);
    const ConcentrationReport report = concentration_score(spec, units);

    nlohmann::json j;
    j["concentration_score"] = report.score;
    j["units_used"] = report.used;
    j["units_out_of_bounds"] = report.out_of_bounds;
    if (!args.coeff.empty()) {
        const auto [meas, coeff] = read_measure_coefficient_json(args.coeff);
        const Spectrum gamma_spec = spectrum_from_coefficient(meas, coeff);
        if (gamma_spec.a_grid.size() != spec.a_grid.size() ||
            gamma_spec.b_grid.size() != spec.b_grid.size() ||
            (gamma_spec.a_grid - spec.a_grid).cwiseAbs().maxCoeff() > 1e-9 ||
            (gamma_spec.b_grid - spec.b_grid).cwiseAbs().maxCoeff() > 1e-9) {
            throw std::invalid_argument("compare: coefficient grid does not match the spectrum grid");
        }
        const Eigen::VectorXd u =
            Eigen::Map<const Eigen::VectorXd>(spec.values.data(), spec.values.size()).cwiseAbs();
        const Eigen::VectorXd v =
            Eigen::Map<const Eigen::VectorXd>(gamma_spec.values.data(), gamma_spec.values.size())
                .cwiseAbs();
        j["pearson_abs"] = pearson_correlation(u, v);
    }
    {
        std::ofstream out(args.out_report);
        if (!out) throw IoError("cannot open '" + args.out_report + "' for writing");
        out << j.dump(2) << "\n";
        out.flush();
        if (!out) throw IoError("write to '" + args.out_report + "' failed");
    }
    write_heatmap_scatter_svg(args.out_svg, spec, units);
    std::cout << "concentration score " << format_double(report.score) << " over " << report.used
              << " units (" << report.out_of_bounds << " out of bounds)";
    if (j.contains("pearson_abs"))
        std::cout << ", |spectrum|-|coefficient| correlation "
                  << format_double(j["pearson_abs"].get<double>());
    std::cout << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ridgelab: shallow-network training, ridgelet spectra and the Tikhonov-optimal coefficient"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override it");
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (RIDGELAB_JOBS env var overrides)");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset CSV");
    gen_cmd->add_option("--dataset", gen.dataset,
                        "sin | gaussnoise | hfsin | topsin | gausskernel | squarewave")->required();
    gen_cmd->add_option("--s", gen.s, "sample count (default: 10000 for topsin, else 1000)");
    gen_cmd->add_option("--noise", gen.noise, "Gaussian noise std for sin");
    gen_cmd->add_option("--mu", gen.mu, "center for gausskernel");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--out", gen.out, "output CSV path");

    TrainArgs train;
    auto* train_cmd = app.add_subcommand("train", "train an ensemble of shallow networks");
    train_cmd->add_option("--data", train.data, "dataset CSV")->required();
    train_cmd->add_option("--dataset", train.dataset_hint, "dataset name, sets the default --p");
    train_cmd->add_option("--p", train.p, "hidden units (default per dataset)");
    train_cmd->add_option("--n", train.n, "ensemble size");
    train_cmd->add_option("--opt", train.opt, "adam | lbfgs");
    train_cmd->add_option("--act", train.act, "tanh | relu | gaussian");
    train_cmd->add_option("--lr", train.lr, "adam learning rate");
    train_cmd->add_option("--epochs", train.epochs, "training epochs");
    train_cmd->add_option("--batch", train.batch, "mini-batch size (0 = full batch)");
    train_cmd->add_option("--seed", train.seed, "base seed; run i uses seed + i");
    train_cmd->add_option("--init-scale", train.init_scale, "|a|,|b| init range");
    train_cmd->add_option("--filter-low", train.filter_low, "lower |c| quantile kept");
    train_cmd->add_option("--filter-high", train.filter_high, "upper |c| quantile kept");
    train_cmd->add_option("--out-ensemble", train.out_ensemble, "all-units CSV");
    train_cmd->add_option("--out-units", train.out_units, "filtered-units CSV");
    train_cmd->add_option("--traces", train.traces_dir, "directory for per-run loss traces");

    SpectrumArgs spec;
    auto* spec_cmd = app.add_subcommand("spectrum", "Monte Carlo ridgelet spectrum of a dataset");
    spec_cmd->add_option("--data", spec.data, "dataset CSV")->required();
    spec_cmd->add_option("--act", spec.act, "tanh | relu (needs a paired ridgelet)");
    spec_cmd->add_option("--a-min", spec.a_min);
    spec_cmd->add_option("--a-max", spec.a_max);
    spec_cmd->add_option("--b-min", spec.b_min);
    spec_cmd->add_option("--b-max", spec.b_max);
    spec_cmd->add_option("--a-steps", spec.a_steps);
    spec_cmd->add_option("--b-steps", spec.b_steps);
    spec_cmd->add_flag("--raw", spec.raw, "skip max-abs-one rescaling");
    spec_cmd->add_option("--out-csv", spec.out_csv);
    spec_cmd->add_option("--out-svg", spec.out_svg);
    spec_cmd->add_option("--out-bin", spec.out_bin, "optional binary row-major dump");

    OptimizeArgs opt;
    auto* opt_cmd = app.add_subcommand("optimize", "closed-form global minimizer on a grid measure");
    opt_cmd->add_option("--data", opt.data, "dataset CSV")->required();
    opt_cmd->add_option("--act", opt.act, "tanh | relu | gaussian");
    opt_cmd->add_option("--a-min", opt.a_min);
    opt_cmd->add_option("--a-max", opt.a_max);
    opt_cmd->add_option("--b-min", opt.b_min);
    opt_cmd->add_option("--b-max", opt.b_max);
    opt_cmd->add_option("--a-steps", opt.a_steps);
    opt_cmd->add_option("--b-steps", opt.b_steps);
    opt_cmd->add_option("--beta", opt.beta, "Tikhonov beta > 0");
    opt_cmd->add_option("--eval-points", opt.eval_points, "1-D evaluation grid size");
    opt_cmd->add_flag("--rho-star", opt.rho_star,
                      "solve via the modified ridgelet kernel and check agreement");
    opt_cmd->add_flag("--dump-gram", opt.dump_gram, "also write gram.csv (debug)");
    opt_cmd->add_option("--out-coeff", opt.out_coeff);
    opt_cmd->add_option("--out-recon", opt.out_recon);
    opt_cmd->add_option("--out-fit-svg", opt.out_fit_svg);
    opt_cmd->add_option("--out-heatmap-svg", opt.out_heatmap_svg);

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "score trained units against a spectrum");
    cmp_cmd->add_option("--spectrum", cmp.spectrum, "spectrum CSV")->required();
    cmp_cmd->add_option("--units", cmp.units, "filtered-units CSV")->required();
    cmp_cmd->add_option("--coeff", cmp.coeff, "optional coefficient JSON for the correlation");
    cmp_cmd->add_option("--out-report", cmp.out_report);
    cmp_cmd->add_option("--out-svg", cmp.out_svg);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the operator invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    set_global_jobs(jobs);
    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (train_cmd->parsed()) return cmd_train(train);
        if (spec_cmd->parsed()) return cmd_spectrum(spec);
        if (opt_cmd->parsed()) return cmd_optimize(opt);
        if (cmp_cmd->parsed()) return cmd_compare(cmp);
        if (selftest_cmd->parsed()) {
            const int failures = run_selftest(std::cout);
            std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
            return failures == 0 ? 0 : 3;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ridgelab
