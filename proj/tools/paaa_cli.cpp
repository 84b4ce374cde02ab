// Command-line front end: fit, eval, report, gen.
//
// Exit codes: 0 success, 1 input/flag errors, 2 fit stopped before reaching
// the tolerance (model still written).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "paaa/paaa.hpp"

using namespace paaa;

namespace
{
std::string metric(Real x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", x);
    return buf;
}

std::string coord(const Complex &z)
{
    if (z.imag() == 0.0)
        return format_real(z.real());
    return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + format_real(std::abs(z.imag())) + "i";
}

std::string log_line(const IterationRecord &r)
{
    std::ostringstream os;
    os << "iter=" << r.iteration << " point=(";
    for (Index j = 0; j < r.point.size(); ++j)
        os << (j ? "," : "") << coord(r.point(j));
    os << ") relerr=" << metric(r.rel_error) << " orders=(";
    for (std::size_t j = 0; j < r.node_counts.size(); ++j)
        os << (j ? "," : "") << r.node_counts[j] - 1;
    os << ") |I|=" << r.interp_count;
    return os.str();
}

nlohmann::json report_json(const FitReport &rep, const BarycentricModel &model, const std::string &mode)
{
    nlohmann::json j;
    j["mode"] = mode;
    j["status"] = to_string(rep.status);
    j["iterations"] = rep.iterations;
    j["final_error"] = rep.final_error;
    std::vector<Index> orders;
    for (Index n : model.nodes().counts())
        orders.push_back(n - 1);
    j["final_orders"] = orders;
    j["interp_count"] = rep.interp_indices.size();
    nlohmann::json hist = nlohmann::json::array();
    for (const auto &r : rep.history)
    {
        nlohmann::json pt = nlohmann::json::array();
        for (Index k = 0; k < r.point.size(); ++k)
            pt.push_back({r.point(k).real(), r.point(k).imag()});
        hist.push_back({{"iter", r.iteration},
                        {"sample_index", r.sample_index},
                        {"point", pt},
                        {"rel_error", r.rel_error},
                        {"node_counts", r.node_counts},
                        {"interp_count", r.interp_count}});
    }
    j["history"] = hist;
    j["warnings"] = rep.warnings;
    return j;
}

int run_fit(const std::string &input, const std::string &output, Real tol, Index max_iter, const std::string &mode,
            const std::string &update, const std::string &log_path)
{
    SampleSet samples = load_samples(input);
    FitConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.mode = mode == "grid" ? FitMode::Grid : mode == "scattered" ? FitMode::Scattered : FitMode::Auto;
    cfg.interp_update = update == "greedy" ? InterpUpdate::GreedyPointOnly : InterpUpdate::AllAvailable;
    validate(cfg);

    std::optional<std::ofstream> log;
    if (!log_path.empty())
    {
        log.emplace(log_path);
        if (!*log)
            throw std::runtime_error("cannot write " + log_path);
    }
    cfg.on_iteration = [&](const IterationRecord &r, const BarycentricModel &) {
        const std::string line = log_line(r);
        std::cout << line << '\n';
        if (log)
            *log << line << '\n';
    };

    std::string used = mode;
    if (cfg.mode == FitMode::Auto)
        used = as_grid(samples) ? "grid" : "scattered";

    int code = 0;
    std::optional<FitResult> result;
    try
    {
        result.emplace(fit(samples, cfg));
        code = result->report.status == FitStatus::Converged ? 0 : 2;
    }
    catch (const StagnationError &e)
    {
        std::cerr << "paaa fit: " << e.what() << '\n';
        result.emplace(e.result());
        code = 2;
    }
    for (const auto &w : result->report.warnings)
        std::cerr << "warning: " << w << '\n';
    save_model(result->model, output, report_json(result->report, result->model, used));
    std::cout << "status=" << to_string(result->report.status) << " iterations=" << result->report.iterations
              << " relerr=" << metric(result->report.final_error) << '\n';
    return code;
}

int run_eval(const std::string &model_path, const std::string &points_path, const std::string &out_path)
{
    const BarycentricModel model = load_model(model_path);
    const CMatrix pts = load_points(points_path);
    if (pts.cols() != model.dim())
        throw std::invalid_argument("points have " + std::to_string(pts.cols()) + " variables, model has " +
                                    std::to_string(model.dim()));
    const BatchEval res = eval_batch(model, pts);
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot write " + out_path);
    // Same layout as a sample file; failed points carry nan.
    for (Index j = 1; j <= pts.cols(); ++j)
        out << 'z' << j << "_re,z" << j << "_im,";
    out << "f_re,f_im\n";
    for (Index k = 0; k < pts.rows(); ++k)
    {
        for (Index j = 0; j < pts.cols(); ++j)
            out << format_real(pts(k, j).real()) << ',' << format_real(pts(k, j).imag()) << ',';
        out << format_real(res.values(k).real()) << ',' << format_real(res.values(k).imag()) << '\n';
    }
    for (const auto &f : res.failures)
        std::cerr << "warning: row " << f.index + 1 << ": " << f.message << '\n';
    return 0;
}

int run_report(const std::string &model_path, const std::string &test_path)
{
    const BarycentricModel model = load_model(model_path);
    const SampleSet test = load_samples(test_path);
    if (test.dim() != model.dim())
        throw std::invalid_argument("test data has " + std::to_string(test.dim()) + " variables, model has " +
                                    std::to_string(model.dim()));
    const BatchEval res = eval_batch(model, test.points);
    Real max_abs = 0, sq = 0;
    for (Index k = 0; k < test.size(); ++k)
    {
        const Real e = all_finite(res.values(k)) ? std::abs(test.values(k) - res.values(k))
                                                 : std::numeric_limits<Real>::infinity();
        max_abs = std::max(max_abs, e);
        sq += e * e;
    }
    std::cout << "samples=" << test.size() << '\n'
              << "max_abs_error=" << metric(max_abs) << '\n'
              << "rel_max_error=" << metric(relative_max_error(test.values, res.values)) << '\n'
              << "rms_error=" << metric(std::sqrt(sq / Real(test.size()))) << '\n';
    if (!res.failures.empty())
        std::cerr << "warning: " << res.failures.size() << " test points hit poles\n";
    return 0;
}

std::vector<Index> parse_orders(const std::string &s)
{
    std::vector<Index> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stol(tok));
    if (out.empty())
        throw std::invalid_argument("--orders needs a comma-separated list");
    return out;
}

int run_gen(const std::string &preset, std::uint64_t seed, const std::string &out, Index n, Real lo, Real hi,
            std::string heldout_out, const std::string &orders, Index count, const std::string &truth_out)
{
    if (preset == "peaks")
    {
        save_samples(gen_peaks_grid(n, lo, hi).flatten(), out);
        std::cout << "wrote " << n * n << " samples to " << out << '\n';
    }
    else if (preset == "peaks-gaps")
    {
        const GapSplit split = gen_peaks_with_gaps(n, lo, hi, default_gaps());
        if (heldout_out.empty())
        {
            std::filesystem::path p(out);
            heldout_out = (p.parent_path() / (p.stem().string() + "_heldout" + p.extension().string())).string();
        }
        save_samples(split.train, out);
        save_samples(split.heldout, heldout_out);
        std::cout << "wrote " << split.train.size() << " training samples to " << out << " and "
                  << split.heldout.size() << " held-out samples to " << heldout_out
                  << " removed_fraction=" << metric(split.removed_fraction) << '\n';
    }
    else
    {
        const RationalFixture fx = gen_rational_fixture(parse_orders(orders), count, seed);
        save_samples(fx.samples, out);
        if (!truth_out.empty())
            save_model(fx.truth, truth_out);
        std::cout << "wrote " << fx.samples.size() << " samples to " << out << '\n';
    }
    return 0;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multivariate rational approximation of scattered data (p-AAA)"};
    app.require_subcommand(1);

    std::string input, output, mode = "auto", update = "all", log_path;
    Real tol = 1e-8;
    Index max_iter = 100;
    auto *fit_cmd = app.add_subcommand("fit", "Fit a barycentric rational model to a sample CSV");
    fit_cmd->add_option("--input", input, "Sample CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--output", output, "Model JSON to write")->required();
    fit_cmd->add_option("--tol", tol, "Relative max-error target")->check(CLI::PositiveNumber);
    fit_cmd->add_option("--max-iter", max_iter, "Iteration limit")->check(CLI::PositiveNumber);
    fit_cmd->add_option("--mode", mode)->check(CLI::IsMember({"auto", "grid", "scattered"}));
    fit_cmd->add_option("--interp-update", update)->check(CLI::IsMember({"all", "greedy"}));
    fit_cmd->add_option("--log", log_path, "Also write iteration lines here");

    std::string model_path, points_path, out_csv, test_path;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate a model at the points of a CSV");
    eval_cmd->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--points-csv", points_path)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--out-csv", out_csv)->required();

    auto *report_cmd = app.add_subcommand("report", "Error metrics of a model against a sample CSV");
    report_cmd->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--test-csv", test_path)->required()->check(CLI::ExistingFile);

    std::string preset, gen_out, heldout_out, orders = "2,2", truth_out;
    std::uint64_t seed = 0;
    Index n = 40, count = 100;
    Real lo = -3.0, hi = 3.0;
    auto *gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset");
    gen_cmd->add_option("--preset", preset)->required()->check(CLI::IsMember({"peaks", "peaks-gaps", "rational-fixture"}));
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--out", gen_out)->required();
    gen_cmd->add_option("--n", n, "Grid points per axis (peaks presets)")->check(CLI::Range(2, 100000));
    gen_cmd->add_option("--lo", lo);
    gen_cmd->add_option("--hi", hi);
    gen_cmd->add_option("--heldout-out", heldout_out, "Held-out CSV (peaks-gaps)");
    gen_cmd->add_option("--orders", orders, "Per-axis orders, e.g. 2,2 (rational-fixture)");
    gen_cmd->add_option("--count", count, "Sample count (rational-fixture)")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--truth-out", truth_out, "Ground-truth model JSON (rational-fixture)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (*fit_cmd)
            return run_fit(input, output, tol, max_iter, mode, update, log_path);
        if (*eval_cmd)
            return run_eval(model_path, points_path, out_csv);
        if (*report_cmd)
            return run_report(model_path, test_path);
        return run_gen(preset, seed, gen_out, n, lo, hi, heldout_out, orders, count, truth_out);
    }
    catch (const std::exception &e)
    {
        std::cerr << "paaa " << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
        return 1;
    }
}
