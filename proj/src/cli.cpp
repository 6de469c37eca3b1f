#include "mubent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mubent/criteria.hpp"
#include "mubent/cv.hpp"
#include "mubent/errors.hpp"
#include "mubent/io.hpp"
#include "mubent/multipartite.hpp"
#include "mubent/optimize.hpp"
#include "mubent/sampling.hpp"

namespace mubent::cli {

namespace {

using io::Json;

struct MubSource {
    std::string file;
    std::size_t d = 0;
    std::size_t m = 0;  // 0 = every basis in the set
};

void add_mub_options(CLI::App* cmd, MubSource& src) {
    cmd->add_option("--mubs", src.file, "MUB set file");
    cmd->add_option("--d", src.d, "use the built-in complete set in dimension d");
    cmd->add_option("--m", src.m, "use only the first m bases");
}

// Built-in or file MUB set; `fallback_d` applies when neither is given.
MubSet load_mubs(const MubSource& src, std::size_t fallback_d) {
    if (!src.file.empty() && src.d != 0) throw DomainError("give either --mubs or --d, not both");
    MubSet set = !src.file.empty() ? io::mub_set_from_json(io::read_json(src.file))
                                   : construct_mub_set(src.d != 0 ? src.d : fallback_d);
    if (src.m != 0) {
        if (src.m > set.size()) throw DomainError("--m exceeds the number of bases in the set");
        set = set.prefix(src.m);
    }
    return set;
}

std::size_t local_dim_of(const DensityMatrix& rho) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rho.dim()))));
    if (d * d != rho.dim()) throw DomainError("state dimension is not a square d^2");
    return d;
}

std::vector<double> grid(double from, double to, double step) {
    if (!(step > 0.0) || !(to >= from) || !std::isfinite(from) || !std::isfinite(to)) {
        throw DomainError("grid needs finite from <= to and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    if (count > 1000000) throw DomainError("grid has more than 10^6 points");
    std::vector<double> xs;
    for (std::size_t i = 0; i < count; ++i) {
        // snap to 12 significant digits so 0.1 steps print as 0.3, not 0.30000000000000004
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", from + static_cast<double>(i) * step);
        xs.push_back(std::strtod(buf, nullptr));
    }
    return xs;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::size_t d = 0;
    std::string output;
};

void cmd_construct(const ConstructArgs& a, std::ostream& out) {
    const Json j = io::mub_set_to_json(construct_mub_set(a.d));
    if (a.output.empty()) {
        emit(out, j);
    } else {
        io::write_json(a.output, j);
        // round-trip check: the written file must import and verify
        (void)io::mub_set_from_json(io::read_json(a.output));
    }
}

void cmd_verify(const std::string& file, double tol, std::ostream& out) {
    const Json j = io::read_json(file);
    if (!j.is_object() || !j.contains("bases") || !j["bases"].is_array()) {
        throw DomainError("MUB file needs a \"bases\" list");
    }
    // reuse the importer's parsing; a failed verification is reported, not raised
    std::vector<ComplexMatrix> candidates;
    const std::size_t d = j.value("d", std::size_t{0});
    if (d == 0) throw DomainError("MUB file needs a positive \"d\"");
    for (const Json& basis : j["bases"]) {
        if (!basis.is_array() || basis.size() != d) throw DomainError("every basis must hold d vectors");
        ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) {
            if (!basis[i].is_array() || basis[i].size() != d) throw DomainError("every vector must hold d entries");
            for (std::size_t t = 0; t < d; ++t) {
                const Json& z = basis[i][t];
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                    throw DomainError("expected a [re, im] pair of numbers");
                }
                m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = {z[0].get<double>(),
                                                                                  z[1].get<double>()};
            }
        }
        candidates.push_back(std::move(m));
    }
    Json rep = io::verification_to_json(verify_mub_set(candidates, tol));
    rep["d"] = d;
    rep["bases"] = candidates.size();
    emit(out, rep);
}

struct EvaluateArgs {
    std::string state;
    MubSource mubs;
    bool relabel = false;
    bool conjugate_b = true;
    bool optimize = false;
    std::size_t parties = 0;
    OptimizerConfig opt;
};

Json optimize_json(const OptimizeResult& r) {
    return Json{{"best_value", r.best_value},
                {"bound", r.report.bound},
                {"margin", r.report.margin},
                {"violated", r.report.violated},
                {"converged", r.converged},
                {"sweeps", r.sweeps},
                {"restart_values", r.restart_values},
                {"report", io::report_to_json(r.report)},
                {"params_a", io::unitary_params_to_json(r.params_a)},
                {"params_b", io::unitary_params_to_json(r.params_b)},
                {"unitary_a", io::complex_matrix_to_json(parameterize_unitary(r.params_a))},
                {"unitary_b", io::complex_matrix_to_json(parameterize_unitary(r.params_b))}};
}

std::string verdict(bool violated) { return violated ? "violated" : "not violated"; }

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
    const DensityMatrix rho = io::density_from_json(io::read_json(a.state));
    if (a.parties != 0) {
        if (a.relabel || a.optimize) throw DomainError("--relabel and --optimize apply to bipartite states only");
        const MubSet mub = load_mubs(a.mubs, a.parties);
        const MultipartiteState st = MultipartiteState::mixed(a.parties, a.parties, rho);
        const AntiCorrReport rep = j_m(st, mub);
        emit(out, Json{{"criterion", "J_m"},
                       {"parties", a.parties},
                       {"m", mub.size()},
                       {"report", io::report_to_json(rep)},
                       {"verdict", verdict(rep.violated)}});
        return;
    }
    const std::size_t d = local_dim_of(rho);
    const MubSet mub = load_mubs(a.mubs, d);
    if (mub.dim() != d) throw DomainError("MUB dimension does not match the state");
    const MubSet mub_b = a.conjugate_b ? conjugate_mub_set(mub) : mub;
    const CriterionReport rep = i_m(rho, mub, mub_b, ImOptions{a.relabel});
    Json j{{"criterion", "I_m"},
           {"d", d},
           {"m", mub.size()},
           {"relabel", a.relabel},
           {"conjugate_b", a.conjugate_b},
           {"report", io::report_to_json(rep)},
           {"verdict", verdict(rep.violated)}};
    if (a.optimize) {
        if (!a.conjugate_b) throw DomainError("--optimize measures the conjugate set on B; drop --no-conjugate-b");
        OptimizerConfig cfg = a.opt;
        cfg.relabel = a.relabel;
        const OptimizeResult r = maximize_im(rho, mub, cfg);
        j["optimized"] = optimize_json(r);
        j["verdict"] = verdict(rep.violated || r.report.violated);
    }
    emit(out, j);
}

struct ScanArgs {
    std::string kind;
    bool threshold = false;
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t m_min = 2;
    std::size_t m_max = 0;
    double from = 0.0;
    double to = 1.0;
    double step = 0.02;
    std::string mubs;
    std::string output;
};

void scan_isotropic(const ScanArgs& a, std::ostream& csv) {
    if (a.d < 2) throw DomainError("isotropic scan needs --d >= 2");
    const MubSet full = a.mubs.empty() ? construct_mub_set(a.d) : io::mub_set_from_json(io::read_json(a.mubs));
    if (full.dim() != a.d) throw DomainError("MUB dimension does not match --d");
    const std::size_t m_max = a.m_max == 0 ? full.size() : a.m_max;
    if (a.m_min < 2 || m_max < a.m_min || m_max > full.size()) throw DomainError("m range outside [2, set size]");
    if (a.threshold) {
        csv << "d,m,alpha_threshold\n";
        for (std::size_t m = a.m_min; m <= m_max; ++m) {
            csv << a.d << ',' << m << ',' << io::format_double(isotropic_threshold(a.d, m, full.prefix(m))) << '\n';
        }
        return;
    }
    const std::vector<double> alphas = grid(a.from, a.to, a.step);
    if (alphas.front() < isotropic_alpha_min(a.d) || alphas.back() > 1.0) {
        throw DomainError("alpha grid must lie in [-1/(d^2-1), 1]");
    }
    csv << "m,alpha,I,bound,violated\n";
    for (std::size_t m = a.m_min; m <= m_max; ++m) {
        const MubSet mub = full.prefix(m);
        std::vector<CriterionReport> rows(alphas.size());
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(alphas.size()); ++i) {
            try {
                const auto iu = static_cast<std::size_t>(i);
                rows[iu] = i_m(isotropic_state(a.d, alphas[iu]), mub);
            } catch (...) {
#pragma omp critical
                failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            csv << m << ',' << io::format_double(alphas[i]) << ',' << io::format_double(rows[i].aggregate) << ','
                << io::format_double(rows[i].bound) << ',' << csv_bool(rows[i].violated) << '\n';
        }
    }
}

void scan_aharonov(const ScanArgs& a, std::ostream& csv) {
    if (a.n < 2 || a.n > 7) throw DomainError("aharonov scan needs 2 <= --n <= 7");
    const MubSet full = a.mubs.empty() ? construct_mub_set(a.n) : io::mub_set_from_json(io::read_json(a.mubs));
    if (full.dim() != a.n) throw DomainError("MUB dimension does not match --n");
    const std::size_t m_max = a.m_max == 0 ? full.size() : a.m_max;
    if (a.m_min < 2 || m_max < a.m_min || m_max > full.size()) throw DomainError("m range outside [2, set size]");
    if (a.threshold) {
        csv << "n,m,alpha_threshold,alpha_closed_form\n";
        for (std::size_t m = a.m_min; m <= m_max; ++m) {
            csv << a.n << ',' << m << ',' << io::format_double(aharonov_threshold_bisection(a.n, full.prefix(m)))
                << ',' << io::format_double(aharonov_noise_threshold(a.n, m)) << '\n';
        }
        return;
    }
    const std::vector<double> alphas = grid(a.from, a.to, a.step);
    if (alphas.front() < 0.0 || alphas.back() > 1.0) throw DomainError("alpha grid must lie in [0, 1]");
    csv << "m,alpha,J,bound,violated\n";
    for (std::size_t m = a.m_min; m <= m_max; ++m) {
        const MubSet mub = full.prefix(m);
        for (double alpha : alphas) {
            const AntiCorrReport rep = aharonov_white_noise_jm(a.n, alpha, mub);
            csv << m << ',' << io::format_double(alpha) << ',' << io::format_double(rep.aggregate) << ','
                << io::format_double(rep.bound) << ',' << csv_bool(rep.violated) << '\n';
        }
    }
}

void scan_cv(const ScanArgs& a, std::ostream& csv) {
    if (a.threshold) {
        const CvThresholdReport t = cv_threshold();
        csv << "quadrature_r,closed_form_r,analytic_r,literature_r,deviation\n";
        csv << io::format_double(t.quadrature_r) << ',' << io::format_double(t.closed_form_r) << ','
            << io::format_double(t.analytic_r) << ',' << io::format_double(t.literature_r) << ','
            << io::format_double(t.deviation) << '\n';
        return;
    }
    const std::vector<double> rs = grid(a.from, a.to, a.step);
    if (rs.front() < 0.0) throw DomainError("r grid must be non-negative");
    csv << "r,C_xx,C_pp,I,bound,violated\n";
    for (const CvScanRow& row : cv_scan(rs)) {
        csv << io::format_double(row.r) << ',' << io::format_double(row.c_xx) << ',' << io::format_double(row.c_pp)
            << ',' << io::format_double(row.total) << ',' << io::format_double(kCvBound) << ','
            << csv_bool(row.violated) << '\n';
    }
}

void cmd_scan(const ScanArgs& a, std::ostream& out) {
    std::ostringstream csv;
    if (a.kind == "isotropic") scan_isotropic(a, csv);
    else if (a.kind == "aharonov") scan_aharonov(a, csv);
    else if (a.kind == "cv") scan_cv(a, csv);
    else throw DomainError("unknown scan kind " + a.kind);
    if (a.output.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(a.output);
        if (!f) throw DomainError("cannot write " + a.output);
        f << csv.str();
    }
}

struct OptimizeArgs {
    std::string state;
    MubSource mubs;
    OptimizerConfig opt;
    bool no_relabel = false;
};

void cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
    const DensityMatrix rho = io::density_from_json(io::read_json(a.state));
    const std::size_t d = local_dim_of(rho);
    const MubSet mub = load_mubs(a.mubs, d);
    if (mub.dim() != d) throw DomainError("MUB dimension does not match the state");
    OptimizerConfig cfg = a.opt;
    cfg.relabel = !a.no_relabel;
    Json j = optimize_json(maximize_im(rho, mub, cfg));
    j["d"] = d;
    j["m"] = mub.size();
    j["relabel"] = cfg.relabel;
    j["seed"] = cfg.seed;
    emit(out, j);
}

struct SampleArgs {
    std::string state;
    MubSource mubs;
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    bool conjugate_b = true;
};

void cmd_sample(const SampleArgs& a, std::ostream& out) {
    if (a.shots < 1) throw DomainError("--shots must be at least 1");
    const DensityMatrix rho = io::density_from_json(io::read_json(a.state));
    const std::size_t d = local_dim_of(rho);
    const MubSet mub = load_mubs(a.mubs, d);
    if (mub.dim() != d) throw DomainError("MUB dimension does not match the state");
    const SampleEstimate e = sample_im(rho, mub, a.conjugate_b ? conjugate_mub_set(mub) : mub, a.shots, a.seed);
    emit(out, Json{{"d", d},
                   {"m", mub.size()},
                   {"shots", e.shots},
                   {"seed", a.seed},
                   {"c_hat", e.c_hat},
                   {"standard_error", e.standard_error},
                   {"i_hat", e.i_hat},
                   {"i_standard_error", e.i_standard_error},
                   {"c_exact", e.c_exact},
                   {"i_exact", e.i_exact},
                   {"bound", e.bound}});
}

void add_optimizer_options(CLI::App* cmd, OptimizerConfig& cfg) {
    cmd->add_option("--restarts", cfg.restarts, "random restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-sweeps", cfg.max_sweeps, "sweeps per restart")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "seed for the starting points");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement detection with mutually unbiased bases", "mubent"};
    app.require_subcommand(1);

    ConstructArgs construct;
    auto* c = app.add_subcommand("construct-mubs", "write a complete MUB set as JSON");
    c->add_option("--d", construct.d, "dimension")->required();
    c->add_option("-o,--output", construct.output, "output file (stdout if omitted)");

    std::string verify_file;
    double verify_tol = kDefaultTolerances.structural;
    auto* v = app.add_subcommand("verify-mubs", "check a MUB file and report the worst defects");
    v->add_option("file", verify_file, "MUB file")->required();
    v->add_option("--tolerance", verify_tol, "defect tolerance");

    EvaluateArgs eval;
    auto* e = app.add_subcommand("evaluate", "evaluate I_m (or J_m with --parties) on a density matrix");
    e->add_option("state", eval.state, "density matrix file")->required();
    add_mub_options(e, eval.mubs);
    e->add_flag("--relabel", eval.relabel, "optimal outcome relabeling per basis");
    e->add_flag("--conjugate-b,!--no-conjugate-b", eval.conjugate_b, "conjugate bases on B (default on)");
    e->add_flag("--optimize", eval.optimize, "also search over local unitaries");
    e->add_option("--parties", eval.parties, "n-partite state with local dimension n");
    add_optimizer_options(e, eval.opt);

    ScanArgs scan;
    auto* s = app.add_subcommand("scan", "threshold or grid scans as CSV");
    s->add_option("--kind", scan.kind, "isotropic, aharonov or cv")
        ->required()
        ->check(CLI::IsMember({"isotropic", "aharonov", "cv"}));
    s->add_flag("--threshold", scan.threshold, "bisection thresholds instead of a grid");
    s->add_option("--d", scan.d, "local dimension (isotropic)");
    s->add_option("--n", scan.n, "number of parties (aharonov)");
    s->add_option("--m-min", scan.m_min, "smallest number of bases");
    s->add_option("--m-max", scan.m_max, "largest number of bases (default: whole set)");
    s->add_option("--from", scan.from, "grid start");
    s->add_option("--to", scan.to, "grid end");
    s->add_option("--step", scan.step, "grid step");
    s->add_option("--mubs", scan.mubs, "MUB set file instead of the built-in set");
    s->add_option("-o,--output", scan.output, "CSV file (stdout if omitted)");

    OptimizeArgs opt;
    auto* o = app.add_subcommand("optimize", "maximize I_m over local unitaries");
    o->add_option("state", opt.state, "density matrix file")->required();
    add_mub_options(o, opt.mubs);
    add_optimizer_options(o, opt.opt);
    o->add_flag("--no-relabel", opt.no_relabel, "keep the fixed labeling i <-> i");

    SampleArgs sample;
    auto* sm = app.add_subcommand("sample", "finite-shot estimate of I_m");
    sm->add_option("state", sample.state, "density matrix file")->required();
    add_mub_options(sm, sample.mubs);
    sm->add_option("--shots", sample.shots, "shots per basis pair")->check(CLI::PositiveNumber);
    sm->add_option("--seed", sample.seed, "random seed");
    sm->add_flag("--conjugate-b,!--no-conjugate-b", sample.conjugate_b, "conjugate bases on B (default on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*c) cmd_construct(construct, out);
        else if (*v) cmd_verify(verify_file, verify_tol, out);
        else if (*e) cmd_evaluate(eval, out);
        else if (*s) cmd_scan(scan, out);
        else if (*o) cmd_optimize(opt, out);
        else if (*sm) cmd_sample(sample, out);
    } catch (const NumericalError& ex) {
        err << "numerical failure: " << ex.what() << " (achieved " << ex.achieved() << ")\n";
        return kExitNumerical;
    } catch (const UnsupportedError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const std::length_error& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const io::Json::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace mubent::cli
