#include "asymconv/cli.hpp"

#include "asymconv/errors.hpp"
#include "asymconv/json_io.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

namespace asymconv {

namespace {

struct Outcome {
    std::optional<VerificationReport> report;
    std::string error;
};

std::vector<Outcome> verify_all(const std::vector<KernelSpec>& specs, int jobs) {
    std::vector<Outcome> out(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                out[i].report = verify_constant(specs[i]);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const int n = std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
        for (int t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

std::string describe(const KernelSpec& s) { return to_json(s).dump(); }

// Spread of the implied normalizations, grouped by the constant they calibrate.
void normalization_summary(const std::vector<Outcome>& res, std::ostream& os) {
    struct Group {
        const char* name;
        double target;
        std::vector<double> values;
    };
    Group rho{"rho_norm", kRhoNorm, {}}, integer{"integer-case scale", kIntegerCaseScale, {}};
    for (const auto& o : res) {
        if (!o.report) continue;
        switch (o.report->tag) {
            case CaseTag::Smooth: break;
            case CaseTag::BothInteger: integer.values.push_back(o.report->normalization_used); break;
            default: rho.values.push_back(o.report->normalization_used); break;
        }
    }
    for (const Group* g : {&rho, &integer}) {
        if (g->values.empty()) continue;
        double lo = g->values.front(), hi = lo;
        for (double v : g->values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double spread = (hi - lo) / std::abs(g->target);
        os << g->name << ": " << g->values.size() << " specs, range [" << lo << ", " << hi << "], spread " << spread
           << (spread <= 1e-3 ? " (consistent)" : " (inconsistent)") << '\n';
    }
}

int cmd_types(const RunConfig& cfg, std::ostream& out) {
    const auto left = exponent_set_from_json(read_json_file(cfg.inputs.at(0)));
    const auto right = exponent_set_from_json(read_json_file(cfg.inputs.at(1)));
    out << dump(to_json(combine_types(left, right)));
    return kExitOk;
}

int cmd_convolve(const RunConfig& cfg, std::ostream& out) {
    const auto left = expansion_from_json(read_json_file(cfg.inputs.at(0)));
    const auto right = expansion_from_json(read_json_file(cfg.inputs.at(1)));
    out << dump(to_json(convolve_expansions(left, right)));
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto specs = kernel_specs_from_json(read_json_file(cfg.inputs.at(0)));
    for (const auto& s : specs) {
        validate(s);
        case_constant(s.a, s.b, s.p, s.q, s.j, s.k, s.chirality2);
    }
    const auto results = verify_all(specs, cfg.jobs);

    Json reports = Json::array();
    std::string csv = csv_header_verification();
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& o = results[i];
        if (!o.report) {
            reports.push_back({{"spec", to_json(specs[i])}, {"error", o.error}});
            failures.push_back(describe(specs[i]) + ": " + o.error);
            continue;
        }
        reports.push_back(to_json(*o.report));
        csv += csv_row(*o.report);
        if (!(o.report->relative_error <= cfg.tolerance))
            failures.push_back(describe(specs[i]) + ": relative error " + std::to_string(o.report->relative_error));
    }
    const Json doc{{"tolerance", cfg.tolerance}, {"reports", reports}};

    std::ostream& info = cfg.report ? out : err;
    if (cfg.report) {
        write_file(*cfg.report + ".json", dump(doc));
        write_file(*cfg.report + ".csv", csv);
    } else {
        out << dump(doc);
    }
    normalization_summary(results, info);
    if (failures.empty()) return kExitOk;
    err << failures.size() << " of " << specs.size() << " specs failed:\n";
    for (const auto& f : failures) err << "  " << f << '\n';
    return kExitVerifyFailed;
}

int cmd_bernstein(const RunConfig& cfg, int kappa, std::ostream& out) {
    const auto left = root_set_from_json(read_json_file(cfg.inputs.at(0)));
    const auto right = root_set_from_json(read_json_file(cfg.inputs.at(1)));
    out << dump(to_json(bernstein_combine(left, right, kappa)));
    return kExitOk;
}

int cmd_demo(const RunConfig& cfg, int n, int m, std::ostream& out, std::ostream& err) {
    const SampleGrid grid = demo_grid();
    const auto [g1, g2] = default_demo_germs(n, m, grid);
    const DemoReport rep = convolution_demo(g1, g2, grid);
    if (cfg.report) {
        write_file(*cfg.report + ".json", dump(to_json(rep)));
        write_file(*cfg.report + ".csv", csv_header_demo() + csv_row(rep));
    } else {
        out << dump(to_json(rep));
    }
    bool ok = rep.relative_error <= cfg.tolerance;
    if (rep.fitted_exponent && std::abs(*rep.fitted_exponent - to_double(rep.predicted_exponent)) > 1e-3) ok = false;
    if (!ok) err << "demo disagrees with the predicted term beyond tolerance\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

double tolerance_from_env() {
    const char* env = std::getenv("ASYMCONV_TOL");
    if (!env || !*env) return kDefaultTolerance;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw ParseError(std::string("ASYMCONV_TOL is not a number: ") + env);
    if (!(v > 0)) throw DomainError("ASYMCONV_TOL must be > 0");
    return v;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Asymptotic expansions of convolutions of singular terms"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<double> tol_flag;
    app.add_option("--tolerance", tol_flag, "verification tolerance (overrides ASYMCONV_TOL)");

    std::string left, right, report;
    auto* types = app.add_subcommand("types", "combine two exponent-set types");
    types->add_option("left", left)->required();
    types->add_option("right", right)->required();

    std::string a_text, b_text, chir = "holo";
    int p = 0, q = 0, j = 0, k = 0;
    auto* constant = app.add_subcommand("constant", "case and leading constant of one kernel");
    constant->add_option("-a", a_text, "exponent a as p/q")->required();
    constant->add_option("-b", b_text, "exponent b as p/q")->required();
    constant->add_option("-p", p);
    constant->add_option("-q", q);
    constant->add_option("-j", j);
    constant->add_option("-k", k);
    constant->add_option("-c,--chirality", chir, "holo or anti");

    auto* convolve = app.add_subcommand("convolve", "convolve two expansions");
    convolve->add_option("left", left)->required();
    convolve->add_option("right", right)->required();

    std::string specs;
    auto* verify = app.add_subcommand("verify", "check closed-form constants against quadrature");
    verify->add_option("specs", specs, "JSON array of kernel specs")->required();
    verify->add_option("-o,--report", report, "write <prefix>.json and <prefix>.csv");
    verify->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

    int kappa = 0;
    auto* bernstein = app.add_subcommand("bernstein", "combine Bernstein roots; canonical range [-1, 0)");
    bernstein->add_option("left", left)->required();
    bernstein->add_option("right", right)->required();
    bernstein->add_option("--kappa", kappa, "integer shift budget")->check(CLI::NonNegativeNumber);

    int n = 2, m = 2;
    auto* demo = app.add_subcommand("demo", "end-to-end demonstrations");
    demo->require_subcommand(1);
    auto* monomial = demo->add_subcommand("monomial", "x^N + y^M");
    monomial->add_option("--n", n)->check(CLI::PositiveNumber);
    monomial->add_option("--m", m)->check(CLI::PositiveNumber);
    monomial->add_option("-o,--report", report, "write <prefix>.json and <prefix>.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitParse;
    }

    try {
        cfg.tolerance = tol_flag ? *tol_flag : tolerance_from_env();
        if (!(cfg.tolerance > 0)) throw DomainError("tolerance must be > 0");
        if (!report.empty()) cfg.report = report;
        cfg.inputs = {left, right};

        if (types->parsed()) return cmd_types(cfg, out);
        if (convolve->parsed()) return cmd_convolve(cfg, out);
        if (bernstein->parsed()) return cmd_bernstein(cfg, kappa, out);
        if (verify->parsed()) {
            cfg.inputs = {specs};
            return cmd_verify(cfg, out, err);
        }
        if (monomial->parsed()) return cmd_demo(cfg, n, m, out, err);
        if (constant->parsed()) {
            const Rational a = parse_rational(a_text), b = parse_rational(b_text);
            const Chirality c = parse_chirality(chir);
            validate(KernelSpec{a, b, p, q, j, k, c});
            out << dump(to_json(case_constant(a, b, p, q, j, k, c)));
            return kExitOk;
        }
        return kExitParse;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const UnsupportedChirality& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}

}  // namespace asymconv
