#pragma once

// Command-line front end: eval, sample, ar, ep, check. Every subcommand
// writes CSV with a header row to the data stream and diagnostics to the
// error stream.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harris/harris.hpp"

namespace harris::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kCheckFailed = 4 };

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Flags selecting a (possibly transformed) distribution.
struct DistFlags {
    std::string base = "exp";
    double rate = 1.0;
    double shape = 1.0;
    double scale = 1.0;
    double minimum = 1.0;
    double lower = 0.0;
    double upper = 1.0;

    std::string scheme = "base";
    double alpha = 1.0;
    double a = 1.0;
    int k = 1;

    double theta = 1.0;
    double eps = 0.0;
    double c = std::numbers::e;
    double psi_scale = 1.0;

    void attach(CLI::App& app, bool with_alpha = true) {
        app.add_option("--base", base, "Base family")
            ->check(CLI::IsMember({"exp", "weibull", "pareto", "frechet", "uniform"}))
            ->capture_default_str();
        app.add_option("--rate", rate, "Exponential rate")->capture_default_str();
        app.add_option("--shape", shape, "Weibull/Pareto/Frechet shape")->capture_default_str();
        app.add_option("--scale", scale, "Weibull/Frechet scale")->capture_default_str();
        app.add_option("--minimum", minimum, "Pareto minimum")->capture_default_str();
        app.add_option("--lower", lower, "Uniform lower bound")->capture_default_str();
        app.add_option("--upper", upper, "Uniform upper bound")->capture_default_str();
        app.add_option("--scheme", scheme, "Transform applied to the base")
            ->check(CLI::IsMember(
                {"base", "mo", "harris-min", "harris-max", "psi", "semistable", "harris"}))
            ->capture_default_str();
        if (with_alpha) {
            app.add_option("--alpha", alpha, "Marshall-Olkin alpha")->capture_default_str();
        }
        app.add_option("--a", a, "Harris parameter a")->capture_default_str();
        app.add_option("--k", k, "Harris parameter k")->capture_default_str();
        app.add_option("--theta", theta, "psi exponent")->capture_default_str();
        app.add_option("--eps", eps, "psi log-periodic amplitude")->capture_default_str();
        app.add_option("--c", c, "psi period constant (semi-stable scale)")->capture_default_str();
        app.add_option("--psi-scale", psi_scale, "psi multiplier")->capture_default_str();
    }

    BaseDistribution make_base() const {
        if (base == "exp") return exponential(rate);
        if (base == "weibull") return weibull(shape, scale);
        if (base == "pareto") return pareto(shape, minimum);
        if (base == "frechet") return frechet(shape, scale);
        return uniform(lower, upper);
    }

    HarrisParams params() const { return {a, k}; }

    // The continuous law selected by --scheme; absent for the counting law.
    std::optional<AnyDistribution> make() const {
        if (scheme == "harris") return std::nullopt;
        if (scheme == "psi") return PsiDistribution(PsiFunction(theta, eps, c, psi_scale), params());
        if (scheme == "semistable") {
            return PsiDistribution(make_semistable_psi(a, c, eps), HarrisParams{1.0, k});
        }
        const BaseDistribution b = make_base();
        if (scheme == "mo") return mo_transform(b, alpha);
        if (scheme == "harris-min") return harris_min_transform(b, params());
        if (scheme == "harris-max") return harris_max_transform(b, params());
        return AnyDistribution(b);
    }

    // Law of the components of the Harris maximum this scheme describes.
    AnyDistribution components() const {
        if (scheme == "harris-max") return make_base();
        if (scheme == "psi") {
            return PsiDistribution(PsiFunction(theta, eps, c, psi_scale), HarrisParams{1.0, k});
        }
        return *make();
    }
};

inline const std::map<std::string, std::string>& default_flag_names() {
    static const std::map<std::string, std::string> names{
        {"rate", "--rate"},       {"shape", "--shape"},   {"scale", "--scale"},
        {"minimum", "--minimum"}, {"lower", "--lower"},   {"upper", "--upper"},
        {"alpha", "--alpha"},     {"a", "--a"},           {"k", "--k"},
        {"theta", "--theta"},     {"epsilon", "--eps"},   {"c", "--c"},
        {"psi_scale", "--psi-scale"}, {"q", "--x"},       {"x", "--x"},
        {"s", "--x"},             {"p", "--p"},           {"horizon", "--steps"},
        {"n_paths", "--paths"},   {"beta", "--beta"},     {"times", "--times"},
        {"lambda", "--xi"},       {"xi_scale", "--xi-scale"}, {"samples", "--ks"},
        {"s1", "--ks2"},          {"s2", "--ks2"},        {"n", "--n"},
    };
    return names;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::map<std::string, std::string> flag_overrides;

    std::string flag_for(const std::string& parameter) const {
        if (auto it = flag_overrides.find(parameter); it != flag_overrides.end()) return it->second;
        const auto& names = default_flag_names();
        if (auto it = names.find(parameter); it != names.end()) return it->second;
        return "--" + parameter;
    }
};

// CSV read back by `check`: the column named `value`, optionally restricted
// to rows whose column `filter_col` equals `filter_val`.
inline std::vector<double> read_value_column(const std::string& path, const std::string& filter) {
    std::ifstream in(path);
    if (!in) throw domain_error("samples", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw domain_error("samples", path + ": missing header");
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    const auto header = split(line);
    auto column = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
        }
        throw domain_error("samples", path + ": no column '" + name + "'");
    };
    const auto value_col = static_cast<std::size_t>(column("value"));
    std::optional<std::pair<std::size_t, std::string>> where;
    if (!filter.empty()) {
        const auto eq = filter.find('=');
        if (eq == std::string::npos) throw domain_error("filter", "--filter expects col=value");
        where.emplace(static_cast<std::size_t>(column(filter.substr(0, eq))), filter.substr(eq + 1));
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw domain_error("samples", path + ": ragged row");
        if (where && cells[where->first] != where->second) continue;
        values.push_back(std::stod(cells[value_col]));
    }
    return values;
}

inline void write_check(std::ostream& out, double statistic, double critical, bool pass) {
    out << "statistic,critical,pass\n"
        << format_double(statistic) << ',' << format_double(critical) << ',' << (pass ? 1 : 0)
        << '\n';
}

/// Parses args (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harris / Marshall-Olkin parametrization schemes and max-processes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::uint64_t seed = 0;
    std::string out_path;
    bool emit_cmdline = false;
    unsigned threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write CSV here instead of standard output");
        sub->add_flag("--emit-cmdline", emit_cmdline, "Echo the command line to the error stream");
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "Worker threads (output does not depend on it)")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };

    // eval
    DistFlags eval_flags;
    std::string fn;
    std::vector<double> xs;
    auto* eval = app.add_subcommand("eval", "Evaluate cdf/sf/quantile/pmf/pgf at points");
    eval_flags.attach(*eval);
    eval->add_option("--fn", fn, "cdf, sf, quantile, pmf or pgf (default: the scheme's own)")
        ->check(CLI::IsMember({"cdf", "sf", "quantile", "pmf", "pgf"}));
    eval->add_option("--x", xs, "Evaluation points")->required()->delimiter(',');
    add_common(eval);

    // sample
    DistFlags sample_flags;
    std::size_t n = 1;
    std::string route = "max";
    auto* sample = app.add_subcommand("sample", "Draw independent variates");
    sample_flags.attach(*sample);
    sample->add_option("--n", n, "Number of draws")->capture_default_str();
    sample->add_option("--route", route, "harris-max with a > 1: random maximum or inversion")
        ->check(CLI::IsMember({"max", "quantile"}))
        ->capture_default_str();
    add_seed(sample);
    add_common(sample);

    // ar
    DistFlags ar_flags;
    double p = 0.5;
    std::optional<double> c_scale;
    std::size_t paths = 1;
    std::size_t steps = 1;
    std::string innovation = "same";
    auto* ar = app.add_subcommand("ar", "Simulate the max-AR(1) schemes");
    ar_flags.attach(*ar);
    ar->add_option("--p", p, "Reset / keep probability")->capture_default_str();
    ar->add_option("--c-scale", c_scale, "Scale constant c; selects the scaled scheme");
    ar->add_option("--paths", paths, "Number of paths")->capture_default_str();
    ar->add_option("--steps", steps, "Horizon")->capture_default_str();
    ar->add_option("--innovation", innovation,
                   "same: component law; components: the Harris-max components of the "
                   "component law; stationary: Harris(p,k) transform of the component law")
        ->check(CLI::IsMember({"same", "components", "stationary"}))
        ->capture_default_str();
    add_seed(ar);
    add_threads(ar);
    add_common(ar);

    // ep
    DistFlags ep_flags;
    std::string xi_kind = "power";
    double xi_theta = 1.0;
    double xi_scale = 1.0;
    double gamma_alpha = 1.0;
    double gamma_beta = 1.0;
    std::vector<double> times{1.0};
    std::size_t ep_paths = 1;
    auto* ep = app.add_subcommand("ep", "Simulate the gamma-compounded extremal process");
    ep_flags.attach(*ep, false);
    ep->add_option("--xi", xi_kind, "power: xi = xi-scale * x^-xi-theta; base: xi = -log F")
        ->check(CLI::IsMember({"power", "base"}))
        ->capture_default_str();
    ep->add_option("--xi-theta", xi_theta, "Exponent of the power xi")->capture_default_str();
    ep->add_option("--xi-scale", xi_scale, "Multiplier of the power xi")->capture_default_str();
    ep->add_option("--alpha", gamma_alpha, "Gamma scale")->capture_default_str();
    ep->add_option("--beta", gamma_beta, "Gamma shape per unit time")->capture_default_str();
    ep->add_option("--times", times, "Observation grid")->delimiter(',')->capture_default_str();
    ep->add_option("--paths", ep_paths, "Number of paths")->capture_default_str();
    add_seed(ep);
    add_threads(ep);
    add_common(ep);

    // check
    DistFlags check_flags;
    std::string ks_file;
    std::vector<std::string> ks2_files;
    std::vector<std::string> filters;
    auto* check = app.add_subcommand(
        "check", "Goodness of fit of a CSV `value` column (KS, or chi-square for --scheme harris)");
    check_flags.attach(*check);
    auto* ks_opt = check->add_option("--ks", ks_file, "One-sample test against the --scheme law");
    auto* ks2_opt = check->add_option("--ks2", ks2_files, "Two-sample test of two CSV files")
                        ->expected(2);
    ks_opt->excludes(ks2_opt);
    check->add_option("--filter", filters, "col=value row filter (one, or one per --ks2 file)")
        ->expected(1, 2);
    add_common(check);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (emit_cmdline) {
        err << "#";
        for (const auto& a : args) err << ' ' << a;
        err << '\n';
    }

    Context ctx{out, err, {}};
    std::ofstream file;
    std::ostream* sink = &out;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "error: --out: cannot open " << out_path << '\n';
            return kUsage;
        }
        sink = &file;
    }
    std::ostream& data = *sink;

    try {
        if (eval->parsed()) {
            const auto& f = eval_flags;
            std::string what = fn;
            if (what.empty()) {
                if (f.scheme == "harris") what = "pmf";
                else if (f.scheme == "mo" || f.scheme == "harris-min") what = "sf";
                else what = "cdf";
            }
            // Buffered: a bad point must not leave a partial table behind.
            std::ostringstream table;
            table << "x,value\n";
            if (f.scheme == "harris") {
                if (what != "pmf" && what != "pgf") {
                    throw parameter_error("fn", "--scheme harris supports --fn pmf or pgf");
                }
                for (double x : xs) {
                    double v = 0.0;
                    if (what == "pmf") {
                        detail::require_domain(x == std::floor(x), "x", x, "an integer");
                        v = harris_pmf(f.params(), static_cast<std::int64_t>(x));
                    } else {
                        v = harris_pgf(f.params(), x);
                    }
                    table << format_double(x) << ',' << format_double(v) << '\n';
                }
            } else {
                if (what == "pmf" || what == "pgf") {
                    throw parameter_error("fn", "--fn " + what + " requires --scheme harris");
                }
                const AnyDistribution d = *f.make();
                for (double x : xs) {
                    double v = 0.0;
                    if (what == "cdf") v = d.cdf(x);
                    else if (what == "sf") v = d.sf(x);
                    else v = d.quantile(x);
                    table << format_double(x) << ',' << format_double(v) << '\n';
                }
            }
            data << table.str();
        } else if (sample->parsed()) {
            const auto& f = sample_flags;
            Rng rng = make_rng(path_seed(seed, 0));
            if (f.scheme == "harris") {
                detail::validate_counting(f.params());
                data << "index,value\n";
                for (std::size_t i = 0; i < n; ++i) {
                    data << i << ',' << harris_draw(f.params(), rng) << '\n';
                }
            } else if (f.scheme == "harris-max" && route == "max") {
                const BaseDistribution b = f.make_base();
                detail::validate_scheme(f.params());
                data << "index,value\n";
                for (std::size_t i = 0; i < n; ++i) {
                    data << i << ',' << format_double(harris_max_draw(b, f.params(), rng)) << '\n';
                }
            } else {
                const AnyDistribution d = *f.make();
                data << "index,value\n";
                for (std::size_t i = 0; i < n; ++i) {
                    data << i << ',' << format_double(draw_one(d, rng)) << '\n';
                }
            }
        } else if (ar->parsed()) {
            const auto& f = ar_flags;
            if (f.scheme == "harris") {
                throw parameter_error("scheme", "ar needs a continuous component law");
            }
            ARConfig cfg;
            cfg.p = p;
            cfg.k = f.k;
            cfg.c_scale = c_scale;
            cfg.horizon = steps;
            cfg.n_paths = paths;
            cfg.component = *f.make();
            if (innovation == "components") {
                cfg.innovation = f.components();
            } else if (innovation == "stationary") {
                detail::require_param(p > 0.0 && p <= 1.0, "p", p, "in (0, 1]");
                cfg.innovation = stationary_innovation(cfg.component, p, f.k);
            }
            ctx.flag_overrides["c"] = "--c-scale";
            const auto result = c_scale ? simulate_ar1_scaled(cfg, seed, threads)
                                        : simulate_ar1(cfg, seed, threads);
            data << "path,step,value\n";
            for (const auto& path : result) {
                for (std::size_t i = 0; i < path.values.size(); ++i) {
                    data << path.path_id << ',' << i << ',' << format_double(path.values[i]) << '\n';
                }
            }
        } else if (ep->parsed()) {
            EPConfig cfg;
            if (xi_kind == "power") {
                ctx.flag_overrides["theta"] = "--xi-theta";
                cfg.xi = power_exponent(xi_theta, xi_scale);
            } else {
                cfg.xi = exponent_from(ep_flags.make_base());
            }
            cfg.alpha = gamma_alpha;
            cfg.beta = gamma_beta;
            cfg.time_grid = times;
            cfg.n_paths = ep_paths;
            const auto result = simulate_gamma_ep(cfg, seed, threads);
            data << "path,t,T,value\n";
            for (const auto& path : result) {
                for (std::size_t i = 0; i < path.values.size(); ++i) {
                    data << path.path_id << ',' << format_double(path.times[i]) << ','
                         << format_double(path.clock[i]) << ',' << format_double(path.values[i])
                         << '\n';
                }
            }
        } else if (check->parsed()) {
            const auto& f = check_flags;
            auto filter_for = [&](std::size_t i) {
                if (filters.empty()) return std::string{};
                return filters.size() == 1 ? filters[0] : filters.at(i);
            };
            if (!ks2_files.empty()) {
                const auto s1 = read_value_column(ks2_files[0], filter_for(0));
                const auto s2 = read_value_column(ks2_files[1], filter_for(1));
                const auto r = stat::ks_two_sample(s1, s2);
                write_check(data, r.statistic, r.critical_value_1pct, r.pass);
                return r.pass ? kOk : kCheckFailed;
            }
            if (ks_file.empty()) {
                err << "error: check needs --ks FILE or --ks2 FILE FILE\n";
                return kUsage;
            }
            const auto s = read_value_column(ks_file, filter_for(0));
            if (f.scheme == "harris") {
                const HarrisParams hp = f.params();
                detail::validate_counting(hp);
                // Cells: support points with mass >= 1e-4, plus the remaining tail.
                std::vector<std::int64_t> support;
                std::vector<double> probs;
                double covered = 0.0;
                for (std::int64_t v = 1;; v += hp.k) {
                    const double pv = harris_pmf(hp, v);
                    if (pv < 1e-4 && covered > 0.5) break;
                    support.push_back(v);
                    probs.push_back(pv);
                    covered += pv;
                }
                probs.push_back(std::max(0.0, 1.0 - covered));
                std::vector<std::int64_t> counts(probs.size(), 0);
                for (double x : s) {
                    const auto v = static_cast<std::int64_t>(x);
                    const auto it = std::find(support.begin(), support.end(), v);
                    if (it != support.end()) ++counts[static_cast<std::size_t>(it - support.begin())];
                    else if (v > support.back()) ++counts.back();
                    else throw domain_error("samples", "value " + format_double(x) + " outside the support");
                }
                const auto r = stat::chi_square(counts, probs);
                write_check(data, r.statistic, r.critical_value_1pct, r.pass);
                return r.pass ? kOk : kCheckFailed;
            }
            const AnyDistribution d = *f.make();
            const auto r = stat::ks_one_sample(s, [&](double x) { return d.cdf(x); });
            write_check(data, r.statistic, r.critical_value_1pct, r.pass);
            return r.pass ? kOk : kCheckFailed;
        }
    } catch (const parameter_error& e) {
        err << "error: " << ctx.flag_for(e.parameter()) << ": " << e.what() << '\n';
        return kDomain;
    } catch (const domain_error& e) {
        err << "error: " << ctx.flag_for(e.parameter()) << ": " << e.what() << '\n';
        return kDomain;
    }
    return kOk;
}

} // namespace harris::cli
