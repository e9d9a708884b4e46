// hocli: evaluate, tabulate and verify the gl(n) wave functions from the shell.
#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ho/errors.hpp"
#include "ho/suites.hpp"
#include "ho/wavefunctions.hpp"
#include "json.hpp"

using nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string rep = "euler";
    double g = 2.0;
    std::string lambda;
    std::string x;
    std::optional<double> tol;
    int kmax = -1;
    std::string format = "json";
    std::vector<std::string> grid;
    std::string suite;
    bool skip_n3 = false;
    bool g_given = false;
};

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ho::DomainError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k - start));
        if (k == std::string::npos) break;
        start = k + 1;
    }
    return out;
}

// comma list of reals or re:im pairs
ho::SpectralPoint parse_spectral(const std::string& s) {
    ho::SpectralPoint out;
    for (const auto& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.emplace_back(parse_double(parts[0]), 0.0);
        } else if (parts.size() == 2) {
            out.emplace_back(parse_double(parts[0]), parse_double(parts[1]));
        } else {
            throw ho::DomainError("bad spectral entry '" + item + "' (use re or re:im)");
        }
    }
    return out;
}

ho::PositionPoint parse_position(const std::string& s) {
    ho::PositionPoint out;
    for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
    return out;
}

struct Point {
    ho::SpectralPoint lambda;
    ho::PositionPoint x;
    double g;
};

Point base_point(const RunConfig& c) {
    Point p{parse_spectral(c.lambda), parse_position(c.x), c.g};
    if (p.lambda.empty()) throw ho::DomainError("--lambda is required");
    if (p.x.empty()) p.x.assign(p.lambda.size(), 0.0);
    if (p.x.size() != p.lambda.size()) throw ho::DomainError("--lambda and --x must have the same length");
    if (p.lambda.size() > 3) throw ho::DomainError("only n <= 3 is supported");
    return p;
}

double default_tol(const RunConfig& c, std::size_t n) {
    if (c.tol) return *c.tol;
    return n <= 2 ? 1e-8 : 1e-4;
}

ho::EvalResult evaluate(const std::string& rep_s, const Point& p, const RunConfig& c) {
    const ho::Rep rep = ho::parse_rep(rep_s);
    const ho::Coupling g(p.g);
    const double tol = default_tol(c, p.lambda.size());
    if (rep == ho::Rep::Series) {
        ho::SeriesOptions o;
        o.k_max = c.kmax;
        o.rel_tol = std::min(tol, 1e-8);
        const auto r = ho::hc_psi_symmetrized(p.lambda, p.x, g, o);
        ho::EvalResult e = r.result;
        e.n_evals = r.k_used;
        return e;
    }
    ho::QuadSpec q;
    q.rel_tol = tol;
    q.abs_tol = 1e-3 * tol;
    return ho::psi(p.lambda, p.x, g, rep, q);
}

ordered_json complex_json(ho::Complex z) {
    if (z.imag() == 0.0) return z.real();
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json list_json(const std::vector<ho::Complex>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& z : v) a.push_back(complex_json(z));
    return a;
}

// shortest round-trip form
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string join_spectral(const ho::SpectralPoint& l) {
    std::string s;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) s += ';';
        s += fmt(l[i].real());
        if (l[i].imag() != 0.0) s += ":" + fmt(l[i].imag());
    }
    return s;
}

std::string join_position(const ho::PositionPoint& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ";" : "") + fmt(x[i]);
    return s;
}

ordered_json params_json(const RunConfig& c) {
    ordered_json p;
    p["rep"] = c.rep;
    p["g"] = c.g;
    p["lambda"] = c.lambda;
    p["x"] = c.x;
    if (c.tol) p["tol"] = *c.tol;
    p["kmax"] = c.kmax;
    return p;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const RunConfig& c) {
    const Point p = base_point(c);
    const ho::EvalResult e = evaluate(c.rep, p, c);
    if (c.format == "csv") {
        std::cout << "rep,g,lambda,x,value_re,value_im,abs_err,n_evals\n";
        std::cout << c.rep << ',' << fmt(p.g) << ',' << join_spectral(p.lambda) << ',' << join_position(p.x) << ','
                  << fmt(e.value.real()) << ',' << fmt(e.value.imag()) << ',' << fmt(e.abs_err) << ',' << e.n_evals
                  << '\n';
        return 0;
    }
    ordered_json rec;
    rec["rep"] = c.rep;
    rec["g"] = p.g;
    rec["lambda"] = list_json(p.lambda);
    rec["x"] = p.x;
    rec["value_re"] = e.value.real();
    rec["value_im"] = e.value.imag();
    rec["abs_err"] = e.abs_err;
    rec["n_evals"] = e.n_evals;
    ordered_json out;
    out["command"] = "eval";
    out["params"] = params_json(c);
    out["results"] = ordered_json::array({rec});
    out["pass"] = true;
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------- table

struct Axis {
    std::string name;
    std::vector<double> values;
};

Axis parse_axis(const std::string& spec, std::size_t n) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ho::DomainError("grid axis '" + spec + "' must look like name=start:stop:count");
    Axis a{spec.substr(0, eq), {}};
    const auto parts = split(spec.substr(eq + 1), ':');
    if (parts.size() != 3) throw ho::DomainError("grid axis '" + spec + "' must look like name=start:stop:count");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    const double cnt = parse_double(parts[2]);
    if (cnt < 0 || cnt != static_cast<long>(cnt)) throw ho::DomainError("grid count must be a nonnegative integer");
    const long k = static_cast<long>(cnt);
    for (long i = 0; i < k; ++i) {
        a.values.push_back(k == 1 ? lo : (lo * double(k - 1 - i) + hi * double(i)) / double(k - 1));
    }
    auto index_ok = [&](const std::string& prefix) {
        if (a.name.rfind(prefix, 0) != 0) return false;
        const std::string idx = a.name.substr(prefix.size());
        return idx.size() == 1 && idx[0] >= '1' && static_cast<std::size_t>(idx[0] - '0') <= n;
    };
    if (a.name != "g" && !index_ok("lambda") && !index_ok("x")) {
        throw ho::DomainError("unknown grid axis '" + a.name + "' (g, lambdaK or xK with K <= n)");
    }
    return a;
}

void set_axis(Point& p, const std::string& name, double v) {
    if (name == "g") {
        p.g = v;
    } else if (name.rfind("lambda", 0) == 0) {
        p.lambda[name.back() - '1'] = {v, p.lambda[name.back() - '1'].imag()};
    } else {
        p.x[name.back() - '1'] = v;
    }
}

int cmd_table(const RunConfig& c) {
    const Point base = base_point(c);
    std::vector<Axis> axes;
    std::size_t total = 1;
    for (const auto& s : c.grid) {
        axes.push_back(parse_axis(s, base.lambda.size()));
        total *= axes.back().values.size();
    }
    if (total > 10000) throw ho::DomainError("grid has more than 10^4 points");
    const auto reps = split(c.rep, ',');
    if (reps.empty() || reps.size() > 2) throw ho::DomainError("table takes one or two representations");
    for (const auto& r : reps) ho::parse_rep(r);

    std::vector<std::string> header;
    for (const auto& a : axes) header.push_back(a.name);
    for (const auto& r : reps) {
        for (const char* f : {"_re", "_im", "_abs_err", "_error"}) header.push_back(r + f);
    }
    if (reps.size() == 2) header.push_back("diff");

    const bool csv = c.format == "csv";
    if (csv) {
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
        std::cout << '\n';
    }
    ordered_json rows = ordered_json::array();
    bool all_ok = true;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t row = 0; row < total; ++row) {
        // row-major: the last declared axis runs fastest
        std::size_t rest = row;
        for (std::size_t k = axes.size(); k-- > 0;) {
            idx[k] = rest % axes[k].values.size();
            rest /= axes[k].values.size();
        }
        Point p = base;
        std::vector<std::string> cells;
        ordered_json rec;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const double v = axes[k].values[idx[k]];
            set_axis(p, axes[k].name, v);
            cells.push_back(fmt(v));
            rec[axes[k].name] = v;
        }
        std::vector<std::optional<ho::Complex>> vals;
        for (const auto& r : reps) {
            std::string err;
            ho::EvalResult e;
            try {
                e = evaluate(r, p, c);
            } catch (const ho::Error& ex) {
                err = ex.what();
                all_ok = false;
            }
            if (err.empty()) {
                vals.emplace_back(e.value);
                cells.insert(cells.end(), {fmt(e.value.real()), fmt(e.value.imag()), fmt(e.abs_err), ""});
                rec[r + "_re"] = e.value.real();
                rec[r + "_im"] = e.value.imag();
                rec[r + "_abs_err"] = e.abs_err;
                rec[r + "_error"] = nullptr;
            } else {
                vals.emplace_back(std::nullopt);
                for (char& ch : err) {
                    if (ch == ',' || ch == '\n') ch = ';';
                }
                cells.insert(cells.end(), {"", "", "", err});
                rec[r + "_re"] = nullptr;
                rec[r + "_im"] = nullptr;
                rec[r + "_abs_err"] = nullptr;
                rec[r + "_error"] = err;
            }
        }
        if (reps.size() == 2) {
            if (vals[0] && vals[1]) {
                const double d = std::abs(*vals[0] - *vals[1]) / std::max(std::abs(*vals[1]), 1e-300);
                cells.push_back(fmt(d));
                rec["diff"] = d;
            } else {
                cells.push_back("");
                rec["diff"] = nullptr;
            }
        }
        if (csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << cells[i];
            std::cout << '\n';
        } else {
            rows.push_back(rec);
        }
    }
    if (!csv) {
        ordered_json out;
        out["command"] = "table";
        ordered_json params = params_json(c);
        params["grid"] = c.grid;
        params["columns"] = header;
        out["params"] = params;
        out["results"] = rows;
        out["pass"] = all_ok;
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- verify

ordered_json report_json(const ho::IdentityReport& r) {
    ordered_json j;
    j["kind"] = "identity";
    j["name"] = r.name;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    ordered_json cases = ordered_json::array();
    for (const auto& c : r.cases) {
        ordered_json cj, in;
        for (const auto& [k, v] : c.inputs) in[k] = list_json(v);
        cj["inputs"] = in;
        cj["lhs"] = ordered_json::array({c.lhs.real(), c.lhs.imag()});
        cj["rhs"] = ordered_json::array({c.rhs.real(), c.rhs.imag()});
        cj["abs_diff"] = c.abs_diff;
        cj["rel_diff"] = c.rel_diff;
        cases.push_back(cj);
    }
    j["cases"] = cases;
    return j;
}

int cmd_verify(const RunConfig& c) {
    ho::SuiteOptions o;
    if (c.g_given) o.g = c.g;
    o.three_particles = !c.skip_n3;
    const ho::SuiteReport s = ho::run_suite(c.suite, o);

    if (c.format == "csv") {
        std::cout << "kind,name,case,lhs_re,lhs_im,rhs_re,rhs_im,rel_diff,threshold,pass\n";
        for (const auto& r : s.reports) {
            for (std::size_t i = 0; i < r.cases.size(); ++i) {
                const auto& k = r.cases[i];
                std::cout << "identity," << r.name << ',' << i << ',' << fmt(k.lhs.real()) << ',' << fmt(k.lhs.imag())
                          << ',' << fmt(k.rhs.real()) << ',' << fmt(k.rhs.imag()) << ',' << fmt(k.rel_diff) << ','
                          << fmt(r.tolerance) << ',' << (k.rel_diff <= r.tolerance ? "true" : "false") << '\n';
            }
        }
        for (const auto& p : s.properties) {
            std::string name = p.name;
            for (char& ch : name) {
                if (ch == ',') ch = ' ';
            }
            std::cout << "property," << name << ",0,,,,," << fmt(p.value) << ',' << fmt(p.threshold) << ','
                      << (p.pass ? "true" : "false") << '\n';
        }
    } else {
        ordered_json out;
        out["command"] = "verify";
        ordered_json params;
        params["suite"] = c.suite;
        if (c.g_given) params["g"] = c.g;
        params["three_particles"] = o.three_particles;
        out["params"] = params;
        ordered_json results = ordered_json::array();
        for (const auto& r : s.reports) results.push_back(report_json(r));
        for (const auto& p : s.properties) {
            ordered_json j;
            j["kind"] = "property";
            j["name"] = p.name;
            j["value"] = p.value;
            j["threshold"] = p.threshold;
            j["pass"] = p.pass;
            results.push_back(j);
        }
        out["results"] = results;
        out["pass"] = s.pass;
        std::cout << out.dump(2) << '\n';
    }

    if (!s.pass) {
        for (const auto& r : s.reports) {
            for (std::size_t i = 0; i < r.cases.size(); ++i) {
                if (r.cases[i].rel_diff <= r.tolerance) continue;
                std::cerr << "FAIL " << s.name << '/' << r.name << " case " << i << ": rel_diff " << r.cases[i].rel_diff
                          << " > " << r.tolerance << '\n';
            }
        }
        for (const auto& p : s.properties) {
            if (!p.pass) std::cerr << "FAIL " << s.name << '/' << p.name << ": " << p.value << " vs " << p.threshold << '\n';
        }
        return 1;
    }
    return 0;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--rep", c.rep, "euler | mb | series | asymptotic | zero (table: up to two, comma separated)")
        ->capture_default_str();
    sub->add_option("--g", c.g, "coupling constant")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "spectral point, comma separated; complex entries as re:im");
    sub->add_option("--x", c.x, "position, comma separated (default: origin)");
    sub->add_option("--tol", c.tol, "relative tolerance (default 1e-8 for n <= 2, 1e-4 for n = 3)");
    sub->add_option("--kmax", c.kmax, "fixed series degree; -1 uses the shell rule")->capture_default_str();
    sub->add_option("--format", c.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heckman-Opdam / Calogero-Sutherland wave functions"};
    app.require_subcommand(1);
    RunConfig c;

    auto* ev = app.add_subcommand("eval", "evaluate Psi at one point");
    add_common(ev, c);
    auto* tb = app.add_subcommand("table", "evaluate over a grid");
    add_common(tb, c);
    tb->add_option("--grid", c.grid, "axis=start:stop:count with axis g, lambdaK or xK; repeatable, row-major");
    auto* vf = app.add_subcommand("verify", "run a named verification suite");
    vf->add_option("suite", c.suite, "suite name")->required()->check(CLI::IsMember(ho::suite_names()));
    vf->add_option("--g", c.g, "single coupling instead of the suite's sweep");
    vf->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    vf->add_flag("--skip-n3", c.skip_n3, "leave out the three-particle duality points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    c.g_given = vf->count("--g") > 0;

    try {
        if (*ev) return cmd_eval(c);
        if (*tb) return cmd_table(c);
        return cmd_verify(c);
    } catch (const ho::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const ho::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return 3;
    } catch (const ho::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
