#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infodens/density.hpp"
#include "infodens/format.hpp"
#include "infodens/ica.hpp"
#include "infodens/majorization.hpp"
#include "infodens/measures.hpp"
#include "infodens/transforms.hpp"

namespace infodens {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOrderFails = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
    std::string out;          // empty = stdout
    std::uint64_t seed = 12345;
    int grid = 0;             // 0 = per-command default
    double tol = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--seed", c.seed, "seed for every random draw");
    cmd->add_option("--grid", c.grid, "grid size for (0,1) representations");
    cmd->add_option("--tol", c.tol, "convergence tolerance (ica)");
}

void emit(const CommonOpts& c, const std::string& content) {
    if (c.out.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    // binary keeps the CRLF line endings exactly as produced
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.out + " for writing");
    f << content;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q += ch;
    }
    q += "\"";
    return q;
}

std::vector<std::string> split_words(const std::string& list) {
    std::vector<std::string> words;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) words.push_back(tok);
    return words;
}

// a spec string that fails to parse is a bad argument, not a numeric failure
Density parse_density_arg(const std::string& spec) {
    try {
        return make_density(spec);
    } catch (const NumericError& e) {
        throw std::invalid_argument(e.what());
    }
}

// ---- table ----------------------------------------------------------------

struct TableOpts {
    CommonOpts common;
    std::string dists =
        "norm:0,1,laplace:1,lognorm:0,1,unif:0,1,gmm:0,4,1,2,0.4";
};

int do_table(const TableOpts& o) {
    const int grid = o.common.grid > 0 ? o.common.grid : 4096;
    const std::vector<std::string> specs = split_spec_list(o.dists);
    if (specs.empty()) throw std::invalid_argument("table: no distributions given");

    std::ostringstream os;
    os << "name,e2H_f,e2H_fstar,e2H_ftilde,"
          "HstarInv2_f,HstarInv2_fstar,HstarInv2_ftilde,"
          "e2H_f_full,e2H_fstar_full,e2H_ftilde_full,"
          "HstarInv2_f_full,HstarInv2_fstar_full,HstarInv2_ftilde_full\r\n";

    for (const std::string& spec : specs) {
        Density d = parse_density_arg(spec);
        GridDensity fstar = pdq(d, grid);
        GridDensity ftilde = f_tilde(d, grid);

        double hs_f = h_star(d);
        double hs_fs = h_star(fstar);
        double hs_ft = h_star(ftilde);
        double cells[6] = {
            std::exp(2.0 * entropy(d)),
            std::exp(2.0 * entropy(fstar)),
            std::exp(2.0 * entropy(ftilde)),
            1.0 / (hs_f * hs_f),
            1.0 / (hs_fs * hs_fs),
            1.0 / (hs_ft * hs_ft),
        };

        os << csv_field(spec);
        for (double v : cells) os << ',' << format_fixed3(v);
        for (double v : cells) os << ',' << format_full(v);
        os << "\r\n";
    }
    emit(o.common, os.str());
    return kExitOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepOpts {
    CommonOpts common;
    std::string vary;
    double start = 0.0, stop = 0.0, step = 0.0;
    GmmSpec fixed{0.0, 2.0, 1.0, 1.0, 0.5}; // base panel: GMM(0, 2, 1, 1, 0.5)
    std::string reps = "f,fstar,ftilde";
    std::string measures = "epow,hstar_inv_sq";
};

int do_sweep(const SweepOpts& o) {
    if (!(o.step > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
    if (!(o.start < o.stop)) throw std::invalid_argument("sweep: need start < stop");
    if (o.vary == "w" && (o.start < 0.0 || o.stop > 1.0))
        throw std::invalid_argument("sweep: w range must stay inside [0,1]");

    const std::vector<std::string> reps = split_words(o.reps);
    const std::vector<std::string> meas = split_words(o.measures);
    if (reps.empty() || meas.empty())
        throw std::invalid_argument("sweep: empty representation or measure list");
    for (const std::string& r : reps)
        if (r != "f" && r != "fstar" && r != "ftilde")
            throw std::invalid_argument("sweep: unknown representation " + r);
    for (const std::string& m : meas)
        if (m != "epow" && m != "hstar_inv_sq")
            throw std::invalid_argument("sweep: unknown measure " + m);

    const int grid = o.common.grid > 0 ? o.common.grid : 1024;
    const int count =
        static_cast<int>(std::floor((o.stop - o.start) / o.step + 1e-9)) + 1;

    std::ostringstream os;
    os << o.vary;
    for (const std::string& m : meas)
        for (const std::string& r : reps) os << ',' << m << '_' << r;
    os << "\r\n";

    for (int i = 0; i < count; ++i) {
        double v = o.start + i * o.step;
        GmmSpec spec = o.fixed;
        if (o.vary == "mu2") spec.mu2 = v;
        else if (o.vary == "sigma2") spec.sigma2 = v;
        else spec.w = v;

        Density d = make_gmm(spec);
        bool want_fstar = false, want_ftilde = false;
        for (const std::string& r : reps) {
            want_fstar = want_fstar || r == "fstar";
            want_ftilde = want_ftilde || r == "ftilde";
        }
        GridDensity fstar, ftilde;
        if (want_fstar) fstar = pdq(d, grid);
        if (want_ftilde) ftilde = f_tilde(d, grid);

        auto epow_of = [&](const std::string& r) {
            if (r == "f") return std::exp(2.0 * entropy(d));
            return std::exp(2.0 * entropy(r == "fstar" ? fstar : ftilde));
        };
        auto hstar_inv_of = [&](const std::string& r) {
            double hs = r == "f" ? h_star(d) : h_star(r == "fstar" ? fstar : ftilde);
            return 1.0 / (hs * hs);
        };

        os << format_full(v);
        for (const std::string& m : meas)
            for (const std::string& r : reps)
                os << ',' << format_full(m == "epow" ? epow_of(r) : hstar_inv_of(r));
        os << "\r\n";
    }
    emit(o.common, os.str());
    return kExitOk;
}

// ---- transform ------------------------------------------------------------

struct TransformOpts {
    CommonOpts common;
    std::string dist;
    std::string which = "fstar";
    std::string gspec; // fcolon only
};

int do_transform(const TransformOpts& o) {
    const int grid = o.common.grid > 0 ? o.common.grid : 512;
    if (grid < 128) throw std::invalid_argument("transform: grid must be >= 128");

    Density d = parse_density_arg(o.dist);
    GridDensity g;
    if (o.which == "fstar") {
        g = pdq(d, grid);
    } else if (o.which == "ftilde") {
        g = f_tilde(d, grid);
    } else if (o.which == "fcolon") {
        if (o.gspec.empty())
            throw std::invalid_argument("transform: fcolon needs --g <spec>");
        g = f_colon_g(d, parse_density_arg(o.gspec), grid);
    } else {
        throw std::invalid_argument("transform: unknown --which " + o.which);
    }

    std::ostringstream os;
    g.write_csv(os);
    emit(o.common, os.str());
    return kExitOk;
}

// ---- ica ------------------------------------------------------------------

struct IcaOpts {
    CommonOpts common;
    std::string sources;
    int n = 100000;
    std::string index = "kappa4_sq";
    std::string mixing_csv; // empty = seeded random mixing
    int q = 0;              // 0 = all components
    int max_iter = 500;
};

nlohmann::ordered_json mat_json(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

int do_ica(const IcaOpts& o) {
    std::vector<std::string> specs = split_spec_list(o.sources);
    if (specs.size() < 2) throw std::invalid_argument("ica: need >= 2 sources");
    std::vector<Density> sources;
    for (const std::string& s : specs) sources.push_back(parse_density_arg(s));

    ProjectionIndex idx = ProjectionIndex::from_name(o.index);
    const std::size_t p = sources.size();
    const int q = o.q > 0 ? o.q : static_cast<int>(p);
    if (static_cast<std::size_t>(q) > p)
        throw std::invalid_argument("ica: q exceeds the number of sources");

    Mat A;
    const Mat* A_ptr = nullptr;
    if (!o.mixing_csv.empty()) {
        DataMatrix m = read_matrix_csv(o.mixing_csv);
        if (m.n != p || m.p != p)
            throw std::invalid_argument("ica: mixing matrix must be p x p");
        A = Mat(p, p);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) A(i, j) = m.at(i, j);
        A_ptr = &A;
    }

    MixtureSim sim = simulate_mixture(sources, A_ptr, o.n, o.common.seed);
    WhiteningResult wh = whiten(sim.X);
    // decorrelated pursuit stream; any fixed derivation keeps runs reproducible
    const std::uint64_t pursuit_seed = o.common.seed ^ 0xd1b54a32d192ed03ULL;
    IcaResult res =
        fixed_point_pursuit(wh.Z, wh.W, idx, q, pursuit_seed, o.max_iter, o.common.tol);

    nlohmann::ordered_json j;
    j["mean"] = wh.mean;
    j["W"] = mat_json(wh.W);
    j["V1"] = mat_json(res.V1);
    j["unmixing"] = mat_json(res.unmixing);
    j["component_index_values"] = res.component_index_values;
    j["iterations"] = res.iterations;
    std::vector<bool> conv = res.converged;
    j["converged"] = conv;
    if (q == static_cast<int>(p))
        j["amari"] = amari_index(res.unmixing, inverse(sim.M));

    emit(o.common, j.dump(2) + "\n");
    return kExitOk;
}

// ---- order ----------------------------------------------------------------

struct OrderOpts {
    CommonOpts common;
    std::string left, right;
    std::string check = "location";
    std::vector<std::string> pvecs;
};

int do_order(const OrderOpts& o) {
    std::ostringstream os;
    bool holds = false;

    if (o.check == "majorization") {
        if (o.pvecs.size() != 2)
            throw std::invalid_argument(
                "order: majorization needs --pvec twice (left, right)");
        ProbVector p = parse_prob_vector(o.pvecs[0]);
        ProbVector q = parse_prob_vector(o.pvecs[1]);
        if (p.size() != q.size())
            throw std::invalid_argument("order: probability vectors differ in length");

        // worst ascending-prefix slack; holds means left ≺ right
        std::vector<double> ps = p.p, qs = q.p;
        std::sort(ps.begin(), ps.end());
        std::sort(qs.begin(), qs.end());
        double cp = 0.0, cq = 0.0, margin = std::numeric_limits<double>::infinity();
        std::size_t worst = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            cp += ps[i];
            cq += qs[i];
            if (cp - cq < margin) {
                margin = cp - cq;
                worst = i;
            }
        }
        holds = margin >= -1e-12;
        os << "relation=majorization holds=" << (holds ? "yes" : "no")
           << " margin=" << format_full(margin)
           << " witness=" << (holds ? "0" : std::to_string(worst)) << "\r\n";
    } else if (o.check == "dilation") {
        if (o.left.empty() || o.right.empty())
            throw std::invalid_argument("order: need two distribution specs");
        OrderingVerdict v = dilation_check(parse_density_arg(o.left), parse_density_arg(o.right));
        holds = v.holds;
        os << "relation=dilation holds=" << (holds ? "yes" : "no")
           << " margin=" << format_full(v.margin)
           << " witness=" << format_full(v.witness) << "\r\n";
    } else {
        if (o.left.empty() || o.right.empty())
            throw std::invalid_argument("order: need two distribution specs");
        Relation rel = relation_from_name(o.check);
        const int grid = o.common.grid > 0 ? o.common.grid : 401;
        OrderingVerdict v =
            check_ordering(parse_density_arg(o.left), parse_density_arg(o.right), rel, grid);
        holds = v.holds;
        os << "relation=" << relation_name(rel) << " holds=" << (holds ? "yes" : "no")
           << " margin=" << format_full(v.margin)
           << " witness=" << format_full(v.witness) << "\r\n";
    }

    emit(o.common, os.str());
    return holds ? kExitOk : kExitOrderFails;
}

// ---- measures ---------------------------------------------------------------

struct MeasuresOpts {
    CommonOpts common;
    std::string dist;
    std::string pvec;
    std::string format = "csv";
};

int do_measures(const MeasuresOpts& o) {
    if (o.format != "csv" && o.format != "json")
        throw std::invalid_argument("measures: --format must be csv or json");
    if (o.dist.empty() == o.pvec.empty())
        throw std::invalid_argument("measures: give exactly one of --dist, --pvec");

    std::ostringstream os;
    if (!o.dist.empty()) {
        MeasureReport r = report(parse_density_arg(o.dist));
        if (o.format == "csv") r.write_csv(os);
        else os << r.to_json() << "\n";
    } else {
        ProbVector p = parse_prob_vector(o.pvec);
        DiscreteMeasures m = discrete_measures(p);
        const double bits = m.h / std::log(2.0);
        if (o.format == "csv") {
            os << "h,h_bits,h_star,h_mode\r\n"
               << format_full(m.h) << ',' << format_full(bits) << ','
               << format_full(m.h_star) << ',' << format_full(m.h_mode) << "\r\n";
        } else {
            os << "{\"h\": " << format_full(m.h) << ", \"h_bits\": " << format_full(bits)
               << ", \"h_star\": " << format_full(m.h_star)
               << ", \"h_mode\": " << format_full(m.h_mode) << "}\n";
        }
    }
    emit(o.common, os.str());
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"information measures, quantile-domain transforms, orderings, "
                 "and projection-pursuit ICA"};
    app.name("infodens");
    app.require_subcommand(1);

    TableOpts table;
    CLI::App* cmd_table = app.add_subcommand(
        "table", "entropy-power / [H*]^-2 table for f, f*, f~");
    add_common(cmd_table, table.common);
    cmd_table->add_option("--dists", table.dists,
                          "comma-joined distribution specs (default: the five "
                          "reference distributions)");

    SweepOpts sweep;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "one-parameter GMM family sweep");
    add_common(cmd_sweep, sweep.common);
    cmd_sweep->add_option("--vary", sweep.vary, "parameter to vary")
        ->required()
        ->check(CLI::IsMember({"mu2", "sigma2", "w"}));
    cmd_sweep->add_option("--start", sweep.start, "range start")->required();
    cmd_sweep->add_option("--stop", sweep.stop, "range stop (inclusive)")->required();
    cmd_sweep->add_option("--step", sweep.step, "range step")->required();
    cmd_sweep->add_option("--mu1", sweep.fixed.mu1, "fixed first mean");
    cmd_sweep->add_option("--mu2", sweep.fixed.mu2, "fixed second mean");
    cmd_sweep->add_option("--sigma1", sweep.fixed.sigma1, "fixed first sd");
    cmd_sweep->add_option("--sigma2", sweep.fixed.sigma2, "fixed second sd");
    cmd_sweep->add_option("--w", sweep.fixed.w, "fixed first-component weight");
    cmd_sweep->add_option("--reps", sweep.reps, "subset of f,fstar,ftilde");
    cmd_sweep->add_option("--measures", sweep.measures,
                          "subset of epow,hstar_inv_sq");

    TransformOpts transform;
    CLI::App* cmd_transform =
        app.add_subcommand("transform", "(u,value) curve of f*, f~, or f:g");
    add_common(cmd_transform, transform.common);
    cmd_transform->add_option("--dist", transform.dist, "distribution spec")->required();
    cmd_transform->add_option("--which", transform.which, "fstar | ftilde | fcolon");
    cmd_transform->add_option("--g", transform.gspec, "reference g for fcolon");

    IcaOpts ica;
    CLI::App* cmd_ica = app.add_subcommand(
        "ica", "simulate a mixture, whiten, run fixed-point pursuit");
    add_common(cmd_ica, ica.common);
    cmd_ica->add_option("--sources", ica.sources, "comma-joined source specs")
        ->required();
    cmd_ica->add_option("--n", ica.n, "sample size");
    cmd_ica->add_option("--index", ica.index,
                        "kappa3_sq | kappa4_sq | kappaK | sibson | cube | quart");
    cmd_ica->add_option("--mixing", ica.mixing_csv,
                        "p x p mixing matrix CSV (default: seeded random)");
    cmd_ica->add_option("--q", ica.q, "components to extract (default: all)");
    cmd_ica->add_option("--max-iter", ica.max_iter, "fixed-point iteration cap");

    OrderOpts order;
    CLI::App* cmd_order =
        app.add_subcommand("order", "partial-ordering check between two laws");
    add_common(cmd_order, order.common);
    cmd_order->add_option("left", order.left, "left distribution spec");
    cmd_order->add_option("right", order.right, "right distribution spec");
    cmd_order->add_option("--check", order.check,
                          "location | dispersion | skewness | kurtosis | "
                          "information | dilation | majorization");
    cmd_order->add_option("--pvec", order.pvecs,
                          "probability vector (repeat twice for majorization)");

    MeasuresOpts measures;
    CLI::App* cmd_measures =
        app.add_subcommand("measures", "full measure report for one law");
    add_common(cmd_measures, measures.common);
    cmd_measures->add_option("--dist", measures.dist, "distribution spec");
    cmd_measures->add_option("--pvec", measures.pvec, "discrete probability vector");
    cmd_measures->add_option("--format", measures.format, "csv | json");

    std::vector<const char*> argv;
    argv.push_back("infodens");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_table)) return do_table(table);
        if (app.got_subcommand(cmd_sweep)) return do_sweep(sweep);
        if (app.got_subcommand(cmd_transform)) return do_transform(transform);
        if (app.got_subcommand(cmd_ica)) return do_ica(ica);
        if (app.got_subcommand(cmd_order)) return do_order(order);
        if (app.got_subcommand(cmd_measures)) return do_measures(measures);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage; // unreachable with require_subcommand(1)
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

} // namespace infodens
