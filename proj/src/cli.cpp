#include "sepcone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sepcone/cone.hpp"
#include "sepcone/error.hpp"
#include "sepcone/io.hpp"
#include "sepcone/multipartite.hpp"
#include "sepcone/random.hpp"
#include "sepcone/separability.hpp"

namespace sepcone {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt8(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.8f", x);
    return buf;
}

std::string fmt_value(double x) { return std::isnan(x) ? "n/a" : fmt8(x); }

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt8(*x) : "n/a"; }

std::string join_cut(const std::vector<int>& subset) {
    std::string s;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(subset[i]);
    }
    return s;
}

int exit_for(Status s) {
    switch (s) {
        case Status::Separable: return 0;
        case Status::Entangled: return 3;
        case Status::Inconclusive: return 4;
    }
    return 4;
}

PureState load_pure(const std::string& path) {
    AnyState st = read_state_file(path);
    if (!std::holds_alternative<PureState>(st))
        throw ParseError(path + ": expected a pure state");
    return std::get<PureState>(std::move(st));
}

MixedState load_mixed(const std::string& path) {
    AnyState st = read_state_file(path);
    if (!std::holds_alternative<MixedState>(st))
        throw ParseError(path + ": expected a mixed state");
    return std::get<MixedState>(std::move(st));
}

// Flatten one cut of a multipartite state into an explicit bipartite state.
PureState as_bipartite(const PureState& z, const std::vector<int>& cut) {
    const CMatrix c = bipartition_reshape(z, cut);
    CVector v(c.rows() * c.cols());
    for (Index i = 0; i < c.rows(); ++i)
        for (Index j = 0; j < c.cols(); ++j) v(i * c.cols() + j) = c(i, j);
    return make_pure(make_dims({static_cast<int>(c.rows()), static_cast<int>(c.cols())}), v);
}

struct SchmidtOpts {
    std::string in;
    std::vector<int> cut{0};
    std::string metric_a, metric_b;
    double rank_tol = kRankTol;
};

int cmd_schmidt(const SchmidtOpts& o, std::ostream& out) {
    const PureState z = load_pure(o.in);
    const PureState zb = as_bipartite(z, o.cut);
    SchmidtSpectrum spec;
    if (!o.metric_a.empty() || !o.metric_b.empty()) {
        if (o.metric_a.empty() || o.metric_b.empty())
            throw ParseError("schmidt: --metric-a and --metric-b must be given together");
        const MixedState ma = load_mixed(o.metric_a);
        const MixedState mb = load_mixed(o.metric_b);
        spec = generalized_schmidt(zb, ma.matrix, mb.matrix, o.rank_tol);
    } else {
        spec = schmidt_coefficients(zb, o.rank_tol);
    }
    for (Index i = 0; i < spec.rank; ++i) {
        if (i) out << " ";
        out << fmt8(spec.sigmas(i));
    }
    out << ", rank " << spec.rank << ", " << (spec.rank == 1 ? "separable" : "entangled")
        << "\n";
    return 0;
}

struct CheckOpts {
    std::string in;
    std::string noise_a, noise_b;
    double rank_tol = kRankTol;
    double psd_tol = kPsdTol;
};

int cmd_check(const CheckOpts& o, std::ostream& out, std::ostream& err) {
    const MixedState rho = load_mixed(o.in);
    if (rho.dims.n() != 2) {
        err << "check: state must be bipartite\n";
        return 2;
    }
    std::optional<std::pair<CMatrix, CMatrix>> noise;
    if (!o.noise_a.empty() || !o.noise_b.empty()) {
        if (o.noise_a.empty() || o.noise_b.empty())
            throw ParseError("check: --noise-a and --noise-b must be given together");
        noise = std::make_pair(load_mixed(o.noise_a).matrix, load_mixed(o.noise_b).matrix);
    }
    const Verdict v = check(rho, noise, o.rank_tol, o.psd_tol);
    out << "status: " << to_string(v.status) << "\n"
        << "lambda: " << fmt_value(v.lambda) << "\n"
        << "lambda_star: " << fmt_opt(v.lambda_star) << "\n"
        << "lambda_bar: " << fmt_opt(v.lambda_bar) << "\n"
        << "ppt: " << (v.ppt ? "yes" : "no") << "\n"
        << "criterion: " << v.criterion << "\n";
    return exit_for(v.status);
}

struct GenuineOpts {
    std::string in;
    double lambda = 0.0;
    std::vector<std::string> metrics;
    double rank_tol = kRankTol;
    Index max_dim = kMaxTotalDim;
    bool verbose = false;
};

int cmd_genuine(const GenuineOpts& o, std::ostream& out, std::ostream& err) {
    const PureState z = load_pure(o.in);
    if (z.dims.n() < 3) {
        err << "genuine: state needs at least three tensor factors\n";
        return 2;
    }
    BipartitionScan scan;
    if (o.metrics.empty()) {
        scan = genuine_threshold(z, o.rank_tol, o.max_dim);
    } else {
        std::vector<CMatrix> ms;
        ms.reserve(o.metrics.size());
        for (const std::string& path : o.metrics) ms.push_back(load_mixed(path).matrix);
        scan = genuine_threshold(z, ms, o.rank_tol, o.max_dim);
    }
    for (const CutReport& cut : scan.cuts)
        out << "cut " << join_cut(cut.subset) << ": sigma0 " << fmt8(cut.sigma0)
            << ", sigma1 " << fmt8(cut.sigma1) << ", product " << fmt8(cut.product) << "\n";
    out << "min_cut: " << join_cut(scan.min_cut) << "\n"
        << "lambda_star: " << fmt8(scan.lambda_star) << "\n";
    if (o.verbose) {
        const double t = scan.lambda_star;
        const double remapped =
            t * scan.rank_product / (scan.c * (1.0 - t) + t * scan.rank_product);
        out << "frame_norm: " << fmt8(scan.c) << "\n"
            << "rank_product: " << fmt8(scan.rank_product) << "\n"
            << "face_remapped_threshold: " << fmt8(remapped) << "\n";
    }
    const bool genuine = o.lambda > scan.lambda_star;
    out << "verdict: " << (genuine ? "genuinely entangled" : "not genuinely entangled")
        << " at lambda " << fmt8(o.lambda) << "\n";
    return genuine ? 3 : 0;
}

struct WernerOpts {
    std::vector<double> sigma;
    int n1 = 0, n2 = 0;
    std::string out_path;
    double recon_tol = 1e-9;
};

int cmd_werner(const WernerOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<double> s = o.sigma;
    std::sort(s.begin(), s.end(), std::greater<double>());
    RVector sig(static_cast<Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) sig(static_cast<Index>(i)) = s[i];
    SchmidtSpectrum spec;
    try {
        spec = make_spectrum(sig);
    } catch (const std::exception& e) {
        err << "werner: " << e.what() << "\n";
        return 2;
    }
    if (spec.rank < 2) {
        err << "werner: need at least two positive coefficients\n";
        return 2;
    }
    if (spec.rank > std::min(o.n1, o.n2)) {
        err << "werner: rank exceeds a factor dimension\n";
        return 2;
    }
    const ProductEnsemble ens = werner_separable_ensemble(spec, o.n1, o.n2);
    const double d = static_cast<double>(o.n1) * o.n2;
    const double lstar = 1.0 / (1.0 + d * spec.sigma0() * spec.sigma1());
    const Index total = static_cast<Index>(o.n1) * o.n2;
    CVector zs = CVector::Zero(total);
    for (Index i = 0; i < spec.rank; ++i) zs(i * o.n2 + i) = spec.sigmas(i);
    const CMatrix target =
        (1.0 - lstar) * CMatrix::Identity(total, total) / d + lstar * (zs * zs.adjoint());
    const double residual = (ens.assemble() - target).norm();
    char rbuf[64];
    std::snprintf(rbuf, sizeof(rbuf), "%.3e", residual);
    out << "lambda_star: " << fmt8(lstar) << "\n"
        << "terms: " << ens.terms.size() << "\n"
        << "residual: " << rbuf << "\n"
        << "within_tolerance: " << (residual <= o.recon_tol ? "yes" : "no") << "\n";
    if (!o.out_path.empty()) {
        ordered_json j;
        j["n1"] = o.n1;
        j["n2"] = o.n2;
        j["lambda_star"] = lstar;
        ordered_json terms = ordered_json::array();
        for (const ProductTerm& t : ens.terms) {
            ordered_json rec;
            rec["weight"] = t.weight;
            ordered_json a = ordered_json::array(), b = ordered_json::array();
            for (Index i = 0; i < t.a.size(); ++i)
                a.push_back(ordered_json::array({t.a(i).real(), t.a(i).imag()}));
            for (Index i = 0; i < t.b.size(); ++i)
                b.push_back(ordered_json::array({t.b(i).real(), t.b(i).imag()}));
            rec["a"] = std::move(a);
            rec["b"] = std::move(b);
            terms.push_back(std::move(rec));
        }
        j["terms"] = std::move(terms);
        std::ofstream f(o.out_path);
        if (!f) throw IoError("cannot open for writing: " + o.out_path);
        f << j.dump(2) << "\n";
        if (!f) throw IoError("write failed: " + o.out_path);
    }
    return 0;
}

struct BenchOpts {
    std::vector<int> dims;
    long long instances = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
    if (o.dims.size() != 2 || o.dims[0] < 2 || o.dims[1] < 2) {
        err << "bench: --dims needs two factor dimensions of at least 2\n";
        return 2;
    }
    if (o.instances < 1) {
        err << "bench: --instances must be at least 1\n";
        return 2;
    }
    const int n1 = o.dims[0], n2 = o.dims[1];
    const DimSpec dims = make_dims({n1, n2});
    Rng rng(o.seed);
    long long sep_n = 0, ent_n = 0, inc_n = 0;
    long long agree_num = 0, agree_den = 0;
    ordered_json records = ordered_json::array();

    for (long long i = 0; i < o.instances; ++i) {
        const CMatrix m1 = rng.random_psd(n1);
        const CMatrix m2 = rng.random_psd(n2);
        const CVector z = rng.random_pure(static_cast<Index>(n1) * n2);
        const double lam = rng.uniform();
        const CMatrix noise = kron(m1, m2);
        const CMatrix proj = z * z.adjoint();
        const MixedState rho = make_mixed(dims, (1.0 - lam) * noise + lam * proj);

        const Verdict v = check(rho);
        const double lppt = ppt_boundary(make_mixed(dims, noise), make_mixed(dims, proj));

        switch (v.status) {
            case Status::Separable: ++sep_n; break;
            case Status::Entangled: ++ent_n; break;
            case Status::Inconclusive: ++inc_n; break;
        }
        // Single-vector decided instances carry the exact threshold; compare
        // the verdict against the partial-transpose boundary of the pencil.
        if (v.lambda_star) {
            ++agree_den;
            const bool agree = (v.status == Status::Separable && lam <= lppt + 1e-9) ||
                               (v.status == Status::Entangled && lam > lppt - 1e-9);
            if (agree) ++agree_num;
        }

        ordered_json rec;
        rec["dims"] = ordered_json::array({n1, n2});
        rec["lambda"] = lam;
        rec["lambda_star"] = v.lambda_star ? ordered_json(*v.lambda_star) : ordered_json(nullptr);
        rec["lambda_bar"] = v.lambda_bar ? ordered_json(*v.lambda_bar) : ordered_json(nullptr);
        rec["lambda_ppt"] = lppt;
        rec["verdict"] = to_string(v.status);
        records.push_back(std::move(rec));
    }

    const double rate =
        agree_den > 0 ? static_cast<double>(agree_num) / static_cast<double>(agree_den) : 1.0;
    ordered_json report;
    report["seed"] = o.seed;
    report["instances"] = o.instances;
    ordered_json counts;
    counts["separable_certified"] = sep_n;
    counts["entangled_certified"] = ent_n;
    counts["inconclusive"] = inc_n;
    report["counts"] = std::move(counts);
    report["ppt_agreement_rate"] = rate;
    report["records"] = std::move(records);

    std::ofstream f(o.out_path);
    if (!f) throw IoError("cannot open for writing: " + o.out_path);
    f << report.dump(2) << "\n";
    if (!f) throw IoError("write failed: " + o.out_path);

    out << "instances: " << o.instances << "\n"
        << "separable_certified: " << sep_n << "\n"
        << "entangled_certified: " << ent_n << "\n"
        << "inconclusive: " << inc_n << "\n"
        << "ppt_agreement_rate: " << fmt8(rate) << "\n"
        << "report: " << o.out_path << "\n";
    return 0;
}

struct DecomposeOpts {
    std::string in;
    std::string noise;
    std::string out_path;
    double rank_tol = kRankTol;
};

int cmd_decompose(const DecomposeOpts& o, std::ostream& out, std::ostream& err) {
    const MixedState rho = load_mixed(o.in);
    MixedState C;
    if (!o.noise.empty()) {
        C = load_mixed(o.noise);
    } else {
        const FaceInfo face = face_of(rho, o.rank_tol);
        if (!face.product) {
            err << "decompose: no product face detected; supply --noise\n";
            return 4;
        }
        C = face_uniform_product(face, rho.dims);
    }
    const ConeDecomposition dec = decompose(rho, C, o.rank_tol);
    out << "lambda: " << fmt8(dec.lambda) << "\n"
        << "mu_star: " << fmt8(dec.mu_star) << "\n"
        << "boundary_rank: " << spectral_ensemble(dec.E, o.rank_tol).size() << "\n";
    if (!o.out_path.empty()) write_state_file(o.out_path, dec.E);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"cone-decomposition certification of quantum separability"};
    app.require_subcommand(1);
    int rc = 0;

    auto so = std::make_shared<SchmidtOpts>();
    CLI::App* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum across a cut");
    schmidt->add_option("--in", so->in, "input state file")->required();
    schmidt->add_option("--cut", so->cut, "factor indices on the first side");
    schmidt->add_option("--metric-a", so->metric_a, "first-side metric state file");
    schmidt->add_option("--metric-b", so->metric_b, "second-side metric state file");
    schmidt->add_option("--rank-tol", so->rank_tol, "relative rank cutoff");
    schmidt->callback([&, so] { rc = cmd_schmidt(*so, out); });

    auto co = std::make_shared<CheckOpts>();
    CLI::App* chk = app.add_subcommand("check", "certify a bipartite mixed state");
    chk->add_option("--in", co->in, "input mixed state file")->required();
    chk->add_option("--noise-a", co->noise_a, "first noise factor state file");
    chk->add_option("--noise-b", co->noise_b, "second noise factor state file");
    chk->add_option("--rank-tol", co->rank_tol, "relative rank cutoff");
    chk->add_option("--psd-tol", co->psd_tol, "positivity tolerance");
    chk->callback([&, co] { rc = cmd_check(*co, out, err); });

    auto go = std::make_shared<GenuineOpts>();
    CLI::App* gen = app.add_subcommand("genuine", "genuine multipartite entanglement threshold");
    gen->add_option("--in", go->in, "input pure state file")->required();
    gen->add_option("--lambda", go->lambda, "mixing weight to judge")->required();
    gen->add_option("--metric", go->metrics, "per-factor noise state files");
    gen->add_option("--rank-tol", go->rank_tol, "relative rank cutoff");
    gen->add_option("--max-dim", go->max_dim, "total dimension cap");
    gen->add_flag("--verbose", go->verbose, "print frame remap details");
    gen->callback([&, go] { rc = cmd_genuine(*go, out, err); });

    auto wo = std::make_shared<WernerOpts>();
    CLI::App* wer = app.add_subcommand("werner", "separable ensemble at the pure-state threshold");
    wer->add_option("--sigma", wo->sigma, "Schmidt coefficients before normalization")
        ->required()
        ->expected(-1);
    wer->add_option("--n1", wo->n1, "first factor dimension")->required();
    wer->add_option("--n2", wo->n2, "second factor dimension")->required();
    wer->add_option("--out", wo->out_path, "write the ensemble to this file");
    wer->add_option("--recon-tol", wo->recon_tol, "reconstruction residual tolerance");
    wer->callback([&, wo] { rc = cmd_werner(*wo, out, err); });

    auto bo = std::make_shared<BenchOpts>();
    CLI::App* ben = app.add_subcommand("bench", "randomized comparison against the partial-transpose boundary");
    ben->add_option("--dims", bo->dims, "two factor dimensions")->required()->expected(2);
    ben->add_option("--instances", bo->instances, "number of random instances")->required();
    ben->add_option("--seed", bo->seed, "random seed");
    ben->add_option("--out", bo->out_path, "report file")->required();
    ben->callback([&, bo] { rc = cmd_bench(*bo, out, err); });

    auto dopt = std::make_shared<DecomposeOpts>();
    CLI::App* dec = app.add_subcommand("decompose", "split a state into noise and boundary parts");
    dec->add_option("--in", dopt->in, "input mixed state file")->required();
    dec->add_option("--noise", dopt->noise, "noise state file (defaults to the face average)");
    dec->add_option("--out", dopt->out_path, "write the boundary part to this file");
    dec->add_option("--rank-tol", dopt->rank_tol, "relative rank cutoff");
    dec->callback([&, dopt] { rc = cmd_decompose(*dopt, out, err); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const FaceError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateRayError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

}  // namespace sepcone
