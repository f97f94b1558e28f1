// gne: generators, exact entropies, rate formulas, Monte-Carlo estimates,
// and a model-conditioned codec for sparse random graphs with vertex-names.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gne/codec.hpp"
#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/hybrid.hpp"
#include "gne/io.hpp"
#include "gne/models.hpp"
#include "gne/rng.hpp"
#include "gne/special.hpp"
#include "gne/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct ModelOpts {
    std::string model;
    double alpha = 1.0;
    double beta = 2.0;
    uint32_t a = 2;
    double gamma = 1.0;
    double d = 0.25;
    uint64_t n = 0;
    uint64_t side = 0;
    uint64_t seed = 1;
    bool ordered = false;
    bool unordered = false;
};

void add_model_options(CLI::App* cmd, ModelOpts& o, bool need_model = true) {
    auto* m = cmd->add_option("--model", o.model,
                              "erbinary|ernamed|smallworld|hamming|treeseq|treeuniform|hybrid");
    if (need_model) m->required();
    cmd->add_option("--alpha", o.alpha, "mean-degree parameter");
    cmd->add_option("--beta", o.beta, "name-length exponent");
    cmd->add_option("--A", o.a, "alphabet size");
    cmd->add_option("--gamma", o.gamma, "small-world decay exponent");
    cmd->add_option("--d", o.d, "hamming-distance fraction");
    cmd->add_option("--N", o.n, "vertex count");
    cmd->add_option("--n", o.side, "torus side (small worlds)");
    cmd->add_option("--seed", o.seed, "generator seed");
    cmd->add_flag("--ordered", o.ordered, "hybrid: names carry the construction index");
    cmd->add_flag("--unordered", o.unordered, "hybrid: raw names, duplicates renamed");
}

gne::ModelParams to_params(const ModelOpts& o) {
    using namespace gne;
    if (o.model == "erbinary") return ErBinary{o.n, o.alpha, o.seed};
    if (o.model == "ernamed") return ErNamed{o.n, o.alpha, o.beta, o.a, o.seed};
    if (o.model == "smallworld") {
        uint64_t side = o.side ? o.side : o.n;
        return SmallWorld{(uint32_t)side, o.alpha, o.gamma, o.seed};
    }
    if (o.model == "hamming") return Hamming{o.n, o.alpha, o.beta, o.a, o.d, o.seed};
    if (o.model == "treeseq") return TreeSequential{o.n, o.seed};
    if (o.model == "treeuniform") return TreeUniform{o.n, o.seed};
    throw gne::ValidationError("unknown model tag '" + o.model + "'");
}

gne::HybridParams to_hybrid(const ModelOpts& o) {
    return gne::HybridParams{o.n, o.alpha, o.beta, o.a, o.seed, o.ordered && !o.unordered};
}

gne::CodecModel to_codec(const ModelOpts& o) {
    using namespace gne;
    if (o.model == "erbinary") return CodecErBinary{o.n, o.alpha};
    if (o.model == "ernamed") return CodecErNamed{o.n, o.alpha, o.beta, o.a};
    if (o.model == "hybrid") return CodecHybridOrdered{o.n, o.alpha, o.beta, o.a};
    throw ValidationError("codec supports erbinary, ernamed and (ordered) hybrid only");
}

void print_report(const gne::EntropyReport& r) {
    std::cout << std::setprecision(15) << "nats=" << r.nats << " bits=" << r.bits
              << " normalized_rate=" << r.normalized_rate;
    if (r.std_error) std::cout << " stderr=" << *r.std_error;
    std::cout << " method="
              << (r.method == gne::EntropyMethod::exact ? "exact" : "monte_carlo") << "\n";
}

std::vector<uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gne::IoError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gne::IoError("cannot open '" + path + "' for writing");
    out.write((const char*)bytes.data(), (std::streamsize)bytes.size());
    if (!out) throw gne::IoError("write to '" + path + "' failed");
}

int run(int argc, char** argv) {
    CLI::App app{"sparse random graphs with vertex-names: entropy and compression"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    ModelOpts gen_o;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "sample a graph and write it as GNV1");
    add_model_options(gen, gen_o);
    gen->add_option("--out", gen_out, "output path")->required();
    gen->callback([&] {
        gne::GraphWithNames g;
        if (gen_o.model == "hybrid") {
            auto out = gne::gen_hybrid(to_hybrid(gen_o));
            if (out.graph.ordered) {
                g = std::move(out.graph);
            } else {
                auto renamed =
                    gne::rename_duplicates(out.graph, gne::derive_seed(gen_o.seed, 0x726e));
                std::cout << "renamed=" << renamed.renamed << "\n";
                g = std::move(renamed.graph);
            }
        } else {
            g = gne::generate(to_params(gen_o));
        }
        gne::write_graph(gen_out, g);
        std::cout << "N=" << g.num_vertices() << " E=" << g.num_edges() << " out=" << gen_out
                  << "\n";
    });

    // entropy --------------------------------------------------------------
    ModelOpts ent_o;
    bool ent_exact = false;
    auto* entc = app.add_subcommand("entropy", "exact finite-N entropy of a model");
    add_model_options(entc, ent_o);
    entc->add_flag("--exact", ent_exact, "use the exact closed form (default)");
    entc->callback([&] {
        if (ent_o.model == "hybrid")
            throw gne::ValidationError(
                "hybrid has no closed-form finite-N entropy; use 'estimate'");
        print_report(gne::exact_entropy(to_params(ent_o)));
    });

    // rate -----------------------------------------------------------------
    ModelOpts rate_o;
    double rate_tol = 1e-12;
    auto* ratec = app.add_subcommand("rate", "asymptotic entropy rate c");
    add_model_options(ratec, rate_o);
    ratec->add_option("--tol", rate_tol, "hybrid series tail tolerance");
    ratec->callback([&] {
        double c = rate_o.model == "hybrid"
                       ? gne::rate_hybrid(rate_o.alpha, rate_o.beta, rate_o.a,
                                          rate_o.ordered && !rate_o.unordered, rate_tol)
                       : gne::rate(to_params(rate_o));
        std::cout << std::setprecision(15) << "c=" << c << "\n";
    });

    // estimate --------------------------------------------------------------
    ModelOpts est_o;
    uint32_t link_samples = 32;
    uint64_t sample_seed = 0;
    auto* est = app.add_subcommand("estimate", "Monte-Carlo entropy of the hybrid model");
    add_model_options(est, est_o);
    est->add_option("--link-samples", link_samples, "link sets per construction step");
    est->add_option("--sample-seed", sample_seed, "seed for the link-set sampling");
    est->callback([&] {
        if (est_o.model != "hybrid")
            throw gne::ValidationError("estimate supports the hybrid model only");
        auto params = to_hybrid(est_o);
        params.ordered = true;  // the estimator targets the ordered chain rule
        uint64_t ss = sample_seed ? sample_seed : gne::derive_seed(est_o.seed, 0x6d63);
        auto r = gne::mc_entropy(params, link_samples, ss);
        print_report(r);
        auto es = gne::e_series(params.n, params.alpha, params.a,
                                (double)gne::hybrid_name_length(params));
        std::cout << std::setprecision(15) << "e_series_nats=" << es.total_nats
                  << " e_series_normalized="
                  << es.total_nats / ((double)params.n * std::log((double)params.n)) << "\n";
    });

    // sweep ------------------------------------------------------------------
    ModelOpts sw_o;
    gne::SweepSpec spec;
    std::string size_list, csv_path;
    auto* sw = app.add_subcommand("sweep", "entropy convergence sweep to CSV");
    add_model_options(sw, sw_o);
    sw->add_option("--N-list,--n-list", size_list, "comma-separated sizes, increasing")
        ->required();
    sw->add_option("--seeds", spec.seeds, "replicates per size (hybrid)");
    sw->add_option("--root-seed", spec.root_seed, "root seed for the counter split");
    sw->add_option("--link-samples", spec.link_samples, "hybrid link sets per step");
    sw->add_option("--csv", csv_path, "output CSV path (default stdout)");
    sw->callback([&] {
        spec.model = sw_o.model;
        spec.alpha = sw_o.alpha;
        spec.beta = sw_o.beta;
        spec.a = sw_o.a;
        spec.gamma = sw_o.gamma;
        spec.d = sw_o.d;
        spec.ordered = !sw_o.unordered;
        for (size_t at = 0; at < size_list.size();) {
            size_t comma = size_list.find(',', at);
            if (comma == std::string::npos) comma = size_list.size();
            try {
                spec.sizes.push_back(std::stoull(size_list.substr(at, comma - at)));
            } catch (const std::exception&) {
                throw gne::ValidationError("bad size list entry '" +
                                           size_list.substr(at, comma - at) + "'");
            }
            at = comma + 1;
        }
        if (csv_path.empty())
            gne::run_sweep(spec, std::cout);
        else
            gne::run_sweep(spec, csv_path);
    });

    // encode / decode ---------------------------------------------------------
    ModelOpts enc_o;
    std::string enc_in, enc_out;
    auto* enc = app.add_subcommand("encode", "compress a GNV1 graph under a model");
    add_model_options(enc, enc_o);
    enc->add_option("--in", enc_in, "input GNV1 path")->required();
    enc->add_option("--out", enc_out, "output GNC1 path")->required();
    enc->callback([&] {
        auto g = gne::read_graph(enc_in);
        auto model = to_codec(enc_o);
        auto bytes = gne::encode(model, g);
        write_bytes(enc_out, bytes);
        double ideal = gne::ideal_codelength(model, g);
        std::cout << std::setprecision(15) << "emitted_bits=" << 8.0 * (double)bytes.size()
                  << " ideal_bits=" << ideal << " out=" << enc_out << "\n";
    });

    ModelOpts dec_o;
    std::string dec_in, dec_out;
    auto* dec = app.add_subcommand("decode", "decompress a GNC1 stream");
    add_model_options(dec, dec_o);
    dec->add_option("--in", dec_in, "input GNC1 path")->required();
    dec->add_option("--out", dec_out, "output GNV1 path")->required();
    dec->callback([&] {
        auto bytes = read_bytes(dec_in);
        auto g = gne::decode(to_codec(dec_o), bytes);
        gne::write_graph(dec_out, g);
        std::cout << "N=" << g.num_vertices() << " E=" << g.num_edges() << " out=" << dec_out
                  << "\n";
    });

    // extensions ---------------------------------------------------------------
    std::string ext_in;
    uint64_t ext_k = 0;
    double ext_alpha = 1.0;
    auto* ext = app.add_subcommand("extensions", "count linear extensions of a DAG file");
    ext->add_option("--in", ext_in, "DAG file: 'N=<int>' then 'later earlier' lines")
        ->required();
    ext->add_option("--lower-bound-K", ext_k, "also print the interval-partition lower bound");
    ext->add_option("--alpha", ext_alpha, "alpha for the lower bound");
    ext->callback([&] {
        auto dag = gne::read_dag(ext_in);
        if (dag.n <= 24) {
            auto c = gne::count_linear_extensions(dag);
            std::cout << std::setprecision(15) << "log_nats=" << c.log_nats
                      << " log2=" << c.log_nats / std::log(2.0)
                      << " count=" << gne::uint128_to_string(c.exact) << "\n";
        } else if (ext_k == 0) {
            throw gne::CapacityError(
                "exact counting limited to N <= 24; pass --lower-bound-K for the bound");
        }
        if (ext_k > 0)
            std::cout << std::setprecision(15) << "lower_bound_log_nats="
                      << gne::extensions_lower_bound(dag.n, ext_alpha, ext_k) << "\n";
    });

    // diag -----------------------------------------------------------------------
    ModelOpts diag_o;
    bool d_coll = false, d_lens = false, d_names = false;
    double diag_m = -1.0;
    uint64_t diag_pairs = 100000;
    std::string diag_ordering = "torus";
    auto* diag = app.add_subcommand("diag", "model diagnostics");
    add_model_options(diag, diag_o);
    diag->add_flag("--collisions", d_coll, "hybrid copy-collision statistics");
    diag->add_flag("--edge-lengths", d_lens, "edge-length distribution under an ordering");
    diag->add_flag("--name-similarity", d_names, "Hamming distance across edges");
    diag->add_option("--M", diag_m, "edge-length threshold (default n^(1/4))");
    diag->add_option("--pairs", diag_pairs, "sampled pairs for theta");
    diag->add_option("--ordering", diag_ordering, "torus|index");
    diag->callback([&] {
        if (!d_coll && !d_lens && !d_names)
            throw gne::ValidationError(
                "pick a diagnostic: --collisions, --edge-lengths or --name-similarity");
        if (d_coll) {
            if (diag_o.model != "hybrid")
                throw gne::ValidationError("--collisions applies to the hybrid model");
            auto out = gne::gen_hybrid(to_hybrid(diag_o));
            auto st = gne::collision_stats(out.trace, out.graph, diag_pairs,
                                           gne::derive_seed(diag_o.seed, 0x7468));
            std::cout << std::setprecision(15) << "duplicate_name_count="
                      << st.duplicate_name_count << " est_theta=" << st.est_theta
                      << " non_tree_fraction=" << st.non_tree_fraction << "\n";
        }
        if (d_lens) {
            gne::GraphWithNames g;
            gne::OrderingKind kind = diag_ordering == "index"
                                         ? gne::OrderingKind::index_distance
                                         : gne::OrderingKind::torus_distance;
            if (diag_o.model == "hybrid") {
                auto out = gne::gen_hybrid(to_hybrid(diag_o));
                g = std::move(out.graph);
            } else {
                g = gne::generate(to_params(diag_o));
            }
            auto st = gne::edge_length_stats(g, kind);
            double m = diag_m >= 0.0
                           ? diag_m
                           : std::pow((double)g.num_vertices(), 0.25);
            std::cout << std::setprecision(15) << "edges=" << st.lengths.size()
                      << " M=" << m << " fraction_longer=" << st.fraction_longer(m)
                      << " median_length=" << st.median() << "\n";
        }
        if (d_names) {
            gne::GraphWithNames g;
            if (diag_o.model == "hybrid") {
                auto out = gne::gen_hybrid(to_hybrid(diag_o));
                g = std::move(out.graph);
            } else {
                g = gne::generate(to_params(diag_o));
            }
            auto st = gne::name_similarity_stats(g);
            std::cout << std::setprecision(15) << "total_edge_hamming=" << st.total_edge_hamming
                      << " per_edge_mean=" << st.per_edge_mean
                      << " normalized=" << st.normalized << " half_L=" << 0.5 * g.len << "\n";
        }
    });

    // const ---------------------------------------------------------------------
    std::string which;
    uint32_t c_a = 2, c_k = 0, c_kmax = 0;
    double c_alpha = 1.0, c_gamma = 1.0, c_p = 0.5, c_x = 0.25;
    auto* cst = app.add_subcommand("const", "print h_A(k), J_k, kappa, Lambda as CSV rows");
    cst->add_option("which", which, "hA|J|kappa|lambda|all")->required();
    cst->add_option("--A", c_a, "alphabet size");
    cst->add_option("--k", c_k, "single k");
    cst->add_option("--k-max", c_kmax, "print k = 0..k_max");
    cst->add_option("--alpha", c_alpha, "J: exponent parameter");
    cst->add_option("--gamma", c_gamma, "kappa: decay exponent");
    cst->add_option("--p", c_p, "lambda: success probability");
    cst->add_option("--x", c_x, "lambda: deviation point");
    cst->callback([&] {
        std::cout << std::setprecision(15);
        uint32_t lo = c_kmax ? 0 : c_k, hi = c_kmax ? c_kmax : c_k;
        if (which == "hA" || which == "all")
            for (uint32_t k = lo; k <= hi; ++k)
                std::cout << "hA," << c_a << ',' << k << ',' << gne::h_mix(c_a, k) << "\n";
        if (which == "J" || which == "all")
            for (uint32_t k = lo; k <= hi; ++k)
                std::cout << "J," << c_alpha << ',' << k << ','
                          << gne::j_integral(c_alpha, k) << "\n";
        if (which == "kappa" || which == "all")
            std::cout << "kappa," << c_gamma << ',' << gne::kappa(c_gamma) << "\n";
        if (which == "lambda" || which == "all")
            std::cout << "lambda," << c_p << ',' << c_x << ','
                      << gne::large_dev_rate(c_p, c_x) << "\n";
        if (which != "hA" && which != "J" && which != "kappa" && which != "lambda" &&
            which != "all")
            throw gne::ValidationError("unknown constant '" + which + "'");
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("GNE_THREADS")) {
#ifdef _OPENMP
        int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
#endif
    }
    try {
        return run(argc, argv);
    } catch (const gne::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const gne::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    } catch (const gne::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
