#include "gne/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/rng.hpp"
#include "gne/special.hpp"
#include "gne/sum.hpp"

namespace gne {

namespace {

constexpr double kPi = 3.14159265358979323846;

uint32_t ceil_log2(uint64_t n) {
    uint32_t l = 0;
    while ((1ull << l) < n) ++l;
    return l;
}

std::string coord_bits(uint64_t v, uint32_t len) {
    std::string s(len, '0');
    for (uint32_t i = 0; i < len; ++i)
        if (v >> (len - 1 - i) & 1) s[i] = '1';
    return s;
}

// pair index t (row-major over i < j) -> (i, j)
std::pair<uint32_t, uint32_t> pair_from_index(uint64_t t, uint64_t n) {
    auto before_row = [n](uint64_t i) {
        return i * (n - 1) - i * (i - 1) / 2;
    };
    double nn = (double)n - 0.5;
    double est = nn - std::sqrt(std::max(nn * nn - 2.0 * (double)t, 0.0));
    uint64_t i = (uint64_t)std::max(0.0, std::min(est, (double)n - 2.0));
    while (i > 0 && before_row(i) > t) --i;
    while (before_row(i + 1) <= t) ++i;
    uint64_t j = i + 1 + (t - before_row(i));
    return {(uint32_t)i, (uint32_t)j};
}

std::vector<std::pair<uint32_t, uint32_t>> sample_er_edges(uint64_t n, double p, Rng& rng) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    if (p <= 0.0) return edges;
    uint64_t total = n * (n - 1) / 2;
    uint64_t t = rng.geometric_skip(p);
    while (t < total) {
        edges.push_back(pair_from_index(t, n));
        uint64_t s = rng.geometric_skip(p);
        if (s >= total - t) break;
        t += 1 + s;
    }
    return edges;
}

std::vector<std::string> sample_distinct_names(uint64_t n, uint32_t a, uint32_t len,
                                               Rng& rng) {
    std::unordered_set<std::string> seen;
    seen.reserve(2 * n);
    std::string s(len, kLetters[0]);
    uint64_t draws = 0;
    while (seen.size() < n) {
        if (++draws > 100 * n + 1000)
            throw CapacityError("distinct-name sampling exceeded 100N draws");
        for (uint32_t i = 0; i < len; ++i) s[i] = kLetters[rng.below(a)];
        seen.insert(s);
    }
    std::vector<std::string> names(seen.begin(), seen.end());
    // canonical vertex order: names ascending (the model's object is the
    // name set; edges are exchangeable)
    std::sort(names.begin(), names.end());
    return names;
}

GraphWithNames gen_er_binary(const ErBinary& m) {
    GraphWithNames g;
    g.a = 2;
    g.len = ceil_log2(m.n);
    g.names.reserve(m.n);
    for (uint64_t v = 0; v < m.n; ++v) g.names.push_back(binary_name(v, g.len));
    Rng rng(m.seed);
    g.edges = sample_er_edges(m.n, m.alpha / (double)m.n, rng);
    canonicalize_edges(g);
    return g;
}

GraphWithNames gen_er_named(const ErNamed& m) {
    GraphWithNames g;
    g.a = m.a;
    g.len = name_length(m.n, m.beta, m.a);
    Rng rng(m.seed);
    g.names = sample_distinct_names(m.n, m.a, g.len, rng);
    g.edges = sample_er_edges(m.n, m.alpha / (double)m.n, rng);
    canonicalize_edges(g);
    return g;
}

GraphWithNames gen_small_world(const SmallWorld& m) {
    uint32_t n = m.side;
    uint64_t nn = (uint64_t)n * n;
    auto cal = calibrate_small_world(n, m.gamma, m.alpha);
    GraphWithNames g;
    g.a = 2;
    uint32_t lc = ceil_log2(n);
    g.len = 2 * lc;
    g.names.reserve(nn);
    for (uint64_t v = 0; v < nn; ++v)
        g.names.push_back(coord_bits(v / n, lc) + coord_bits(v % n, lc));
    g.edges.reserve(2 * nn + (uint64_t)(m.alpha * (double)nn / 2 * 1.2));
    auto vid = [n](uint32_t i, uint32_t j) { return (uint32_t)(i * n + j); };
    auto add = [&g](uint32_t u, uint32_t v) {
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    };
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            add(vid(i, j), vid(i, (j + 1) % n));
            add(vid(i, j), vid((i + 1) % n, j));
        }
    // long-range edges per displacement class; canonical classes are
    // (di >= 1, any dj) and (0, dj >= 1), excluding the torus neighbors
    Rng rng(m.seed);
    uint32_t h = (n - 1) / 2;
    auto sample_class = [&](int di, int dj) {
        if ((di == 1 && dj == 0) || (di == 0 && dj == 1)) return;
        double r2 = (double)di * di + (double)dj * dj;
        double p = cal.a * std::pow(r2, -0.5 * m.gamma);
        uint64_t v = rng.geometric_skip(p);
        while (v < nn) {
            uint32_t vi = (uint32_t)(v / n), vj = (uint32_t)(v % n);
            uint32_t wi = (uint32_t)(((int)vi + di + (int)n) % (int)n);
            uint32_t wj = (uint32_t)(((int)vj + dj + (int)n) % (int)n);
            add(vid(vi, vj), vid(wi, wj));
            uint64_t s = rng.geometric_skip(p);
            if (s >= nn - v) break;
            v += 1 + s;
        }
    };
    for (int di = 1; di <= (int)h; ++di)
        for (int dj = -(int)h; dj <= (int)h; ++dj) sample_class(di, dj);
    for (int dj = 1; dj <= (int)h; ++dj) sample_class(0, dj);
    canonicalize_edges(g);
    return g;
}

GraphWithNames gen_hamming(const Hamming& m) {
    GraphWithNames g;
    g.a = m.a;
    g.len = name_length(m.n, m.beta, m.a);
    uint32_t window = hamming_window(m.d, g.len);
    double mu = hamming_mu(m.n, m.a, g.len, window);
    if (mu < m.alpha)
        throw ValidationError("hamming model invalid: mu_N < alpha");
    Rng rng(m.seed);
    g.names = sample_distinct_names(m.n, m.a, g.len, rng);
    double p = m.alpha / mu;
    uint64_t n = m.n;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> rows(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long long i = 0; i < (long long)n; ++i) {
        Rng row_rng(derive_seed(m.seed, (uint64_t)i, 0x4a4d));
        const std::string& a_name = g.names[(size_t)i];
        for (uint64_t j = (uint64_t)i + 1; j < n; ++j) {
            const std::string& b_name = g.names[j];
            uint64_t d = 0;
            for (uint32_t u = 0; u < g.len && d <= window; ++u) d += a_name[u] != b_name[u];
            if (d >= 1 && d <= window && row_rng.bernoulli(p))
                rows[(size_t)i].emplace_back((uint32_t)i, (uint32_t)j);
        }
    }
    for (auto& r : rows) g.edges.insert(g.edges.end(), r.begin(), r.end());
    return g;
}

std::vector<std::pair<uint32_t, uint32_t>> tree_sequential_edges(uint64_t n, Rng& rng) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(n - 1);
    edges.emplace_back(0, 1);
    for (uint64_t k = 3; k <= n; ++k) {
        uint64_t v = rng.below(n) + 1;                  // V_k uniform on {1..N}
        uint64_t partner = std::min(k - 1, v);          // link k to min(k-1, V_k)
        edges.emplace_back((uint32_t)(partner - 1), (uint32_t)(k - 1));
    }
    return edges;
}

GraphWithNames gen_tree_sequential(const TreeSequential& m) {
    GraphWithNames g;
    g.a = 2;
    g.len = ceil_log2(m.n);
    for (uint64_t v = 0; v < m.n; ++v) g.names.push_back(binary_name(v, g.len));
    Rng rng(m.seed);
    g.edges = tree_sequential_edges(m.n, rng);
    canonicalize_edges(g);
    return g;
}

GraphWithNames gen_tree_uniform(const TreeUniform& m) {
    GraphWithNames g;
    g.a = 2;
    g.len = ceil_log2(m.n);
    for (uint64_t v = 0; v < m.n; ++v) g.names.push_back(binary_name(v, g.len));
    Rng rng(m.seed);
    auto edges = tree_sequential_edges(m.n, rng);
    std::vector<uint32_t> perm(m.n);
    for (uint64_t v = 0; v < m.n; ++v) perm[v] = (uint32_t)v;
    for (uint64_t v = m.n - 1; v > 0; --v) std::swap(perm[v], perm[rng.below(v + 1)]);
    for (auto& e : edges) e = {perm[e.first], perm[e.second]};
    g.edges = std::move(edges);
    canonicalize_edges(g);
    return g;
}

}  // namespace

void validate(const ModelParams& params) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SmallWorld>) {
                if (m.side < 5 || m.side % 2 == 0)
                    throw ValidationError("torus side must be odd and >= 5");
                if (!(m.alpha > 0.0)) throw ValidationError("alpha must be > 0");
                if (!(m.gamma > 0.0)) throw ValidationError("gamma must be > 0");
            } else {
                if (m.n < 2) throw ValidationError("need at least 2 vertices");
            }
            if constexpr (std::is_same_v<T, ErBinary>) {
                if (!(m.alpha > 0.0 && m.alpha < (double)m.n))
                    throw ValidationError("alpha must be in (0, N)");
            }
            if constexpr (std::is_same_v<T, ErNamed>) {
                if (!(m.alpha > 0.0 && m.alpha < (double)m.n))
                    throw ValidationError("alpha must be in (0, N)");
                if (!(m.beta > 1.0)) throw ValidationError("beta must be > 1");
                if (m.a < 2 || m.a > kMaxAlphabet)
                    throw ValidationError("alphabet size out of range");
            }
            if constexpr (std::is_same_v<T, Hamming>) {
                if (!(m.alpha > 0.0)) throw ValidationError("alpha must be > 0");
                if (!(m.beta >= 1.0)) throw ValidationError("beta must be >= 1");
                if (m.a < 2 || m.a > kMaxAlphabet)
                    throw ValidationError("alphabet size out of range");
                double d_max = 1.0 - 1.0 / (double)m.a;
                if (!(m.d > 0.0 && m.d < d_max))
                    throw ValidationError("d must lie in (0, 1 - 1/A)");
                double lam = large_dev_rate(d_max, m.d);
                if (!(m.beta < std::log((double)m.a) / lam))
                    throw ValidationError("beta violates the mu_N growth bound");
            }
        },
        params);
}

uint64_t model_size(const ModelParams& params) {
    return std::visit(
        [](const auto& m) -> uint64_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SmallWorld>)
                return (uint64_t)m.side * m.side;
            else
                return m.n;
        },
        params);
}

const char* model_tag(const ModelParams& params) {
    return std::visit(
        [](const auto& m) -> const char* {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ErBinary>) return "erbinary";
            if constexpr (std::is_same_v<T, ErNamed>) return "ernamed";
            if constexpr (std::is_same_v<T, SmallWorld>) return "smallworld";
            if constexpr (std::is_same_v<T, Hamming>) return "hamming";
            if constexpr (std::is_same_v<T, TreeSequential>) return "treeseq";
            if constexpr (std::is_same_v<T, TreeUniform>) return "treeuniform";
            return "unknown";
        },
        params);
}

GraphWithNames generate(const ModelParams& params) {
    validate(params);
    return std::visit(
        [](const auto& m) -> GraphWithNames {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ErBinary>) return gen_er_binary(m);
            if constexpr (std::is_same_v<T, ErNamed>) return gen_er_named(m);
            if constexpr (std::is_same_v<T, SmallWorld>) return gen_small_world(m);
            if constexpr (std::is_same_v<T, Hamming>) return gen_hamming(m);
            if constexpr (std::is_same_v<T, TreeSequential>) return gen_tree_sequential(m);
            if constexpr (std::is_same_v<T, TreeUniform>) return gen_tree_uniform(m);
        },
        params);
}

namespace {

// Displacement-class sums behind both kernels.  Index layout: the h*h
// quadrant terms first, then the h-1 axis terms (i = 2..h).
template <typename Fq, typename Fa>
double class_sum(uint32_t side, Fq quad_term, Fa axis_term, bool parallel) {
    uint64_t h = (side - 1) / 2;
    uint64_t count = h * h + (h - 1);
    auto term = [&](size_t idx) {
        if (idx < h * h) {
            double i = (double)(idx / h + 1);
            double j = (double)(idx % h + 1);
            return quad_term(i, j);
        }
        double i = (double)(idx - h * h + 2);
        return axis_term(i);
    };
    return parallel ? block_sum_parallel(count, term) : block_sum_serial(count, term);
}

double degree_sum_impl(uint32_t side, double gamma, bool parallel) {
    return class_sum(
        side,
        [gamma](double i, double j) { return 4.0 * std::pow(i * i + j * j, -0.5 * gamma); },
        [gamma](double i) { return 4.0 * std::pow(i, -gamma); }, parallel);
}

double bernoulli_sum_impl(uint32_t side, double gamma, double a, bool parallel) {
    return class_sum(
        side,
        [gamma, a](double i, double j) {
            return 4.0 * bernoulli_entropy(a * std::pow(i * i + j * j, -0.5 * gamma));
        },
        [gamma, a](double i) { return 4.0 * bernoulli_entropy(a * std::pow(i, -gamma)); },
        parallel);
}

}  // namespace

double smallworld_degree_sum(uint32_t side, double gamma) {
    return degree_sum_impl(side, gamma, true);
}
double smallworld_degree_sum_serial(uint32_t side, double gamma) {
    return degree_sum_impl(side, gamma, false);
}
double smallworld_bernoulli_sum(uint32_t side, double gamma, double a) {
    return bernoulli_sum_impl(side, gamma, a, true);
}
double smallworld_bernoulli_sum_serial(uint32_t side, double gamma, double a) {
    return bernoulli_sum_impl(side, gamma, a, false);
}

SmallWorldCalibration calibrate_small_world(uint32_t side, double gamma, double alpha) {
    if (side < 5 || side % 2 == 0) throw ValidationError("torus side must be odd and >= 5");
    if (!(gamma > 0.0) || !(alpha > 0.0)) throw ValidationError("gamma, alpha must be > 0");
    double s = smallworld_degree_sum(side, gamma);
    double a = alpha / s;
    if (a * std::pow(2.0, -0.5 * gamma) > 1.0)
        throw ValidationError("small-world probability cap a * 2^(-gamma/2) > 1");
    SmallWorldCalibration cal{a, s, std::nullopt};
    double nn = (double)side * side;
    if (gamma == 2.0)
        cal.asymptotic_a = alpha / (kPi * std::log(nn));
    else if (gamma < 2.0)
        cal.asymptotic_a = alpha * kappa(gamma) * std::pow(nn, 0.5 * gamma - 1.0);
    return cal;
}

double calibrate_a(uint32_t side, double gamma, double alpha) {
    return calibrate_small_world(side, gamma, alpha).a;
}

uint32_t hamming_window(double d, uint32_t len) {
    long long m = std::llround(d * (double)len);
    if (m < 1) m = 1;
    if (m > (long long)len - 1) m = (long long)len - 1;
    return (uint32_t)m;
}

double hamming_mu(uint64_t n_vertices, uint32_t a, uint32_t len, uint32_t m) {
    if (m < 1 || m > len) throw ValidationError("hamming window must satisfy 1 <= M <= L");
    // P(1 <= X <= M) for X ~ Binomial(L, 1 - 1/A), summed in log space
    double log_q = -std::log((double)a);           // log(1/A)
    double log_p = std::log1p(-1.0 / (double)a);   // log(1 - 1/A)
    std::vector<double> terms(m);
    for (uint32_t u = 1; u <= m; ++u)
        terms[u - 1] = log_choose(len, u) + (double)u * log_p + (double)(len - u) * log_q;
    double mx = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    double tail = std::exp(mx) * s;
    double denom = -std::expm1((double)len * log_q);  // 1 - A^{-L}
    return (double)(n_vertices - 1) / denom * tail;
}

double hamming_mu_exponent(uint64_t n_vertices, uint32_t a, uint32_t len, uint32_t m) {
    return std::log(hamming_mu(n_vertices, a, len, m)) / std::log((double)n_vertices);
}

EntropyReport make_report(double nats, uint64_t n, EntropyMethod method,
                          std::optional<double> std_error) {
    EntropyReport r;
    r.nats = nats;
    r.bits = nats / std::log(2.0);
    r.normalized_rate = nats / ((double)n * std::log((double)n));
    r.std_error = std_error;
    r.method = method;
    return r;
}

EntropyReport exact_entropy(const ModelParams& params) {
    validate(params);
    return std::visit(
        [](const auto& m) -> EntropyReport {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ErBinary>) {
                double pairs = 0.5 * (double)m.n * (double)(m.n - 1);
                double nats = pairs * bernoulli_entropy(m.alpha / (double)m.n);
                return make_report(nats, m.n, EntropyMethod::exact);
            }
            if constexpr (std::is_same_v<T, ErNamed>) {
                uint32_t len = name_length(m.n, m.beta, m.a);
                double pairs = 0.5 * (double)m.n * (double)(m.n - 1);
                double nats = log_choose_pow(m.a, len, m.n) +
                              pairs * bernoulli_entropy(m.alpha / (double)m.n);
                return make_report(nats, m.n, EntropyMethod::exact);
            }
            if constexpr (std::is_same_v<T, SmallWorld>) {
                auto cal = calibrate_small_world(m.side, m.gamma, m.alpha);
                double nn = (double)m.side * m.side;
                double nats = 0.5 * nn * smallworld_bernoulli_sum(m.side, m.gamma, cal.a);
                return make_report(nats, (uint64_t)m.side * m.side, EntropyMethod::exact);
            }
            if constexpr (std::is_same_v<T, Hamming>) {
                uint32_t len = name_length(m.n, m.beta, m.a);
                uint32_t window = hamming_window(m.d, len);
                double mu = hamming_mu(m.n, m.a, len, window);
                if (mu < m.alpha) throw ValidationError("hamming model invalid: mu_N < alpha");
                double nats = log_choose_pow(m.a, len, m.n) +
                              0.5 * (double)m.n * mu * bernoulli_entropy(m.alpha / mu);
                return make_report(nats, m.n, EntropyMethod::exact);
            }
            if constexpr (std::is_same_v<T, TreeSequential>) {
                double n = (double)m.n;
                double log_n = std::log(n);
                double nats = block_sum_parallel(m.n - 2, [n, log_n](size_t idx) {
                    double k = (double)idx + 3.0;
                    double rest = n - k + 2.0;
                    return (k - 2.0) / n * log_n + rest / n * std::log(n / rest);
                });
                return make_report(nats, m.n, EntropyMethod::exact);
            }
            if constexpr (std::is_same_v<T, TreeUniform>) {
                double nats = ((double)m.n - 2.0) * std::log((double)m.n);
                return make_report(nats, m.n, EntropyMethod::exact);
            }
        },
        params);
}

double rate(const ModelParams& params) {
    validate(params);
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ErBinary>) return 0.5 * m.alpha;
            if constexpr (std::is_same_v<T, ErNamed>) return m.beta - 1.0 + 0.5 * m.alpha;
            if constexpr (std::is_same_v<T, SmallWorld>) {
                if (m.gamma < 2.0) return 0.5 * m.alpha;
                if (m.gamma == 2.0) return 0.25 * m.alpha;
                return 0.0;
            }
            if constexpr (std::is_same_v<T, Hamming>) {
                double lam = large_dev_rate(1.0 - 1.0 / (double)m.a, m.d);
                return m.beta - 1.0 +
                       0.5 * m.alpha * (1.0 - m.beta * lam / std::log((double)m.a));
            }
            if constexpr (std::is_same_v<T, TreeSequential>) return 0.5;
            if constexpr (std::is_same_v<T, TreeUniform>) return 1.0;
        },
        params);
}

double EdgeLengthStats::fraction_longer(double m) const {
    if (lengths.empty()) return 0.0;
    uint64_t count = 0;
    for (uint64_t l : lengths) count += (double)l > m;
    return (double)count / (double)lengths.size();
}

uint64_t EdgeLengthStats::median() const {
    if (lengths.empty()) return 0;
    std::vector<uint64_t> tmp(lengths);
    size_t mid = tmp.size() / 2;
    std::nth_element(tmp.begin(), tmp.begin() + mid, tmp.end());
    return tmp[mid];
}

EdgeLengthStats edge_length_stats(const GraphWithNames& g, OrderingKind kind) {
    EdgeLengthStats stats;
    stats.lengths.reserve(g.edges.size());
    uint64_t n = g.num_vertices();
    if (kind == OrderingKind::torus_distance) {
        uint32_t side = (uint32_t)std::llround(std::sqrt((double)n));
        if ((uint64_t)side * side != n || side % 2 == 0)
            throw ValidationError("torus ordering needs N = side^2 with odd side");
        int h = (int)(side - 1) / 2;
        // rank of each displacement under (distance, di, dj) lexicographic
        struct Key {
            int64_t r2;
            int di, dj;
        };
        std::vector<Key> keys;
        keys.reserve(n - 1);
        for (int di = -h; di <= h; ++di)
            for (int dj = -h; dj <= h; ++dj) {
                if (di == 0 && dj == 0) continue;
                keys.push_back({(int64_t)di * di + (int64_t)dj * dj, di, dj});
            }
        std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
            if (x.r2 != y.r2) return x.r2 < y.r2;
            if (x.di != y.di) return x.di < y.di;
            return x.dj < y.dj;
        });
        std::vector<uint64_t> rank(n, 0);
        for (size_t r = 0; r < keys.size(); ++r) {
            uint32_t ii = (uint32_t)((keys[r].di + (int)side) % (int)side);
            uint32_t jj = (uint32_t)((keys[r].dj + (int)side) % (int)side);
            rank[(uint64_t)ii * side + jj] = r + 1;
        }
        for (auto [u, v] : g.edges) {
            uint32_t di = (uint32_t)((v / side + side - u / side) % side);
            uint32_t dj = (uint32_t)((v % side + side - u % side) % side);
            stats.lengths.push_back(rank[(uint64_t)di * side + dj]);
        }
    } else {
        for (auto [u, v] : g.edges) {
            uint64_t d = v - u;
            uint64_t closer = std::min<uint64_t>(u, d - 1) + std::min<uint64_t>(n - 1 - u, d - 1);
            stats.lengths.push_back(closer + (u >= d ? 1 : 0) + 1);
        }
    }
    return stats;
}

NameSimilarityStats name_similarity_stats(const GraphWithNames& g) {
    uint64_t total = 0;
    for (auto [u, v] : g.edges) total += hamming_distance(g.names[u], g.names[v]);
    uint64_t n = g.num_vertices();
    return {total,
            g.edges.empty() ? 0.0 : (double)total / (double)g.edges.size(),
            (double)total / ((double)n * std::log((double)n))};
}

}  // namespace gne
