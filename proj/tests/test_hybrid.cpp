#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/hybrid.hpp"
#include "gne/special.hpp"

using namespace gne;

TEST_CASE("hybrid construction basics") {
    SUBCASE("deterministic in the seed") {
        HybridParams p{300, 1.0, 2.0, 2, 12, false};
        auto o1 = gen_hybrid(p);
        auto o2 = gen_hybrid(p);
        CHECK(o1.graph == o2.graph);
        CHECK(o1.dag.edges == o2.dag.edges);
        CHECK(o1.trace.origins == o2.trace.origins);
    }
    SUBCASE("vanishing alpha: no edges, every letter its own") {
        HybridParams p{200, 0.0, 2.0, 2, 3, false};
        auto out = gen_hybrid(p);
        CHECK(out.graph.num_edges() == 0);
        CHECK(out.dag.edges.empty());
        for (uint64_t v = 0; v < p.n; ++v) {
            CHECK(out.trace.link_counts[v] == 0);
            CHECK(out.trace.tree_flags[v] == 1);
            for (uint32_t u = 0; u < out.trace.len; ++u)
                CHECK(out.trace.origin(v, u) == v);
        }
    }
    SUBCASE("trace is consistent with the dag") {
        HybridParams p{500, 1.5, 2.0, 2, 21, false};
        auto out = gen_hybrid(p);
        CHECK(out.graph.num_edges() == out.dag.edges.size());
        uint64_t q_total = 0;
        for (uint64_t v = 0; v < p.n; ++v) q_total += out.trace.link_counts[v];
        CHECK(q_total == out.dag.edges.size());
        // origins point at or before the vertex
        for (uint64_t v = 0; v < p.n; ++v)
            for (uint32_t u = 0; u < out.trace.len; ++u) CHECK(out.trace.origin(v, u) <= v);
    }
    SUBCASE("link counts match the binomial mean") {
        HybridParams p{10000, 1.0, 2.0, 2, 31, false};
        auto out = gen_hybrid(p);
        double frac_linked = 0.0, expect = 0.0;
        for (uint64_t v = 0; v < p.n; ++v) {
            frac_linked += out.trace.link_counts[v] >= 1 ? 1.0 : 0.0;
            expect += 1.0 - std::pow(1.0 - p.alpha / (double)p.n, (double)v);
        }
        frac_linked /= (double)p.n;
        expect /= (double)p.n;
        // binomial oracle: sd of the mean of N indicator variables
        double sd = std::sqrt(expect * (1.0 - expect) / (double)p.n);
        CHECK(std::abs(frac_linked - expect) < 4.0 * sd);
    }
    SUBCASE("copied-coordinate fraction tracks E[Q/(Q+1)]") {
        HybridParams p{10000, 1.0, 2.0, 2, 31, false};
        auto out = gen_hybrid(p);
        double copied = 0.0, expect = 0.0;
        uint64_t coords = p.n * out.trace.len;
        for (uint64_t v = 0; v < p.n; ++v) {
            double q = (double)out.trace.link_counts[v];
            expect += q / (q + 1.0);
            for (uint32_t u = 0; u < out.trace.len; ++u)
                copied += out.trace.origin(v, u) < v ? 1.0 : 0.0;
        }
        copied /= (double)out.trace.len;
        // given the link counts, coordinates are iid copy/fresh picks
        double sd = std::sqrt(expect / (double)out.trace.len) + 1e-9;
        (void)coords;
        CHECK(std::abs(copied - expect) < 5.0 * sd);
    }
    SUBCASE("unconditional letter distribution is uniform") {
        // fixed coordinate and vertex, many seeds
        uint64_t zeros = 0;
        const int seeds = 2000;
        for (int s = 1; s <= seeds; ++s) {
            auto out = gen_hybrid({50, 1.0, 2.0, 2, (uint64_t)s, false});
            zeros += out.graph.names[25][3] == '0';
        }
        double sd = std::sqrt(0.25 * seeds);
        CHECK(std::abs((double)zeros - seeds / 2.0) < 3.0 * sd);
    }
}

TEST_CASE("rename duplicates") {
    SUBCASE("distinct input unchanged") {
        GraphWithNames g;
        g.a = 2;
        g.len = 2;
        g.names = {"00", "01", "10"};
        auto res = rename_duplicates(g, 1);
        CHECK(res.renamed == 0);
        CHECK(res.graph.names == g.names);
    }
    SUBCASE("later-indexed holder renamed, earliest kept") {
        GraphWithNames g;
        g.a = 2;
        g.len = 2;
        g.names = {"01", "01", "10"};
        auto res = rename_duplicates(g, 7);
        CHECK(res.renamed == 1);
        CHECK(res.graph.names[0] == "01");
        CHECK(res.graph.names[1] != "01");
        CHECK(res.graph.names[2] == "10");
        std::set<std::string> all(res.graph.names.begin(), res.graph.names.end());
        CHECK(all.size() == 3);
    }
    SUBCASE("hybrid duplicates are rare") {
        double renamed = 0.0;
        const int seeds = 50;
        for (int s = 1; s <= seeds; ++s) {
            auto out = gen_hybrid({5000, 1.0, 2.0, 2, (uint64_t)s, false});
            renamed += (double)rename_duplicates(out.graph, 1000 + (uint64_t)s).renamed;
        }
        CHECK(renamed / seeds / 5000.0 < 0.01);
    }
}

TEST_CASE("hybrid rate series") {
    SUBCASE("alpha = 0 collapses to beta") {
        CHECK(rate_hybrid(0.0, 2.0, 2, true) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(rate_hybrid(0.0, 2.0, 2, false) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rate_hybrid(0.0, 1.5, 4, true) == doctest::Approx(1.5).epsilon(1e-14));
    }
    SUBCASE("unordered is ordered minus one, identically") {
        for (double alpha : {0.3, 1.0, 2.5})
            CHECK(rate_hybrid(alpha, 2.0, 2, true) - rate_hybrid(alpha, 2.0, 2, false) == 1.0);
    }
    SUBCASE("truncations agree once converged") {
        double k40 = rate_hybrid_truncated(1.0, 2.0, 2, true, 40);
        double k60 = rate_hybrid_truncated(1.0, 2.0, 2, true, 60);
        CHECK(std::abs(k40 - k60) < 1e-12);
        CHECK(rate_hybrid(1.0, 2.0, 2, true) == doctest::Approx(k60).epsilon(1e-12));
    }
    SUBCASE("terms are positive and bounded by beta alpha^k/(k+1)!") {
        double alpha = 1.0, beta = 2.0;
        double prev = rate_hybrid_truncated(alpha, beta, 2, true, 0);
        double factorial = 1.0, power = 1.0;
        for (uint32_t k = 1; k <= 12; ++k) {
            double cur = rate_hybrid_truncated(alpha, beta, 2, true, k);
            double term = cur - prev;
            power *= alpha;
            factorial *= (double)(k + 1);
            CHECK(term > 0.0);
            CHECK(term <= beta * power / factorial + 1e-15);
            prev = cur;
        }
        CHECK_THROWS_AS(rate_hybrid(1.0, 2.0, 2, true, -1.0), ValidationError);
    }
}

TEST_CASE("finite-N series") {
    SUBCASE("alpha = 0 gives name_len * ln A per step") {
        auto es = e_series(100, 0.0, 2, 10.0);
        for (double e : es.per_step) CHECK(e == doctest::Approx(10.0 * std::log(2.0)));
        CHECK(es.edge_nats == 0.0);
        CHECK(es.total_nats == doctest::Approx(100.0 * 10.0 * std::log(2.0)).epsilon(1e-13));
    }
    SUBCASE("truncation is stable") {
        auto e30 = e_series(100, 1.0, 2, 13.3, 30);
        auto e50 = e_series(100, 1.0, 2, 13.3, 50);
        CHECK(std::abs(e30.total_nats - e50.total_nats) < 1e-10);
    }
    SUBCASE("serial reference is bit-identical") {
        auto par = e_series(5000, 1.0, 2, 24.0);
        auto ser = e_series_serial(5000, 1.0, 2, 24.0);
        CHECK(par.total_nats == ser.total_nats);
        CHECK(par.per_step == ser.per_step);
    }
    SUBCASE("normalized totals with the limit name length trend to the rate") {
        double target = rate_hybrid(1.0, 2.0, 2, true);
        auto norm = [&](uint64_t n) {
            double name_len = 2.0 * std::log((double)n) / std::log(2.0);
            return e_series(n, 1.0, 2, name_len).total_nats / ((double)n * std::log((double)n));
        };
        double n3 = norm(1000), n4 = norm(10000), n5 = norm(100000);
        CHECK(std::abs(n4 - target) < std::abs(n3 - target));
        CHECK(std::abs(n5 - target) < std::abs(n4 - target));
    }
}

TEST_CASE("monte-carlo chain-rule estimator") {
    SUBCASE("alpha -> 0 is exact with zero stderr") {
        HybridParams p{150, 0.0, 2.0, 2, 5, true};
        auto r = mc_entropy(p, 4, 99);
        uint32_t len = hybrid_name_length(p);
        CHECK(r.nats == doctest::Approx(150.0 * len * std::log(2.0)).epsilon(1e-12));
        CHECK(*r.std_error == 0.0);
        // e_series with the integer name length matches exactly at alpha = 0
        auto es = e_series(p.n, 0.0, p.a, (double)len);
        CHECK(std::abs(es.total_nats - r.nats) < 1e-9 * r.nats);
    }
    SUBCASE("estimate brackets the series at matched name length") {
        HybridParams p{500, 1.0, 2.0, 2, 77, true};
        auto r = mc_entropy(p, 16, 31);
        auto es = e_series(p.n, p.alpha, p.a, (double)hybrid_name_length(p));
        CHECK(std::abs(r.nats - es.total_nats) < 4.0 * *r.std_error);
        CHECK(std::abs(r.nats - es.total_nats) / es.total_nats < 0.05);
        // name terms stay within [0, L ln A] per step
        double edge_part = 0.5 * 500.0 * 499.0 * bernoulli_entropy(1.0 / 500.0);
        double name_cap = 500.0 * hybrid_name_length(p) * std::log(2.0);
        CHECK(r.nats >= edge_part);
        CHECK(r.nats <= edge_part + name_cap + 1e-9);
    }
    SUBCASE("doubling link samples shrinks the reported stderr by ~sqrt 2") {
        double s1 = 0.0, s2 = 0.0;
        const int seeds = 12;
        for (int s = 1; s <= seeds; ++s) {
            HybridParams p{400, 1.0, 2.0, 2, (uint64_t)s, true};
            s1 += *mc_entropy(p, 8, 1000 + (uint64_t)s).std_error;
            s2 += *mc_entropy(p, 16, 2000 + (uint64_t)s).std_error;
        }
        CHECK(s1 / s2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.12));
    }
    SUBCASE("deterministic for fixed seeds") {
        HybridParams p{300, 1.0, 2.0, 2, 8, true};
        auto r1 = mc_entropy(p, 8, 5);
        auto r2 = mc_entropy(p, 8, 5);
        CHECK(r1.nats == r2.nats);
        CHECK(*r1.std_error == *r2.std_error);
    }
}

TEST_CASE("collision statistics") {
    SUBCASE("alpha -> 0 trace has no collisions") {
        auto out = gen_hybrid({1000, 0.0, 2.0, 2, 4, false});
        auto st = collision_stats(out.trace, out.graph, 20000, 9);
        CHECK(st.est_theta == 0.0);
        CHECK(st.non_tree_fraction == 0.0);
    }
    SUBCASE("theta and the non-tree fraction scale like 1/N") {
        for (uint64_t n : {1000ull, 10000ull}) {
            double theta_sum = 0.0, non_tree_sum = 0.0, dup_sum = 0.0;
            const int seeds = n == 1000 ? 30 : 10;
            for (int s = 1; s <= seeds; ++s) {
                auto out = gen_hybrid({n, 1.0, 2.0, 2, (uint64_t)s, false});
                auto st = collision_stats(out.trace, out.graph, 100000, (uint64_t)s);
                theta_sum += st.est_theta;
                non_tree_sum += st.non_tree_fraction;
                dup_sum += (double)st.duplicate_name_count;
            }
            // Lemma-style bounds: (alpha e^alpha)^2 + alpha e^alpha ~ 10.1 and
            // (alpha e^alpha)^3/2 ~ 10 at alpha = 1; generous constants
            CHECK((double)n * theta_sum / seeds < 12.0);
            CHECK((double)n * non_tree_sum / seeds < 12.0);
            CHECK(dup_sum / seeds / (double)n < 0.02);
        }
    }
    SUBCASE("mismatched inputs rejected") {
        auto out = gen_hybrid({100, 1.0, 2.0, 2, 4, false});
        auto other = gen_hybrid({120, 1.0, 2.0, 2, 4, false});
        CHECK_THROWS_AS(collision_stats(out.trace, other.graph, 100, 1), ValidationError);
    }
}

TEST_CASE("hybrid names are more similar across edges than uniform names") {
    auto out = gen_hybrid({10000, 1.0, 2.0, 2, 2024, false});
    auto st = name_similarity_stats(out.graph);
    CHECK(st.per_edge_mean < 0.5 * (double)out.graph.len);
}
