#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "ctop/fixtures.hpp"
#include "ctop/generate.hpp"
#include "ctop/oracle.hpp"
#include "ctop/preprocess.hpp"

using namespace ctop;

namespace {

Bits ranks(int n, std::initializer_list<int> set) {
    Bits b(static_cast<std::size_t>(n));
    for (int p : set) b.set(static_cast<std::size_t>(p));
    return b;
}

Bits full_ranks(int n) {
    Bits b(static_cast<std::size_t>(n));
    b.set();
    return b;
}

}  // namespace

TEST_CASE("rational threshold formatting and comparison") {
    CHECK(Rat{9}.str() == "9");
    CHECK(Rat{11, 4}.str() == "2.75");
    CHECK(Rat{7, 2}.str() == "3.5");
    CHECK(Rat{6, 2}.str() == "3");
    CHECK(Rat{7, 3}.str() == "7/3");
    CHECK(Rat{3, 20}.str() == "0.15");

    CHECK(3 >= Rat{11, 4});
    CHECK_FALSE(2 >= Rat{11, 4});
    CHECK(2 < Rat{11, 4});
    CHECK(3 > Rat{11, 4});
    CHECK(4 == Rat{8, 2});
    CHECK(Rat{11, 4} == Rat{22, 8});
}

TEST_CASE("min edges bound") {
    CHECK(min_edges_bound(6, 2) == 9);
    CHECK(min_edges_bound(5, 3) == 9);
    CHECK(min_edges_bound(4, 3) == 6);  // n = k+1: complete graph
    CHECK(min_edges_bound(2, 3) == 1);  // n <= k stays complete
    CHECK(min_edges_bound(5, 2) == 7);
    CHECK(min_edges_bound(7, 3) == 15);
    CHECK_THROWS_AS(min_edges_bound(0, 2), std::invalid_argument);
}

TEST_CASE("feasible ranks per degree") {
    CHECK(feasible_ranks_for_degree(6, 2, 3) == ranks(6, {0, 1, 4, 5}));
    CHECK(feasible_ranks_for_degree(6, 2, 2) == ranks(6, {0, 5}));
    CHECK(feasible_ranks_for_degree(8, 2, 3) == ranks(8, {0, 1, 6, 7}));
    CHECK(feasible_ranks_for_degree(8, 2, 4) == full_ranks(8));
    CHECK(feasible_ranks_for_degree(5, 3, 3) == ranks(5, {0, 4}));
}

TEST_CASE("degree check fires on fig4 at k=3") {
    Instance inst(fixture("fig4").graph, 3);
    CheckOutcome out = check_min_degree(inst);
    CHECK(out.infeasible);
    CHECK(out.witness == VertexSet{0, 4});
    CHECK(out.observed == 2);
    CHECK(out.bound.str() == "3");

    CHECK_FALSE(check_min_degree(Instance(fixture("fig4").graph, 2)).infeasible);
}

TEST_CASE("edge-count check fires on fig4 at k=2") {
    Instance inst(fixture("fig4").graph, 2);
    CheckOutcome out = check_min_edges(inst);
    CHECK(out.infeasible);
    CHECK(out.observed == 8);
    CHECK(out.bound.str() == "9");
    CHECK_FALSE(8 >= out.bound);

    CHECK_FALSE(check_min_edges(Instance(fixture("fig3a").graph, 2)).infeasible);
}

TEST_CASE("small-degree-class check on fig5a at k=3") {
    Instance inst(fixture("fig5a").graph, 3);
    CheckOutcome out = check_small_degree_classes(inst);
    CHECK(out.infeasible);
    // the exact certificate is the four degree-3 vertices against two end
    // ranks; delta=1 is also recorded at the classic 2*delta+3 threshold 5
    CHECK(out.witness == VertexSet{0, 2, 3, 4});
    CHECK(out.observed == 4);
    CHECK(out.bound.str() == "3");
    REQUIRE(out.trigger_deltas.size() == 2);
    CHECK(out.trigger_deltas[0].delta == 0);
    CHECK(out.trigger_deltas[0].class_size == 4);
    CHECK(out.trigger_deltas[0].available == 2);
    CHECK(out.trigger_deltas[0].certifies);
    CHECK(out.trigger_deltas[1].delta == 1);
    CHECK(out.trigger_deltas[1].class_size == 5);
    CHECK(out.trigger_deltas[1].class_size >= 2 * out.trigger_deltas[1].delta + 3);
    CHECK(out.trigger_deltas[1].available == 5);
    CHECK_FALSE(out.trigger_deltas[1].certifies);
}

TEST_CASE("small-degree-class check on fig5b at k=2") {
    Instance inst(fixture("fig5b").graph, 2);
    CheckOutcome out = check_small_degree_classes(inst);
    CHECK(out.infeasible);
    CHECK(out.witness == VertexSet{0, 1, 2, 3, 4});
    REQUIRE(out.trigger_deltas.size() == 1);
    CHECK(out.trigger_deltas[0].delta == 1);
    CHECK(out.trigger_deltas[0].class_size == 5);
    CHECK(out.trigger_deltas[0].available == 4);
    CHECK(out.trigger_deltas[0].certifies);
}

TEST_CASE("small-degree-class check stays quiet on a feasible dense five-clique minus an edge") {
    // all five vertices fall in V^{d[3,4]}, which meets the classic size-5
    // trigger, yet five ranks admit degree 4 here and (3,0,1,2,4) is valid
    Graph g(5);
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = u + 1; v < 5; ++v)
            if (!(u == 3 && v == 4)) g.add_edge(u, v);
    Instance inst(g, 3);

    CheckOutcome out = check_small_degree_classes(inst);
    CHECK_FALSE(out.infeasible);
    REQUIRE(out.trigger_deltas.size() == 1);
    CHECK(out.trigger_deltas[0].delta == 1);
    CHECK(out.trigger_deltas[0].class_size == 5);
    CHECK_FALSE(out.trigger_deltas[0].certifies);

    CHECK_FALSE(run_checks(inst).has_value());
    CHECK(verify_order(inst, {3, 0, 1, 2, 4}));
    CHECK(count_orders(inst) > 0);
}

TEST_CASE("large-degree-class check on fig5b at k=2") {
    Instance inst(fixture("fig5b").graph, 2);
    CheckOutcome out = check_large_degree_classes(inst);
    CHECK(out.applicable);
    CHECK(out.infeasible);
    CHECK(out.witness.empty());  // nobody reaches degree 4
    CHECK(out.observed == 0);
    CHECK(out.bound.str() == "1");

    // below 2k+1 vertices there are no fully interior ranks
    CHECK_FALSE(check_large_degree_classes(Instance(fixture("fig5b").graph, 3)).applicable);
}

TEST_CASE("stable-set check on the 7-wheel at k=3") {
    Instance inst(gen_wheel(7), 3);
    CheckOutcome out = check_max_stable_set(inst);
    CHECK(out.infeasible);
    CHECK(out.bound.str() == "2.75");
    CHECK(out.observed == 3);
    CHECK(out.witness.size() == 3);
    CHECK(is_stable_set(inst.graph, out.witness));
    CHECK_FALSE(out.truncated);

    // rim vertices alternate; the hub alone is the only other maximal set
    CHECK((out.witness == VertexSet{1, 3, 5} || out.witness == VertexSet{2, 4, 6}));
}

TEST_CASE("check scan matches the recorded fixture verdicts") {
    for (const auto& f : fixtures()) {
        for (const auto& e : f.expect) {
            Instance inst(f.graph, e.k);
            auto verdict = run_checks(inst);
            if (e.feasible) {
                CHECK_MESSAGE(!verdict.has_value(), f.name, " k=", e.k);
            } else if (e.pipeline_check) {
                REQUIRE_MESSAGE(verdict.has_value(), f.name, " k=", e.k);
                CHECK_MESSAGE(static_cast<int>(verdict->check) == *e.pipeline_check, f.name,
                              " k=", e.k, " fired=", check_name(verdict->check));
            }
        }
    }
}

TEST_CASE("checks never fire on oracle-feasible random instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GenSpec spec;
        spec.n = 6;
        spec.density = 0.7;
        spec.seed = seed;
        Graph g = gen_random(spec);
        for (int k = 2; k <= 3; ++k) {
            Instance inst(g, k);
            if (count_orders(inst) > 0) {
                auto verdict = run_checks(inst);
                CHECK_MESSAGE(!verdict.has_value(), "seed=", seed, " k=", k,
                              " fired=", verdict ? check_name(verdict->check) : "none");
            }
        }
    }
}

TEST_CASE("domain reduction reproduces the worked examples") {
    SUBCASE("six vertices, k=2") {
        DomainReduction dr = reduce_domains(Instance(fixture("fig6").graph, 2));
        CHECK(dr.domains[0] == ranks(6, {0, 1, 4, 5}));
        CHECK(dr.domains[4] == ranks(6, {0, 5}));
        CHECK(dr.domains[1] == full_ranks(6));
        CHECK(dr.domains[2] == full_ranks(6));
        CHECK(dr.domains[3] == full_ranks(6));
        CHECK(dr.domains[5] == full_ranks(6));
        CHECK(dr.rule1_applied);
        CHECK_FALSE(dr.rule2_applied);  // v4's neighbors already fit the end windows
        CHECK_FALSE(dr.empty_domain);
    }
    SUBCASE("eight vertices, k=2") {
        DomainReduction dr = reduce_domains(Instance(fixture("fig7").graph, 2));
        CHECK(dr.domains[0] == ranks(8, {0, 1, 6, 7}));
        CHECK(dr.domains[7] == ranks(8, {0, 7}));
        CHECK(dr.domains[4] == ranks(8, {0, 1, 2, 5, 6, 7}));
        CHECK(dr.domains[5] == ranks(8, {0, 1, 2, 5, 6, 7}));
        CHECK(dr.domains[1] == full_ranks(8));
        CHECK(dr.domains[2] == full_ranks(8));
        CHECK(dr.domains[3] == full_ranks(8));
        CHECK(dr.domains[6] == full_ranks(8));
        CHECK(dr.rule1_applied);
        CHECK(dr.rule2_applied);
    }
}

TEST_CASE("domain reduction requires the degree precondition") {
    CHECK_THROWS_AS(reduce_domains(Instance(fixture("fig4").graph, 3)), std::invalid_argument);
}

TEST_CASE("neighbors of degree-above-k vertices keep interior ranks") {
    // power-of-path window edges for (0,1,...,8) at k=2 plus the chord
    // (0,4); vertex 0 has degree 3 = 2k-1 and vertex 4 still sits at rank 4
    // in a valid order, so only degree-exactly-k neighborhoods may be cut
    Graph g(9);
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v <= u + 2 && v < 9; ++v) g.add_edge(u, v);
    g.add_edge(0, 4);
    Instance inst(g, 2);

    Order straight{0, 1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(verify_order(inst, straight));

    DomainReduction dr = reduce_domains(inst);
    CHECK(dr.domains[4].test(4));
    for (Vertex v = 0; v < 9; ++v) CHECK(dr.domains[static_cast<std::size_t>(v)].test(static_cast<std::size_t>(v)));
}

TEST_CASE("every oracle order lands inside the reduced domains") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GenSpec spec;
        spec.n = 7;
        spec.density = 0.6;
        spec.seed = seed;
        Graph g = gen_random(spec);
        for (int k = 2; k <= 3; ++k) {
            Instance inst(g, k);
            if (check_min_degree(inst).infeasible) {
                CHECK(count_orders(inst) == 0);
                continue;
            }
            DomainReduction dr = reduce_domains(inst);
            for (const auto& order : enumerate_orders(inst).orders) {
                std::vector<int> rk = ranks_of(order);
                for (Vertex v = 0; v < inst.n(); ++v)
                    CHECK_MESSAGE(
                        dr.domains[static_cast<std::size_t>(v)].test(static_cast<std::size_t>(rk[static_cast<std::size_t>(v)])),
                        "seed=", seed, " k=", k, " v=", v);
            }
        }
    }
}

TEST_CASE("symmetry constraints for the walkthrough instance") {
    Instance inst(fixture("fig9").graph, 2);
    SymmetryBreaking sym = detect_symmetry_breaking(inst);

    std::vector<std::string> got;
    for (const auto& c : sym.constraints) got.push_back(describe(c, inst.k));
    std::vector<std::string> want{
        "r(v1) < r(v5)",
        "|r(v3) - r(v4)| > 2 -> r(v3) < r(v0)",
        "|r(v2) - r(v4)| > 2 -> r(v2) < r(v1)",
        "|r(v1) - r(v3)| > 2 -> r(v1) < r(v0)",
        "|r(v5) - r(v3)| > 2 -> r(v5) < r(v0)",
        "|r(v2) - r(v0)| > 2 -> r(v2) < r(v3)",
        "r(v4) = 0",
    };
    CHECK(got == want);
    CHECK(sym.conditions_used == std::vector<int>{1, 3, 4, 5});
    CHECK(sym.dropped_conflicts == 0);

    // of the twelve valid orders exactly one survives the constraints
    std::vector<Order> survivors;
    for (const auto& o : enumerate_orders(inst).orders)
        if (satisfies_all(sym, o, inst.k)) survivors.push_back(o);
    REQUIRE(survivors.size() == 1);
    CHECK(survivors[0] == Order{4, 2, 3, 1, 5, 0});
}

TEST_CASE("symmetry guard drops rank fixes that contradict twin chains") {
    // 0, 3, 4, 5 all share the neighborhood {1,2}: the chain orders them,
    // then the second degree-k pin (v3 to the last rank) must be dropped
    // because v3 already precedes v4
    Graph g(6, {{0, 1}, {0, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {5, 2}});
    SymmetryBreaking sym = detect_symmetry_breaking(Instance(g, 2));

    std::vector<std::string> got;
    for (const auto& c : sym.constraints) got.push_back(describe(c, 2));
    std::vector<std::string> want{
        "r(v0) < r(v3)", "r(v3) < r(v4)", "r(v4) < r(v5)", "r(v1) < r(v2)", "r(v0) = 0",
    };
    CHECK(got == want);
    CHECK(sym.dropped_conflicts == 1);
    CHECK(sym.conditions_used == std::vector<int>{1, 2});
}

TEST_CASE("symmetry falls back to a single precedence when nothing fires") {
    Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    SymmetryBreaking sym = detect_symmetry_breaking(Instance(c5, 3));
    REQUIRE(sym.constraints.size() == 1);
    CHECK(describe(sym.constraints[0], 3) == "r(v0) < r(v1)");
    CHECK(sym.conditions_used == std::vector<int>{6});
    CHECK(sym.dropped_conflicts == 0);
}

TEST_CASE("symmetry keeps at least one order of every feasible instance") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenSpec spec;
        spec.n = 6;
        spec.density = 0.65;
        spec.seed = seed + 100;
        Graph g = gen_random(spec);
        for (int k = 2; k <= 3; ++k) {
            Instance inst(g, k);
            auto orders = enumerate_orders(inst).orders;
            if (orders.empty()) continue;
            SymmetryBreaking sym = detect_symmetry_breaking(inst);
            bool any = false;
            for (const auto& o : orders)
                if (satisfies_all(sym, o, k)) {
                    any = true;
                    break;
                }
            CHECK_MESSAGE(any, "seed=", seed, " k=", k);
        }
    }
}

TEST_CASE("separation constraints reproduce the worked right-hand sides") {
    Instance fig8(fixture("fig8").graph, 3);
    auto vis = generate_valid_inequalities(fig8, {{0, 3, 4, 5}, {0, 5}});
    REQUIRE(vis.size() == 2);
    CHECK(vis[0].members == VertexSet{0, 3, 4, 5});
    CHECK(vis[0].min_span == 5);
    CHECK_FALSE(vis[0].pairwise);
    CHECK(vis[1].members == VertexSet{0, 5});
    CHECK(vis[1].min_span == 4);

    // incomparability both ways on the two appendix graphs
    Instance g1(fixture("fig12a").graph, 3);
    auto g1_general = generate_valid_inequalities(g1, {{0, 1, 2, 3, 4}}, ViForm::Span, ViRhs::General);
    auto g1_stable = generate_valid_inequalities(g1, {{2, 4}}, ViForm::Span, ViRhs::Stable);
    CHECK(g1_general[0].min_span == 6);
    CHECK(g1_stable[0].min_span == 4);

    Instance g2(fixture("fig12b").graph, 3);
    auto g2_stable = generate_valid_inequalities(g2, {{0, 2, 4}}, ViForm::Span, ViRhs::Stable);
    auto g2_general = generate_valid_inequalities(g2, {{0, 2, 4}}, ViForm::Span, ViRhs::General);
    CHECK(g2_stable[0].min_span == 8);
    CHECK(g2_general[0].min_span == 5);
}

TEST_CASE("separation constraint input validation") {
    Instance fig8(fixture("fig8").graph, 3);
    // {0,3} is an edge of fig8
    CHECK_THROWS_AS(generate_valid_inequalities(fig8, {{0, 3}}, ViForm::Span, ViRhs::Stable),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_valid_inequalities(fig8, {{0, 3}}, ViForm::Pairwise),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_valid_inequalities(fig8, {{0, 9}}), std::invalid_argument);

    auto skipped = generate_valid_inequalities(fig8, {{2}, {0, 5}});
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].members == VertexSet{0, 5});

    auto pairwise = generate_valid_inequalities(fig8, {{0, 5}}, ViForm::Pairwise);
    CHECK(pairwise[0].pairwise);
    CHECK(pairwise[0].min_span == 4);
}

TEST_CASE("separation constraint satisfaction") {
    SeparationConstraint span{{0, 5}, 4, false};
    SeparationConstraint pair{{0, 2, 4}, 8, true};

    std::vector<int> wide{5, 1, 2, 3, 4, 0};  // r(v0)=5, r(v5)=0
    CHECK(satisfies(span, wide, 3));
    std::vector<int> tight{3, 1, 2, 5, 4, 0};  // r(v0)=3, r(v5)=0
    CHECK_FALSE(satisfies(span, tight, 3));

    std::vector<int> spread{0, 1, 4, 2, 8, 3};  // gaps 4 and 4 at k=3
    CHECK(satisfies(pair, spread, 3));
    CHECK_FALSE(satisfies(pair, spread, 4));
}

TEST_CASE("oracle orders satisfy all stable-set inequalities") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenSpec spec;
        spec.n = 7;
        spec.density = 0.65;
        spec.seed = seed + 500;
        Graph g = gen_random(spec);
        Instance inst(g, 2);
        auto orders = enumerate_orders(inst).orders;
        if (orders.empty()) continue;
        auto stable = maximal_stable_sets(g);
        std::vector<VertexSet> sets;
        for (auto& s : stable.sets)
            if (s.size() >= 2) sets.push_back(s);
        auto vis = generate_valid_inequalities(inst, sets);
        auto viPairwise = generate_valid_inequalities(inst, sets, ViForm::Pairwise);
        for (const auto& o : orders) {
            std::vector<int> rk = ranks_of(o);
            for (const auto& c : vis) CHECK(satisfies(c, rk, inst.k));
            for (const auto& c : viPairwise) CHECK(satisfies(c, rk, inst.k));
        }
    }
}

TEST_CASE("preprocess pipeline wiring") {
    SUBCASE("verdict short-circuits the rest") {
        Instance inst(fixture("fig4").graph, 2);
        PreprocessReport rep = preprocess(inst);
        REQUIRE(rep.verdict.has_value());
        CHECK(rep.verdict->check == Check::MinEdges);
        CHECK(rep.rank_domains.size() == 6);
        for (const auto& d : rep.rank_domains) CHECK(d.all());
        CHECK(rep.symmetry.constraints.empty());
        CHECK(rep.inequalities.empty());
    }
    SUBCASE("feasible instance gets domains, symmetry and inequalities") {
        Instance inst(fixture("fig6").graph, 2);
        PreprocessOptions opts;
        opts.use_inequalities = true;
        PreprocessReport rep = preprocess(inst, opts);
        CHECK_FALSE(rep.verdict.has_value());
        CHECK(rep.rank_domains[0] == ranks(6, {0, 1, 4, 5}));
        CHECK(rep.rank_domains[4] == ranks(6, {0, 5}));
        CHECK(rep.rule1_applied);
        CHECK_FALSE(rep.symmetry.constraints.empty());
        // four maximal stable pairs: {0,3} {0,4} {1,4} {4,5}
        CHECK(rep.inequalities.size() == 4);
        for (const auto& c : rep.inequalities) CHECK(c.min_span == 3);
        CHECK_FALSE(rep.stable_sets_truncated);
    }
    SUBCASE("degree precondition failures skip reduction when checks are off") {
        Instance inst(fixture("fig4").graph, 3);
        PreprocessOptions opts;
        opts.use_checks = false;
        PreprocessReport rep = preprocess(inst, opts);
        CHECK_FALSE(rep.verdict.has_value());
        CHECK(rep.domain_reduction_skipped);
        for (const auto& d : rep.rank_domains) CHECK(d.all());
    }
    SUBCASE("stage toggles") {
        Instance inst(fixture("fig6").graph, 2);
        PreprocessOptions opts;
        opts.use_checks = false;
        opts.use_domain_reduction = false;
        opts.use_symmetry = false;
        PreprocessReport rep = preprocess(inst, opts);
        CHECK_FALSE(rep.verdict.has_value());
        for (const auto& d : rep.rank_domains) CHECK(d.all());
        CHECK(rep.symmetry.constraints.empty());
    }
}

TEST_CASE("preprocess report text is deterministic and readable") {
    Instance fig6(fixture("fig6").graph, 2);
    PreprocessOptions opts;
    opts.use_inequalities = true;
    PreprocessReport rep = preprocess(fig6, opts);
    std::string a = rep.text(fig6);
    std::string b = preprocess(fig6, opts).text(fig6);
    CHECK(a == b);
    CHECK(a.find("v0 {0,1,4,5}") != std::string::npos);
    CHECK(a.find("v4 {0,5}") != std::string::npos);
    CHECK(a.find("symmetry:") != std::string::npos);

    Instance fig4(fixture("fig4").graph, 2);
    std::string v = preprocess(fig4).text(fig4);
    CHECK(v.find("infeasible by min-edges") != std::string::npos);
    CHECK(v.find("observed 8, bound 9") != std::string::npos);
}
