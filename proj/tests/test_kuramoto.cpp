#include <kap/json_io.hpp>
#include <kap/laurent.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace kap;

namespace {

OscillatorNetwork two_vertex(Complex a, Complex omega1) {
    OscillatorNetwork net;
    net.N = 2;
    net.edges = {{0, 1}};
    net.weights[{0, 1}] = a;
    net.weights[{1, 0}] = a;
    net.omega = {omega1};
    net.symmetric_weights = true;
    return net;
}

std::vector<Complex> random_torus_point(Rng& rng, int n) {
    std::vector<Complex> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::polar(1.0, 2.0 * M_PI * rng.next_unit());
    return x;
}

std::set<LatticePoint> vertex_set(const LatticePolytope& P) {
    return {P.vertices().begin(), P.vertices().end()};
}

} // namespace

TEST_CASE("system construction from networks") {
    auto sys = build_system(two_vertex(Complex(1, 0), Complex(0, 0)));
    REQUIRE(sys.n == 1);
    // -x + 1/x
    REQUIRE(sys.equations[0].terms.size() == 2);
    CHECK(sys.equations[0].terms.at(Exponent{1}) == Complex(-1, 0));
    CHECK(sys.equations[0].terms.at(Exponent{-1}) == Complex(1, 0));

    auto c3 = generate(GenTopology::Cycle, 3, 5);
    auto s3 = build_system(c3);
    std::set<LatticePoint> sup1;
    for (const auto& p : s3.support(0)) sup1.insert(p);
    std::set<LatticePoint> want{{Int(0), Int(0)},  {Int(1), Int(-1)}, {Int(-1), Int(1)},
                                {Int(1), Int(0)},  {Int(-1), Int(0)}};
    CHECK(sup1 == want);
    // constant term carries omega
    for (int i = 0; i < s3.n; ++i)
        CHECK(s3.equations[i].terms.at(Exponent(s3.n, 0)) == c3.omega[i]);
}

TEST_CASE("supports stay inside the adjacency pattern") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (auto topo : {GenTopology::RandomTree, GenTopology::Cycle}) {
            int N = 4 + static_cast<int>(seed % 3);
            auto net = generate(topo, N, seed);
            auto sys = build_system(net);
            std::set<LatticePoint> allowed{LatticePoint(sys.n, Int(0))};
            std::vector<LatticePoint> nonzero;
            auto unit = [&](int v) {
                LatticePoint e(sys.n, Int(0));
                if (v > 0) e[v - 1] = 1;
                return e;
            };
            for (auto [i, j] : net.edges) {
                LatticePoint p(sys.n);
                auto ei = unit(i), ej = unit(j);
                for (int k = 0; k < sys.n; ++k) p[k] = ei[k] - ej[k];
                allowed.insert(p);
                nonzero.push_back(p);
                for (auto& x : p) x = -x;
                allowed.insert(p);
                nonzero.push_back(p);
            }
            for (int i = 0; i < sys.n; ++i)
                for (const auto& p : sys.support(i)) CHECK(allowed.count(p) == 1);
            CHECK(vertex_set(adjacency_polytope(net)) == vertex_set(convex_hull(nonzero)));
        }
    }
}

TEST_CASE("closed-form bounds") {
    CHECK(tree_formula(4) == 8);
    CHECK(cycle_formula(3) == 6);
    CHECK(cycle_formula(4) == 12);
    CHECK(baseline_bound(3) == 6);
    CHECK(baseline_bound(10) == 48620);
    CHECK_THROWS(tree_formula(1));
    CHECK_THROWS(cycle_formula(2));
}

TEST_CASE("AP bound methods agree and dispatch correctly") {
    auto net = generate(GenTopology::Cycle, 5, 1);
    auto r = ap_bound(net, BoundMethod::Both);
    CHECK(r.ap_bound == 30);
    CHECK(*r.formula_value == *r.triangulation_value);

    CHECK(ap_bound(two_vertex(Complex(1, 0), Complex(0, 0))).ap_bound == 2);

    for (int N = 2; N <= 8; ++N)
        CHECK(ap_bound(generate(GenTopology::RandomTree, N, 3), BoundMethod::Both).ap_bound ==
              int_pow2(N - 1));
    for (int N = 3; N <= 6; ++N)
        CHECK(ap_bound(generate(GenTopology::Cycle, N, 3), BoundMethod::Both).ap_bound ==
              cycle_formula(N));

    // no closed form for general graphs
    OscillatorNetwork gen;
    gen.N = 4;
    gen.edges = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
    for (auto [i, j] : gen.edges) {
        gen.weights[{i, j}] = Complex(1, 0);
        gen.weights[{j, i}] = Complex(1, 0);
    }
    gen.omega.assign(3, Complex(0));
    CHECK_THROWS_WITH(ap_bound(gen, BoundMethod::Formula),
                      Catch::Matchers::ContainsSubstring("no closed form"));
    CHECK(ap_bound(gen).ap_bound > 0);
}

TEST_CASE("tree reduction eliminates leaves into parents") {
    auto path = generate(GenTopology::Path, 3, 11);
    auto t = tree_structure(path);
    auto rel = relabel(path, t.reindex_perm);
    auto red = tree_reduce(build_system(rel), tree_structure(rel), rel);
    CHECK(red.omega_star[1] == rel.omega[1]);
    Complex expect = rel.omega[0] + rel.weight(1, 2) / rel.weight(2, 1) * rel.omega[1];
    CHECK(std::abs(red.omega_star[0] - expect) < 1e-15);
    // reduced equations touch only the parent edge
    for (int i = 1; i <= 2; ++i)
        for (const auto& [e, c] : red.system.equations[i - 1].terms) {
            for (int k = 0; k < 2; ++k)
                if (k != i - 1 && k != tree_structure(rel).parent[i] - 1) CHECK(e[k] == 0);
        }

    // a star is already in reduced form
    auto star = generate(GenTopology::Star, 4, 2);
    auto sys = build_system(star);
    auto sred = tree_reduce(sys, tree_structure(star), star);
    for (int i = 0; i < sys.n; ++i) {
        CHECK(sred.system.equations[i].terms == sys.equations[i].terms);
        CHECK(sred.omega_star[i] == star.omega[i]);
    }
}

TEST_CASE("reduction preserves zero sets on the torus") {
    Rng rng(555);
    for (int k = 0; k < 20; ++k) {
        int N = 3 + k % 5;
        auto net = generate(GenTopology::RandomTree, N, 900 + k);
        auto t = tree_structure(net);
        auto rel = relabel(net, t.reindex_perm);
        auto sys = build_system(rel);
        auto red = tree_reduce(sys, tree_structure(rel), rel);
        for (int p = 0; p < 100; ++p) {
            auto x = random_torus_point(rng, sys.n);
            double r0 = sys.max_residual(x);
            double r1 = red.system.max_residual(x);
            // roots transfer both ways; random points are roots of neither
            CHECK((r0 < 1e-10) == (r1 < 1e-10));
        }
    }
}

TEST_CASE("toric substitution decouples reduced tree systems") {
    auto path = generate(GenTopology::Path, 3, 4);
    auto t = tree_structure(path);
    auto rel = relabel(path, t.reindex_perm);
    auto red = tree_reduce(build_system(rel), tree_structure(rel), rel);
    auto A = tree_exponent_matrix(tree_structure(rel));
    auto sub = toric_substitution(red.system, A);
    for (int i = 0; i < sub.n; ++i)
        for (const auto& [e, c] : sub.equations[i].terms)
            for (int k = 0; k < sub.n; ++k)
                if (k != i) CHECK(e[k] == 0);

    // identity leaves systems unchanged; A then A^{-1} round-trips
    auto sys = build_system(generate(GenTopology::Cycle, 4, 6));
    std::vector<std::vector<Int>> id(sys.n, std::vector<Int>(sys.n, Int(0)));
    for (int i = 0; i < sys.n; ++i) id[i][i] = 1;
    auto same = toric_substitution(sys, UnimodularMap(id));
    for (int i = 0; i < sys.n; ++i) CHECK(same.equations[i].terms == sys.equations[i].terms);

    auto B = tree_exponent_matrix(tree_structure(relabel(
        generate(GenTopology::RandomTree, 4, 1),
        tree_structure(generate(GenTopology::RandomTree, 4, 1)).reindex_perm)));
    std::vector<std::vector<Int>> pad(sys.n, std::vector<Int>(sys.n, Int(0)));
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j) pad[i][j] = B.matrix[i][j];
    UnimodularMap M(pad);
    auto round = toric_substitution(toric_substitution(sys, M), M.inverse());
    for (int i = 0; i < sys.n; ++i) CHECK(round.equations[i].terms == sys.equations[i].terms);
}

TEST_CASE("substituted systems evaluate consistently through the monomial map") {
    Rng rng(321);
    auto net = generate(GenTopology::RandomTree, 5, 77);
    auto t = tree_structure(net);
    auto rel = relabel(net, t.reindex_perm);
    auto sys = build_system(rel);
    auto A = tree_exponent_matrix(tree_structure(rel));
    auto sub = toric_substitution(sys, A);
    for (int k = 0; k < 50; ++k) {
        auto y = random_torus_point(rng, sys.n);
        auto x = apply_monomial_map(A, y);
        auto fx = sys.eval(x);
        auto fy = sub.eval(y);
        for (int i = 0; i < sys.n; ++i) CHECK(std::abs(fx[i] - fy[i]) < 1e-10);
    }
}

TEST_CASE("initial systems restrict to minimal faces") {
    auto sys = build_system(generate(GenTopology::Cycle, 3, 5));
    auto init = initial_system(sys, {Rat(1), Rat(1)});
    for (int i = 0; i < sys.n; ++i) {
        REQUIRE(!init.face_terms[i].empty());
        // exact argmin over the support
        std::optional<Int> best;
        for (const auto& p : sys.support(i)) {
            Int s = p[0] + p[1];
            if (!best || s < *best) best = s;
        }
        for (const auto& [e, c] : init.face_terms[i]) {
            CHECK(Int(e[0]) + Int(e[1]) == *best);
            CHECK(sys.equations[i].terms.count(e) == 1);
        }
    }

    // a direction separating all points gives singleton faces
    auto init2 = initial_system(sys, {Rat(5), Rat(2)});
    for (int i = 0; i < sys.n; ++i) CHECK(init2.face_terms[i].size() >= 1);

    CHECK_THROWS(initial_system(sys, {Rat(0), Rat(0)}));
}

TEST_CASE("cycle polytope censuses match the closed forms") {
    struct Row {
        int N;
        int facets;
        Int per_facet; // even N only
        Int total;
    };
    for (const auto& row : {Row{4, 6, 2, 12}, Row{6, 20, 3, 60}}) {
        auto census = cycle_facet_family(row.N);
        CHECK(census.facet_count == row.facets);
        for (const auto& v : census.facet_volumes) CHECK(v == row.per_facet);
        CHECK(census.total == row.total);
        CHECK(census.sign_pattern_ok);
    }
    for (int N : {3, 5}) {
        auto census = cycle_facet_family(N);
        CHECK(census.facet_count == Int(N) * binomial(N - 1, (N - 1) / 2));
        CHECK(census.all_unimodular);
        CHECK(census.total == cycle_formula(N));
    }
}

TEST_CASE("cycle polytopes map unimodularly onto P_N") {
    for (int N : {4, 5, 6}) {
        auto nabla = adjacency_polytope(generate(GenTopology::Cycle, N, 1));
        auto img = apply_unimodular(nabla, cycle_to_pn_map(N));
        CHECK(vertex_set(img) == vertex_set(pn_polytope(N)));
    }
}

TEST_CASE("independence certificates") {
    for (int N : {3, 4, 5}) {
        auto cert = independence_certificate(generate(GenTopology::Cycle, N, 1));
        CHECK(cert.pass);
        CHECK(cert.directions_checked > 0);
        for (const auto& rep : cert.trace) CHECK_FALSE(rep.opposite_pair_found);
    }

    auto bad = certify_independent_coefficients(corrupted_support_fixture(), 2);
    CHECK_FALSE(bad.pass);
    bool reported = false;
    for (const auto& rep : bad.trace)
        if (rep.opposite_pair_found) {
            reported = true;
            CHECK(rep.offending_equation >= 1);
            // the offending monomial is the e_i - e_j whose negative co-occurs
            CHECK(rep.offending_monomial.size() == 2);
        }
    CHECK(reported);

    CHECK_THROWS(independence_certificate(generate(GenTopology::Cycle, 9, 1)));
    CHECK_THROWS(independence_certificate(generate(GenTopology::Path, 4, 1)));
}

TEST_CASE("system and certificate JSON shapes") {
    auto sys = build_system(generate(GenTopology::Cycle, 3, 2));
    auto j = system_to_json(sys);
    CHECK(j["n"] == 2);
    CHECK(j["equations"].size() == 2);
    for (const auto& term : j["equations"][0]) {
        CHECK(term.contains("exponents"));
        CHECK(term["coeff"].size() == 2);
    }

    auto cert = certificate_to_json(certify_independent_coefficients(corrupted_support_fixture(), 2));
    CHECK(cert["pass"] == false);
    CHECK(cert["trace"].size() >= 1);
}
