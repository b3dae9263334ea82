#include <catch_amalgamated.hpp>

#include <random>

#include "gw/oracles.hpp"

using namespace gw;

namespace {

Rational invariant(const std::vector<long>& w, long d, const Rational& beta, const std::vector<int>& ins,
                   std::vector<Rational> p = {}, std::vector<Rational> q = {}, bool strict = false) {
    WeightedProjSpace X(w);
    Target T{X, d > 0, d};
    if (p.empty()) {
        auto cs = find_chain_structures(X, d);
        REQUIRE(!cs.empty());
        p = chain_specialization(cs[0]).p;
    }
    Engine E(T, p, q);
    ComputeOptions opt;
    opt.strict = strict;
    return compute_invariant(E, beta, ins, opt).invariant;
}

const std::vector<long> quintic{1, 1, 1, 1, 1};

} // namespace

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(2) == rat(1, 6));
    CHECK(bernoulli(4) == rat(-1, 30));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli_poly(2, rat(1, 3)) == rat(1, 9) - rat(1, 3) + rat(1, 6));
    CHECK(factorial(5) == 120);
}

TEST_CASE("untwisted Hodge vertex reduces to the psi integral") {
    std::mt19937_64 g(23);
    std::uniform_int_distribution<long> wd(-9, 9);
    for (int m = 3; m <= 6; ++m)
        for (int it = 0; it < 5; ++it) {
            std::vector<Leg<Rational>> legs;
            for (int i = 0; i < m; ++i) {
                long x = 0;
                while (x == 0) x = wd(g);
                legs.push_back({false, Rational(x), 1, 0});
            }
            CHECK(chiodo_vertex<Rational>(1, legs, {}) == classical_vertex(legs));
        }
    std::vector<Leg<Rational>> three{{false, 2, 1, 0}, {false, 3, 1, 0}, {false, 5, 1, 0}};
    CHECK(classical_vertex(three) == rat(1, 30));
}

TEST_CASE("quintic invariants through degree 4") {
    // Gopakumar-Vafa counts with the multiple cover formula
    Rational n1 = 2875, n2 = 609250, n3 = 317206375, n4 = 242467530000;
    CHECK(invariant(quintic, 5, 1, {}) == n1);
    CHECK(invariant(quintic, 5, 2, {}) == n2 + n1 / 8);
    CHECK(invariant(quintic, 5, 3, {}) == n3 + n1 / 27);
    CHECK(invariant(quintic, 5, 4, {}) == n4 + n2 / 8 + n1 / 64);
}

TEST_CASE("weighted Calabi-Yau hypersurfaces with chains") {
    CHECK(invariant({1, 1, 1, 1, 2}, 6, 1, {}) == 7884);
    CHECK(invariant({1, 1, 1, 1, 2}, 6, 2, {}) == Rational(6028452) + rat(7884, 8));
    CHECK(invariant({1, 1, 1, 1, 4}, 8, 1, {}) == 29504);
}

TEST_CASE("plane curve counts without a hypersurface") {
    auto N = wdvv_p2(2);
    std::vector<Rational> p{1, 3, 9};
    CHECK(invariant({1, 1, 1}, 0, 1, {2, 2}, p) == N[1]);
    CHECK(invariant({1, 1, 1}, 0, 2, {2, 2, 2, 2, 2}, p) == N[2]);
}

TEST_CASE("divisor axiom") {
    std::vector<Rational> p1{1, 3}, p2{1, 3, 9};
    CHECK(invariant({1, 1}, 0, 1, {1, 1}, p1) == invariant({1, 1}, 0, 1, {1}, p1));
    CHECK(invariant({1, 1, 1}, 0, 1, {2, 2, 1}, p2) == invariant({1, 1, 1}, 0, 1, {2, 2}, p2));
    CHECK(invariant(quintic, 5, 1, {1}) == invariant(quintic, 5, 1, {}));
    CHECK(invariant(quintic, 5, 2, {1}) == 2 * invariant(quintic, 5, 2, {}));
}

TEST_CASE("mismatched codimension gives zero") {
    WeightedProjSpace X(quintic);
    Engine E(Target{X, true, 5}, chain_specialization(find_chain_structures(X, 5)[0]).p, {});
    auto R = compute_invariant(E, 1, {2});
    CHECK(R.invariant == 0);
    CHECK(R.expected_degree == 1);
    CHECK(R.polynomial);
    CHECK_FALSE(R.note.empty());
}

TEST_CASE("degenerate specializations resolve independently of the perturbation") {
    std::vector<Rational> p{0, 1, 2, 3, 4};
    Rational want = Rational(609250) + rat(2875, 8);
    CHECK(invariant(quintic, 5, 2, {}, p) == want);
    CHECK(invariant(quintic, 5, 2, {}, p, {7, -3, 11, 5, -13}) == want);
    CHECK_THROWS_AS(invariant(quintic, 5, 2, {}, p, {}, true), SpecializationDegenerate);
    WeightedProjSpace X(quintic);
    Engine E(Target{X, true, 5}, p, {});
    auto R = compute_invariant(E, 2, {});
    CHECK(R.limit_graphs > 0);
    CHECK(R.max_pole >= 0);
}

TEST_CASE("P(1,2,3) degree 9 sums are polynomial at the chain point") {
    WeightedProjSpace X({1, 2, 3});
    Engine E(Target{X, true, 9}, {1, -7, 21}, {});
    auto R = compute_invariant(E, 1, {});
    CHECK(R.polynomial);
    CHECK(R.sum.is_poly());
    CHECK(R.sum == RatFunc::monomial(rat(-233232615, 4), 5));
    CHECK(R.invariant == 0);
    // beta = 1/3: nothing survives the monodromy conditions
    auto S = compute_invariant(E, rat(1, 3), {});
    CHECK(S.admissible == 0);
    CHECK(S.invariant == 0);
    // 9 * 1/2 is fractional: no representable map, hence no admissible locus
    auto H = compute_invariant(E, rat(1, 2), {});
    CHECK(H.graphs > 0);
    CHECK(H.admissible == 0);
    CHECK(H.invariant == 0);
    CHECK_THROWS_AS(compute_invariant(E, rat(1, 4), {}), DegreeNotRepresentable);
}

TEST_CASE("every admissible graph has the expected degree") {
    WeightedProjSpace X({1, 1, 1, 1, 2});
    Engine E(Target{X, true, 6}, {1, -5, 25, -125, 500}, {});
    ComputeOptions opt;
    opt.keep_records = true;
    auto R = compute_invariant(E, 1, {1}, opt);
    for (auto& r : R.records)
        if (r.admissible) CHECK(r.degree == R.expected_degree);
    CHECK(R.invariant == 7884);
}

TEST_CASE("engine input validation") {
    WeightedProjSpace X(quintic);
    CHECK_THROWS_AS(Engine(Target{X, true, 5}, {1, 2}, {}), MalformedInput);
    Engine E(Target{X, true, 5}, {1, -4, 16, -64, 256}, {});
    CHECK_THROWS_AS(compute_invariant(E, 1, {-1}), MalformedInput);
    // gerbe edges between points of isotropy 2 and 4
    Engine G(Target{WeightedProjSpace({1, 2, 4}), true, 8}, {1, -3, 5}, {});
    CHECK_THROWS_AS(compute_invariant(G, 1, {}), Unsupported);
}

TEST_CASE("virtual dimension") {
    CHECK(virtual_dimension(WeightedProjSpace(quintic), 1, 0) == 6);
    CHECK(virtual_dimension(WeightedProjSpace({1, 1, 1}), 3, 8) == 16);
    CHECK_THROWS_AS(virtual_dimension(WeightedProjSpace({1, 2, 3}), rat(1, 4), 0), DegreeNotRepresentable);
}
