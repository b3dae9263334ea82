#include <catch_amalgamated.hpp>

#include "gw/oracles.hpp"

using namespace gw;

TEST_CASE("Kontsevich numbers") {
    auto N = wdvv_p2(5);
    CHECK(N[1] == 1);
    CHECK(N[2] == 1);
    CHECK(N[3] == 12);
    CHECK(N[4] == 620);
    CHECK(N[5] == 87304);
    CHECK_THROWS_AS(wdvv_p2(0), MalformedInput);
}

TEST_CASE("convex evaluation agrees with the chain specialization") {
    WeightedProjSpace X({1, 1, 1, 1, 1});
    Target T{X, true, 5};
    auto C = convex_invariant(T, 2, {});
    Engine E(T, chain_specialization(find_chain_structures(X, 5)[0]).p, {});
    CHECK(C.value == compute_invariant(E, 2, {}).invariant);
    CHECK(C.values.size() == 3);
    for (size_t i = 0; i < C.specializations.size(); ++i)
        for (size_t j = i + 1; j < C.specializations.size(); ++j) CHECK(C.specializations[i] != C.specializations[j]);
}

TEST_CASE("convex evaluation is reproducible for a fixed seed") {
    Target T{WeightedProjSpace({1, 1, 1, 1, 2}), true, 6};
    auto a = convex_invariant(T, 1, {}, 3, 99);
    auto b = convex_invariant(T, 1, {}, 3, 99);
    CHECK(a.specializations == b.specializations);
    CHECK(a.value == 7884);
    CHECK(b.value == 7884);
}

TEST_CASE("convex evaluation refuses non-Gorenstein targets") {
    Target T{WeightedProjSpace({1, 2, 3}), true, 9};
    CHECK_THROWS_AS(convex_invariant(T, 1, {}), NotConvex);
}

TEST_CASE("brute-force canonical form counts automorphisms") {
    LocGraph g{{0, 1, 0}, {{0, 1, 1}, {1, 2, 1}}, {}};
    CHECK(brute_canonical(g).second == 2);
    LocGraph star{{0, 1, 1, 1}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, {}};
    CHECK(brute_canonical(star).second == 6);
    CHECK(canonical_form(star).second == 6);
}

TEST_CASE("brute-force oracle on P^1 in degree 2") {
    auto B = brute_force_graphs(WeightedProjSpace({1, 1}), 2, 0, 6);
    // double cover plus a two-edge path centered at each fixed point
    CHECK(B.aut.size() == 3);
}
