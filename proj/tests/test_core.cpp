#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hilbchow/oracles.hpp"
#include "hilbchow/ring.hpp"

using namespace hilbchow;

namespace {

RingPtr ring1(const std::string& n, int deg = 1) {
    return make_ring({GenSym{n, std::nullopt, deg}});
}

// test-side oracle: Kunneth rank convolution
RankTable conv(const RankTable& a, const RankTable& b) {
    RankTable r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly random_poly(std::mt19937_64& rng, const ModelPtr& m, int deg) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Poly p(m->ring());
    for (int i = 0; i < m->rank(deg); ++i)
        p += m->basis_poly(deg, i) * rat(coeff(rng));
    return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    RingPtr r = ring1("h");
    Poly h = Poly::generator(r, 0);
    CHECK(h * h == Poly::generator(r, 0, 2));

    RingPtr r2 = make_ring({GenSym{"x", 1, 1}, GenSym{"x", 2, 1}});
    Poly x1 = Poly::generator(r2, 0), x2 = Poly::generator(r2, 1);
    CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);

    RingPtr r3 = make_ring({GenSym{"e", std::nullopt, 1}, GenSym{"f", std::nullopt, 1}});
    Poly e = Poly::generator(r3, 0), f = Poly::generator(r3, 1);
    CHECK((rat(2) * e + rat(4) * f) * rat(1, 2) == e + rat(2) * f);

    CHECK_THROWS_AS(x1 + h, StructureError);
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(7);
    auto p2 = builtin("P2");
    ModelPtr sq = p2.square;
    for (int trial = 0; trial < 10; ++trial) {
        Poly a = random_poly(rng, sq, 1), b = random_poly(rng, sq, 1),
             c = random_poly(rng, sq, 2);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("homogeneous components partition the polynomial") {
    RingPtr r = ring1("h");
    Poly h = Poly::generator(r, 0);
    Poly p = Poly(r, 1) + rat(3) * h + rat(3) * h.pow(2);
    auto comps = p.homogeneous_components();
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].first == 0);
    CHECK(comps[1].second == rat(3) * h);
    Poly sum(r);
    for (auto& [d, q] : comps) sum += q;
    CHECK(sum == p);
    CHECK(Poly(r).homogeneous_components().empty());
}

TEST_CASE("degree basis of truncated polynomial rings") {
    RingPtr r = ring1("h");
    Poly h = Poly::generator(r, 0);
    ModelPtr m = make_model({r, {h.pow(4)}, 3, "P3"});
    CHECK(m->rank(2) == 1);
    CHECK(m->rank_table() == RankTable{1, 1, 1, 1});

    RingPtr r2 = make_ring({GenSym{"x", 1, 1}, GenSym{"x", 2, 1}});
    Poly x1 = Poly::generator(r2, 0), x2 = Poly::generator(r2, 1);
    ModelPtr m2 = make_model({r2, {x1 * x1, x2 * x2}, 2, "sq"});
    CHECK(m2->rank(1) == 2);
    CHECK_THROWS_AS(m2->basis(5), StructureError);
}

TEST_CASE("normal form idempotence and truncation") {
    RingPtr r = ring1("h");
    Poly h = Poly::generator(r, 0);
    ModelPtr m = make_model({r, {h.pow(3)}, 2, "P2"});
    CHECK(m->normal_form(h.pow(3)).is_zero());

    std::mt19937_64 rng(11);
    auto p2 = builtin("P2");
    for (int trial = 0; trial < 8; ++trial) {
        Poly p = random_poly(rng, p2.square, 2);
        CHECK(p2.square->normal_form(p2.square->normal_form(p)) ==
              p2.square->normal_form(p));
    }
}

TEST_CASE("rank tables and Kunneth identity") {
    auto p1 = builtin("P1");
    auto p2 = builtin("P2");
    auto p3 = builtin("P3");
    CHECK(p3.model->rank_table() == RankTable{1, 1, 1, 1});
    ModelPtr p1p2 = make_model(kunneth_product(p1.model->pres(), p2.model->pres()));
    CHECK(p1p2->rank_table() == conv({1, 1}, {1, 1, 1}));
    // Kunneth rank identity on builtins
    for (auto& name : {std::string("P1"), std::string("P2"), std::string("P1xP1")}) {
        auto v = builtin(name);
        CHECK(v.square->rank_table() ==
              conv(v.model->rank_table(), v.model->rank_table()));
    }
    // degree-0 rank is 1
    CHECK(p1p2->rank(0) == 1);
}

TEST_CASE("induced maps, image and kernel") {
    auto p2 = builtin("P2");
    ModelPtr pt = builtin("pt").model;
    // A*(P2) -> A*(pt), h -> 0: kernel is the ideal (h), ranks (0,1,1)
    GradedLinearMap to_pt = induced_map(p2.model, pt, {Poly(pt->ring())});
    ImageKernel ik = image_kernel(to_pt);
    CHECK(ik.kernel.rank_table() == RankTable{0, 1, 1});

    // delta^*: A*(X)^3 -> A*(X)^2 collapsing slots 1,2 is surjective
    auto cube = make_model(kunneth_power(p2, 3));
    auto sq = p2.square;
    std::vector<Poly> images;
    for (auto& g : cube->ring()->gens) {
        int slot = *g.slot == 0 ? 0 : 1;
        images.push_back(Poly::generator(sq->ring(), sq->ring()->index_of(g.name + std::to_string(slot))));
    }
    GradedLinearMap delta = induced_map(cube, sq, images);
    ImageKernel ik2 = image_kernel(delta);
    for (int k = 0; k <= sq->top(); ++k) CHECK(ik2.image.rank(k) == sq->rank(k));
    // x1 - x2 dies
    Poly x1 = Poly::generator(cube->ring(), 1), x2 = Poly::generator(cube->ring(), 2);
    CHECK(delta.apply(x1 - x2).is_zero());
    // rank theorem
    for (int k = 0; k <= cube->top(); ++k) {
        int img = k <= sq->top() ? ik2.image.rank(k) : 0;
        CHECK(img + ik2.kernel.rank(k) == cube->rank(k));
    }
}

TEST_CASE("swap action: symmetrize projector and invariants") {
    auto p1 = builtin("P1");
    ModelPtr sq = p1.square;
    PermutationAction swap(sq, {slot_permutation(sq->ring(), {1, 0})});
    CHECK(swap.order() == 2);

    Poly x0 = Poly::generator(sq->ring(), 0), x1 = Poly::generator(sq->ring(), 1);
    CHECK(swap.symmetrize(x0) == (x0 + x1) * rat(1, 2));
    // projector squares to itself; image ranks = invariant ranks (1,1,1)
    GradedSubspace inv = swap.invariant_subspace();
    CHECK(inv.rank_table() == RankTable{1, 1, 1});
    for (int k = 0; k <= 2; ++k) {
        QMat p = swap.projector_matrix(k);
        CHECK(mat_eq(mat_mul(p, p), p));
    }
    // kernel of the averager on degree 1 is spanned by x0 - x1
    GradedLinearMap proj = swap.projector_map();
    ImageKernel ik = image_kernel(proj);
    CHECK(ik.kernel.rank(1) == 1);
    CHECK(ik.kernel.contains(x0 - x1));
    // symmetrize of S3 orbit average
    auto cube = make_model(kunneth_power(p1, 3));
    PermutationAction s3(cube, {slot_permutation(cube->ring(), {1, 0, 2}),
                                slot_permutation(cube->ring(), {0, 2, 1})});
    CHECK(s3.order() == 6);
    Poly y0 = Poly::generator(cube->ring(), 0), y1 = Poly::generator(cube->ring(), 1),
         y2 = Poly::generator(cube->ring(), 2);
    CHECK(s3.symmetrize(y0) == (y0 + y1 + y2) * rat(1, 3));
    CHECK(s3.invariant_subspace().rank_table() == RankTable{1, 1, 1, 1});
}

TEST_CASE("rejecting a non-self-map") {
    // the nested-style relation (x1-x2)*e is not preserved by swapping slots 0,1
    auto p2 = builtin("P2");
    RingPresentation cube = kunneth_power(p2, 3);
    std::vector<GenSym> gens = cube.ring->gens;
    gens.push_back(GenSym{"e", std::nullopt, 1});
    RingPresentation pres;
    pres.ring = make_ring(gens);
    pres.top_degree = 4;
    std::vector<Poly> inc;
    for (int i = 0; i < cube.ring->size(); ++i)
        inc.push_back(Poly::generator(pres.ring, i));
    for (auto& r : cube.relations) pres.relations.push_back(r.substitute(pres.ring, inc));
    Poly e = Poly::generator(pres.ring, pres.ring->index_of("e"));
    Poly x1 = Poly::generator(pres.ring, 1), x2 = Poly::generator(pres.ring, 2);
    pres.relations.push_back((x1 - x2) * e);
    ModelPtr m = make_model(pres);
    std::vector<int> perm01 = slot_permutation(m->ring(), {1, 0, 2});
    CHECK_THROWS_AS(PermutationAction(m, {perm01}), MathError);
}

TEST_CASE("subalgebra closure") {
    RingPtr r = ring1("h");
    Poly h = Poly::generator(r, 0);
    ModelPtr m = make_model({r, {h.pow(4)}, 3, "P3"});
    GradedSubspace s = subalgebra_closure(m, {h});
    CHECK(s.rank_table() == m->rank_table());

    // closure of {x0, x1+x2, x1x2} in A*(P1)^3 = A*(P1 x Sym2 P1)
    auto p1 = builtin("P1");
    auto cube = make_model(kunneth_power(p1, 3));
    Poly y0 = Poly::generator(cube->ring(), 0), y1 = Poly::generator(cube->ring(), 1),
         y2 = Poly::generator(cube->ring(), 2);
    GradedSubspace s2 = subalgebra_closure(cube, {y0, y1 + y2, y1 * y2});
    CHECK(s2.rank_table() == conv({1, 1}, {1, 1, 1}));
    // monotone and idempotent
    GradedSubspace s3 = subalgebra_closure(cube, {y0, y1 + y2});
    for (int k = 0; k <= 3; ++k) CHECK(s3.rank(k) <= s2.rank(k));
    std::vector<Poly> closure_basis;
    for (int k = 0; k <= 3; ++k)
        for (auto& p : s2.basis_polys(k)) closure_basis.push_back(p);
    CHECK(subalgebra_closure(cube, closure_basis).rank_table() == s2.rank_table());
}

TEST_CASE("goettsche oracle and fixed point counts") {
    BettiVector p2b{1, 0, 1, 0, 1};
    CHECK(goettsche_betti(p2b, 1) == RankTable{1, 1, 1});
    CHECK(goettsche_betti(p2b, 2) == RankTable{1, 2, 3, 2, 1});
    CHECK(goettsche_betti(p2b, 3) == RankTable{1, 2, 5, 6, 5, 2, 1});
    // palindromic for P2 and P1xP1, n <= 3
    BettiVector qb{1, 0, 2, 0, 1};
    for (int n = 1; n <= 3; ++n) {
        for (auto& b : {p2b, qb}) {
            RankTable t = goettsche_betti(b, n);
            RankTable rev(t.rbegin(), t.rend());
            CHECK(t == rev);
        }
    }
    long total2 = 0, total3 = 0;
    for (int v : goettsche_betti(p2b, 2)) total2 += v;
    for (int v : goettsche_betti(p2b, 3)) total3 += v;
    CHECK(total2 == 9);
    CHECK(total3 == 22);
    CHECK(hilb_p2_fixed_points(2) == 9);
    CHECK(hilb_p2_fixed_points(3) == 22);
    CHECK(nested_hilb_p2_fixed_points(2) == 39);
    CHECK_THROWS_AS(goettsche_betti(BettiVector{1, 1, 0, 0, 0}, 2), StructureError);
}

TEST_CASE("builtin data") {
    CHECK(builtin("P1xP1").model->rank_table() == RankTable{1, 2, 1});
    auto p1 = builtin("P1");
    Poly h = Poly::generator(p1.model->ring(), 0);
    CHECK(p1.chern[1] == rat(2) * h);
    CHECK(p1.chern[0] == Poly(p1.model->ring(), 1));
    CHECK_THROWS_AS(builtin("P4"), StructureError);
}

TEST_CASE("sym_ranks oracle") {
    auto p1 = builtin("P1");
    CHECK(sym_ranks(p1, 2) == RankTable{1, 1, 1});
    CHECK(sym_ranks(p1, 3) == RankTable{1, 1, 1, 1});
    CHECK(sym_ranks(builtin("pt"), 3) == RankTable{1});
    auto p2 = builtin("P2");
    CHECK(sym_ranks(p2, 2) == RankTable{1, 1, 2, 1, 1});
    // degree-0 and top ranks are 1
    RankTable s3 = sym_ranks(p2, 3);
    CHECK(s3.front() == 1);
    CHECK(s3.back() == 1);
}
