#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hilbchow/oracles.hpp"
#include "hilbchow/pipeline.hpp"

using namespace hilbchow;

namespace {

Poly gen(const ModelPtr& m, const std::string& name) {
    int i = m->ring()->index_of(name);
    REQUIRE(i >= 0);
    return Poly::generator(m->ring(), i);
}

}  // namespace

TEST_CASE("hilb2 stage") {
    auto p1 = builtin("P1");
    CHECK(hilb2_model(p1).ranks == RankTable{1, 1, 1});
    auto p2 = builtin("P2");
    Hilb2Model h2 = hilb2_model(p2);
    CHECK(h2.ranks == RankTable{1, 2, 3, 2, 1});
    CHECK(h2.ranks == goettsche_betti({1, 0, 1, 0, 1}, 2));
    // Bl_Delta(P2xP2) rank table and the blowup rank identity
    CHECK(h2.bl.total->rank_table() == RankTable{1, 3, 4, 3, 1});
    for (int k = 0; k <= 4; ++k) {
        int expect = h2.x.square->rank(k);
        if (k >= 1 && k - 1 <= 2) expect += h2.x.model->rank(k - 1);
        CHECK(h2.bl.total->rank(k) == expect);
    }
    // degree-0 rank is 1
    CHECK(h2.ranks[0] == 1);
}

TEST_CASE("z2 normal bundle chern classes") {
    auto p1 = builtin("P1");
    NestedModel n1 = nested_model(p1);
    const RingPtr& r1 = n1.ambient->ring();
    Poly e1 = Poly::generator(r1, n1.e_index);
    auto c1 = z2_normal_chern(p1, e1, +1);
    CHECK(c1[0] == Poly(r1, 1));
    CHECK(c1[1] == rat(2) * gen(n1.ambient, "h0") - e1);

    auto p2 = builtin("P2");
    NestedModel n2 = nested_model(p2);
    const RingPtr& r2 = n2.ambient->ring();
    Poly e2 = Poly::generator(r2, n2.e_index);
    Poly h0 = gen(n2.ambient, "h0");
    CHECK(n2.chernN[1] == rat(3) * h0 - e2);
    CHECK(n2.chernN[2] == rat(3) * h0 * h0 - rat(3) * h0 * e2 - e2 * e2);
    // trivial input: c(T)=1, e=0 gives (1,0,...)
    VarietyData flat = p2;
    flat.chern = {Poly(p2.model->ring(), 1), Poly(p2.model->ring()),
                  Poly(p2.model->ring())};
    auto cz = z2_normal_chern(flat, Poly(r2), +1);
    CHECK(cz[0] == Poly(r2, 1));
    CHECK(cz[1].is_zero());
    CHECK(cz[2].is_zero());
}

TEST_CASE("nested model for P1") {
    auto p1 = builtin("P1");
    NestedModel nm = nested_model(p1);
    Poly x0 = gen(nm.ambient, "h0"), x1 = gen(nm.ambient, "h1"), x2 = gen(nm.ambient, "h2");
    CHECK(nm.e_class == nm.ambient->normal_form(x1 + x2));
    CHECK(nm.f_class == nm.ambient->normal_form(rat(2) * x0 + x1 + x2));
    CHECK(nm.w.rank_table() == RankTable{1, 2, 2, 1});
    int total = 0;
    for (int v : nm.w.rank_table()) total += v;
    CHECK(total == 6);
}

TEST_CASE("nested model for P2") {
    auto p2 = builtin("P2");
    NestedModel nm = nested_model(p2);
    CHECK(nm.w.rank_table() == RankTable{1, 4, 9, 11, 9, 4, 1});
    int total = 0;
    for (int v : nm.w.rank_table()) total += v;
    CHECK(total == 39);
    CHECK(total == nested_hilb_p2_fixed_points(2));

    // rel1 instance normal-forms to zero
    Poly x1 = gen(nm.ambient, "h1"), x2 = gen(nm.ambient, "h2");
    Poly e = Poly::generator(nm.ambient->ring(), nm.e_index);
    CHECK(nm.ambient->normal_form((x1 - x2) * e).is_zero());
    // e^2 rewrites by rel2
    Poly e2nf = nm.ambient->normal_form(e * e);
    CHECK(e2nf == nm.ambient->normal_form(-rat(3) * x1 * e -
                                          (x1 * x1 + x1 * x2 + x2 * x2)));
    // all defining relations normal-form to zero, also when multiplied by
    // random basis classes
    std::mt19937_64 rng(3);
    for (const auto& rel : nm.ambient->pres().relations) {
        CHECK(nm.ambient->normal_form(rel).is_zero());
        int dr = rel.degree();
        if (dr < 6) {
            std::uniform_int_distribution<int> pick(0, nm.ambient->rank(6 - dr) - 1);
            Poly b = nm.ambient->basis_poly(6 - dr, pick(rng));
            CHECK(nm.ambient->normal_form(rel * b).is_zero());
        }
    }
    // rel2 and rel3 are among the relations and vanish
    CHECK(nm.ambient->normal_form(nm.rel2).is_zero());
    CHECK(nm.ambient->normal_form(nm.rel3).is_zero());
}

TEST_CASE("push-pull operator ledger") {
    for (const auto& name : {std::string("P1"), std::string("P2")}) {
        CAPTURE(name);
        NestedModel nm = nested_model(builtin(name));
        const RingPtr& r = nm.ambient->ring();
        Poly one(r, 1);
        Poly e = Poly::generator(r, nm.e_index);
        Poly f = Poly::generator(r, nm.f_index);
        auto nf = [&](const Poly& p) { return nm.ambient->normal_form(p); };
        CHECK(pushpull(nm, one) == nf(Poly(r, 3)));
        CHECK(pushpull(nm, e) == nf(e + f));
        CHECK(pushpull(nm, f) == nf(rat(2) * e + rat(2) * f));
        CHECK(pushpull(nm, e * f) == nf(rat(3) * e * f));
        CHECK(pushpull(nm, f * f) == nf(rat(2) * e * e + rat(2) * f * f + e * f));
        CHECK(pushpull(nm, e * e) == nf(e * e + f * f - e * f));
    }
}

TEST_CASE("push-pull is a 3-projector on W") {
    for (const auto& name : {std::string("P1"), std::string("P2")}) {
        CAPTURE(name);
        NestedModel nm = nested_model(builtin(name));
        for (int k = 0; k <= 3 * nm.dim; ++k) {
            QMat m = pi_on_w(nm, k);
            CHECK(mat_eq(mat_mul(m, m), mat_scale(m, rat(3))));
        }
    }
}

TEST_CASE("eigenvalue 3 on the Hilb3 generator set and random products") {
    std::mt19937_64 rng(17);
    for (const auto& name : {std::string("P1"), std::string("P2")}) {
        CAPTURE(name);
        NestedModel nm = nested_model(builtin(name));
        Hilb3Model h3 = hilb3_model(nm);
        for (const auto& g : h3.generators) {
            Poly nf = nm.ambient->normal_form(g);
            CHECK(pushpull(nm, nf) == nm.ambient->normal_form(nf * rat(3)));
        }
        std::uniform_int_distribution<size_t> pick(0, h3.generators.size() - 1);
        int done = 0;
        while (done < 25) {
            Poly a = h3.generators[pick(rng)], b = h3.generators[pick(rng)];
            Poly prod = nm.ambient->normal_form(a * b);
            if (prod.is_zero()) continue;
            CHECK(pushpull(nm, prod) == nm.ambient->normal_form(prod * rat(3)));
            ++done;
        }
    }
}

TEST_CASE("hilb3 stage tables") {
    NestedModel n1 = nested_model(builtin("P1"));
    Hilb3Model h1 = hilb3_model(n1);
    CHECK(h1.ranks == RankTable{1, 1, 1, 1});
    CHECK(h1.ranks == sym_ranks(builtin("P1"), 3));

    NestedModel n2 = nested_model(builtin("P2"));
    Hilb3Model h2 = hilb3_model(n2);
    CHECK(h2.ranks == RankTable{1, 2, 5, 6, 5, 2, 1});
    CHECK(h2.ranks == goettsche_betti({1, 0, 1, 0, 1}, 3));
    CHECK(h2.ranks.front() == 1);
    CHECK(h2.ranks.back() == 1);
}

TEST_CASE("curve coherence adjudicates the rel3 constant") {
    auto p1 = builtin("P1");
    NestedModel k1 = nested_model(p1);
    CurveCoherence cc = curve_coherence(k1);
    CHECK(cc.agree);
    // the P1 coherence class: both routes give 2(x0+x1+x2)
    Poly expect = k1.ambient->normal_form(
        rat(2) * (gen(k1.ambient, "h0") + gen(k1.ambient, "h1") + gen(k1.ambient, "h2")));
    CHECK(cc.sym_route == expect);

    PipelineConfig half;
    half.rel3_half = true;
    NestedModel kh = nested_model(p1, half);
    CurveCoherence cch = curve_coherence(kh);
    CHECK_FALSE(cch.agree);
}

TEST_CASE("alternative normalizations break the surface theorem check") {
    // the - sign in the normal-bundle expansion leaves the nested table
    // intact but the operator image no longer matches the closure
    PipelineConfig minus;
    minus.eqcz_sign = -1;
    NestedModel nm = nested_model(builtin("P2"), minus);
    CHECK(nm.w.rank_table() == RankTable{1, 4, 9, 11, 9, 4, 1});
    CHECK_THROWS_WITH_AS(hilb3_model(nm), doctest::Contains("image/closure mismatch"),
                         MathError);
    // the halved constant breaks it already in degree 2
    PipelineConfig half;
    half.rel3_half = true;
    NestedModel nh = nested_model(builtin("P2"), half);
    CHECK_THROWS_AS(hilb3_model(nh), MathError);
}

TEST_CASE("a single homogeneous relation piece") {
    NestedModel nm = nested_model(builtin("P2"));
    // rel2 is homogeneous of degree 2: exactly one component
    auto comps = nm.rel2.homogeneous_components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].first == 2);
    CHECK(comps[0].second == nm.rel2);
}

TEST_CASE("pushpull rejects classes outside W") {
    NestedModel nm = nested_model(builtin("P2"));
    Poly x1 = gen(nm.ambient, "h1");
    CHECK_THROWS_AS(pushpull(nm, x1), MathError);  // not slot-symmetric
    CHECK_THROWS_WITH_AS(pushpull(nm, x1), doctest::Contains("not a nested-Hilbert class"),
                         MathError);
}

TEST_CASE("extract_presentation") {
    NestedModel n1 = nested_model(builtin("P1"));
    Hilb3Model h1 = hilb3_model(n1);
    auto gens = default_presentation_generators(n1, h1);
    RingPresentation pres = extract_presentation(n1, h1, gens);
    ModelPtr m = make_model(pres);
    CHECK(m->rank_table() == h1.ranks);
    CHECK(m->rank_table() == RankTable{1, 1, 1, 1});
    // redundant constant generators are ignored
    auto with_one = gens;
    with_one.emplace_back("one", Poly(n1.ambient->ring(), 1));
    RingPresentation pres2 = extract_presentation(n1, h1, with_one);
    CHECK(pres2.ring->size() == pres.ring->size());

    NestedModel n2 = nested_model(builtin("P2"));
    Hilb3Model h2 = hilb3_model(n2);
    auto gens2 = default_presentation_generators(n2, h2);
    RingPresentation pres3 = extract_presentation(n2, h2, gens2);
    CHECK(make_model(pres3)->rank_table() == h2.ranks);
}

TEST_CASE("monomial type classification is total and consistent") {
    NestedModel nm = nested_model(builtin("P2"));
    // the nested ambient has 5 generators and rank 5 in degree 1
    CHECK(nm.ambient->ring()->size() == 5);
    CHECK(nm.ambient->rank(1) == 5);
    for (int k = 0; k <= 6; ++k) {
        REQUIRE(static_cast<int>(nm.tags[k].size()) == nm.ambient->rank(k));
        for (int j = 0; j < nm.ambient->rank(k); ++j) {
            const Monomial& m = nm.ambient->basis(k).monomials[nm.ambient->basis(k).basis[j]];
            int a = m[nm.e_index], b = m[nm.f_index];
            switch (nm.tags[k][j]) {
                case MonoType::SYM: CHECK((a == 0 && b == 0)); break;
                case MonoType::E_ONLY: CHECK((a > 0 && b == 0)); break;
                case MonoType::F_ONLY: CHECK((a == 0 && b > 0)); break;
                case MonoType::MIXED: CHECK((a > 0 && b > 0)); break;
            }
        }
    }
}

TEST_CASE("full pipeline on a two-generator surface") {
    auto q = builtin("P1xP1");
    Hilb2Model h2 = hilb2_model(q);
    CHECK(h2.ranks == goettsche_betti({1, 0, 2, 0, 1}, 2));
    NestedModel nm = nested_model(q);
    CHECK(nm.w.rank_table() == RankTable{1, 6, 18, 26, 18, 6, 1});
    Hilb3Model h3 = hilb3_model(nm);
    CHECK(h3.ranks == goettsche_betti({1, 0, 2, 0, 1}, 3));
}

TEST_CASE("nested rejects dimension zero") {
    CHECK_THROWS_WITH_AS(nested_model(builtin("pt")), doctest::Contains("dimension"),
                         StructureError);
    CHECK_THROWS_AS(hilb2_model(builtin("pt")), StructureError);
}
