#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hilbchow/oracles.hpp"
#include "hilbchow/pipeline.hpp"

using namespace hilbchow;

namespace {

RankTable conv(const RankTable& a, const RankTable& b) {
    RankTable r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// P^t with the generator rescaled by c: an isomorphic presentation with
// nontrivial rational coefficients everywhere.
VarietyData scaled_proj(const std::string& name, int t, const Rational& c) {
    VarietyData v;
    v.name = name;
    v.dim = t;
    RingPtr r = make_ring({GenSym{"g", std::nullopt, 1}});
    Poly g = Poly::generator(r, 0);
    RingPresentation pres{r, {g.pow(t + 1)}, t, name};
    v.model = make_model(pres);
    Poly h = g * c;  // the image of the hyperplane class
    Poly total = (Poly(r, 1) + h).pow(t + 1);
    for (int j = 0; j <= t; ++j) v.chern.push_back(total.component(j));
    v.square = make_model(kunneth_product(pres, pres));
    Poly diag(v.square->ring());
    for (int i = 0; i <= t; ++i)
        diag += place_in_slot(h.pow(i), 0, v.square->ring()) *
                place_in_slot(h.pow(t - i), 1, v.square->ring());
    v.diagonal = diag;
    v.point_class = h.pow(t);
    validate_variety(v);
    return v;
}

GradedLinearMap collapse_map(const ModelPtr& square, const ModelPtr& base) {
    std::vector<Poly> images;
    for (const auto& g : square->ring()->gens)
        images.push_back(Poly::generator(base->ring(), base->ring()->index_of(g.name)));
    return induced_map(square, base, images);
}

}  // namespace

TEST_CASE("kunneth products") {
    auto p1 = builtin("P1");
    auto p2 = builtin("P2");
    CHECK(p1.square->rank_table() == RankTable{1, 2, 1});
    ModelPtr cube2 = make_model(kunneth_power(p2, 3));
    CHECK(cube2->rank_table() == conv(conv({1, 1, 1}, {1, 1, 1}), {1, 1, 1}));
    // unit: pt (x) A = A
    auto pt = builtin("pt");
    ModelPtr unit = make_model(kunneth_product(pt.model->pres(), p2.model->pres()));
    CHECK(unit->rank_table() == p2.model->rank_table());
    // slot collision
    RingPresentation cube_pres = kunneth_power(p2, 3);
    CHECK_THROWS_AS(kunneth_product(cube_pres, cube_pres), StructureError);
}

TEST_CASE("validate_diagonal accepts builtins and rejects corruptions") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        VarietyData v = builtin(name);
        CHECK_NOTHROW(validate_diagonal(v));
        for (const auto& [mono, coeff] : v.diagonal.terms()) {
            VarietyData bad = v;
            Poly corrupted = v.diagonal;
            corrupted.add_term(mono, coeff);  // double one coefficient
            bad.diagonal = corrupted;
            CHECK_THROWS_AS(validate_diagonal(bad), MathError);
        }
    }
    // the doubled middle coefficient on the P2 diagonal
    VarietyData p2 = builtin("P2");
    Poly h = Poly::generator(p2.model->ring(), 0);
    Poly bad_diag = place_in_slot(h.pow(2), 0, p2.square->ring()) +
                    rat(2) * place_in_slot(h, 0, p2.square->ring()) *
                        place_in_slot(h, 1, p2.square->ring()) +
                    place_in_slot(h.pow(2), 1, p2.square->ring());
    VarietyData bad = p2;
    bad.diagonal = bad_diag;
    CHECK_THROWS_WITH_AS(validate_diagonal(bad), doctest::Contains("invalid diagonal"),
                         MathError);
}

TEST_CASE("projective bundles") {
    // over a point, trivial rank 3: the projective plane
    auto pt = builtin("pt");
    ChernVector triv3{{Poly(pt.model->ring(), 1), Poly(pt.model->ring()),
                       Poly(pt.model->ring()), Poly(pt.model->ring())}};
    BundleModel plane = projective_bundle(pt.model, triv3);
    CHECK(plane.total->rank_table() == RankTable{1, 1, 1});

    // over P1, trivial rank 2
    auto p1 = builtin("P1");
    ChernVector triv2{{Poly(p1.model->ring(), 1), Poly(p1.model->ring()),
                       Poly(p1.model->ring())}};
    BundleModel pb = projective_bundle(p1.model, triv2);
    CHECK(pb.total->rank_table() == RankTable{1, 2, 1});

    // p_* extraction on a twisted bundle over P2
    auto p2 = builtin("P2");
    Poly h = Poly::generator(p2.model->ring(), 0);
    ChernVector n{{Poly(p2.model->ring(), 1), rat(2) * h, h * h}};
    BundleModel bm = projective_bundle(p2.model, n);
    int r = 2;
    for (int k = 0; k <= bm.total->top(); ++k) {
        int expect = 0;
        for (int j = 0; j < r; ++j)
            if (k - j >= 0 && k - j <= p2.model->top()) expect += p2.model->rank(k - j);
        CHECK(bm.total->rank(k) == expect);
    }
    Poly hh = Poly::generator(bm.total->ring(), bm.h_index);
    for (int ky = 0; ky <= p2.model->top(); ++ky) {
        for (int i = 0; i < p2.model->rank(ky); ++i) {
            Poly a = p2.model->basis_poly(ky, i);
            Poly lift = a.transport(bm.total->ring());
            CHECK(bm.p_star.apply(lift * hh) == p2.model->normal_form(a));
            CHECK(bm.p_star.apply(lift).is_zero());
        }
    }
}

TEST_CASE("blowups of projective space along linear centers and points") {
    // Bl_pt(P2): relations h^3, h*e, e^2 + h^2, ranks (1,2,1)
    auto p2 = builtin("P2");
    auto pt = builtin("pt");
    GradedLinearMap to_pt = induced_map(p2.model, pt.model, {Poly(pt.model->ring())});
    ChernVector npt{{Poly(pt.model->ring(), 1), Poly(pt.model->ring()),
                     Poly(pt.model->ring())}};
    Poly h = Poly::generator(p2.model->ring(), 0);
    BlowupModel bl = blowup(p2.model, to_pt, npt, h * h);
    CHECK(bl.total->rank_table() == RankTable{1, 2, 1});
    Poly e = bl.e_class;
    Poly hh = h.transport(bl.total->ring());
    CHECK(bl.total->normal_form(hh * e).is_zero());
    CHECK(bl.total->normal_form(e * e + hh * hh).is_zero());
    // pi_* pi^* = id
    for (int k = 0; k <= 2; ++k) {
        QMat comp = mat_mul(bl.pi_star.mat(k), bl.pi_pull.mat(k));
        QMat id(p2.model->rank(k), QVec(p2.model->rank(k), Rational(0)));
        for (int i = 0; i < p2.model->rank(k); ++i) id[i][i] = 1;
        CHECK(mat_eq(comp, id));
    }

    // codimension-1 center: the ring is unchanged and e is the center class
    auto p1 = builtin("P1");
    GradedLinearMap collapse = collapse_map(p1.square, p1.model);
    BlowupModel bl1 = blowup(p1.square, collapse, ChernVector{p1.chern}, p1.diagonal);
    CHECK_FALSE(bl1.e_is_generator);
    CHECK(bl1.total->rank_table() == p1.square->rank_table());
    CHECK(bl1.e_class == p1.square->normal_form(p1.diagonal));
}

TEST_CASE("blowup of the diagonal in P2 x P2") {
    auto p2 = builtin("P2");
    GradedLinearMap collapse = collapse_map(p2.square, p2.model);
    BlowupModel bl = blowup(p2.square, collapse, ChernVector{p2.chern}, p2.diagonal);
    CHECK(bl.total->rank_table() == RankTable{1, 3, 4, 3, 1});
    // the exceptional-power relation vanishes for any Chern preimage choice
    Poly e = bl.e_class;
    const RingPtr& r = bl.total->ring();
    Poly c1_a = place_in_slot(p2.chern[1], 0, r);
    Poly c1_b = place_in_slot(p2.chern[1], 1, r);
    for (const Poly& c1hat : {c1_a, c1_b, (c1_a + c1_b) * rat(1, 2)}) {
        Poly rel = e * e + c1hat * e + p2.diagonal.transport(r);
        CHECK(bl.total->normal_form(rel).is_zero());
    }
}

TEST_CASE("symmetric quotients") {
    CHECK(symmetric_quotient(builtin("P1"), 2).ranks == RankTable{1, 1, 1});
    CHECK(symmetric_quotient(builtin("P1"), 3).ranks == RankTable{1, 1, 1, 1});
    CHECK(symmetric_quotient(builtin("P2"), 2).ranks == RankTable{1, 1, 2, 1, 1});
}

TEST_CASE("randomized construction identities") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    auto rand_rat = [&] { return rat(coeff(rng), den(rng)); };

    int bundles = 0, blowups = 0;
    for (int trial = 0; trial < 10; ++trial) {
        int kind = trial % 3;
        if (kind == 0) {
            // projective bundle with random Chern entries over a scaled P^a
            int a = 1 + static_cast<int>(rng() % 3);
            VarietyData y = scaled_proj("Y", a, rat(1 + static_cast<int>(rng() % 3),
                                                    1 + static_cast<int>(rng() % 2)));
            int r = 2 + static_cast<int>(rng() % 2);
            Poly g = Poly::generator(y.model->ring(), 0);
            ChernVector n;
            n.c.push_back(Poly(y.model->ring(), 1));
            for (int j = 1; j <= r; ++j)
                n.c.push_back(y.model->normal_form(g.pow(j) * rand_rat()));
            BundleModel bm = projective_bundle(y.model, n);
            for (int k = 0; k <= bm.total->top(); ++k) {
                int expect = 0;
                for (int j = 0; j < r; ++j)
                    if (k - j >= 0 && k - j <= y.model->top())
                        expect += y.model->rank(k - j);
                CHECK(bm.total->rank(k) == expect);
            }
            Poly h = Poly::generator(bm.total->ring(), bm.h_index);
            for (int ky = 0; ky <= y.model->top(); ++ky)
                for (int i = 0; i < y.model->rank(ky); ++i) {
                    Poly aa = y.model->basis_poly(ky, i);
                    Poly lift = aa.transport(bm.total->ring());
                    CHECK(bm.p_star.apply(lift * h.pow(r - 1)) == y.model->normal_form(aa));
                    if (r >= 2) CHECK(bm.p_star.apply(lift * h.pow(r - 2)).is_zero());
                }
            ++bundles;
        } else if (kind == 1) {
            // Bl_{P^s}(P^t) with a linear center
            int t = 2 + static_cast<int>(rng() % 3);  // 2..4
            int s = static_cast<int>(rng() % (t - 1));
            RingPtr xr = make_ring({GenSym{"h", std::nullopt, 1}});
            Poly h = Poly::generator(xr, 0);
            ModelPtr x = make_model({xr, {h.pow(t + 1)}, t, "Pt"});
            RingPtr yr = make_ring({GenSym{"k", std::nullopt, 1}});
            Poly kk = Poly::generator(yr, 0);
            ModelPtr y = make_model({yr, {kk.pow(s + 1)}, s, "Ps"});
            GradedLinearMap iota = induced_map(x, y, {kk});
            int codim = t - s;
            ChernVector n;
            Poly nt = (Poly(yr, 1) + kk).pow(codim);
            for (int j = 0; j <= codim; ++j)
                n.c.push_back(y->normal_form(nt.component(j)));
            BlowupModel bl = blowup(x, iota, n, h.pow(codim));
            for (int k = 0; k <= bl.total->top(); ++k) {
                int expect = x->rank(k);
                for (int j = 0; j <= codim - 2; ++j)
                    if (k - j - 1 >= 0 && k - j - 1 <= s) expect += y->rank(k - j - 1);
                CHECK(bl.total->rank(k) == expect);
            }
            for (int k = 0; k <= x->top(); ++k) {
                QMat comp = mat_mul(bl.pi_star.mat(k), bl.pi_pull.mat(k));
                QMat id(x->rank(k), QVec(x->rank(k), Rational(0)));
                for (int i = 0; i < x->rank(k); ++i) id[i][i] = 1;
                CHECK(mat_eq(comp, id));
            }
            ++blowups;
        } else {
            // Bl_Delta(V x V) for a scaled projective space
            int t = 1 + static_cast<int>(rng() % 2);
            VarietyData v = scaled_proj("V", t, rat(1 + static_cast<int>(rng() % 3),
                                                    1 + static_cast<int>(rng() % 2)));
            GradedLinearMap collapse = collapse_map(v.square, v.model);
            BlowupModel bl = blowup(v.square, collapse, ChernVector{v.chern}, v.diagonal);
            for (int k = 0; k <= bl.total->top(); ++k) {
                int expect = v.square->rank(k);
                for (int j = 0; j <= t - 2; ++j)
                    if (k - j - 1 >= 0 && k - j - 1 <= t) expect += v.model->rank(k - j - 1);
                CHECK(bl.total->rank(k) == expect);
            }
            if (bl.e_is_generator) {
                for (int k = 0; k <= v.square->top(); ++k) {
                    QMat comp = mat_mul(bl.pi_star.mat(k), bl.pi_pull.mat(k));
                    QMat id(v.square->rank(k), QVec(v.square->rank(k), Rational(0)));
                    for (int i = 0; i < v.square->rank(k); ++i) id[i][i] = 1;
                    CHECK(mat_eq(comp, id));
                }
            }
            ++blowups;
        }
    }
    CHECK(bundles >= 3);
    CHECK(blowups >= 6);
}

TEST_CASE("blowup input validation") {
    auto p2 = builtin("P2");
    auto p1 = builtin("P1");
    // non-surjective center pullback: h -> 0 into P1
    GradedLinearMap bad = induced_map(p2.model, p1.model, {Poly(p1.model->ring())});
    ChernVector n{{Poly(p1.model->ring(), 1), Poly(p1.model->ring())}};
    Poly h = Poly::generator(p2.model->ring(), 0);
    CHECK_THROWS_WITH_AS(blowup(p2.model, bad, n, h), doctest::Contains("not surjective"),
                         MathError);
    // inhomogeneous Chern entry
    GradedLinearMap iota =
        induced_map(p2.model, p1.model, {Poly::generator(p1.model->ring(), 0)});
    Poly k = Poly::generator(p1.model->ring(), 0);
    ChernVector badn{{Poly(p1.model->ring(), 1), k + Poly(p1.model->ring(), 1)}};
    CHECK_THROWS_AS(blowup(p2.model, iota, badn, h), StructureError);
}

TEST_CASE("scaled presentations pass the full pipeline") {
    // a fully rescaled P2 must reproduce the same Hilb tables
    VarietyData v = scaled_proj("Pscaled", 2, rat(5, 3));
    CHECK(hilb2_model(v).ranks == RankTable{1, 2, 3, 2, 1});
    NestedModel nm = nested_model(v);
    CHECK(nm.w.rank_table() == RankTable{1, 4, 9, 11, 9, 4, 1});
    CHECK(hilb3_model(nm).ranks == RankTable{1, 2, 5, 6, 5, 2, 1});
}
