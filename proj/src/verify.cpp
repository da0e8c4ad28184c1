#include "hilbchow/verify.hpp"

#include <functional>
#include <random>

#include "hilbchow/errors.hpp"
#include "hilbchow/oracles.hpp"

namespace hilbchow {

namespace {

RankTable conv(const RankTable& a, const RankTable& b) {
    RankTable r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

BettiVector surface_betti(const VarietyData& x) {
    RankTable t = x.model->rank_table();
    return BettiVector{t[0], 0, t[1], 0, t[2]};
}

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult c;
    c.name = name;
    try {
        c.detail = body();
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = e.what();
    }
    return c;
}

void expect(bool cond, const std::string& msg) {
    if (!cond) throw MathError(msg);
}

}  // namespace

std::vector<CheckResult> oracle_checks(const VarietyData& x, const std::string& stage,
                                       const RankTable& ranks) {
    std::vector<CheckResult> out;
    if (stage == "hilb2") {
        if (x.dim == 1)
            out.push_back(run_check("hilb2-matches-sym2", [&] {
                expect(ranks == sym_ranks(x, 2), "Hilb^2 of a curve must equal Sym^2");
                return "ranks " + ranks_str(ranks);
            }));
        if (x.dim == 2)
            out.push_back(run_check("hilb2-matches-goettsche", [&] {
                RankTable g = goettsche_betti(surface_betti(x), 2);
                expect(ranks == g, "expected " + ranks_str(g) + ", got " + ranks_str(ranks));
                return "ranks " + ranks_str(ranks);
            }));
    }
    if (stage == "hilb3") {
        if (x.dim == 1)
            out.push_back(run_check("hilb3-matches-sym3", [&] {
                expect(ranks == sym_ranks(x, 3), "Hilb^3 of a curve must equal Sym^3");
                return "ranks " + ranks_str(ranks);
            }));
        if (x.dim == 2)
            out.push_back(run_check("hilb3-matches-goettsche", [&] {
                RankTable g = goettsche_betti(surface_betti(x), 3);
                expect(ranks == g, "expected " + ranks_str(g) + ", got " + ranks_str(ranks));
                return "ranks " + ranks_str(ranks);
            }));
    }
    return out;
}

std::vector<CheckResult> verify_variety(const VarietyData& x, const PipelineConfig& cfg) {
    std::vector<CheckResult> out;

    out.push_back(run_check("diagonal-identity", [&] {
        validate_variety(x);
        return std::string();
    }));

    out.push_back(run_check("diagonal-corruption-rejected", [&] {
        int corruptions = 0;
        for (const auto& [mono, coeff] : x.diagonal.terms()) {
            VarietyData bad = x;
            Poly corrupted = x.diagonal;
            corrupted.add_term(mono, coeff);  // doubles this coefficient
            bad.diagonal = corrupted;
            bool rejected = false;
            try {
                validate_diagonal(bad);
            } catch (const MathError&) {
                rejected = true;
            }
            expect(rejected, "corruption of coefficient on a diagonal term was accepted");
            ++corruptions;
        }
        return std::to_string(corruptions) + " corruptions rejected";
    }));

    out.push_back(run_check("kunneth-rank-identity", [&] {
        expect(x.square->rank_table() == conv(x.model->rank_table(), x.model->rank_table()),
               "square ranks are not the rank convolution");
        return ranks_str(x.square->rank_table());
    }));

    Hilb2Model h2;
    out.push_back(run_check("hilb2-stage", [&] {
        h2 = hilb2_model(x);
        return "ranks " + ranks_str(h2.ranks);
    }));
    if (!out.back().pass) return out;
    for (auto& c : oracle_checks(x, "hilb2", h2.ranks)) out.push_back(c);

    out.push_back(run_check("blowup-rank-identity", [&] {
        const BlowupModel& bl = h2.bl;
        for (int k = 0; k <= bl.total->top(); ++k) {
            int expectv = x.square->rank(k);
            for (int j = 0; j <= x.dim - 2; ++j)
                if (k - j - 1 >= 0 && k - j - 1 <= x.dim) expectv += x.model->rank(k - j - 1);
            expect(bl.total->rank(k) == expectv,
                   "blowup rank mismatch in degree " + std::to_string(k));
        }
        return ranks_str(h2.bl.total->rank_table());
    }));

    out.push_back(run_check("pi-star-section", [&] {
        const BlowupModel& bl = h2.bl;
        for (int k = 0; k <= x.square->top(); ++k) {
            QMat comp = mat_mul(bl.pi_star.mat(k), bl.pi_pull.mat(k));
            QMat id(x.square->rank(k), QVec(x.square->rank(k), Rational(0)));
            for (int i = 0; i < x.square->rank(k); ++i) id[i][i] = 1;
            expect(mat_eq(comp, id), "pi_* pi^* != id in degree " + std::to_string(k));
        }
        return std::string();
    }));

    NestedModel nm;
    out.push_back(run_check("nested-stage", [&] {
        nm = nested_model(x, cfg);
        return "W ranks " + ranks_str(nm.w.rank_table());
    }));
    if (!out.back().pass) return out;  // nothing else is computable

    out.push_back(run_check("relations-normal-form-zero", [&] {
        std::mt19937_64 rng(23);
        for (const auto& rel : nm.ambient->pres().relations) {
            expect(nm.ambient->normal_form(rel).is_zero(),
                   "relation does not normal-form to zero: " + rel.str());
            int dr = rel.degree();
            if (dr < nm.ambient->top()) {
                int k = nm.ambient->top() - dr;
                std::uniform_int_distribution<int> pick(0, nm.ambient->rank(k) - 1);
                Poly b = nm.ambient->basis_poly(k, pick(rng));
                expect(nm.ambient->normal_form(rel * b).is_zero(),
                       "relation times a basis class is nonzero");
            }
        }
        return std::to_string(nm.ambient->pres().relations.size()) + " relations";
    }));

    out.push_back(run_check("nested-bookkeeping", [&] {
        // ranks(W) = ranks(X) * ranks(Hilb2) + sum_j ranks(Z2) shifted by j
        RankTable expected = conv(x.model->rank_table(), h2.ranks);
        expected.resize(3 * x.dim + 1, 0);
        RankTable z2t = nm.rmodel->rank_table();
        for (int j = 1; j <= x.dim - 1; ++j)
            for (size_t k = 0; k < z2t.size(); ++k)
                if (k + j < expected.size()) expected[k + j] += z2t[k];
        expect(nm.w.rank_table() == expected,
               "expected " + ranks_str(expected) + ", got " + ranks_str(nm.w.rank_table()));
        return ranks_str(expected);
    }));

    out.push_back(run_check("pi-ledger", [&] {
        const RingPtr& r = nm.ambient->ring();
        Poly e = Poly::generator(r, nm.e_index);
        Poly f = Poly::generator(r, nm.f_index);
        auto nf = [&](const Poly& p) { return nm.ambient->normal_form(p); };
        expect(pushpull(nm, Poly(r, 1)) == nf(Poly(r, 3)), "Pi(1) != 3");
        expect(pushpull(nm, e) == nf(e + f), "Pi(e) != e+f");
        expect(pushpull(nm, f) == nf(rat(2) * e + rat(2) * f), "Pi(f) != 2e+2f");
        expect(pushpull(nm, e * f) == nf(rat(3) * e * f), "Pi(ef) != 3ef");
        expect(pushpull(nm, f * f) == nf(rat(2) * e * e + rat(2) * f * f + e * f),
               "Pi(f^2) != 2e^2+2f^2+ef");
        expect(pushpull(nm, e * e) == nf(e * e + f * f - e * f),
               "Pi(e^2) != e^2+f^2-ef");
        return std::string();
    }));

    out.push_back(run_check("pi-projector", [&] {
        for (int k = 0; k <= 3 * x.dim; ++k) {
            QMat m = pi_on_w(nm, k);
            expect(mat_eq(mat_mul(m, m), mat_scale(m, rat(3))),
                   "Pi^2 != 3 Pi in degree " + std::to_string(k));
        }
        return std::string();
    }));

    Hilb3Model h3;
    out.push_back(run_check("image-equals-closure", [&] {
        h3 = hilb3_model(nm);
        return "ranks " + ranks_str(h3.ranks);
    }));
    if (!out.back().pass) return out;
    for (auto& c : oracle_checks(x, "hilb3", h3.ranks)) out.push_back(c);

    out.push_back(run_check("pi-eigenvalue-generators", [&] {
        std::mt19937_64 rng(29);
        for (const auto& g : h3.generators) {
            Poly nf = nm.ambient->normal_form(g);
            expect(pushpull(nm, nf) == nm.ambient->normal_form(nf * rat(3)),
                   "Pi(g) != 3g for generator " + nf.str());
        }
        std::uniform_int_distribution<size_t> pick(0, h3.generators.size() - 1);
        int done = 0;
        while (done < 20) {
            Poly p = nm.ambient->normal_form(h3.generators[pick(rng)] *
                                             h3.generators[pick(rng)]);
            if (p.is_zero()) continue;
            expect(pushpull(nm, p) == nm.ambient->normal_form(p * rat(3)),
                   "Pi(p) != 3p for a random product");
            ++done;
        }
        return std::string();
    }));

    if (x.dim == 1) {
        out.push_back(run_check("curve-coherence", [&] {
            CurveCoherence cc = curve_coherence(nm);
            expect(cc.agree, "SYM route " + cc.sym_route.str() + " vs rule route " +
                                 cc.rule_route.str());
            return std::string();
        }));
        out.push_back(run_check("curve-coherence-half-diverges", [&] {
            PipelineConfig half = cfg;
            half.rel3_half = true;
            NestedModel nh = nested_model(x, half);
            CurveCoherence cc = curve_coherence(nh);
            expect(!cc.agree, "the literal 1/2 constant unexpectedly agrees");
            return std::string();
        }));
    }
    return out;
}

}  // namespace hilbchow
