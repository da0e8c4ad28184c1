#include "hilbchow/pipeline.hpp"

#include <algorithm>
#include <array>

#include "hilbchow/errors.hpp"

namespace hilbchow {

Hilb2Model hilb2_model(const VarietyData& x) {
    if (x.dim < 1) throw StructureError("dimension must be >= 1");
    validate_variety(x);
    Hilb2Model h2;
    h2.x = x;
    // collapse map A*(X x X) -> A*(X)
    std::vector<Poly> images;
    for (const auto& g : x.square->ring()->gens)
        images.push_back(Poly::generator(x.model->ring(), x.model->ring()->index_of(g.name)));
    GradedLinearMap collapse = induced_map(x.square, x.model, images);
    ChernVector n{x.chern};
    h2.bl = blowup(x.square, collapse, n, x.diagonal);
    std::vector<int> swap01 = slot_permutation(h2.bl.total->ring(), {1, 0});
    PermutationAction act(h2.bl.total, {swap01});
    h2.invariants = act.invariant_subspace();
    h2.ranks = h2.invariants.rank_table();
    return h2;
}

std::vector<Poly> z2_normal_chern(const VarietyData& x, const Poly& e, int sign) {
    const RingPtr& r = e.ring();
    Poly total(r);
    for (int j = 0; j <= x.dim; ++j) total += place_in_slot(x.chern[j], 0, r);
    Poly se = e * rat(sign);
    // (1 - 2e) * (1 + e + e^2 + ...) truncated at degree dim
    Poly series = Poly(r, 1) - rat(2) * se;
    Poly geom(r, 1);
    Poly epow(r, 1);
    for (int i = 1; i <= x.dim; ++i) {
        epow = epow * se;
        geom += epow;
    }
    Poly prod = total * series * geom;
    std::vector<Poly> out;
    for (int j = 0; j <= x.dim; ++j) out.push_back(prod.component(j));
    return out;
}

namespace {

// Index bookkeeping for the three slot copies plus e, f.
struct SlotIndex {
    int ngen = 0;                         // generators of A*(X)
    std::vector<std::array<int, 3>> amb;  // amb[i][s]: ambient index, slot s
    std::vector<int> r_u, r_v;            // rmodel indices in slots 1, 2
    int e_idx = -1, f_idx = -1;           // ambient
    int r_e_idx = -1;                     // rmodel exceptional (-1 if decomposable)
};

SlotIndex make_index(const VarietyData& x, const RingPtr& ambient, const RingPtr& rring,
                     bool r_e_is_gen) {
    SlotIndex si;
    si.ngen = x.model->ring()->size();
    si.amb.resize(si.ngen);
    si.r_u.resize(si.ngen);
    si.r_v.resize(si.ngen);
    for (int i = 0; i < si.ngen; ++i) {
        const std::string& n = x.model->ring()->gens[i].name;
        for (int s = 0; s < 3; ++s) si.amb[i][s] = ambient->index_of(n + std::to_string(s));
        si.r_u[i] = rring->index_of(n + "1");
        si.r_v[i] = rring->index_of(n + "2");
    }
    si.e_idx = ambient->index_of("e");
    si.f_idx = ambient->index_of("f");
    if (r_e_is_gen) si.r_e_idx = rring->size() - 1;
    return si;
}

}  // namespace

NestedModel nested_model(const VarietyData& x, const PipelineConfig& cfg) {
    if (x.dim < 1) throw StructureError("dimension must be >= 1");
    validate_variety(x);
    NestedModel nm;
    nm.x = x;
    nm.cfg = cfg;
    nm.dim = x.dim;
    const int d = x.dim;
    const int top = 3 * d;
    const int ngen = x.model->ring()->size();

    // A*(X)^{(x)3} with slots 0,1,2
    RingPresentation cube_pres = kunneth_power(x, 3);
    nm.cube = make_model(cube_pres);

    // e-stage scaffold B: slots + e, relations rel1 and rel2
    std::vector<GenSym> bgens = cube_pres.ring->gens;
    bgens.push_back(GenSym{"e", std::nullopt, 1});
    RingPresentation bpres;
    bpres.ring = make_ring(bgens);
    bpres.top_degree = top;
    bpres.name = x.name + "-nested-e";
    std::vector<Poly> binc;
    for (int i = 0; i < cube_pres.ring->size(); ++i)
        binc.push_back(Poly::generator(bpres.ring, i));
    for (const auto& r : cube_pres.relations)
        bpres.relations.push_back(r.substitute(bpres.ring, binc));
    Poly be = Poly::generator(bpres.ring, bpres.ring->index_of("e"));
    for (int i = 0; i < ngen; ++i) {
        const std::string& n = x.model->ring()->gens[i].name;
        Poly g1 = Poly::generator(bpres.ring, bpres.ring->index_of(n + "1"));
        Poly g2 = Poly::generator(bpres.ring, bpres.ring->index_of(n + "2"));
        bpres.relations.push_back((g1 - g2) * be);
    }
    Poly brel2 = be.pow(d);
    for (int j = 1; j <= d - 1; ++j)
        brel2 += place_in_slot(x.chern[d - j], 1, bpres.ring) * be.pow(j);
    brel2 += place_pair(x.diagonal, 1, 2, bpres.ring) * rat(d % 2 == 0 ? 1 : -1);
    bpres.relations.push_back(brel2);
    nm.bmodel = make_model(bpres);

    // A*(Z_2) as the blowup of the (1,2)-slot square along its diagonal
    RingPresentation sq12;
    {
        std::vector<GenSym> gens;
        for (int s = 1; s <= 2; ++s)
            for (int i = 0; i < ngen; ++i) {
                GenSym g = x.model->ring()->gens[i];
                g.slot = s;
                gens.push_back(g);
            }
        sq12.ring = make_ring(gens);
        sq12.top_degree = 2 * d;
        sq12.name = x.name + "-z2-base";
        for (int s = 1; s <= 2; ++s)
            for (const auto& r : x.model->pres().relations)
                sq12.relations.push_back(place_in_slot(r, s, sq12.ring));
    }
    ModelPtr sq12_model = make_model(sq12);
    std::vector<Poly> collapse_images;
    for (const auto& g : sq12.ring->gens)
        collapse_images.push_back(
            Poly::generator(x.model->ring(), x.model->ring()->index_of(g.name)));
    GradedLinearMap collapse12 = induced_map(sq12_model, x.model, collapse_images);
    BlowupModel z2 = blowup(sq12_model, collapse12, ChernVector{x.chern},
                            place_pair(x.diagonal, 1, 2, sq12.ring));
    nm.rmodel = z2.total;
    nm.r_e_is_gen = z2.e_is_generator;
    nm.r_e_class = z2.e_class;

    // restriction to Z_2: slots 0,1 -> slot 1, slot 2 -> slot 2, e -> e_{Z_2}
    {
        std::vector<Poly> images;
        for (const auto& g : bpres.ring->gens) {
            if (!g.slot) break;  // e is last
            int s = *g.slot == 2 ? 2 : 1;
            images.push_back(Poly::generator(
                nm.rmodel->ring(), nm.rmodel->ring()->index_of(g.name + std::to_string(s))));
        }
        images.push_back(nm.r_e_is_gen
                             ? Poly::generator(nm.rmodel->ring(), nm.rmodel->ring()->size() - 1)
                             : nm.r_e_class);
        nm.restrict_z2 = induced_map(nm.bmodel, nm.rmodel, images);
    }

    // rel0 family I_{Z_2*}: per-degree basis of ker(restrict_z2) within the
    // S_2(1,2)-invariant part of the e-stage scaffold
    PermutationAction bswap(nm.bmodel, {slot_permutation(bpres.ring, {0, 2, 1})});
    GradedSubspace binv = bswap.invariant_subspace();
    std::vector<Poly> rel0_family;
    for (int k = 1; k <= top - 1; ++k) {
        const Echelon& inv = binv.span(k);
        if (inv.rank() == 0) continue;
        int kr = k <= nm.rmodel->top() ? nm.rmodel->rank(k) : 0;
        QMat m(kr, QVec(inv.rank(), Rational(0)));
        if (kr > 0) {
            const QMat& jm = nm.restrict_z2.mat(k);
            for (int j = 0; j < inv.rank(); ++j) {
                QVec img = mat_apply(jm, inv.rows()[j]);
                for (int i = 0; i < kr; ++i) m[i][j] = img[i];
            }
        }
        for (const auto& coeff : kernel_basis(m, inv.rank())) {
            Poly p(bpres.ring);
            for (int j = 0; j < inv.rank(); ++j)
                if (coeff[j] != 0) p += nm.bmodel->from_coords(k, inv.rows()[j]) * coeff[j];
            if (!p.is_zero()) rel0_family.push_back(p);
        }
    }

    // ambient T/J: B plus f, relations I_{Z_2*} . f and rel3
    std::vector<GenSym> agens = bgens;
    agens.push_back(GenSym{"f", std::nullopt, 1});
    RingPresentation apres;
    apres.ring = make_ring(agens);
    apres.top_degree = top;
    apres.name = x.name + "-nested";
    std::vector<Poly> ainc;
    for (int i = 0; i < bpres.ring->size(); ++i)
        ainc.push_back(Poly::generator(apres.ring, i));
    for (const auto& r : bpres.relations)
        apres.relations.push_back(r.substitute(apres.ring, ainc));
    Poly ae = Poly::generator(apres.ring, apres.ring->index_of("e"));
    Poly af = Poly::generator(apres.ring, apres.ring->index_of("f"));
    for (const auto& r : rel0_family)
        apres.relations.push_back(r.substitute(apres.ring, ainc) * af);
    nm.chernN = z2_normal_chern(x, ae, cfg.eqcz_sign);
    Poly rel3 = af.pow(d);
    for (int j = 1; j <= d - 1; ++j) rel3 += nm.chernN[d - j] * af.pow(j);
    Poly zclass = place_pair(x.diagonal, 0, 1, apres.ring) +
                  place_pair(x.diagonal, 0, 2, apres.ring);
    rel3 += zclass * rat(d % 2 == 0 ? 1 : -1) * (cfg.rel3_half ? rat(1, 2) : rat(1));
    apres.relations.push_back(rel3);
    nm.rel3 = rel3;
    nm.rel2 = brel2.substitute(apres.ring, ainc);
    nm.ambient = make_model(apres);
    nm.e_index = apres.ring->index_of("e");
    nm.f_index = apres.ring->index_of("f");
    nm.e_class = nm.ambient->normal_form(ae);
    nm.f_class = nm.ambient->normal_form(af);

    // W: closure of the symmetric slot classes, e, f, (1(x)g(x)1)e, (g(x)1(x)1)f
    PermutationAction cswap(nm.cube, {slot_permutation(nm.cube->ring(), {0, 2, 1})});
    GradedSubspace cinv = cswap.invariant_subspace();
    std::vector<Poly> wgens;
    for (int k = 1; k <= top; ++k)
        for (const auto& p : cinv.basis_polys(k)) wgens.push_back(p.transport(apres.ring));
    wgens.push_back(ae);
    wgens.push_back(af);
    for (int i = 0; i < ngen; ++i) {
        const std::string& n = x.model->ring()->gens[i].name;
        wgens.push_back(Poly::generator(apres.ring, apres.ring->index_of(n + "1")) * ae);
        wgens.push_back(Poly::generator(apres.ring, apres.ring->index_of(n + "0")) * af);
    }
    nm.w_generators = wgens;
    nm.w = subalgebra_closure(nm.ambient, wgens);

    // push-pull operator matrices
    SlotIndex si = make_index(x, apres.ring, nm.rmodel->ring(), nm.r_e_is_gen);
    nm.tags.resize(top + 1);
    nm.pi_mats.resize(top + 1);
    std::vector<int> perm01 = slot_permutation(apres.ring, {1, 0, 2});
    std::vector<int> perm02 = slot_permutation(apres.ring, {2, 1, 0});

    auto move2to1 = [&](Monomial m) {
        for (int i = 0; i < si.ngen; ++i) {
            m[si.amb[i][1]] += m[si.amb[i][2]];
            m[si.amb[i][2]] = 0;
        }
        return m;
    };
    auto collapse1 = [&](const Monomial& m) {
        Monomial out(apres.ring->size(), 0);
        for (int i = 0; i < si.ngen; ++i)
            out[si.amb[i][1]] = m[si.amb[i][0]] + m[si.amb[i][1]] + m[si.amb[i][2]];
        return out;
    };
    auto j1_read = [&](const Monomial& m) {
        Monomial rm(nm.rmodel->ring()->size(), 0);
        for (int i = 0; i < si.ngen; ++i) {
            rm[si.r_u[i]] = m[si.amb[i][0]] + m[si.amb[i][1]];
            rm[si.r_v[i]] = m[si.amb[i][2]];
        }
        return nm.rmodel->normal_form(Poly::monomial(nm.rmodel->ring(), rm, 1));
    };
    auto swap_read = [&](const Monomial& m01) {
        // slots (x_0, diag) of an e-stage coefficient read as Z_2 data:
        // diag -> doubled point u, x_0 -> residual point v
        Monomial rm(nm.rmodel->ring()->size(), 0);
        for (int i = 0; i < si.ngen; ++i) {
            rm[si.r_u[i]] = m01[si.amb[i][1]];
            rm[si.r_v[i]] = m01[si.amb[i][0]];
        }
        return nm.rmodel->normal_form(Poly::monomial(nm.rmodel->ring(), rm, 1));
    };
    // canonical section of the restriction: u -> slot 0, v -> slot1+slot2-slot0
    auto sigma_lift = [&](const Poly& r) {
        Poly out(apres.ring);
        for (auto& [rm, c] : r.terms()) {
            Poly t(apres.ring, c);
            for (int i = 0; i < si.ngen; ++i) {
                if (rm[si.r_u[i]] > 0)
                    t = t * Poly::generator(apres.ring, si.amb[i][0], rm[si.r_u[i]]);
                if (rm[si.r_v[i]] > 0) {
                    Poly vlift = Poly::generator(apres.ring, si.amb[i][1]) +
                                 Poly::generator(apres.ring, si.amb[i][2]) -
                                 Poly::generator(apres.ring, si.amb[i][0]);
                    t = t * vlift.pow(rm[si.r_v[i]]);
                }
            }
            if (si.r_e_idx >= 0 && rm[si.r_e_idx] > 0)
                t = t * ae.pow(rm[si.r_e_idx]);
            out += t;
        }
        return out;
    };
    // placement of a Z_2 class on e-multiples: u -> diag slot, v -> x_0 slot
    auto phi_place = [&](const Poly& r) {
        Poly out(apres.ring);
        for (auto& [rm, c] : r.terms()) {
            Monomial t(apres.ring->size(), 0);
            for (int i = 0; i < si.ngen; ++i) {
                t[si.amb[i][1]] += rm[si.r_u[i]];
                t[si.amb[i][0]] += rm[si.r_v[i]];
            }
            if (si.r_e_idx >= 0 && rm[si.r_e_idx] > 0) t[si.e_idx] += rm[si.r_e_idx];
            out.add_term(t, c);
        }
        return out;
    };
    auto collapse_uv = [&](const Poly& r) {
        Poly out(apres.ring);
        for (auto& [rm, c] : r.terms()) {
            if (si.r_e_idx >= 0 && rm[si.r_e_idx] > 0)
                throw MathError(
                    "push-pull: unexpected exceptional content in a Z_2 coefficient");
            Monomial t(apres.ring->size(), 0);
            for (int i = 0; i < si.ngen; ++i)
                t[si.amb[i][1]] = rm[si.r_u[i]] + rm[si.r_v[i]];
            out.add_term(t, c);
        }
        return out;
    };
    auto ef_tail = [&](int l) {
        // sum_{i=1}^{l-1} e^i f^{l-i}
        Poly s(apres.ring);
        for (int i = 1; i <= l - 1; ++i) s += ae.pow(i) * af.pow(l - i);
        return s;
    };

    for (int k = 0; k <= top; ++k) {
        int rk = nm.ambient->rank(k);
        nm.tags[k].resize(rk);
        QMat pm(rk, QVec(rk, Rational(0)));
        for (int j = 0; j < rk; ++j) {
            const Monomial& mono =
                nm.ambient->basis(k).monomials[nm.ambient->basis(k).basis[j]];
            int a = mono[si.e_idx], b = mono[si.f_idx];
            Monomial s = mono;
            s[si.e_idx] = 0;
            s[si.f_idx] = 0;
            Poly out(apres.ring);
            if (a == 0 && b == 0) {
                nm.tags[k][j] = MonoType::SYM;
                Poly p = Poly::monomial(apres.ring, s, 1);
                out = p + p.permute(perm01) + p.permute(perm02);
            } else if (a > 0 && b == 0) {
                nm.tags[k][j] = MonoType::E_ONLY;
                Monomial m1 = move2to1(s);
                out = Poly::monomial(apres.ring, m1, 1) * ae.pow(a);
                out += sigma_lift(swap_read(m1)) * af.pow(a);
                if (a >= 2)
                    out -= Poly::monomial(apres.ring, collapse1(m1), 1) * ef_tail(a);
            } else if (a == 0 && b > 0) {
                nm.tags[k][j] = MonoType::F_ONLY;
                Poly r = j1_read(s);
                out = rat(2) * phi_place(r) * ae.pow(b) + rat(2) * sigma_lift(r) * af.pow(b);
                if (b >= 2) out += collapse_uv(r) * ef_tail(b);
            } else {
                nm.tags[k][j] = MonoType::MIXED;
                Poly m0 = Poly::monomial(apres.ring, collapse1(s), 1);
                int lo = std::min(a, b);
                Poly ef = (ae * af).pow(lo);
                if (a == b) {
                    out = rat(3) * m0 * ef;
                } else if (b > a) {
                    int l = b - a;
                    out = m0 * ef * (rat(2) * ae.pow(l) + rat(2) * af.pow(l) + ef_tail(l));
                } else {
                    int l = a - b;
                    out = m0 * ef * (ae.pow(l) + af.pow(l) - ef_tail(l));
                }
            }
            QVec col = nm.ambient->coords(nm.ambient->normal_form(out), k);
            for (int i = 0; i < rk; ++i) pm[i][j] = col[i];
        }
        nm.pi_mats[k] = std::move(pm);
    }
    return nm;
}

Poly pushpull_raw(const NestedModel& nm, const Monomial& mono) {
    int k = mono_degree(*nm.ambient->ring(), mono);
    const DegreeBasis& db = nm.ambient->basis(k);
    auto it = db.basis_pos.find(mono);
    if (it == db.basis_pos.end())
        throw StructureError("pushpull_raw: not a basis monomial");
    QVec v(nm.ambient->rank(k), Rational(0));
    v[it->second] = 1;
    return nm.ambient->from_coords(k, mat_apply(nm.pi_mats[k], v));
}

Poly pushpull(const NestedModel& nm, const Poly& c) {
    Poly nf = nm.ambient->normal_form(c);
    Poly out(nm.ambient->ring());
    for (auto& [k, comp] : nf.homogeneous_components()) {
        QVec v = nm.ambient->coords(comp, k);
        if (!nm.w.contains(k, v))
            throw MathError("not a nested-Hilbert class: degree " + std::to_string(k) +
                            " component " + comp.str() + " is outside W");
        out += nm.ambient->from_coords(k, mat_apply(nm.pi_mats[k], v));
    }
    return out;
}

Poly sym_orbit_route(const NestedModel& nm, const Poly& slot_class) {
    Poly nf = nm.ambient->normal_form(slot_class);
    for (auto& [m, c] : nf.terms())
        if (m[nm.e_index] != 0 || m[nm.f_index] != 0)
            throw StructureError("sym_orbit_route: class is not e,f-free");
    std::vector<int> perm01 = slot_permutation(nm.ambient->ring(), {1, 0, 2});
    std::vector<int> perm02 = slot_permutation(nm.ambient->ring(), {2, 1, 0});
    return nm.ambient->normal_form(nf + nf.permute(perm01) + nf.permute(perm02));
}

QMat pi_on_w(const NestedModel& nm, int k) {
    const Echelon& span = nm.w.span(k);
    int r = span.rank();
    QMat m(r, QVec(r, Rational(0)));
    for (int j = 0; j < r; ++j) {
        QVec img = mat_apply(nm.pi_mats[k], span.rows()[j]);
        if (!span.contains(img))
            throw MathError("Pi does not preserve W in degree " + std::to_string(k));
        // W-coordinates: entries at the span's pivot columns
        for (int i = 0; i < r; ++i) m[i][j] = img[span.pivots()[i]];
    }
    return m;
}

CurveCoherence curve_coherence(const NestedModel& nm) {
    if (nm.dim != 1) throw StructureError("curve_coherence: input is not a curve");
    CurveCoherence cc;
    // rule (iii) with m = 1, k = 1 reads off e + f
    cc.rule_route =
        nm.ambient->normal_form(Poly::generator(nm.ambient->ring(), nm.e_index) +
                                Poly::generator(nm.ambient->ring(), nm.f_index));
    cc.sym_route = sym_orbit_route(nm, nm.e_class);
    cc.agree = cc.sym_route == cc.rule_route;
    return cc;
}

Hilb3Model hilb3_model(const NestedModel& nm) {
    const int top = 3 * nm.dim;
    // (a) image of Pi on W
    GradedSubspace image(nm.ambient);
    for (int k = 0; k <= top; ++k) {
        for (const auto& row : nm.w.span(k).rows()) {
            QVec img = mat_apply(nm.pi_mats[k], row);
            if (!nm.w.contains(k, img))
                throw MathError("Pi does not preserve W in degree " + std::to_string(k));
            image.insert(k, img);
        }
    }
    // (b) closure of the Hilb3 generator set
    Hilb3Model h3;
    PermutationAction s3(nm.cube, {slot_permutation(nm.cube->ring(), {1, 0, 2}),
                                   slot_permutation(nm.cube->ring(), {0, 2, 1})});
    GradedSubspace inv3 = s3.invariant_subspace();
    std::vector<Poly> gens;
    for (int k = 1; k <= top; ++k)
        for (const auto& p : inv3.basis_polys(k)) gens.push_back(p.transport(nm.ambient->ring()));
    Poly e = Poly::generator(nm.ambient->ring(), nm.e_index);
    Poly f = Poly::generator(nm.ambient->ring(), nm.f_index);
    gens.push_back(e + f);
    gens.push_back(e * f);
    for (int i = 0; i < nm.x.model->ring()->size(); ++i) {
        const std::string& n = nm.x.model->ring()->gens[i].name;
        Poly g1 = Poly::generator(nm.ambient->ring(), nm.ambient->ring()->index_of(n + "1"));
        Poly g0 = Poly::generator(nm.ambient->ring(), nm.ambient->ring()->index_of(n + "0"));
        gens.push_back(g1 * e + g0 * f);
    }
    h3.generators = gens;
    GradedSubspace closure = subalgebra_closure(nm.ambient, gens);

    for (int k = 0; k <= top; ++k) {
        bool ok = image.rank(k) == closure.rank(k);
        if (ok) {
            for (const auto& row : closure.span(k).rows())
                if (!image.contains(k, row)) {
                    ok = false;
                    break;
                }
        }
        if (!ok) {
            std::string witness;
            for (const auto& row : closure.span(k).rows())
                if (!image.contains(k, row)) {
                    witness = nm.ambient->from_coords(k, row).str();
                    break;
                }
            if (witness.empty())
                for (const auto& row : image.span(k).rows())
                    if (!closure.contains(k, row)) {
                        witness = nm.ambient->from_coords(k, row).str();
                        break;
                    }
            throw MathError("Hilb3 image/closure mismatch in degree " + std::to_string(k) +
                            ": image rank " + std::to_string(image.rank(k)) +
                            ", closure rank " + std::to_string(closure.rank(k)) +
                            ", witness " + witness);
        }
    }
    h3.sub = closure;
    h3.ranks = closure.rank_table();
    return h3;
}

RingPresentation extract_presentation(
    const NestedModel& nm, const Hilb3Model& h3,
    const std::vector<std::pair<std::string, Poly>>& chosen) {
    const int top = 3 * nm.dim;
    std::vector<GenSym> gens;
    std::vector<Poly> classes;
    for (const auto& [name, cls] : chosen) {
        Poly nf = nm.ambient->normal_form(cls);
        if (nf.is_zero() || nf.degree() == 0) continue;  // constants are redundant
        if (!nf.is_homogeneous())
            throw StructureError("extract_presentation: generator " + name +
                                 " is not homogeneous");
        if (!h3.sub.contains(nf))
            throw StructureError("extract_presentation: generator " + name +
                                 " is not a Hilb3 class");
        gens.push_back(GenSym{name, std::nullopt, nf.degree()});
        classes.push_back(nf);
    }
    RingPresentation free_pres{make_ring(gens), {}, top, "hilb3-presentation"};
    ModelPtr free_model = make_model(free_pres);  // no relations: plain monomial basis

    RingPresentation out = free_pres;
    std::vector<std::vector<Monomial>> monos(top + 1);
    std::vector<std::map<Monomial, int>> cols(top + 1);
    std::vector<Echelon> consequences(top + 1);
    for (int k = 0; k <= top; ++k) {
        monos[k] = free_model->monomials_of_degree(k);
        consequences[k] = Echelon(static_cast<int>(monos[k].size()));
        for (int j = 0; j < static_cast<int>(monos[k].size()); ++j)
            cols[k].emplace(monos[k][j], j);
    }
    auto poly_to_vec = [&](const Poly& p, int k) {
        QVec v(monos[k].size(), Rational(0));
        for (auto& [m, c] : p.terms()) v[cols[k].at(m)] += c;
        return v;
    };

    for (int k = 1; k <= top; ++k) {
        int nmono = static_cast<int>(monos[k].size());
        const Echelon& span = h3.sub.span(k);
        QMat m(span.rank(), QVec(nmono, Rational(0)));
        for (int j = 0; j < nmono; ++j) {
            Poly val(nm.ambient->ring(), 1);
            for (size_t i = 0; i < classes.size(); ++i)
                if (monos[k][j][i] > 0) val = val * classes[i].pow(monos[k][j][i]);
            val = nm.ambient->normal_form(val);
            if (val.is_zero()) continue;
            QVec av = nm.ambient->coords(val, k);
            if (!span.contains(av))
                throw MathError("extract_presentation: product left the subring");
            for (int i = 0; i < span.rank(); ++i) m[i][j] = av[span.pivots()[i]];
        }
        Echelon imgspan(span.rank());
        for (int j = 0; j < nmono; ++j) {
            QVec col(span.rank());
            for (int i = 0; i < span.rank(); ++i) col[i] = m[i][j];
            imgspan.insert(col);
        }
        if (imgspan.rank() != h3.ranks[k])
            throw MathError("generators insufficient: first failing degree " +
                            std::to_string(k));
        // consequences of the relations found so far
        for (const auto& rel : out.relations) {
            int dr = rel.degree();
            if (dr > k) continue;
            for (const auto& mm : monos[k - dr])
                consequences[k].insert(
                    poly_to_vec(rel * Poly::monomial(free_pres.ring, mm, 1), k));
        }
        for (const auto& kv : kernel_basis(m, nmono)) {
            if (consequences[k].contains(kv)) continue;
            Poly rel(free_pres.ring);
            for (int j = 0; j < nmono; ++j)
                if (kv[j] != 0) rel.add_term(monos[k][j], kv[j]);
            out.relations.push_back(rel);
            consequences[k].insert(kv);
        }
    }
    return out;
}

std::vector<std::pair<std::string, Poly>> default_presentation_generators(
    const NestedModel& nm, const Hilb3Model& h3) {
    // greedy pruning: keep a generator only if it is not in the closure of
    // the ones kept so far
    std::vector<Poly> pool;
    for (const auto& g : h3.generators) {
        Poly nf = nm.ambient->normal_form(g);
        if (!nf.is_zero() && nf.degree() >= 1) pool.push_back(nf);
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
    std::vector<std::pair<std::string, Poly>> kept;
    std::vector<Poly> kept_classes;
    for (const auto& cand : pool) {
        GradedSubspace cur = subalgebra_closure(nm.ambient, kept_classes);
        if (cur.contains(cand)) continue;
        kept_classes.push_back(cand);
        kept.emplace_back("G" + std::to_string(kept.size() + 1), cand);
    }
    return kept;
}

}  // namespace hilbchow
