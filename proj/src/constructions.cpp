#include "hilbchow/constructions.hpp"

#include <algorithm>

#include "hilbchow/errors.hpp"

namespace hilbchow {

void ChernVector::validate() const {
    if (c.empty()) throw StructureError("empty Chern vector");
    if (!(c[0] == Poly(c[0].ring(), 1)))
        throw StructureError("Chern vector must start with 1");
    for (size_t j = 1; j < c.size(); ++j) {
        if (c[j].is_zero()) continue;
        if (!c[j].is_homogeneous() || c[j].degree() != static_cast<int>(j))
            throw StructureError("inhomogeneous Chern entry c_" + std::to_string(j) +
                                 " = " + c[j].str());
    }
}

Poly place_in_slot(const Poly& p, int slot, const RingPtr& target) {
    const RingPtr& src = p.ring();
    std::vector<int> idx(src->size());
    for (int i = 0; i < src->size(); ++i) {
        const GenSym& g = src->gens[i];
        idx[i] = target->index_of(g.name + std::to_string(slot));
        if (idx[i] < 0)
            throw StructureError("place_in_slot: no generator " + g.name +
                                 std::to_string(slot) + " in target");
    }
    Poly out(target);
    for (auto& [m, c] : p.terms()) {
        Monomial tm(target->size(), 0);
        for (size_t i = 0; i < m.size(); ++i) tm[idx[i]] += m[i];
        out.add_term(tm, c);
    }
    return out;
}

Poly place_pair(const Poly& p, int slot_i, int slot_j, const RingPtr& target) {
    const RingPtr& src = p.ring();
    std::vector<int> idx(src->size());
    for (int i = 0; i < src->size(); ++i) {
        const GenSym& g = src->gens[i];
        if (!g.slot || (*g.slot != 0 && *g.slot != 1))
            throw StructureError("place_pair: source is not a two-slot ring");
        int s = *g.slot == 0 ? slot_i : slot_j;
        idx[i] = target->index_of(g.name + std::to_string(s));
        if (idx[i] < 0)
            throw StructureError("place_pair: no generator " + g.name +
                                 std::to_string(s) + " in target");
    }
    Poly out(target);
    for (auto& [m, c] : p.terms()) {
        Monomial tm(target->size(), 0);
        for (size_t i = 0; i < m.size(); ++i) tm[idx[i]] += m[i];
        out.add_term(tm, c);
    }
    return out;
}

namespace {

// Slot-assign one factor's generators, starting at next_slot.
std::vector<GenSym> assign_slots(const std::vector<GenSym>& gens, int& next_slot) {
    std::vector<GenSym> out = gens;
    bool any_slotted = std::any_of(gens.begin(), gens.end(),
                                   [](const GenSym& g) { return g.slot.has_value(); });
    if (any_slotted) {
        int maxs = next_slot - 1;
        for (auto& g : out) {
            if (!g.slot) throw StructureError("kunneth: mixed slotted/slotless factor");
            maxs = std::max(maxs, *g.slot);
        }
        next_slot = maxs + 1;
    } else {
        for (auto& g : out) g.slot = next_slot;
        ++next_slot;
    }
    return out;
}

}  // namespace

RingPresentation kunneth_product(const RingPresentation& a,
                                 const RingPresentation& b) {
    int next_slot = 0;
    std::vector<GenSym> ga = assign_slots(a.ring->gens, next_slot);
    std::vector<GenSym> gb = assign_slots(b.ring->gens, next_slot);
    std::vector<GenSym> gens = ga;
    for (auto& g : gb) {
        for (auto& h : gens)
            if (g.name == h.name && g.slot == h.slot)
                throw StructureError("kunneth: slot collision on " + g.display());
        gens.push_back(g);
    }
    RingPresentation out;
    out.ring = make_ring(gens);
    out.top_degree = a.top_degree + b.top_degree;
    out.name = a.name + "x" + b.name;
    int na = a.ring->size();
    std::vector<Poly> ia, ib;
    for (int i = 0; i < na; ++i) ia.push_back(Poly::generator(out.ring, i));
    for (int i = 0; i < b.ring->size(); ++i)
        ib.push_back(Poly::generator(out.ring, na + i));
    for (const auto& r : a.relations) out.relations.push_back(r.substitute(out.ring, ia));
    for (const auto& r : b.relations) out.relations.push_back(r.substitute(out.ring, ib));
    return out;
}

RingPresentation kunneth_power(const VarietyData& x, int n) {
    RingPresentation acc = x.model->pres();
    for (int i = 1; i < n; ++i) acc = kunneth_product(acc, x.model->pres());
    if (n == 1) {
        // still relabel into slot 0 for uniform placement
        int next = 0;
        auto gens = assign_slots(acc.ring->gens, next);
        RingPresentation out;
        out.ring = make_ring(gens);
        out.top_degree = acc.top_degree;
        out.name = acc.name;
        std::vector<Poly> im;
        for (int i = 0; i < acc.ring->size(); ++i)
            im.push_back(Poly::generator(out.ring, i));
        for (const auto& r : acc.relations)
            out.relations.push_back(r.substitute(out.ring, im));
        return out;
    }
    acc.name = x.name + "^" + std::to_string(n);
    return acc;
}

void validate_diagonal(const VarietyData& x) {
    const ModelPtr& sq = x.square;
    Poly diag = sq->normal_form(x.diagonal);
    for (int i = 0; i < x.model->ring()->size(); ++i) {
        Poly g = Poly::generator(x.model->ring(), i);
        Poly left = place_in_slot(g, 0, sq->ring()) * diag;
        Poly right = place_in_slot(g, 1, sq->ring()) * diag;
        Poly res = sq->normal_form(left - right);
        if (!res.is_zero())
            throw MathError("invalid diagonal: (" + g.str() + " (x) 1) and (1 (x) " +
                            g.str() + ") differ on the diagonal; residual " + res.str());
    }
    // point normalization: the (dim (x) 0)-component is point (x) 1
    Poly comp(sq->ring());
    for (auto& [m, c] : diag.terms()) {
        int slot1_deg = 0;
        for (size_t i = 0; i < m.size(); ++i)
            if (sq->ring()->gens[i].slot == 1)
                slot1_deg += m[i] * sq->ring()->gens[i].degree;
        if (slot1_deg == 0) comp.add_term(m, c);
    }
    Poly expect = sq->normal_form(place_in_slot(x.point_class, 0, sq->ring()));
    if (!(sq->normal_form(comp - expect).is_zero()))
        throw MathError("invalid diagonal: (deg " + std::to_string(x.dim) +
                        " (x) 1)-component is " + comp.str() + ", expected " +
                        expect.str());
}

void validate_variety(const VarietyData& x) {
    if (static_cast<int>(x.chern.size()) != x.dim + 1)
        throw StructureError(x.name + ": chern vector must have dim+1 entries");
    if (!(x.chern[0] == Poly(x.model->ring(), 1)))
        throw StructureError(x.name + ": c_0(T_X) must be 1");
    for (int j = 1; j <= x.dim; ++j) {
        if (x.chern[j].is_zero()) continue;
        if (!x.chern[j].is_homogeneous() || x.chern[j].degree() != j)
            throw StructureError(x.name + ": c_" + std::to_string(j) +
                                 "(T_X) not homogeneous of degree " + std::to_string(j));
    }
    if (x.model->top() != x.dim)
        throw StructureError(x.name + ": top degree != dim");
    if (x.model->rank(x.dim) != 1)
        throw MathError(x.name + ": degree-" + std::to_string(x.dim) +
                        " piece has rank " + std::to_string(x.model->rank(x.dim)) +
                        ", expected 1");
    if (x.dim > 0) {
        if (!x.diagonal.is_homogeneous() || x.diagonal.degree() != x.dim)
            throw StructureError(x.name + ": diagonal not homogeneous of degree dim");
        Poly pt = x.model->normal_form(x.point_class);
        if (pt.is_zero() || !pt.is_homogeneous() || pt.degree() != x.dim)
            throw StructureError(x.name + ": point class not of degree dim");
    }
    validate_diagonal(x);
}

BundleModel projective_bundle(const ModelPtr& y, const ChernVector& n,
                              const std::string& h_name) {
    n.validate();
    int r = n.rank();
    if (r < 1) throw StructureError("projective bundle needs rank >= 1");
    std::string hn = h_name;
    while (y->ring()->index_of(hn) >= 0) hn += "p";
    std::vector<GenSym> gens = y->ring()->gens;
    gens.push_back(GenSym{hn, std::nullopt, 1});
    int hi = static_cast<int>(gens.size()) - 1;

    RingPresentation pres;
    pres.ring = make_ring(gens);
    pres.top_degree = y->top() + r - 1;
    pres.name = "P(N/" + y->pres().name + ")";
    std::vector<Poly> inc;
    for (int i = 0; i < y->ring()->size(); ++i)
        inc.push_back(Poly::generator(pres.ring, i));
    for (const auto& rel : y->pres().relations)
        pres.relations.push_back(rel.substitute(pres.ring, inc));
    Poly h = Poly::generator(pres.ring, hi);
    Poly bundle_rel = h.pow(r);
    for (int j = 1; j <= r; ++j)
        bundle_rel += n.c[j].substitute(pres.ring, inc) * h.pow(r - j);
    pres.relations.push_back(bundle_rel);

    BundleModel bm;
    bm.total = make_model(std::move(pres));
    bm.h_index = hi;

    GradedLinearMap ps;
    ps.source = bm.total;
    ps.target = y;
    ps.shift = -(r - 1);
    ps.mats.resize(bm.total->top() + 1);
    for (int k = 0; k <= bm.total->top(); ++k) {
        int kt = k - (r - 1);
        int rows = (kt >= 0 && kt <= y->top()) ? y->rank(kt) : 0;
        int cols = bm.total->rank(k);
        QMat m(rows, QVec(cols, Rational(0)));
        if (rows > 0) {
            for (int j = 0; j < cols; ++j) {
                const Monomial& mono =
                    bm.total->basis(k).monomials[bm.total->basis(k).basis[j]];
                if (mono[hi] != r - 1) continue;
                Monomial ym(y->ring()->size());
                for (int i = 0; i < y->ring()->size(); ++i) ym[i] = mono[i];
                QVec col = y->coords(Poly::monomial(y->ring(), ym, 1), kt);
                for (int i = 0; i < rows; ++i) m[i][j] = col[i];
            }
        }
        ps.mats[k] = std::move(m);
    }
    bm.p_star = std::move(ps);
    return bm;
}

namespace {

GradedLinearMap identity_map(const ModelPtr& m) {
    GradedLinearMap id;
    id.source = m;
    id.target = m;
    id.shift = 0;
    id.mats.resize(m->top() + 1);
    for (int k = 0; k <= m->top(); ++k) {
        int r = m->rank(k);
        QMat mat(r, QVec(r, Rational(0)));
        for (int i = 0; i < r; ++i) mat[i][i] = 1;
        id.mats[k] = std::move(mat);
    }
    return id;
}

// Solve iota(z) = target class of degree k; echelon back-substitution choice.
Poly iota_preimage(const GradedLinearMap& iota, const Poly& cls, int k) {
    if (k > iota.target->top() || iota.target->normal_form(cls).is_zero())
        return Poly(iota.source->ring());
    QVec b = iota.target->coords(cls, k);
    SolveResult sr = solve(iota.mat(k), iota.source->rank(k), b);
    if (!sr.ok)
        throw MathError("no preimage for " + cls.str() + " in degree " +
                        std::to_string(k));
    return iota.source->from_coords(k, sr.x);
}

}  // namespace

BlowupModel blowup(const ModelPtr& x, const GradedLinearMap& iota_pullback,
                   const ChernVector& normal, const Poly& class_y,
                   const std::string& e_name) {
    normal.validate();
    const ModelPtr& y = iota_pullback.target;
    if (iota_pullback.source != x) throw StructureError("blowup: iota source != X");
    int codim = normal.rank();
    if (codim < 1) throw StructureError("blowup: codimension must be >= 1");
    if (!class_y.is_homogeneous() || class_y.degree() != codim)
        throw StructureError("blowup: [Y] must be homogeneous of degree codim");
    for (int k = 0; k <= y->top(); ++k) {
        Echelon img(y->rank(k));
        const QMat& mat = iota_pullback.mat(k);
        for (int j = 0; j < x->rank(k); ++j) {
            QVec col(mat.size());
            for (size_t i = 0; i < mat.size(); ++i) col[i] = mat[i][j];
            img.insert(col);
        }
        if (img.rank() != y->rank(k))
            throw MathError("blowup: center pullback not surjective in degree " +
                            std::to_string(k));
    }

    BlowupModel bl;
    bl.base = x;
    bl.center = y;

    if (codim == 1) {
        // e is decomposable: e = [Y]; the ring is unchanged.
        bl.total = x;
        bl.e_is_generator = false;
        bl.e_class = x->normal_form(class_y);
        bl.pi_star = identity_map(x);
        bl.pi_pull = identity_map(x);
        return bl;
    }

    std::string en = e_name;
    while (x->ring()->index_of(en) >= 0) en += "p";
    std::vector<GenSym> gens = x->ring()->gens;
    gens.push_back(GenSym{en, std::nullopt, 1});
    int ei = static_cast<int>(gens.size()) - 1;

    RingPresentation pres;
    pres.ring = make_ring(gens);
    pres.top_degree = x->top();
    pres.name = "Bl(" + x->pres().name + ")";
    std::vector<Poly> inc;
    for (int i = 0; i < x->ring()->size(); ++i)
        inc.push_back(Poly::generator(pres.ring, i));
    for (const auto& rel : x->pres().relations)
        pres.relations.push_back(rel.substitute(pres.ring, inc));
    Poly e = Poly::generator(pres.ring, ei);

    // ker(iota^*) . e, degree by degree
    ImageKernel ik = image_kernel(iota_pullback);
    for (int k = 1; k < x->top(); ++k) {
        for (const auto& kp : ik.kernel.basis_polys(k))
            pres.relations.push_back(kp.substitute(pres.ring, inc) * e);
    }
    // e^d + sum c_{d-j} e^j + (-1)^d [Y]
    Poly rel = e.pow(codim);
    for (int j = 1; j <= codim - 1; ++j) {
        Poly chat = iota_preimage(iota_pullback, normal.c[codim - j], codim - j);
        rel += chat.substitute(pres.ring, inc) * e.pow(j);
    }
    rel += class_y.substitute(pres.ring, inc) * rat(codim % 2 == 0 ? 1 : -1);
    pres.relations.push_back(rel);

    bl.total = make_model(std::move(pres));
    bl.e_is_generator = true;
    bl.e_index = ei;
    bl.e_class = Poly::generator(bl.total->ring(), ei);

    // pi^*: inclusion of X's generators
    std::vector<Poly> pull_images;
    for (int i = 0; i < x->ring()->size(); ++i)
        pull_images.push_back(Poly::generator(bl.total->ring(), i));
    bl.pi_pull = induced_map(x, bl.total, pull_images);

    // pi_*: projection onto pi^*(A*(X)) along the i_*(A*(Y) h^j) summands,
    // realized by lifts ylift . e^{j+1}, j = 0..codim-2.
    GradedLinearMap ps;
    ps.source = bl.total;
    ps.target = x;
    ps.shift = 0;
    ps.mats.resize(bl.total->top() + 1);
    for (int k = 0; k <= bl.total->top(); ++k) {
        int rx = x->rank(k);
        int rt = bl.total->rank(k);
        // columns: pi^*(x-basis), then lift(y-basis(k-j-1)) * e^{j+1}
        QMat cols;  // stored column-wise
        for (int j = 0; j < rx; ++j) {
            Poly xb = x->basis_poly(k, j);
            cols.push_back(bl.total->coords(
                bl.total->normal_form(xb.substitute(bl.total->ring(), pull_images)), k));
        }
        for (int j = 0; j + 1 <= codim - 1; ++j) {
            int ky = k - j - 1;
            if (ky < 0 || ky > y->top()) continue;
            for (int i = 0; i < y->rank(ky); ++i) {
                Poly ylift = iota_preimage(iota_pullback, y->basis_poly(ky, i), ky);
                Poly v = ylift.substitute(bl.total->ring(), pull_images) * e.pow(j + 1);
                cols.push_back(bl.total->coords(bl.total->normal_form(v), k));
            }
        }
        if (static_cast<int>(cols.size()) != rt)
            throw MathError("blowup splitting rank mismatch in degree " +
                            std::to_string(k) + ": " + std::to_string(cols.size()) +
                            " summand classes vs rank " + std::to_string(rt));
        // solve M z = b for each total basis vector b; pi_* b = x-part of z
        QMat m(rt, QVec(cols.size(), Rational(0)));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < rt; ++i) m[i][j] = cols[j][i];
        QMat out(rx, QVec(rt, Rational(0)));
        for (int b = 0; b < rt; ++b) {
            QVec rhs(rt, Rational(0));
            rhs[b] = 1;
            SolveResult sr = solve(m, static_cast<int>(cols.size()), rhs);
            if (!sr.ok)
                throw MathError("blowup splitting failed in degree " + std::to_string(k));
            for (int i = 0; i < rx; ++i) out[i][b] = sr.x[i];
        }
        // columns were a basis (checked by rank): the solve is unique
        Echelon full(rt);
        for (const auto& c : cols) full.insert(c);
        if (full.rank() != rt)
            throw MathError("blowup summands do not span degree " + std::to_string(k));
        ps.mats[k] = std::move(out);
    }
    bl.pi_star = std::move(ps);
    return bl;
}

SymmetricQuotient symmetric_quotient(const VarietyData& x, int n) {
    if (n != 2 && n != 3) throw StructureError("symmetric_quotient: n must be 2 or 3");
    SymmetricQuotient sq;
    sq.tensor = make_model(kunneth_power(x, n));
    std::vector<std::vector<int>> gens;
    if (n == 2) {
        gens.push_back(slot_permutation(sq.tensor->ring(), {1, 0}));
    } else {
        gens.push_back(slot_permutation(sq.tensor->ring(), {1, 0, 2}));
        gens.push_back(slot_permutation(sq.tensor->ring(), {0, 2, 1}));
    }
    PermutationAction act(sq.tensor, gens);
    sq.invariants = act.invariant_subspace();
    sq.ranks = sq.invariants.rank_table();
    return sq;
}

std::vector<int> slot_permutation(const RingPtr& ring, const std::vector<int>& perm) {
    std::vector<int> out(ring->size());
    for (int i = 0; i < ring->size(); ++i) {
        const GenSym& g = ring->gens[i];
        if (!g.slot) {
            out[i] = i;
            continue;
        }
        if (*g.slot >= static_cast<int>(perm.size()))
            throw StructureError("slot_permutation: slot out of range");
        int j = ring->index_of(g.name + std::to_string(perm[*g.slot]));
        if (j < 0)
            throw StructureError("slot_permutation: missing " + g.name +
                                 std::to_string(perm[*g.slot]));
        out[i] = j;
    }
    return out;
}

}  // namespace hilbchow
