#include "hilbchow/ring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "hilbchow/errors.hpp"

namespace hilbchow {

void RingPresentation::validate() const {
    if (top_degree < 0) throw StructureError("negative top degree");
    for (const auto& r : relations) {
        if (r.is_zero()) continue;
        if (!r.is_homogeneous())
            throw StructureError("inhomogeneous relation: " + r.str());
        if (r.degree() < 1)
            throw StructureError("degree-0 relation: " + r.str());
        if (r.ring() != ring)
            throw StructureError("relation over a different generator list");
    }
}

GradedModel::GradedModel(RingPresentation pres) : pres_(std::move(pres)) {
    pres_.validate();
    bases_.resize(pres_.top_degree + 1);
    for (int k = 0; k <= pres_.top_degree; ++k) {
        bases_[k].degree = k;
        bases_[k].monomials = monomials_of_degree(k);
        for (int j = 0; j < static_cast<int>(bases_[k].monomials.size()); ++j)
            bases_[k].col.emplace(bases_[k].monomials[j], j);
    }
    for (int k = 0; k <= pres_.top_degree; ++k) build(k);
}

std::vector<Monomial> GradedModel::monomials_of_degree(int k) const {
    std::vector<Monomial> out;
    int n = ring()->size();
    Monomial cur(n, 0);
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == n) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        int d = ring()->gens[i].degree;
        for (int e = 0; e * d <= rem; ++e) {
            cur[i] = e;
            rec(i + 1, rem - e * d);
        }
        cur[i] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return mono_cmp(*ring(), a, b) < 0;
    });
    return out;
}

void GradedModel::build(int k) {
    DegreeBasis& db = bases_[k];
    int ncols = static_cast<int>(db.monomials.size());
    db.reduction = Echelon(ncols);

    // Macaulay rows: every relation times every monomial of complementary
    // degree, expressed over the degree-k monomials.
    for (const auto& rel : pres_.relations) {
        if (rel.is_zero()) continue;
        int dr = rel.degree();
        if (dr > k) continue;
        for (const auto& m : bases_[k - dr].monomials) {
            QVec row(ncols, Rational(0));
            for (const auto& [rm, c] : rel.terms()) {
                Monomial prod(rm.size());
                for (size_t i = 0; i < rm.size(); ++i) prod[i] = rm[i] + m[i];
                row[db.col.at(prod)] += c;
            }
            db.reduction.insert(std::move(row));
        }
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int p : db.reduction.pivots()) is_pivot[p] = true;
    for (int j = 0; j < ncols; ++j)
        if (!is_pivot[j]) {
            db.basis_pos.emplace(db.monomials[j], static_cast<int>(db.basis.size()));
            db.basis.push_back(j);
        }
}

const DegreeBasis& GradedModel::basis(int k) const {
    if (k < 0 || k > top()) throw StructureError("degree out of range 0.." +
                                                 std::to_string(top()));
    return bases_[k];
}

int GradedModel::rank(int k) const { return static_cast<int>(basis(k).basis.size()); }

RankTable GradedModel::rank_table() const {
    RankTable t(top() + 1);
    for (int k = 0; k <= top(); ++k) t[k] = rank(k);
    return t;
}

Poly GradedModel::normal_form(const Poly& p) const {
    if (p.is_zero()) return Poly(ring());
    if (p.ring() != ring()) throw StructureError("normal_form: wrong ring");
    Poly out(ring());
    for (auto& [k, comp] : p.homogeneous_components()) {
        if (k > top()) continue;  // truncation
        const DegreeBasis& db = basis(k);
        int ncols = static_cast<int>(db.monomials.size());
        QVec v(ncols, Rational(0));
        for (auto& [m, c] : comp.terms()) v[db.col.at(m)] += c;
        v = db.reduction.reduce(std::move(v));
        for (int j = 0; j < ncols; ++j)
            if (v[j] != 0) out.add_term(db.monomials[j], v[j]);
    }
    return out;
}

QVec GradedModel::coords(const Poly& p, int k) const {
    Poly nf = normal_form(p);
    const DegreeBasis& db = basis(k);
    QVec v(db.basis.size(), Rational(0));
    for (auto& [m, c] : nf.terms()) {
        if (mono_degree(*ring(), m) != k)
            throw StructureError("coords: class not homogeneous of degree " +
                                 std::to_string(k));
        v[db.basis_pos.at(m)] = c;
    }
    return v;
}

Poly GradedModel::from_coords(int k, const QVec& v) const {
    const DegreeBasis& db = basis(k);
    if (v.size() != db.basis.size()) throw StructureError("from_coords: size");
    Poly p(ring());
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p.add_term(db.monomials[db.basis[i]], v[i]);
    return p;
}

Poly GradedModel::basis_poly(int k, int i) const {
    const DegreeBasis& db = basis(k);
    return Poly::monomial(ring(), db.monomials[db.basis.at(i)], 1);
}

Poly GradedModel::mul_nf(const Poly& a, const Poly& b) const {
    return normal_form(a * b);
}

ModelPtr make_model(RingPresentation pres) {
    return std::make_shared<const GradedModel>(std::move(pres));
}

Poly GradedLinearMap::apply(const Poly& p) const {
    Poly nf = source->normal_form(p);
    Poly out(target->ring());
    for (auto& [k, comp] : nf.homogeneous_components()) {
        int kt = k + shift;
        if (kt < 0 || kt > target->top()) continue;
        QVec v = source->coords(comp, k);
        out += target->from_coords(kt, mat_apply(mats.at(k), v));
    }
    return out;
}

GradedLinearMap induced_map(const ModelPtr& source, const ModelPtr& target,
                            const std::vector<Poly>& gen_images) {
    const auto& gens = source->ring()->gens;
    if (gen_images.size() != gens.size())
        throw StructureError("induced_map: wrong number of images");
    for (size_t i = 0; i < gens.size(); ++i) {
        const Poly& im = gen_images[i];
        if (im.is_zero()) continue;
        if (!im.is_homogeneous() || im.degree() != gens[i].degree)
            throw MathError("induced_map: image of " + gens[i].display() +
                            " does not respect degree");
    }
    for (const auto& rel : source->pres().relations) {
        Poly im = target->normal_form(rel.substitute(target->ring(), gen_images));
        if (!im.is_zero())
            throw MathError("not a homomorphism: relation " + rel.str() +
                            " maps to " + im.str());
    }
    GradedLinearMap m;
    m.source = source;
    m.target = target;
    m.shift = 0;
    m.mats.resize(source->top() + 1);
    for (int k = 0; k <= source->top(); ++k) {
        int rs = source->rank(k);
        int rt = k <= target->top() ? target->rank(k) : 0;
        QMat mat(rt, QVec(rs, Rational(0)));
        for (int j = 0; j < rs; ++j) {
            Poly bj = source->basis_poly(k, j);
            Poly im = bj.substitute(target->ring(), gen_images);
            if (k <= target->top()) {
                QVec col = target->coords(target->normal_form(im), k);
                for (int i = 0; i < rt; ++i) mat[i][j] = col[i];
            }
        }
        m.mats[k] = std::move(mat);
    }
    return m;
}

GradedSubspace::GradedSubspace(ModelPtr ambient) : ambient_(std::move(ambient)) {
    spans_.reserve(ambient_->top() + 1);
    for (int k = 0; k <= ambient_->top(); ++k)
        spans_.emplace_back(ambient_->rank(k));
}

RankTable GradedSubspace::rank_table() const {
    RankTable t(spans_.size());
    for (size_t k = 0; k < spans_.size(); ++k) t[k] = spans_[k].rank();
    return t;
}

bool GradedSubspace::insert(int k, const QVec& v) { return spans_.at(k).insert(v); }

bool GradedSubspace::insert(const Poly& p) {
    Poly nf = ambient_->normal_form(p);
    bool grew = false;
    for (auto& [k, comp] : nf.homogeneous_components())
        grew |= spans_.at(k).insert(ambient_->coords(comp, k));
    return grew;
}

bool GradedSubspace::contains(int k, const QVec& v) const {
    return spans_.at(k).contains(v);
}

bool GradedSubspace::contains(const Poly& p) const {
    Poly nf = ambient_->normal_form(p);
    for (auto& [k, comp] : nf.homogeneous_components())
        if (!spans_.at(k).contains(ambient_->coords(comp, k))) return false;
    return true;
}

std::vector<Poly> GradedSubspace::basis_polys(int k) const {
    std::vector<Poly> out;
    for (const auto& row : spans_.at(k).rows())
        out.push_back(ambient_->from_coords(k, row));
    return out;
}

bool GradedSubspace::operator==(const GradedSubspace& o) const {
    if (ambient_ != o.ambient_) return false;
    for (size_t k = 0; k < spans_.size(); ++k)
        if (!(spans_[k] == o.spans_[k])) return false;
    return true;
}

ImageKernel image_kernel(const GradedLinearMap& m) {
    ImageKernel ik;
    ik.image = GradedSubspace(m.target);
    ik.kernel = GradedSubspace(m.source);
    for (int k = 0; k <= m.source->top(); ++k) {
        int kt = k + m.shift;
        const QMat& mat = m.mats.at(k);
        int rs = m.source->rank(k);
        bool target_alive = kt >= 0 && kt <= m.target->top();
        // columns of mat are images of source basis vectors
        for (int j = 0; j < rs; ++j) {
            if (!target_alive) continue;
            QVec col(mat.size());
            for (size_t i = 0; i < mat.size(); ++i) col[i] = mat[i][j];
            ik.image.insert(kt, col);
        }
        // kernel: null space of mat (or everything if target degree is dead)
        if (!target_alive || mat.empty()) {
            for (int j = 0; j < rs; ++j) {
                QVec v(rs, Rational(0));
                v[j] = 1;
                ik.kernel.insert(k, v);
            }
        } else {
            for (auto& v : kernel_basis(mat, rs)) ik.kernel.insert(k, v);
        }
    }
    return ik;
}

PermutationAction::PermutationAction(ModelPtr model,
                                     std::vector<std::vector<int>> action_gens,
                                     int max_order)
    : model_(std::move(model)) {
    int n = model_->ring()->size();
    for (const auto& g : action_gens) {
        if (static_cast<int>(g.size()) != n)
            throw StructureError("action generator has wrong size");
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            if (g[i] < 0 || g[i] >= n || seen[g[i]])
                throw StructureError("action generator is not a permutation");
            seen[g[i]] = true;
            if (model_->ring()->gens[i].degree != model_->ring()->gens[g[i]].degree)
                throw StructureError("action permutation does not preserve degrees");
        }
    }
    // close into a group by breadth-first products
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> queue{id};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& g : action_gens) {
            std::vector<int> prod(n);
            for (int i = 0; i < n; ++i) prod[i] = g[queue[qi][i]];
            if (seen.insert(prod).second) {
                queue.push_back(prod);
                if (static_cast<int>(queue.size()) > max_order)
                    throw StructureError("action does not close into a small group");
            }
        }
    }
    elements_.assign(seen.begin(), seen.end());
    // each element must be a ring self-map
    for (const auto& el : elements_) {
        for (const auto& rel : model_->pres().relations) {
            Poly im = model_->normal_form(rel.permute(el));
            if (!im.is_zero())
                throw MathError("permutation is not a ring self-map: relation " +
                                rel.str() + " maps to " + im.str());
        }
    }
}

Poly PermutationAction::symmetrize(const Poly& p) const {
    Poly sum(model_->ring());
    for (const auto& el : elements_) sum += p.permute(el);
    return model_->normal_form(sum * rat(1, order()));
}

QMat PermutationAction::projector_matrix(int k) const {
    int r = model_->rank(k);
    QMat m(r, QVec(r, Rational(0)));
    for (int j = 0; j < r; ++j) {
        Poly bj = model_->basis_poly(k, j);
        QVec col = model_->coords(symmetrize(bj), k);
        for (int i = 0; i < r; ++i) m[i][j] = col[i];
    }
    return m;
}

GradedLinearMap PermutationAction::projector_map() const {
    GradedLinearMap m;
    m.source = model_;
    m.target = model_;
    m.shift = 0;
    m.mats.resize(model_->top() + 1);
    for (int k = 0; k <= model_->top(); ++k) m.mats[k] = projector_matrix(k);
    return m;
}

GradedSubspace PermutationAction::invariant_subspace() const {
    GradedSubspace inv(model_);
    for (int k = 0; k <= model_->top(); ++k) {
        QMat proj = projector_matrix(k);
        int r = model_->rank(k);
        for (int j = 0; j < r; ++j) {
            QVec col(r);
            for (int i = 0; i < r; ++i) col[i] = proj[i][j];
            inv.insert(k, col);
        }
    }
    return inv;
}

GradedSubspace subalgebra_closure(const ModelPtr& model,
                                  const std::vector<Poly>& generators) {
    // degree-by-degree: S_k = sum_g g * S_{k - deg g} + generators of degree k
    std::vector<std::pair<int, Poly>> gens;
    for (const auto& g : generators) {
        Poly nf = model->normal_form(g);
        if (nf.is_zero()) continue;
        for (auto& [d, comp] : nf.homogeneous_components()) {
            if (d == 0) continue;  // constants are implied by 1
            gens.emplace_back(d, comp);
        }
    }
    GradedSubspace s(model);
    s.insert(Poly(model->ring(), 1));
    for (int k = 1; k <= model->top(); ++k) {
        for (auto& [d, g] : gens) {
            if (d == k) s.insert(k, model->coords(g, k));
            if (d >= k) continue;
            for (const auto& row : s.span(k - d).rows()) {
                Poly lower = model->from_coords(k - d, row);
                Poly prod = model->mul_nf(g, lower);
                if (!prod.is_zero()) s.insert(k, model->coords(prod, k));
            }
        }
    }
    return s;
}

std::string ranks_str(const RankTable& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << t[i];
    }
    return os.str();
}

}  // namespace hilbchow
