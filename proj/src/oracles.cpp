#include "hilbchow/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hilbchow/errors.hpp"

namespace hilbchow {

namespace {

// Truncated power series in (z, q): map (z_deg, q_deg) -> coefficient.
using ZQ = std::map<std::pair<int, int>, long long>;

ZQ zq_mul(const ZQ& a, const ZQ& b, int qmax, int zmax) {
    ZQ r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            int z = ea.first + eb.first, q = ea.second + eb.second;
            if (q > qmax || z > zmax) continue;
            r[{z, q}] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

RankTable goettsche_betti(const BettiVector& b, int n) {
    if (b.size() != 5) throw StructureError("goettsche_betti: need b_0..b_4 (surface)");
    if (b[0] != 1) throw StructureError("goettsche_betti: b_0 must be 1");
    if (b[1] != 0 || b[3] != 0)
        throw StructureError("goettsche_betti: nonzero odd Betti numbers unsupported");
    if (n < 0 || n > 6) throw StructureError("goettsche_betti: n out of range 0..6");

    int zmax = 4 * n;
    ZQ acc{{{0, 0}, 1}};
    for (int m = 1; m <= n; ++m) {
        for (int i = 0; i <= 4; i += 2) {
            // (1 - z^{2m-2+i} q^m)^{-b_i} = sum_j C(b_i-1+j, j) (z^.. q^m)^j
            ZQ factor;
            int ze = 2 * m - 2 + i;
            for (int j = 0; m * j <= n && ze * j <= zmax; ++j)
                factor[{ze * j, m * j}] = binom(b[i] - 1 + j, j);
            acc = zq_mul(acc, factor, n, zmax);
        }
    }
    RankTable out(2 * n + 1, 0);
    for (auto& [e, c] : acc) {
        if (e.second != n) continue;
        if (e.first % 2 != 0)
            throw MathError("goettsche_betti: odd cohomological degree appeared");
        int chow = e.first / 2;
        if (chow >= 0 && chow <= 2 * n) out[chow] = static_cast<int>(c);
    }
    return out;
}

RankTable sym_ranks(const VarietyData& x, int n) {
    if (x.dim == 0) return RankTable{1};
    return symmetric_quotient(x, n).ranks;
}

namespace {

VarietyData projective_space(const std::string& name, int dim) {
    VarietyData v;
    v.name = name;
    v.dim = dim;
    RingPtr r = make_ring({GenSym{"h", std::nullopt, 1}});
    Poly h = Poly::generator(r, 0);
    RingPresentation pres{r, {h.pow(dim + 1)}, dim, name};
    v.model = make_model(pres);
    // c(T) = (1+h)^{dim+1} truncated
    Poly total = (Poly(r, 1) + h).pow(dim + 1);
    for (int j = 0; j <= dim; ++j) v.chern.push_back(total.component(j));
    v.square = make_model(kunneth_product(pres, pres));
    Poly diag(v.square->ring());
    for (int i = 0; i <= dim; ++i)
        diag += place_in_slot(h.pow(i), 0, v.square->ring()) *
                place_in_slot(h.pow(dim - i), 1, v.square->ring());
    v.diagonal = diag;
    v.point_class = h.pow(dim);
    return v;
}

VarietyData point_variety() {
    VarietyData v;
    v.name = "pt";
    v.dim = 0;
    RingPresentation pres{make_ring({}), {}, 0, "pt"};
    v.model = make_model(pres);
    v.chern = {Poly(v.model->ring(), 1)};
    v.square = make_model(kunneth_product(pres, pres));
    v.diagonal = Poly(v.square->ring(), 1);
    v.point_class = Poly(v.model->ring(), 1);
    return v;
}

VarietyData p1xp1() {
    VarietyData v;
    v.name = "P1xP1";
    v.dim = 2;
    RingPtr r = make_ring({GenSym{"a", std::nullopt, 1}, GenSym{"b", std::nullopt, 1}});
    Poly a = Poly::generator(r, 0), b = Poly::generator(r, 1);
    RingPresentation pres{r, {a * a, b * b}, 2, "P1xP1"};
    v.model = make_model(pres);
    Poly one(r, 1);
    Poly total = (one + rat(2) * a) * (one + rat(2) * b);
    for (int j = 0; j <= 2; ++j) v.chern.push_back(total.component(j));
    v.square = make_model(kunneth_product(pres, pres));
    const RingPtr& sq = v.square->ring();
    // dual basis pairs: 1<->ab, a<->b
    Poly diag = place_in_slot(a * b, 0, sq) + place_in_slot(one, 0, sq) * place_in_slot(a * b, 1, sq) +
                place_in_slot(a, 0, sq) * place_in_slot(b, 1, sq) +
                place_in_slot(b, 0, sq) * place_in_slot(a, 1, sq);
    v.diagonal = diag;
    v.point_class = a * b;
    return v;
}

}  // namespace

VarietyData builtin(const std::string& name) {
    VarietyData v;
    if (name == "pt") v = point_variety();
    else if (name == "P1") v = projective_space("P1", 1);
    else if (name == "P2") v = projective_space("P2", 2);
    else if (name == "P3") v = projective_space("P3", 3);
    else if (name == "P1xP1") v = p1xp1();
    else throw StructureError("unknown builtin variety: " + name);
    validate_variety(v);
    return v;
}

std::vector<std::string> builtin_names() { return {"pt", "P1", "P2", "P3", "P1xP1"}; }

long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m) p[m] += p[m - k];
    return p[n];
}

namespace {

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

bool contains(const std::vector<int>& mu, const std::vector<int>& la) {
    if (mu.size() > la.size()) return false;
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > la[i]) return false;
    return true;
}

}  // namespace

long hilb_p2_fixed_points(int n) {
    // triples of partitions, one per toric chart
    long total = 0;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            int c = n - a - b;
            total += partition_count(a) * partition_count(b) * partition_count(c);
        }
    return total;
}

long nested_hilb_p2_fixed_points(int m) {
    // pairs (mu^i contained in la^i) per chart, |mu| = m, |la| = m+1
    int n = m + 1;
    auto pairs = [&](int a, int b) {
        long cnt = 0;
        for (auto& mu : partitions(a))
            for (auto& la : partitions(b))
                if (contains(mu, la)) ++cnt;
        return cnt;
    };
    long total = 0;
    for (int a0 = 0; a0 <= m; ++a0)
        for (int a1 = 0; a0 + a1 <= m; ++a1) {
            int a2 = m - a0 - a1;
            for (int b0 = a0; b0 <= n; ++b0)
                for (int b1 = a1; b0 + b1 <= n; ++b1) {
                    int b2 = n - b0 - b1;
                    if (b2 < a2) continue;
                    total += pairs(a0, b0) * pairs(a1, b1) * pairs(a2, b2);
                }
        }
    return total;
}

}  // namespace hilbchow
