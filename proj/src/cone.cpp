#include "orbithull/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

namespace orbithull {

namespace {

struct DdRay {
    QVector v;
    boost::dynamic_bitset<> tight;
};

QVector as_rational(const ZVector& z) { return to_rational(z); }

}  // namespace

std::vector<ZVector> extreme_rays(const QMatrix& a, std::size_t dim) {
    if (dim == 0) return {};
    const std::size_t m = a.size();
    for (const auto& row : a) {
        if (row.size() != dim) throw std::invalid_argument("extreme_rays: ragged constraints");
    }

    std::vector<std::size_t> init;
    QMatrix chosen;
    for (std::size_t i = 0; i < m && init.size() < dim; ++i) {
        chosen.push_back(a[i]);
        if (rank(chosen, dim) == chosen.size()) {
            init.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (init.size() < dim) throw std::invalid_argument("extreme_rays: cone is not pointed");

    QMatrix inv = inverse(chosen);
    std::vector<DdRay> rays;
    boost::dynamic_bitset<> processed(m);
    for (auto i : init) processed.set(i);
    for (std::size_t j = 0; j < dim; ++j) {
        QVector r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = -inv[i][j];
        DdRay ray{as_rational(primitive(r)), boost::dynamic_bitset<>(m)};
        for (std::size_t k = 0; k < dim; ++k) {
            if (k != j) ray.tight.set(init[k]);
        }
        rays.push_back(std::move(ray));
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (processed.test(i)) continue;
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DdRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(a[i], rays[r].v);
            int s = val[r].sign();
            if (s > 0) {
                pos.push_back(r);
            } else if (s < 0) {
                neg.push_back(r);
                next.push_back(rays[r]);
            } else {
                DdRay z = rays[r];
                z.tight.set(i);
                next.push_back(std::move(z));
            }
        }
        for (auto p : pos) {
            for (auto q : neg) {
                boost::dynamic_bitset<> common = rays[p].tight & rays[q].tight;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                QVector w(dim);
                for (std::size_t k = 0; k < dim; ++k) w[k] = val[p] * rays[q].v[k] - val[q] * rays[p].v[k];
                DdRay nr{as_rational(primitive(w)), common};
                nr.tight.set(i);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        processed.set(i);
    }

    std::vector<ZVector> out;
    out.reserve(rays.size());
    for (const auto& r : rays) out.push_back(primitive(r.v));
    std::sort(out.begin(), out.end());
    return out;
}

ConeHRep cone_facets(const QMatrix& generators, std::size_t dim) {
    QMatrix g;
    for (const auto& x : generators) {
        if (x.size() != dim) throw std::invalid_argument("cone_facets: ragged generators");
        if (!is_zero(x)) g.push_back(x);
    }
    ConeHRep h;
    h.lineality = null_space(g, dim);
    QMatrix basis = row_space_basis(g, dim);
    const std::size_t r = basis.size();
    if (r == 0) return h;
    QMatrix cons;
    cons.reserve(g.size());
    for (const auto& x : g) cons.push_back(mat_vec(basis, x));
    for (const auto& y : extreme_rays(cons, r)) {
        QVector w(dim, Rational(0));
        for (std::size_t i = 0; i < r; ++i) {
            if (y[i] == 0) continue;
            Rational yi(y[i]);
            for (std::size_t k = 0; k < dim; ++k) w[k] += yi * basis[i][k];
        }
        h.facets.push_back(primitive(w));
    }
    std::sort(h.facets.begin(), h.facets.end());
    return h;
}

std::vector<std::size_t> extreme_generators(const QMatrix& generators, const ConeHRep& h, std::size_t dim) {
    std::vector<std::size_t> out;
    std::vector<QVector> facets;
    for (const auto& f : h.facets) facets.push_back(to_rational(f));
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (is_zero(generators[i])) continue;
        QMatrix tight = h.lineality;
        for (const auto& f : facets) {
            if (dot(f, generators[i]).is_zero()) tight.push_back(f);
        }
        if (rank(tight, dim) + 1 == dim) out.push_back(i);
    }
    return out;
}

std::size_t PolyCone::dim() const {
    QMatrix r;
    for (const auto& x : rays) r.push_back(to_rational(x));
    return rank(r, ambient.n());
}

bool PolyCone::contains(const QVector& x) const {
    for (const auto& e : equalities) {
        if (!dot(e, x).is_zero()) return false;
    }
    for (const auto& a : halfspaces) {
        if (dot(a, x) > 0) return false;
    }
    return true;
}

PolyCone compute_C_T(const TorusLattice& t) {
    const std::size_t n = t.n();
    const std::size_t d = t.rank();
    PolyCone c;
    c.ambient = t.tangent();
    if (d == 0) return c;

    // in intrinsic coordinates the constraint x_k <= 0 reads <column k of B, c> <= 0
    QMatrix cons(n, QVector(d));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d; ++i) cons[k][i] = Rational(t.basis()[i][k]);
    }
    std::vector<ZVector> intrinsic_rays = extreme_rays(cons, d);
    QMatrix gens;
    for (const auto& y : intrinsic_rays) {
        QVector yq = to_rational(y);
        gens.push_back(yq);
        c.rays.push_back(primitive(t.ambient(yq)));
    }
    std::sort(c.rays.begin(), c.rays.end());

    ConeHRep h = cone_facets(gens, d);
    for (const auto& f : h.facets) c.halfspaces.push_back(to_rational(primitive(t.represent_functional(to_rational(f)))));
    for (const auto& l : h.lineality) c.equalities.push_back(to_rational(primitive(t.represent_functional(l))));
    std::sort(c.halfspaces.begin(), c.halfspaces.end());
    return c;
}

std::vector<Face> face_lattice(const PolyCone& c) {
    const std::size_t nr = c.rays.size();
    std::vector<std::vector<std::size_t>> facet_sets;
    for (const auto& a : c.halfspaces) {
        std::vector<std::size_t> s;
        for (std::size_t r = 0; r < nr; ++r) {
            if (dot(a, to_rational(c.rays[r])).is_zero()) s.push_back(r);
        }
        facet_sets.push_back(std::move(s));
    }
    std::vector<std::size_t> all(nr);
    for (std::size_t r = 0; r < nr; ++r) all[r] = r;

    std::set<std::vector<std::size_t>> seen{all};
    std::vector<std::vector<std::size_t>> queue{all};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& fs : facet_sets) {
            std::vector<std::size_t> meet;
            std::set_intersection(queue[head].begin(), queue[head].end(), fs.begin(), fs.end(), std::back_inserter(meet));
            if (seen.insert(meet).second) queue.push_back(std::move(meet));
        }
    }

    std::vector<Face> faces;
    for (const auto& s : seen) {
        QMatrix r;
        for (auto i : s) r.push_back(to_rational(c.rays[i]));
        faces.push_back(Face{s, rank(r, c.ambient.n())});
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.rays < b.rays;
    });
    return faces;
}

bool IdempotentSet::contains(const Idempotent& e) const {
    return std::find(elements.begin(), elements.end(), e) != elements.end();
}

IdempotentSet idempotents(const PolyCone& c) {
    IdempotentSet out;
    out.faces = face_lattice(c);
    const std::size_t n = c.ambient.n();
    for (const auto& f : out.faces) {
        Idempotent e(n, 1);
        for (auto r : f.rays) {
            for (std::size_t k = 0; k < n; ++k) {
                if (c.rays[r][k] != 0) e[k] = 0;
            }
        }
        out.elements.push_back(std::move(e));
    }
    return out;
}

}  // namespace orbithull
