#include "skelet/degeneration.hpp"

#include "skelet/errors.hpp"

#include <algorithm>
#include <set>

namespace skelet {

namespace {

[[noreturn]] void fail(ErrorCode c, const std::string& m) { throw Error(c, m); }

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool tight_on(const IntVec& normal, const std::vector<size_t>& ids,
              const std::vector<IntVec>& lifted) {
    for (size_t v : ids)
        if (dot(normal, lifted[v]) != 0) return false;
    return true;
}

Rat power(const Rat& base, const Int& e) {
    if (e < 0) {
        if (base == 0) fail(ErrorCode::SignConditionViolated, "negative exponent at zero");
        return 1 / power(base, -e);
    }
    Rat r = 1;
    Rat b = base;
    for (Int k = e; k > 0; k >>= 1) {
        if ((k & 1) != 0) r *= b;
        b *= b;
    }
    return r;
}

Rat monomial_at(const IntVec& m, const RatVec& z) {
    Rat r = 1;
    for (size_t i = 0; i < m.size(); ++i) r *= power(z[i], m[i]);
    return r;
}

}  // namespace

OvergraphCone overgraph_cone(const StarTriangulation& t, const HeightCertificate& h) {
    if (!verify_certificate(t, h))
        fail(ErrorCode::CertificateMismatch, "the heights do not certify this triangulation");

    size_t r = t.polytope().ambient_rank();
    OvergraphCone out;
    out.ambient_rank = r + 1;

    // every lifted vertex lies on or above the graph, so all of them can
    // generate; only the boundary ones and the vertical ray are needed
    std::vector<IntVec> gens;
    for (size_t i = 0; i < t.vertices().size(); ++i) {
        IntVec lift = t.vertices()[i];
        lift.push_back(h.values[i]);
        out.lifted.push_back(lift);
        if (i != t.origin_id()) gens.push_back(std::move(lift));
    }
    IntVec ray(r + 1, 0);
    ray[r] = 1;
    gens.push_back(ray);

    out.cone = RationalCone::from_generators(r + 1, gens);
    for (const auto& u : out.cone.facet_normals()) out.through_ray.push_back(u[r] == 0);
    return out;
}

DivisorClassification classify_divisors(const OvergraphCone& g, const StarTriangulation& t) {
    const auto& normals = g.cone.facet_normals();
    DivisorClassification out;

    std::vector<size_t> hits(normals.size(), 0);
    for (size_t s : t.boundary_maximal()) {
        const auto& simp = t.simplices()[s];
        size_t found = normals.size();
        for (size_t i = 0; i < normals.size(); ++i) {
            if (g.through_ray[i] || !tight_on(normals[i], simp.vertex_ids, g.lifted)) continue;
            require_internal(found == normals.size(),
                             "maximal boundary simplex lies on two graph facets");
            found = i;
        }
        require_internal(found < normals.size(), "maximal boundary simplex misses its graph facet");
        ++hits[found];
        out.vertical.emplace_back(s, found);
    }
    for (size_t i = 0; i < normals.size(); ++i)
        require_internal(g.through_ray[i] || hits[i] == 1, "graph facet without its simplex");

    // boundary simplices through the origin lie in the wall over a facet of
    // the support cone; heights are irrelevant on walls
    size_t n = t.polytope().dim() - 1;
    for (size_t s = 0; s < t.simplices().size(); ++s) {
        const auto& simp = t.simplices()[s];
        if (!simp.contains_origin || simp.dim != n) continue;
        size_t found = normals.size();
        for (size_t i = 0; i < normals.size(); ++i) {
            if (!g.through_ray[i] || !tight_on(normals[i], simp.vertex_ids, g.lifted)) continue;
            require_internal(found == normals.size(), "simplex spans two support walls");
            found = i;
        }
        if (found < normals.size()) out.horizontal.emplace_back(s, found);
    }
    return out;
}

Rat RestrictedPolynomial::homogeneous_at(const RatVec& z) const {
    Rat s = 0;
    for (const auto& [m, a] : terms) s += a * monomial_at(m, z);
    return s;
}

Rat RestrictedPolynomial::value_at(const RatVec& z) const {
    return constant + homogeneous_at(z);
}

RestrictedPolynomial restrict_polynomial(const StarTriangulation& t,
                                         const std::vector<std::pair<IntVec, Rat>>& coeffs,
                                         size_t simplex) {
    if (simplex >= t.simplices().size())
        fail(ErrorCode::NotAFace, "no simplex with this index");
    const auto& simp = t.simplices()[simplex];
    if (simp.contains_origin)
        fail(ErrorCode::SimplexContainsOrigin, "restriction lives over the boundary part");

    std::set<IntVec> expected;
    expected.insert(IntVec(t.polytope().ambient_rank(), 0));
    for (size_t s : t.boundary_part())
        for (size_t v : t.simplices()[s].vertex_ids) expected.insert(t.vertices()[v]);

    std::set<IntVec> seen;
    for (const auto& [m, a] : coeffs) {
        if (!seen.insert(m).second)
            fail(ErrorCode::SupportMismatch, "repeated exponent in the coefficient table");
        if (!expected.count(m))
            fail(ErrorCode::SupportMismatch, "exponent outside the origin and boundary vertices");
        bool origin = std::all_of(m.begin(), m.end(), [](const Int& x) { return x == 0; });
        if (origin && a >= 0)
            fail(ErrorCode::SignConditionViolated, "constant term must be negative");
        if (!origin && a <= 0)
            fail(ErrorCode::SignConditionViolated, "vertex coefficients must be positive");
    }
    if (seen.size() != expected.size())
        fail(ErrorCode::SupportMismatch, "coefficient table misses part of the support");

    RestrictedPolynomial out;
    out.simplex = simplex;
    for (const auto& [m, a] : coeffs) {
        if (std::all_of(m.begin(), m.end(), [](const Int& x) { return x == 0; })) {
            out.constant = a;
            continue;
        }
        for (size_t v : simp.vertex_ids)
            if (t.vertices()[v] == m) {
                out.terms.emplace_back(m, a);
                break;
            }
    }
    std::sort(out.terms.begin(), out.terms.end());
    return out;
}

}  // namespace skelet
