#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "l2a/anchored.hpp"
#include "l2a/bundles.hpp"

using namespace l2a;

namespace {

// Independent oracle for the so(3) Cartan 3-form: brute-force contraction of
// the epsilon structure constants with the identity pairing,
// omega(a,b,c) = sum_{ijk} a_i b_j c_k eps_{ijk}.
int epsilon(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    int sign = 1;
    int v[3] = {i, j, k};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            if (v[b] > v[b + 1]) {
                std::swap(v[b], v[b + 1]);
                sign = -sign;
            }
    return sign;
}

Poly cartan_oracle(const Section& a, const Section& b, const Section& c) {
    Poly acc(a.bundle.chart_dim);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int e = epsilon(i, j, k);
                if (e != 0) acc += (a.comps[i] * b.comps[j] * c.comps[k]).scaled(Rational(e));
            }
    return acc;
}

VForm cartan_form(const Bundle& q) {
    // Values in a rank-1 bundle; omega(e1,e2,e3) = 1.
    Bundle val = scalar_bundle(q.chart_dim);
    VForm w = VForm::zero(3, q, val);
    w.set({0, 1, 2}, Section(val, {Poly::constant(q.chart_dim, 1)}));
    return w;
}

}  // namespace

TEST_CASE("section pairing") {
    Bundle q = make_bundle(1, 2, "Q");
    // dual frames pair to delta_ij
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Poly p = section_pairing(frame_section(q, i), frame_section(q.dualized(), j));
            CHECK(p == Poly::constant(1, Rational(i == j ? 1 : 0)));
        }
    Section s = frame_section(q, 0).scaled(Poly::parse(1, "x0")) + frame_section(q, 1);
    CHECK(section_pairing(s, frame_section(q.dualized(), 0)) == Poly::parse(1, "x0"));
    CHECK(section_pairing(s, zero_section(q.dualized())).is_zero());
    Bundle other = make_bundle(1, 2, "B");
    CHECK_THROWS_AS(section_pairing(s, frame_section(other.dualized(), 0)), BundleMismatch);
}

TEST_CASE("vform antisymmetry and evaluation") {
    Bundle q = make_bundle(0, 3, "Q");
    VForm w = cartan_form(q);
    Section e1 = frame_section(q, 0), e2 = frame_section(q, 1), e3 = frame_section(q, 2);
    CHECK(w.eval({e1, e2, e3}).comps[0] == Poly::constant(0, 1));
    CHECK(w.eval({e2, e1, e3}).comps[0] == Poly::constant(0, -1));
    CHECK(w.eval({e1, e1, e3}).is_zero());
    // any two equal frame arguments give zero
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(w.eval({frame_section(q, i), frame_section(q, i), frame_section(q, j)}).is_zero());
            CHECK(w.eval({frame_section(q, i), frame_section(q, j), frame_section(q, j)}).is_zero());
        }
}

TEST_CASE("cartan 3-form matches brute-force oracle on random sections") {
    Bundle q = make_bundle(0, 3, "Q");
    VForm w = cartan_form(q);
    auto sec = [&](int a, int b, int c) {
        return Section(q, {Poly::constant(0, a), Poly::constant(0, b), Poly::constant(0, c)});
    };
    std::vector<Section> samples = {sec(1, 0, 0), sec(0, 2, -1), sec(3, 1, 1), sec(-2, 0, 5)};
    for (const auto& a : samples)
        for (const auto& b : samples)
            for (const auto& c : samples) CHECK(w.eval({a, b, c}).comps[0] == cartan_oracle(a, b, c));
}

TEST_CASE("vform_from_full_table rejects non-antisymmetric tables") {
    Bundle q = make_bundle(0, 2, "Q");
    Bundle val = scalar_bundle(0);
    auto bad = [&](const std::vector<int>&) { return Section(val, {Poly::constant(0, 1)}); };
    CHECK_THROWS_AS(vform_from_full_table(2, q, val, bad), std::invalid_argument);
}

TEST_CASE("hom fields") {
    Bundle b = make_bundle(1, 2, "B");
    Bundle q = make_bundle(1, 3, "Q");
    HomField id = HomField::identity(b);
    Section s(b, {Poly::parse(1, "x0"), Poly::parse(1, "2")});
    CHECK(id.apply(s) == s);
    CHECK(HomField::zero(b, q).apply(s).is_zero());

    HomField phi = HomField::zero(b, q);
    phi.m[0][0] = Poly::parse(1, "x0");
    phi.m[2][1] = Poly::parse(1, "1");
    // transpose contract: <phi(s), t> = <s, phi^T(t)>
    Section t(q.dualized(), {Poly::parse(1, "x0"), Poly::parse(1, "3"), Poly::parse(1, "x0 + 1")});
    CHECK(section_pairing(phi.apply(s), t) == section_pairing(s, phi.transpose().apply(t)));
    // composition against sequential application
    HomField psi = HomField::zero(q, b);
    psi.m[1][2] = Poly::parse(1, "x0");
    CHECK(psi.compose(phi).apply(s) == psi.apply(phi.apply(s)));
}

TEST_CASE("rank-0 bundles have exactly the zero section") {
    Bundle z = make_bundle(2, 0, "Z");
    Section s = zero_section(z);
    CHECK(s.is_zero());
    CHECK(section_pairing(s, zero_section(z.dualized())).is_zero());
    VForm w = VForm::zero(1, z, make_bundle(2, 1, "V"));
    CHECK(w.eval({s}).is_zero());
}
