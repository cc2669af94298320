#include "l2a/matched.hpp"

namespace l2a {

Report check_lie_algebroid(const LieAlgebroidData& a) {
    Report rep;
    rep.check = "check_lie_algebroid";
    const Bundle& q = a.bundle();
    rep.note_axiom("skew");
    if (!a.bracket.skew) rep.add("skew", {}, "skew flag not set");
    for (int i = 0; i < q.rank; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < q.rank; ++k) {
                Poly s = a.bracket.symbols[i][j][k] + a.bracket.symbols[j][i][k];
                if (!s.is_zero()) rep.add("skew", {i, j, k}, s.render());
            }
    rep.note_axiom("anchor");
    for (int i = 0; i < q.rank; ++i)
        for (int j = i + 1; j < q.rank; ++j) {
            std::vector<Poly> lhs = a.anchor().vector_field(a.bracket.eval_frames(i, j));
            std::vector<Poly> rhs = vf_bracket(q.chart_dim, a.anchor().vector_field(frame_section(q, i)),
                                               a.anchor().vector_field(frame_section(q, j)));
            for (int t = 0; t < q.chart_dim; ++t) {
                Poly r = lhs[t] - rhs[t];
                if (!r.is_zero()) rep.add("anchor", {i, j, t}, r.render());
            }
        }
    rep.note_axiom("jacobi");
    if (!rep.axiom_failed("skew")) {
        for (const auto& t : increasing_tuples(q.rank, 3)) {
            Section r = jacobiator(a.bracket, frame_section(q, t[0]), frame_section(q, t[1]), frame_section(q, t[2]));
            if (!r.is_zero()) rep.add("jacobi", t, r.render());
        }
    }
    rep.sort_canonical();
    return rep;
}

Hom2Form Hom2Form::zero(const Bundle& arg, const Bundle& hsrc, const Bundle& hdst) {
    return Hom2Form{arg, hsrc, hdst, {}};
}

HomField Hom2Form::at(int i, int j) const {
    HomField h = HomField::zero(hsrc, hdst);
    if (i == j) return h;
    int sign = 1, a = i, b = j;
    if (a > b) {
        std::swap(a, b);
        sign = -1;
    }
    auto it = entries.find({a, b});
    if (it == entries.end()) return h;
    h.m = it->second;
    if (sign < 0)
        for (auto& row : h.m)
            for (auto& p : row) p = -p;
    return h;
}

void Hom2Form::set(int i, int j, const HomField& h) {
    if (i >= j) throw std::invalid_argument("Hom2Form::set: indices must be strictly increasing");
    require_same_bundle(h.src, hsrc, "Hom2Form::set");
    require_same_bundle(h.dst, hdst, "Hom2Form::set");
    if (h.is_zero())
        entries.erase({i, j});
    else
        entries[{i, j}] = h.m;
}

Hom2Form Hom2Form::operator-() const {
    Hom2Form r = *this;
    for (auto& [k, m] : r.entries)
        for (auto& row : m)
            for (auto& p : row) p = -p;
    return r;
}

Hom2Form Hom2Form::negated_transpose() const {
    Hom2Form r = Hom2Form::zero(arg, hdst.dualized(), hsrc.dualized());
    for (const auto& [k, m] : entries) {
        HomField h{hsrc, hdst, m};
        r.entries[k] = (-h.transpose()).m;
    }
    return r;
}

bool Hom2Form::is_zero() const {
    for (const auto& [k, m] : entries)
        for (const auto& row : m)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
    return true;
}

bool operator==(const Hom2Form& a, const Hom2Form& b) {
    if (!(a.arg == b.arg) || !(a.hsrc == b.hsrc) || !(a.hdst == b.hdst)) return false;
    int r = a.arg.rank;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (!(a.at(i, j) - b.at(i, j)).is_zero()) return false;
    return true;
}

void TwoRepData::validate_structure() const {
    const Bundle& a = algebroid.bundle();
    if (a.chart_dim != e0.chart_dim || a.chart_dim != e1.chart_dim)
        throw BundleMismatch("two_rep: bundles over different charts");
    require_same_bundle(partial.src, e0, "two_rep partial source");
    require_same_bundle(partial.dst, e1, "two_rep partial target");
    require_same_bundle(nabla0.module, e0, "two_rep nabla0");
    require_same_bundle(nabla1.module, e1, "two_rep nabla1");
    require_same_bundle(nabla0.anchor.bundle, a, "two_rep nabla0 acting bundle");
    require_same_bundle(nabla1.anchor.bundle, a, "two_rep nabla1 acting bundle");
    require_same_bundle(r.arg, a, "two_rep R argument bundle");
    require_same_bundle(r.hsrc, e1, "two_rep R source");
    require_same_bundle(r.hdst, e0, "two_rep R target");
}

namespace {

// nabla^Hom_{e_i} phi = nabla0_{e_i} o phi - phi o nabla1_{e_i} on Hom(E1,E0).
HomField hom_connection_frame(const LinearConnection& nabla0, const LinearConnection& nabla1, int i,
                              const HomField& phi) {
    HomField out = HomField::zero(phi.src, phi.dst);
    for (int v = 0; v < phi.src.rank; ++v) {
        Section col = nabla0.eval_frame(i, phi.apply(frame_section(phi.src, v))) -
                      phi.apply(nabla1.eval_frame(i, frame_section(phi.src, v)));
        for (int u = 0; u < phi.dst.rank; ++u) out.m[u][v] = col.comps[u];
    }
    return out;
}

void add_hom_violation(Report& rep, const std::string& axiom, std::vector<int> w, const HomField& h) {
    if (!h.is_zero()) {
        std::string s = "[";
        for (int u = 0; u < h.dst.rank; ++u)
            for (int v = 0; v < h.src.rank; ++v) {
                if (u || v) s += ", ";
                s += h.m[u][v].render();
            }
        s += "]";
        rep.add(axiom, std::move(w), s);
    }
}

}  // namespace

Report check_two_rep(const TwoRepData& t) {
    t.validate_structure();
    Report rep;
    rep.check = "check_two_rep";
    Report alg = check_lie_algebroid(t.algebroid);
    for (const auto& ax : alg.axioms_checked) rep.note_axiom("algebroid:" + ax);
    for (const auto& v : alg.violations) rep.add("algebroid:" + v.axiom, v.witness, v.residual);

    const Bundle& a = t.algebroid.bundle();

    // (2) chain map: partial o nabla0 = nabla1 o partial
    rep.note_axiom("chain");
    for (int i = 0; i < a.rank; ++i)
        for (int u = 0; u < t.e0.rank; ++u) {
            Section lhs = t.partial.apply(t.nabla0.eval_frame(i, frame_section(t.e0, u)));
            Section rhs = t.nabla1.eval_frame(i, t.partial.apply(frame_section(t.e0, u)));
            if (!(lhs - rhs).is_zero()) rep.add("chain", {i, u}, (lhs - rhs).render());
        }

    // (3) curvature factorizations
    rep.note_axiom("curv0");
    rep.note_axiom("curv1");
    for (const auto& p : increasing_tuples(a.rank, 2)) {
        HomField rij = t.r.at(p[0], p[1]);
        for (int u = 0; u < t.e0.rank; ++u) {
            Section lhs = conn_curvature(t.nabla0, t.algebroid.bracket, frame_section(a, p[0]), frame_section(a, p[1]),
                                         frame_section(t.e0, u));
            Section rhs = rij.apply(t.partial.apply(frame_section(t.e0, u)));
            if (!(lhs - rhs).is_zero()) rep.add("curv0", {p[0], p[1], u}, (lhs - rhs).render());
        }
        for (int v = 0; v < t.e1.rank; ++v) {
            Section lhs = conn_curvature(t.nabla1, t.algebroid.bracket, frame_section(a, p[0]), frame_section(a, p[1]),
                                         frame_section(t.e1, v));
            Section rhs = t.partial.apply(rij.apply(frame_section(t.e1, v)));
            if (!(lhs - rhs).is_zero()) rep.add("curv1", {p[0], p[1], v}, (lhs - rhs).render());
        }
    }

    // (3) d_{nabla^Hom} R = 0
    rep.note_axiom("dR");
    for (const auto& tr : increasing_tuples(a.rank, 3)) {
        HomField acc = HomField::zero(t.e1, t.e0);
        for (int i = 0; i < 3; ++i) {
            int rest[2];
            for (int s = 0, w = 0; s < 3; ++s)
                if (s != i) rest[w++] = tr[s];
            HomField term = hom_connection_frame(t.nabla0, t.nabla1, tr[i], t.r.at(rest[0], rest[1]));
            acc = (i % 2 == 0) ? acc + term : acc - term;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int k = 3 - i - j;  // remaining slot index
                Section br = t.algebroid.bracket.eval_frames(tr[i], tr[j]);
                HomField term = HomField::zero(t.e1, t.e0);
                for (int s = 0; s < a.rank; ++s) {
                    if (br.comps[s].is_zero()) continue;
                    term = term + t.r.at(s, tr[k]).scaled(br.comps[s]);
                }
                acc = ((i + j) % 2 == 1) ? acc + term : acc - term;
            }
        add_hom_violation(rep, "dR", tr, acc);
    }

    rep.sort_canonical();
    return rep;
}

TwoRepData two_rep_dual(const TwoRepData& t) {
    TwoRepData d;
    d.algebroid = t.algebroid;
    d.e0 = t.e1.dualized();
    d.e1 = t.e0.dualized();
    d.partial = t.partial.transpose();
    d.nabla0 = t.nabla1.dual();
    d.nabla1 = t.nabla0.dual();
    d.r = t.r.negated_transpose();
    return d;
}

void MatchedPairData::validate_structure() const {
    const Bundle& ba = a.bundle();
    const Bundle& bb = b.bundle();
    if (ba.chart_dim != bb.chart_dim || ba.chart_dim != c.chart_dim)
        throw BundleMismatch("matched_pair: bundles over different charts");
    require_same_bundle(partial_a.src, c, "matched_pair partial_a");
    require_same_bundle(partial_a.dst, ba, "matched_pair partial_a");
    require_same_bundle(partial_b.src, c, "matched_pair partial_b");
    require_same_bundle(partial_b.dst, bb, "matched_pair partial_b");
    require_same_bundle(nabla_ab.anchor.bundle, ba, "matched_pair nabla_ab");
    require_same_bundle(nabla_ab.module, bb, "matched_pair nabla_ab");
    require_same_bundle(nabla_ac.anchor.bundle, ba, "matched_pair nabla_ac");
    require_same_bundle(nabla_ac.module, c, "matched_pair nabla_ac");
    require_same_bundle(nabla_ba.anchor.bundle, bb, "matched_pair nabla_ba");
    require_same_bundle(nabla_ba.module, ba, "matched_pair nabla_ba");
    require_same_bundle(nabla_bc.anchor.bundle, bb, "matched_pair nabla_bc");
    require_same_bundle(nabla_bc.module, c, "matched_pair nabla_bc");
    require_same_bundle(ra.arg, ba, "matched_pair ra");
    require_same_bundle(ra.hsrc, bb, "matched_pair ra");
    require_same_bundle(ra.hdst, c, "matched_pair ra");
    require_same_bundle(rb.arg, bb, "matched_pair rb");
    require_same_bundle(rb.hsrc, ba, "matched_pair rb");
    require_same_bundle(rb.hdst, c, "matched_pair rb");
}

TwoRepData MatchedPairData::a_side() const { return TwoRepData{a, c, b.bundle(), partial_b, nabla_ac, nabla_ab, ra}; }
TwoRepData MatchedPairData::b_side() const { return TwoRepData{b, c, a.bundle(), partial_a, nabla_bc, nabla_ba, rb}; }

Report check_matched_pair(const MatchedPairData& m) {
    m.validate_structure();
    Report rep;
    rep.check = "check_matched_pair";

    Report ra_rep = check_two_rep(m.a_side());
    for (const auto& ax : ra_rep.axioms_checked) rep.note_axiom("2repA:" + ax);
    for (const auto& v : ra_rep.violations) rep.add("2repA:" + v.axiom, v.witness, v.residual);
    Report rb_rep = check_two_rep(m.b_side());
    for (const auto& ax : rb_rep.axioms_checked) rep.note_axiom("2repB:" + ax);
    for (const auto& v : rb_rep.violations) rep.add("2repB:" + v.axiom, v.witness, v.residual);

    const Bundle& ab = m.a.bundle();
    const Bundle& bb = m.b.bundle();
    const Bundle& cb = m.c;
    auto af = [&](int i) { return frame_section(ab, i); };
    auto bf = [&](int i) { return frame_section(bb, i); };
    auto cf = [&](int i) { return frame_section(cb, i); };

    // (M1)
    rep.note_axiom("M1");
    for (int c1 = 0; c1 < cb.rank; ++c1)
        for (int c2 = c1; c2 < cb.rank; ++c2) {
            Section r = m.nabla_ac.eval(m.partial_a.apply(cf(c1)), cf(c2)) -
                        m.nabla_bc.eval(m.partial_b.apply(cf(c2)), cf(c1)) +
                        m.nabla_ac.eval(m.partial_a.apply(cf(c2)), cf(c1)) -
                        m.nabla_bc.eval(m.partial_b.apply(cf(c1)), cf(c2));
            if (!r.is_zero()) rep.add("M1", {c1, c2}, r.render());
        }

    // (M2) [a, partial_A c] = partial_A(nabla_a c) - nabla_{partial_B c} a
    rep.note_axiom("M2");
    for (int i = 0; i < ab.rank; ++i)
        for (int k = 0; k < cb.rank; ++k) {
            Section lhs = m.a.bracket.eval(af(i), m.partial_a.apply(cf(k)));
            Section rhs = m.partial_a.apply(m.nabla_ac.eval_frame(i, cf(k))) -
                          m.nabla_ba.eval(m.partial_b.apply(cf(k)), af(i));
            if (!(lhs - rhs).is_zero()) rep.add("M2", {i, k}, (lhs - rhs).render());
        }

    // (M3) mirror
    rep.note_axiom("M3");
    for (int i = 0; i < bb.rank; ++i)
        for (int k = 0; k < cb.rank; ++k) {
            Section lhs = m.b.bracket.eval(bf(i), m.partial_b.apply(cf(k)));
            Section rhs = m.partial_b.apply(m.nabla_bc.eval_frame(i, cf(k))) -
                          m.nabla_ab.eval(m.partial_a.apply(cf(k)), bf(i));
            if (!(lhs - rhs).is_zero()) rep.add("M3", {i, k}, (lhs - rhs).render());
        }

    // (M4)
    rep.note_axiom("M4");
    for (int i = 0; i < ab.rank; ++i)
        for (int j = 0; j < bb.rank; ++j)
            for (int k = 0; k < cb.rank; ++k) {
                Section lhs = m.nabla_bc.eval_frame(j, m.nabla_ac.eval_frame(i, cf(k))) -
                              m.nabla_ac.eval_frame(i, m.nabla_bc.eval_frame(j, cf(k))) -
                              m.nabla_ac.eval(m.nabla_ba.eval_frame(j, af(i)), cf(k)) +
                              m.nabla_bc.eval(m.nabla_ab.eval_frame(i, bf(j)), cf(k));
                Section rhs = zero_section(cb);
                // R_B(b, partial_B c) a
                Section pbc = m.partial_b.apply(cf(k));
                for (int s = 0; s < bb.rank; ++s) {
                    if (pbc.comps[s].is_zero()) continue;
                    rhs = rhs + m.rb.at(j, s).apply(af(i)).scaled(pbc.comps[s]);
                }
                // - R_A(a, partial_A c) b
                Section pac = m.partial_a.apply(cf(k));
                for (int s = 0; s < ab.rank; ++s) {
                    if (pac.comps[s].is_zero()) continue;
                    rhs = rhs - m.ra.at(i, s).apply(bf(j)).scaled(pac.comps[s]);
                }
                if (!(lhs - rhs).is_zero()) rep.add("M4", {i, j, k}, (lhs - rhs).render());
            }

    // (M5) partial_A(R_A(a1,a2) b) = -nabla_b[a1,a2] + [nabla_b a1, a2] + [a1, nabla_b a2]
    //      + nabla_{nabla_{a2} b} a1 - nabla_{nabla_{a1} b} a2
    rep.note_axiom("M5");
    for (const auto& p : increasing_tuples(ab.rank, 2))
        for (int j = 0; j < bb.rank; ++j) {
            Section lhs = m.partial_a.apply(m.ra.at(p[0], p[1]).apply(bf(j)));
            Section rhs = -m.nabla_ba.eval(bf(j), m.a.bracket.eval_frames(p[0], p[1])) +
                          m.a.bracket.eval(m.nabla_ba.eval_frame(j, af(p[0])), af(p[1])) +
                          m.a.bracket.eval(af(p[0]), m.nabla_ba.eval_frame(j, af(p[1]))) +
                          m.nabla_ba.eval(m.nabla_ab.eval_frame(p[1], bf(j)), af(p[0])) -
                          m.nabla_ba.eval(m.nabla_ab.eval_frame(p[0], bf(j)), af(p[1]));
            if (!(lhs - rhs).is_zero()) rep.add("M5", {p[0], p[1], j}, (lhs - rhs).render());
        }

    // (M6) mirror
    rep.note_axiom("M6");
    for (const auto& p : increasing_tuples(bb.rank, 2))
        for (int i = 0; i < ab.rank; ++i) {
            Section lhs = m.partial_b.apply(m.rb.at(p[0], p[1]).apply(af(i)));
            Section rhs = -m.nabla_ab.eval(af(i), m.b.bracket.eval_frames(p[0], p[1])) +
                          m.b.bracket.eval(m.nabla_ab.eval_frame(i, bf(p[0])), bf(p[1])) +
                          m.b.bracket.eval(bf(p[0]), m.nabla_ab.eval_frame(i, bf(p[1]))) +
                          m.nabla_ab.eval(m.nabla_ba.eval_frame(p[1], af(i)), bf(p[0])) -
                          m.nabla_ab.eval(m.nabla_ba.eval_frame(p[0], af(i)), bf(p[1]));
            if (!(lhs - rhs).is_zero()) rep.add("M6", {p[0], p[1], i}, (lhs - rhs).render());
        }

    // (M7) d_{nabla^A} R_B = d_{nabla^B} R_A under the identification
    // Omega^2(A, wedge^2 B^* (x) C) = Omega^2(B, wedge^2 A^* (x) C).
    rep.note_axiom("M7");
    auto ra_eval = [&](int i, int j, const Section& bsec) { return m.ra.at(i, j).apply(bsec); };
    auto rb_eval = [&](int i, int j, const Section& asec) { return m.rb.at(i, j).apply(asec); };
    for (const auto& pa : increasing_tuples(ab.rank, 2))
        for (const auto& pb : increasing_tuples(bb.rank, 2)) {
            int a1 = pa[0], a2 = pa[1], b1 = pb[0], b2 = pb[1];
            // (d_{nabla^A} R_B)(a1,a2)(b1,b2)
            auto nabla_a_on_rb = [&](int ai, int bi, int bj, int aother) {
                // (nabla^A_{a_i} (R_B(.,.) a_other))(b_i, b_j)
                Section v = m.nabla_ac.eval_frame(ai, rb_eval(bi, bj, af(aother)));
                Section t1 = m.nabla_ab.eval_frame(ai, bf(bi));
                for (int s = 0; s < bb.rank; ++s)
                    if (!t1.comps[s].is_zero()) v = v - rb_eval(s, bj, af(aother)).scaled(t1.comps[s]);
                Section t2 = m.nabla_ab.eval_frame(ai, bf(bj));
                for (int s = 0; s < bb.rank; ++s)
                    if (!t2.comps[s].is_zero()) v = v - rb_eval(bi, s, af(aother)).scaled(t2.comps[s]);
                return v;
            };
            Section lhs = nabla_a_on_rb(a1, b1, b2, a2) - nabla_a_on_rb(a2, b1, b2, a1);
            {
                Section br = m.a.bracket.eval_frames(a1, a2);
                for (int s = 0; s < ab.rank; ++s)
                    if (!br.comps[s].is_zero()) lhs = lhs - rb_eval(b1, b2, af(s)).scaled(br.comps[s]);
            }
            auto nabla_b_on_ra = [&](int bi, int ai, int aj, int bother) {
                Section v = m.nabla_bc.eval_frame(bi, ra_eval(ai, aj, bf(bother)));
                Section t1 = m.nabla_ba.eval_frame(bi, af(ai));
                for (int s = 0; s < ab.rank; ++s)
                    if (!t1.comps[s].is_zero()) v = v - ra_eval(s, aj, bf(bother)).scaled(t1.comps[s]);
                Section t2 = m.nabla_ba.eval_frame(bi, af(aj));
                for (int s = 0; s < ab.rank; ++s)
                    if (!t2.comps[s].is_zero()) v = v - ra_eval(ai, s, bf(bother)).scaled(t2.comps[s]);
                return v;
            };
            Section rhs = nabla_b_on_ra(b1, a1, a2, b2) - nabla_b_on_ra(b2, a1, a2, b1);
            {
                Section br = m.b.bracket.eval_frames(b1, b2);
                for (int s = 0; s < bb.rank; ++s)
                    if (!br.comps[s].is_zero()) rhs = rhs - ra_eval(a1, a2, bf(s)).scaled(br.comps[s]);
            }
            if (!(lhs - rhs).is_zero()) rep.add("M7", {a1, a2, b1, b2}, (lhs - rhs).render());
        }

    rep.sort_canonical();
    return rep;
}

SplitLie2Data bicrossproduct(const MatchedPairData& m) {
    m.validate_structure();
    const Bundle& ab = m.a.bundle();
    const Bundle& bb = m.b.bundle();
    const int ra = ab.rank, rb = bb.rank, rc = m.c.rank, n = ab.chart_dim;

    SplitLie2Data d;
    d.q = make_bundle(n, ra + rb, ab.label + "+" + bb.display());
    d.b = m.c.dualized();

    d.rho = Anchor::zero(d.q);
    for (int i = 0; i < ra; ++i) d.rho.mat[i] = m.a.anchor().mat[i];
    for (int j = 0; j < rb; ++j) d.rho.mat[ra + j] = m.b.anchor().mat[j];

    d.bracket = DullBracket::zero(d.rho, true);
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j)
            for (int k = 0; k < ra; ++k) d.bracket.symbols[i][j][k] = m.a.bracket.symbols[i][j][k];
    for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j)
            for (int k = 0; k < rb; ++k) d.bracket.symbols[ra + i][ra + j][ra + k] = m.b.bracket.symbols[i][j][k];
    // [[ (a_i, 0), (0, b_j) ]] = (-nabla^{BA}_{b_j} a_i, nabla^{AB}_{a_i} b_j)
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j) {
            for (int k = 0; k < ra; ++k) {
                d.bracket.symbols[i][ra + j][k] = -m.nabla_ba.symbols[j][i][k];
                d.bracket.symbols[ra + j][i][k] = m.nabla_ba.symbols[j][i][k];
            }
            for (int k = 0; k < rb; ++k) {
                d.bracket.symbols[i][ra + j][ra + k] = m.nabla_ab.symbols[i][j][k];
                d.bracket.symbols[ra + j][i][ra + k] = -m.nabla_ab.symbols[i][j][k];
            }
        }

    // data connection on C^*: the dual of nabla_{(a,b)} c = nabla_a c + nabla_b c
    d.nabla = LinearConnection::zero(d.rho, d.b);
    LinearConnection ac_dual = m.nabla_ac.dual();
    LinearConnection bc_dual = m.nabla_bc.dual();
    for (int i = 0; i < ra; ++i) d.nabla.symbols[i] = ac_dual.symbols[i];
    for (int j = 0; j < rb; ++j) d.nabla.symbols[ra + j] = bc_dual.symbols[j];

    // l = (-partial_A; partial_B): C -> A (+) B
    d.l = HomField::zero(d.b.dualized(), d.q);
    for (int k = 0; k < rc; ++k) {
        for (int i = 0; i < ra; ++i) d.l.m[i][k] = -m.partial_a.m[i][k];
        for (int j = 0; j < rb; ++j) d.l.m[ra + j][k] = m.partial_b.m[j][k];
    }

    // omega = -omega_R of the displayed formula; the sign makes axioms (iii)
    // and (iv) hold with the Leibniz-form Jacobiator used throughout.
    d.omega = VForm::zero(3, d.q, m.c);
    for (int i = 0; i < ra; ++i)
        for (int j = i + 1; j < ra; ++j)
            for (int mm = 0; mm < rb; ++mm) {
                Section v = -m.ra.at(i, j).apply(frame_section(bb, mm));
                if (!v.is_zero()) d.omega.set({i, j, ra + mm}, Section(m.c, v.comps));
            }
    for (int i = 0; i < ra; ++i)
        for (int mm = 0; mm < rb; ++mm)
            for (int pp = mm + 1; pp < rb; ++pp) {
                Section v = m.rb.at(mm, pp).apply(frame_section(ab, i));
                if (!v.is_zero()) d.omega.set({i, ra + mm, ra + pp}, Section(m.c, v.comps));
            }
    return d;
}

MatchedPairData extract_matched_pair(const SplitLie2Data& d, int rank_a) {
    d.validate_structure();
    const int rq = d.q.rank;
    if (rank_a < 0 || rank_a > rq) throw ExtractError("extract_matched_pair: rank_a out of range");
    const int ra = rank_a, rb = rq - rank_a, n = d.q.chart_dim;

    // Hypothesis (1): pure-block brackets stay in their blocks.
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j)
            for (int k = ra; k < rq; ++k)
                if (!d.bracket.symbols[i][j][k].is_zero())
                    throw ExtractError("extract_matched_pair: hypothesis (1) fails, bracket of A-frames (" +
                                       std::to_string(i) + "," + std::to_string(j) + ") leaves the A block");
    for (int i = ra; i < rq; ++i)
        for (int j = ra; j < rq; ++j)
            for (int k = 0; k < ra; ++k)
                if (!d.bracket.symbols[i][j][k].is_zero())
                    throw ExtractError("extract_matched_pair: hypothesis (1) fails, bracket of B-frames (" +
                                       std::to_string(i - ra) + "," + std::to_string(j - ra) +
                                       ") leaves the B block");
    // Hypothesis (2): omega vanishes on pure triples.
    for (const auto& t : increasing_tuples(rq, 3)) {
        bool pure_a = t[2] < ra;
        bool pure_b = t[0] >= ra;
        if ((pure_a || pure_b) && !d.omega.at(t).is_zero())
            throw ExtractError("extract_matched_pair: hypothesis (2) fails, omega is nonzero on the pure frame "
                               "triple (" +
                               std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
    }

    MatchedPairData m;
    Bundle abun = make_bundle(n, ra, "A");
    Bundle bbun = make_bundle(n, rb, "B");
    m.c = d.b.dualized();

    Anchor aa = Anchor::zero(abun);
    for (int i = 0; i < ra; ++i) aa.mat[i] = d.rho.mat[i];
    Anchor ba = Anchor::zero(bbun);
    for (int j = 0; j < rb; ++j) ba.mat[j] = d.rho.mat[ra + j];

    m.a.bracket = DullBracket::zero(aa, true);
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j)
            for (int k = 0; k < ra; ++k) m.a.bracket.symbols[i][j][k] = d.bracket.symbols[i][j][k];
    m.b.bracket = DullBracket::zero(ba, true);
    for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j)
            for (int k = 0; k < rb; ++k) m.b.bracket.symbols[i][j][k] = d.bracket.symbols[ra + i][ra + j][ra + k];

    m.partial_b = HomField::zero(m.c, bbun);
    m.partial_a = HomField::zero(m.c, abun);
    for (int k = 0; k < m.c.rank; ++k) {
        for (int j = 0; j < rb; ++j) m.partial_b.m[j][k] = d.l.m[ra + j][k];
        for (int i = 0; i < ra; ++i) m.partial_a.m[i][k] = -d.l.m[i][k];
    }

    m.nabla_ab = LinearConnection::zero(aa, bbun);
    m.nabla_ba = LinearConnection::zero(ba, abun);
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j) {
            for (int k = 0; k < rb; ++k) m.nabla_ab.symbols[i][j][k] = d.bracket.symbols[i][ra + j][ra + k];
            for (int k = 0; k < ra; ++k) m.nabla_ba.symbols[j][i][k] = d.bracket.symbols[ra + j][i][k];
        }

    LinearConnection on_c = d.nabla.dual();  // connection on C = B_data^*
    m.nabla_ac = LinearConnection::zero(aa, m.c);
    m.nabla_bc = LinearConnection::zero(ba, m.c);
    for (int i = 0; i < ra; ++i) m.nabla_ac.symbols[i] = on_c.symbols[i];
    for (int j = 0; j < rb; ++j) m.nabla_bc.symbols[j] = on_c.symbols[ra + j];

    m.ra = Hom2Form::zero(abun, bbun, m.c);
    for (int i = 0; i < ra; ++i)
        for (int j = i + 1; j < ra; ++j) {
            HomField h = HomField::zero(bbun, m.c);
            bool nz = false;
            for (int mm = 0; mm < rb; ++mm) {
                Section v = -d.omega.at({i, j, ra + mm});
                for (int t = 0; t < m.c.rank; ++t) {
                    h.m[t][mm] = v.comps[t];
                    nz = nz || !v.comps[t].is_zero();
                }
            }
            if (nz) m.ra.set(i, j, h);
        }
    m.rb = Hom2Form::zero(bbun, abun, m.c);
    for (int mm = 0; mm < rb; ++mm)
        for (int pp = mm + 1; pp < rb; ++pp) {
            HomField h = HomField::zero(abun, m.c);
            bool nz = false;
            for (int i = 0; i < ra; ++i) {
                Section v = d.omega.at({ra + mm, ra + pp, i});
                for (int t = 0; t < m.c.rank; ++t) {
                    h.m[t][i] = v.comps[t];
                    nz = nz || !v.comps[t].is_zero();
                }
            }
            if (nz) m.rb.set(mm, pp, h);
        }
    return m;
}

MatchedPairData embed_two_rep(const TwoRepData& t) {
    t.validate_structure();
    MatchedPairData m;
    m.a = t.algebroid;
    m.b.bracket = DullBracket::zero(Anchor::zero(t.e1), true);
    m.c = t.e0;
    m.partial_b = t.partial;
    m.partial_a = HomField::zero(t.e0, m.a.bundle());
    m.nabla_ab = t.nabla1;
    m.nabla_ac = t.nabla0;
    m.nabla_ba = LinearConnection::zero(m.b.anchor(), m.a.bundle());
    m.nabla_bc = LinearConnection::zero(m.b.anchor(), t.e0);
    m.ra = t.r;
    m.rb = Hom2Form::zero(t.e1, m.a.bundle(), t.e0);
    return m;
}

SplitLie2Data semidirect_lie2(const TwoRepData& t) {
    Report pre = check_two_rep(t);
    if (!pre.passed())
        throw std::invalid_argument("semidirect_lie2: input is not a 2-representation (first failing axiom: " +
                                    pre.violations.front().axiom + ")");
    const Bundle& ab = t.algebroid.bundle();
    const int ra = ab.rank, rc = t.e0.rank, rb = t.e1.rank, n = ab.chart_dim;
    const Bundle cstar = t.e0.dualized();

    SplitLie2Data d;
    d.q = make_bundle(n, ra + rc, ab.label + "+" + cstar.display());
    d.b = t.e1;

    d.rho = Anchor::zero(d.q);
    for (int i = 0; i < ra; ++i) d.rho.mat[i] = t.algebroid.anchor().mat[i];

    // bracket: ([a1,a2], nabla0*_{a1} gamma2 - nabla0*_{a2} gamma1)
    d.bracket = DullBracket::zero(d.rho, true);
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j)
            for (int k = 0; k < ra; ++k) d.bracket.symbols[i][j][k] = t.algebroid.bracket.symbols[i][j][k];
    LinearConnection n0d = t.nabla0.dual();
    for (int i = 0; i < ra; ++i)
        for (int k = 0; k < rc; ++k)
            for (int l = 0; l < rc; ++l) {
                d.bracket.symbols[i][ra + k][ra + l] = n0d.symbols[i][k][l];
                d.bracket.symbols[ra + k][i][ra + l] = -n0d.symbols[i][k][l];
            }

    // connection on B: nabla_{(a,gamma)} b = nabla1_a b
    d.nabla = LinearConnection::zero(d.rho, d.b);
    for (int i = 0; i < ra; ++i) d.nabla.symbols[i] = t.nabla1.symbols[i];

    // l = iota_{C^*} o partial^T
    d.l = HomField::zero(d.b.dualized(), d.q);
    HomField pt = t.partial.transpose();  // B^* -> C^*
    for (int k = 0; k < rc; ++k)
        for (int j = 0; j < rb; ++j) d.l.m[ra + k][j] = pt.m[k][j];

    // omega((a1,.),(a2,.),(.,gamma3)) = <R(a1,a2), gamma3> and cyclic
    d.omega = VForm::zero(3, d.q, d.b.dualized());
    for (int i = 0; i < ra; ++i)
        for (int j = i + 1; j < ra; ++j) {
            HomField rij = t.r.at(i, j);
            for (int k = 0; k < rc; ++k) {
                Section v = zero_section(d.b.dualized());
                for (int mm = 0; mm < rb; ++mm) v.comps[mm] = rij.m[k][mm];
                if (!v.is_zero()) d.omega.set({i, j, ra + k}, v);
            }
        }
    return d;
}

SplitLie2Data rep_lie2(const LieAlgebroidData& a, const LinearConnection& rep) {
    Report alg = check_lie_algebroid(a);
    if (!alg.passed())
        throw std::invalid_argument("rep_lie2: invalid Lie algebroid (first failing axiom: " +
                                    alg.violations.front().axiom + ")");
    require_same_bundle(rep.anchor.bundle, a.bundle(), "rep_lie2");
    const Bundle& q = a.bundle();
    for (const auto& p : increasing_tuples(q.rank, 2))
        for (int mm = 0; mm < rep.module.rank; ++mm) {
            Section r = conn_curvature(rep, a.bracket, frame_section(q, p[0]), frame_section(q, p[1]),
                                       frame_section(rep.module, mm));
            if (!r.is_zero())
                throw std::invalid_argument("rep_lie2: the representation is not flat (curvature on frames " +
                                            std::to_string(p[0]) + "," + std::to_string(p[1]) + ")");
        }
    SplitLie2Data d;
    d.q = q;
    d.b = rep.module;
    d.rho = a.anchor();
    d.l = HomField::zero(d.b.dualized(), d.q);
    d.bracket = a.bracket;
    d.bracket.skew = true;
    d.nabla = rep;
    d.omega = VForm::zero(3, d.q, d.b.dualized());
    return d;
}

}  // namespace l2a
