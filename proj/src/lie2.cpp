#include "l2a/lie2.hpp"

namespace l2a {

HomField SplitLie2Data::r_omega_frames(int i, int j) const {
    HomField h = HomField::zero(b, q.dualized());
    for (int s = 0; s < q.rank; ++s) {
        Section v = omega.at({i, j, s});  // in B^*
        for (int m = 0; m < b.rank; ++m) h.m[s][m] = v.comps[m];
    }
    return h;
}

void SplitLie2Data::validate_structure() const {
    if (q.chart_dim != b.chart_dim) throw BundleMismatch("split_lie2: Q and B over different charts");
    require_same_bundle(rho.bundle, q, "split_lie2 anchor");
    require_same_bundle(l.src, b.dualized(), "split_lie2 l source");
    require_same_bundle(l.dst, q, "split_lie2 l target");
    require_same_bundle(bracket.anchor.bundle, q, "split_lie2 bracket");
    require_same_bundle(nabla.anchor.bundle, q, "split_lie2 connection acting bundle");
    require_same_bundle(nabla.module, b, "split_lie2 connection module");
    require_same_bundle(omega.arg, q, "split_lie2 omega argument bundle");
    require_same_bundle(omega.value, b.dualized(), "split_lie2 omega value bundle");
    if (omega.arity != 3) throw std::invalid_argument("split_lie2: omega must have arity 3");
    if (!(bracket.anchor == rho) || !(nabla.anchor == rho))
        throw std::invalid_argument("split_lie2: bracket and connection must carry the Q anchor");
}

SplitLie2Data zero_split_lie2(int chart_dim, int rank_q, int rank_b) {
    Bundle q = make_bundle(chart_dim, rank_q, "Q");
    Bundle b = make_bundle(chart_dim, rank_b, "B");
    Anchor rho = Anchor::zero(q);
    SplitLie2Data d{q, b, rho, HomField::zero(b.dualized(), q), DullBracket::zero(rho, true),
                    LinearConnection::zero(rho, b), VForm::zero(3, q, b.dualized())};
    return d;
}

namespace {

void add_section_violation(Report& rep, const std::string& axiom, std::vector<int> witness, const Section& r) {
    if (!r.is_zero()) rep.add(axiom, std::move(witness), r.render());
}

// Skew gate shared by both checkers: if the bracket table is not skew the
// definition's axioms are not even well-posed, so only "skew" is reported.
bool skew_gate(const DullBracket& br, Report& rep) {
    rep.note_axiom("skew");
    if (!br.skew) rep.add("skew", {}, "skew flag not set");
    const int r = br.anchor.bundle.rank;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < r; ++k) {
                Poly s = br.symbols[i][j][k] + br.symbols[j][i][k];
                if (!s.is_zero()) rep.add("skew", {i, j, k}, s.render());
            }
    return !rep.axiom_failed("skew") && br.skew;
}

void check_anchor_on_frames(const DullBracket& br, Report& rep) {
    rep.note_axiom("anchor");
    const Bundle& q = br.anchor.bundle;
    for (int i = 0; i < q.rank; ++i)
        for (int j = i + 1; j < q.rank; ++j) {
            std::vector<Poly> lhs = br.anchor.vector_field(br.eval_frames(i, j));
            std::vector<Poly> rhs = vf_bracket(q.chart_dim, br.anchor.vector_field(frame_section(q, i)),
                                               br.anchor.vector_field(frame_section(q, j)));
            for (int a = 0; a < q.chart_dim; ++a) {
                Poly r = lhs[a] - rhs[a];
                if (!r.is_zero()) rep.add("anchor", {i, j, a}, r.render());
            }
        }
}

}  // namespace

Report check_split_lie2(const SplitLie2Data& d) {
    d.validate_structure();
    Report rep;
    rep.check = "check_split_lie2";
    if (!skew_gate(d.bracket, rep)) {
        rep.sort_canonical();
        return rep;
    }
    const Bundle& q = d.q;
    const Bundle& b = d.b;
    const Bundle bs = b.dualized();
    HomField pb = d.partial_b();
    LinearConnection nd = d.nabla_dual();

    check_anchor_on_frames(d.bracket, rep);

    rep.note_axiom("rho_l");
    for (int k = 0; k < bs.rank; ++k) {
        std::vector<Poly> vf = d.rho.vector_field(d.l.apply(frame_section(bs, k)));
        for (int a = 0; a < q.chart_dim; ++a)
            if (!vf[a].is_zero()) rep.add("rho_l", {k, a}, vf[a].render());
    }

    // (i) nabla*_{l b1} b2 + nabla*_{l b2} b1 = 0
    rep.note_axiom("i");
    for (int k1 = 0; k1 < bs.rank; ++k1)
        for (int k2 = k1; k2 < bs.rank; ++k2) {
            Covector r = nd.eval(d.l.apply(frame_section(bs, k1)), frame_section(bs, k2)) +
                         nd.eval(d.l.apply(frame_section(bs, k2)), frame_section(bs, k1));
            add_section_violation(rep, "i", {k1, k2}, r);
        }

    // (ii) [[q, l beta]] = l(nabla*_q beta)
    rep.note_axiom("ii");
    for (int i = 0; i < q.rank; ++i)
        for (int k = 0; k < bs.rank; ++k) {
            Section r = d.bracket.eval(frame_section(q, i), d.l.apply(frame_section(bs, k))) -
                        d.l.apply(nd.eval(frame_section(q, i), frame_section(bs, k)));
            add_section_violation(rep, "ii", {i, k}, r);
        }

    // (iii) Jac = l o omega on increasing frame triples (both sides are
    // totally antisymmetric once the bracket is skew)
    rep.note_axiom("iii");
    for (const auto& t : increasing_tuples(q.rank, 3)) {
        Section r = jacobiator(d.bracket, frame_section(q, t[0]), frame_section(q, t[1]), frame_section(q, t[2])) -
                    d.l.apply(d.omega.at(t));
        add_section_violation(rep, "iii", t, r);
    }

    // (iv) R_nabla(q1,q2) b = l^* <i_{q2} i_{q1} omega, b>
    rep.note_axiom("iv");
    for (int i = 0; i < q.rank; ++i)
        for (int j = i + 1; j < q.rank; ++j) {
            HomField rw = d.r_omega_frames(i, j);
            for (int m = 0; m < b.rank; ++m) {
                Section lhs =
                    conn_curvature(d.nabla, d.bracket, frame_section(q, i), frame_section(q, j), frame_section(b, m));
                Section rhs = pb.apply(rw.apply(frame_section(b, m)));
                add_section_violation(rep, "iv", {i, j, m}, lhs - rhs);
            }
        }

    // (v) d_{nabla*} omega = 0
    rep.note_axiom("v");
    VForm dv = covariant_differential(nd, d.bracket, d.omega);
    for (const auto& [idx, comps] : dv.entries)
        add_section_violation(rep, "v", idx, Section(dv.value, comps));

    rep.sort_canonical();
    return rep;
}

GradedFunction GradedFunction::of_function(Poly f) {
    GradedFunction g;
    g.degree = 0;
    g.f = std::move(f);
    return g;
}

GradedFunction GradedFunction::of_covector(Covector tau) {
    GradedFunction g;
    g.degree = 1;
    g.tau = std::move(tau);
    return g;
}

GradedFunction GradedFunction::of_section(Section b) {
    GradedFunction g;
    g.degree = 2;
    g.b_part = std::move(b);
    return g;
}

namespace {

// tau as a scalar 1-form so the Koszul differential is the covariant
// differential with the trivial scalar connection.
VForm covector_as_form(const Covector& tau, const Bundle& q) {
    VForm f = scalar_vform(1, q);
    for (int s = 0; s < q.rank; ++s)
        if (!tau.comps[s].is_zero()) f.set({s}, Section(f.value, {tau.comps[s]}));
    return f;
}

// <omega, d_nabla b> as a scalar 4-form: cyclic sum with alternating signs.
VForm omega_wedge_nabla(const SplitLie2Data& d, const Section& b) {
    VForm out = scalar_vform(4, d.q);
    for (const auto& idx : increasing_tuples(d.q.rank, 4)) {
        Poly acc(d.q.chart_dim);
        const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        struct Term {
            std::vector<int> w;
            int with;
            int sign;
        };
        const Term terms[4] = {{{i, j, k}, l, +1}, {{j, k, l}, i, -1}, {{k, l, i}, j, +1}, {{l, i, j}, k, -1}};
        for (const auto& t : terms) {
            Section w = d.omega.at(t.w);
            if (w.is_zero()) continue;
            Poly p = section_pairing(d.nabla.eval_frame(t.with, b), Section(d.b.dualized(), w.comps));
            acc += t.sign > 0 ? p : -p;
        }
        if (!acc.is_zero()) out.set(idx, Section(out.value, {acc}));
    }
    return out;
}

}  // namespace

QFieldImage qfield_apply(const SplitLie2Data& d, const GradedFunction& g) {
    d.validate_structure();
    QFieldImage img;
    img.input_degree = g.degree;
    switch (g.degree) {
        case 0: {
            if (g.f.vars() != d.q.chart_dim) throw std::invalid_argument("qfield_apply: function in wrong chart");
            img.d0_covector = d.rho.pullback_d(g.f);
            return img;
        }
        case 1: {
            require_same_bundle(g.tau.bundle, d.q.dualized(), "qfield_apply degree 1");
            img.d1_two_form =
                covariant_differential(scalar_connection(d.rho), d.bracket, covector_as_form(g.tau, d.q));
            img.d1_b_section = d.partial_b().apply(g.tau);
            return img;
        }
        case 2: {
            require_same_bundle(g.b_part.bundle, d.b, "qfield_apply degree 2");
            if (!g.two_form.is_zero())
                throw std::invalid_argument("qfield_apply: degree-2 input must be a Gamma(B) generator");
            VForm f0 = VForm::zero(0, d.q, d.b);
            f0.set({}, g.b_part);
            img.d2_one_form = covariant_differential(d.nabla, d.bracket, f0);
            img.d2_three_form = -vform_pair_value(d.omega, g.b_part);
            return img;
        }
        default:
            throw std::invalid_argument("qfield_apply: input must be homogeneous of degree 0, 1 or 2");
    }
}

Report qfield_square_check(const SplitLie2Data& d) {
    d.validate_structure();
    Report rep;
    rep.check = "qfield_square_check";
    if (!skew_gate(d.bracket, rep)) {
        rep.sort_canonical();
        return rep;
    }
    const Bundle& q = d.q;
    const Bundle& b = d.b;
    HomField pb = d.partial_b();
    LinearConnection sc = scalar_connection(d.rho);

    // Degree 0 inputs: chart coordinates. Q^2(f) = d_Q(rho^*df) + partial_B(rho^*df).
    rep.note_axiom("partialB_rho");
    rep.note_axiom("anchor");
    for (int a = 0; a < q.chart_dim; ++a) {
        Covector qf = d.rho.pullback_d(Poly::variable(q.chart_dim, a));
        Section pr = pb.apply(qf);
        for (int m = 0; m < b.rank; ++m)
            if (!pr.comps[m].is_zero()) rep.add("partialB_rho", {a, m}, pr.comps[m].render());
        VForm dq = covariant_differential(sc, d.bracket, covector_as_form(qf, q));
        for (const auto& [idx, comps] : dq.entries)
            if (!comps[0].is_zero()) rep.add("anchor", {a, idx[0], idx[1]}, comps[0].render());
    }

    // Degree 1 inputs: Q^* frames. Omega^3 part gives Jac = l omega, the
    // Omega^1(Q,B) part gives partial_B Delta = nabla partial_B.
    rep.note_axiom("jacobiator");
    rep.note_axiom("chain");
    for (int k = 0; k < q.rank; ++k) {
        Covector tau = frame_section(q.dualized(), k);
        VForm dtau = covariant_differential(sc, d.bracket, covector_as_form(tau, q));
        VForm ddtau = covariant_differential(sc, d.bracket, dtau);
        VForm omega_pb = vform_pair_value(d.omega, pb.apply(tau));
        VForm res3 = ddtau - omega_pb;
        for (const auto& [idx, comps] : res3.entries)
            if (!comps[0].is_zero()) rep.add("jacobiator", {k, idx[0], idx[1], idx[2]}, comps[0].render());

        VForm lowered = vform_lower_scalar(dtau, pb);
        VForm f0 = VForm::zero(0, q, b);
        f0.set({}, pb.apply(tau));
        VForm dnabla = covariant_differential(d.nabla, d.bracket, f0);
        VForm res1 = lowered + dnabla;
        for (const auto& [idx, comps] : res1.entries)
            add_section_violation(rep, "chain", {k, idx[0]}, Section(b, comps));
    }

    // Degree 2 generators: B frames. Omega^4 part <-> d_{nabla*} omega = 0,
    // Omega^2(Q,B) part <-> axiom (iv), S^2 B part <-> axiom (i).
    rep.note_axiom("domega");
    rep.note_axiom("curvature");
    rep.note_axiom("sym");
    const Bundle bs = b.dualized();
    for (int m = 0; m < b.rank; ++m) {
        Section bm = frame_section(b, m);
        VForm xi = vform_pair_value(d.omega, bm);
        VForm res4 = covariant_differential(sc, d.bracket, xi) + omega_wedge_nabla(d, bm);
        for (const auto& [idx, comps] : res4.entries)
            if (!comps[0].is_zero()) rep.add("domega", {m, idx[0], idx[1], idx[2], idx[3]}, comps[0].render());

        VForm lowered = vform_lower_scalar(xi, pb);
        for (const auto& idx : increasing_tuples(q.rank, 2)) {
            Section r = conn_curvature(d.nabla, d.bracket, frame_section(q, idx[0]), frame_section(q, idx[1]), bm) -
                        lowered.at(idx);
            add_section_violation(rep, "curvature", {m, idx[0], idx[1]}, r);
        }

        for (int k1 = 0; k1 < bs.rank; ++k1)
            for (int k2 = k1; k2 < bs.rank; ++k2) {
                Poly r = section_pairing(d.nabla.eval(d.l.apply(frame_section(bs, k1)), bm), frame_section(bs, k2)) +
                         section_pairing(d.nabla.eval(d.l.apply(frame_section(bs, k2)), bm), frame_section(bs, k1));
                if (!r.is_zero()) rep.add("sym", {m, k1, k2}, r.render());
            }
    }

    rep.sort_canonical();
    return rep;
}

std::string qsq_axiom_to_definition(const std::string& qsq_axiom) {
    if (qsq_axiom == "partialB_rho") return "rho_l";
    if (qsq_axiom == "anchor") return "anchor";
    if (qsq_axiom == "jacobiator") return "iii";
    if (qsq_axiom == "chain") return "ii";
    if (qsq_axiom == "domega") return "v";
    if (qsq_axiom == "sym") return "i";
    if (qsq_axiom == "curvature") return "iv";
    if (qsq_axiom == "skew") return "skew";
    throw std::invalid_argument("unknown qfield axiom id: " + qsq_axiom);
}

SplitLie2Data shift_splitting(const SplitLie2Data& d, const VForm& phi) {
    d.validate_structure();
    require_same_bundle(phi.arg, d.q, "shift_splitting");
    require_same_bundle(phi.value, d.b.dualized(), "shift_splitting");
    if (phi.arity != 2) throw std::invalid_argument("shift_splitting: phi must have arity 2");

    SplitLie2Data out = d;
    HomField pb = d.partial_b();
    const int rq = d.q.rank, rb = d.b.rank;

    for (int i = 0; i < rq; ++i)
        for (int j = 0; j < rq; ++j) {
            Section corr = d.l.apply(phi.at({i, j}));
            for (int k = 0; k < rq; ++k) out.bracket.symbols[i][j][k] += corr.comps[k];
        }

    for (int i = 0; i < rq; ++i)
        for (int m = 0; m < rb; ++m) {
            // <phi(e_i, .), f_m> as a covector on Q, then partial_B of it
            Covector c = zero_section(d.q.dualized());
            for (int s = 0; s < rq; ++s) c.comps[s] = phi.at({i, s}).comps[m];
            Section corr = pb.apply(c);
            for (int k = 0; k < rb; ++k) out.nabla.symbols[i][m][k] -= corr.comps[k];
        }

    // omega' = omega - d_{bracket_old, nabla_new^*} phi
    out.omega = d.omega - covariant_differential(out.nabla.dual(), d.bracket, phi);
    return out;
}

void Morphism::validate_shape() const {
    if (static_cast<int>(mu0.size()) != dst_dim)
        throw std::invalid_argument("morphism: mu0 must have one polynomial per target coordinate");
    for (const auto& p : mu0)
        if (p.vars() != src_dim) throw std::invalid_argument("morphism: mu0 entries live in the wrong chart");
    if (static_cast<int>(mu_q.size()) != rank_q_dst ||
        (rank_q_dst > 0 && static_cast<int>(mu_q[0].size()) != rank_q_src))
        throw std::invalid_argument("morphism: mu_q has wrong shape");
    if (static_cast<int>(mu_b.size()) != rank_b_dst ||
        (rank_b_dst > 0 && static_cast<int>(mu_b[0].size()) != rank_b_src))
        throw std::invalid_argument("morphism: mu_b has wrong shape");
    if (mu12.arity != 2 || mu12.arg.rank != rank_q_src || mu12.value.rank != rank_b_dst)
        throw std::invalid_argument("morphism: mu12 has wrong shape");
}

Morphism identity_morphism(const SplitLie2Data& d) {
    Morphism m;
    m.src_dim = m.dst_dim = d.q.chart_dim;
    m.rank_q_src = m.rank_q_dst = d.q.rank;
    m.rank_b_src = m.rank_b_dst = d.b.rank;
    for (int a = 0; a < d.q.chart_dim; ++a) m.mu0.push_back(Poly::variable(d.q.chart_dim, a));
    m.mu_q = HomField::identity(d.q).m;
    m.mu_b = HomField::identity(d.b.dualized()).m;
    m.mu12 = VForm::zero(2, d.q, d.b.dualized());
    return m;
}

Morphism shift_morphism(const SplitLie2Data& d, const VForm& phi) {
    Morphism m = identity_morphism(d);
    m.mu12 = phi;
    return m;
}

namespace {
Poly pull(const Poly& target, const Morphism& m) { return target.compose(m.mu0); }
}  // namespace

Report check_morphism(const SplitLie2Data& src, const SplitLie2Data& dst, const Morphism& m) {
    src.validate_structure();
    dst.validate_structure();
    m.validate_shape();
    if (m.src_dim != src.q.chart_dim || m.dst_dim != dst.q.chart_dim)
        throw BundleMismatch("check_morphism: chart dimensions do not match the morphism");
    if (m.rank_q_src != src.q.rank || m.rank_q_dst != dst.q.rank || m.rank_b_src != src.b.rank ||
        m.rank_b_dst != dst.b.rank)
        throw BundleMismatch("check_morphism: morphism shape does not match the data");

    Report rep;
    rep.check = "check_morphism";
    const int n = m.src_dim;
    const int rq1 = src.q.rank, rq2 = dst.q.rank;
    const int rb1 = src.b.rank, rb2 = dst.b.rank;

    auto mu12_at = [&](int a, int bidx, int comp) {
        std::vector<int> idx{a, bidx};
        Section v = m.mu12.at(idx);
        return v.comps[comp];
    };

    // (1) anchors: T mu0 (rho_1 q) = rho_2 (mu_Q q)
    rep.note_axiom("1");
    for (int i = 0; i < rq1; ++i)
        for (int c = 0; c < m.dst_dim; ++c) {
            Poly lhs(n);
            for (int a = 0; a < n; ++a) lhs += src.rho.mat[i][a] * m.mu0[c].partial(a);
            Poly rhs(n);
            for (int j = 0; j < rq2; ++j) rhs += m.mu_q[j][i] * pull(dst.rho.mat[j][c], m);
            Poly r = lhs - rhs;
            if (!r.is_zero()) rep.add("1", {i, c}, r.render());
        }

    // (2) mu_Q o l_1 = l_2 o mu_B
    rep.note_axiom("2");
    for (int j = 0; j < rq2; ++j)
        for (int k = 0; k < rb1; ++k) {
            Poly lhs(n);
            for (int i = 0; i < rq1; ++i) lhs += m.mu_q[j][i] * src.l.m[i][k];
            Poly rhs(n);
            for (int t = 0; t < rb2; ++t) rhs += pull(dst.l.m[j][t], m) * m.mu_b[t][k];
            Poly r = lhs - rhs;
            if (!r.is_zero()) rep.add("2", {j, k}, r.render());
        }

    // (3) mu_Q^*(d_2 tau) + mu12^*(partial_2 tau) = d_1(mu_Q^* tau) on Q_2^* frames
    rep.note_axiom("3");
    for (int k = 0; k < rq2; ++k) {
        for (int a = 0; a < rq1; ++a)
            for (int bidx = a + 1; bidx < rq1; ++bidx) {
                Poly lhs(n);
                for (int i = 0; i < rq2; ++i)
                    for (int j = 0; j < rq2; ++j) {
                        if (i == j) continue;
                        lhs += m.mu_q[i][a] * m.mu_q[j][bidx] * pull(-dst.bracket.symbols[i][j][k], m);
                    }
                for (int t = 0; t < rb2; ++t) lhs += mu12_at(a, bidx, t) * pull(dst.l.m[k][t], m);
                // d_1 of the covector sigma_s = mu_q[k][s]
                Poly rhs(n);
                for (int aa = 0; aa < n; ++aa)
                    rhs += src.rho.mat[a][aa] * m.mu_q[k][bidx].partial(aa) -
                           src.rho.mat[bidx][aa] * m.mu_q[k][a].partial(aa);
                for (int c = 0; c < rq1; ++c) rhs -= src.bracket.symbols[a][bidx][c] * m.mu_q[k][c];
                Poly r = lhs - rhs;
                if (!r.is_zero()) rep.add("3", {k, a, bidx}, r.render());
            }
    }

    // (4) mu^*(d_{nabla_2} b) = d_{nabla_1}(mu_B^* b) + partial_1(mu12^* b)
    rep.note_axiom("4");
    HomField pb1 = src.partial_b();
    for (int mm = 0; mm < rb2; ++mm) {
        // mu_B^* f~_m as a section of B_1
        Section mu_b_star = zero_section(src.b);
        for (int k = 0; k < rb1; ++k) mu_b_star.comps[k] = m.mu_b[mm][k];
        // mu12^*(f~_m) as a scalar 2-form on Q_1
        VForm eta = scalar_vform(2, src.q);
        for (int a = 0; a < rq1; ++a)
            for (int bidx = a + 1; bidx < rq1; ++bidx) {
                Poly v = mu12_at(a, bidx, mm);
                if (!v.is_zero()) eta.set({a, bidx}, Section(eta.value, {v}));
            }
        VForm lowered = vform_lower_scalar(eta, pb1);
        for (int a = 0; a < rq1; ++a) {
            Section lhs = zero_section(src.b);
            for (int k1 = 0; k1 < rb1; ++k1) {
                Poly acc(n);
                for (int mp = 0; mp < rb2; ++mp)
                    for (int j = 0; j < rq2; ++j)
                        acc += m.mu_b[mp][k1] * m.mu_q[j][a] * pull(dst.nabla.symbols[j][mm][mp], m);
                lhs.comps[k1] = acc;
            }
            Section rhs = src.nabla.eval_frame(a, mu_b_star) + lowered.at({a});
            add_section_violation(rep, "4", {mm, a}, lhs - rhs);
        }
    }

    // (5) mu_Q^* omega_2 = mu_B o omega_1 - d_{mu_0^* nabla_2} mu12
    rep.note_axiom("5");
    {
        Bundle pulled = Bundle{n, rb2, "mu0*" + dst.b.label, !dst.b.dual};  // pulled-back B_2^*
        // pulled dual connection of nabla_2 along mu_Q, acting from Q_1
        LinearConnection pc = LinearConnection::zero(src.rho, pulled);
        LinearConnection nd2 = dst.nabla.dual();
        for (int a = 0; a < rq1; ++a)
            for (int k = 0; k < rb2; ++k)
                for (int s = 0; s < rb2; ++s) {
                    Poly acc(n);
                    for (int j = 0; j < rq2; ++j) acc += m.mu_q[j][a] * pull(nd2.symbols[j][k][s], m);
                    pc.symbols[a][k][s] = acc;
                }
        VForm mu12_local = VForm::zero(2, src.q, pulled);
        for (const auto& [idx, comps] : m.mu12.entries) mu12_local.set(idx, Section(pulled, comps));
        VForm dmu12 = covariant_differential(pc, src.bracket, mu12_local);

        for (const auto& t : increasing_tuples(rq1, 3)) {
            for (int r = 0; r < rb2; ++r) {
                Poly lhs(n);
                for (int i = 0; i < rq2; ++i)
                    for (int j = 0; j < rq2; ++j)
                        for (int k = 0; k < rq2; ++k) {
                            Section w = dst.omega.at({i, j, k});
                            if (w.is_zero()) continue;
                            lhs += m.mu_q[i][t[0]] * m.mu_q[j][t[1]] * m.mu_q[k][t[2]] * pull(w.comps[r], m);
                        }
                Poly rhs(n);
                Section w1 = src.omega.at(t);
                for (int k1 = 0; k1 < rb1; ++k1) rhs += m.mu_b[r][k1] * w1.comps[k1];
                rhs -= dmu12.at(t).comps[r];
                Poly res = lhs - rhs;
                if (!res.is_zero()) rep.add("5", {t[0], t[1], t[2], r}, res.render());
            }
        }
    }

    rep.sort_canonical();
    return rep;
}

Morphism compose_morphisms(const Morphism& outer, const Morphism& inner) {
    outer.validate_shape();
    inner.validate_shape();
    if (inner.dst_dim != outer.src_dim || inner.rank_q_dst != outer.rank_q_src ||
        inner.rank_b_dst != outer.rank_b_src)
        throw BundleMismatch("compose_morphisms: morphism chain mismatch");
    Morphism out;
    out.src_dim = inner.src_dim;
    out.dst_dim = outer.dst_dim;
    out.rank_q_src = inner.rank_q_src;
    out.rank_q_dst = outer.rank_q_dst;
    out.rank_b_src = inner.rank_b_src;
    out.rank_b_dst = outer.rank_b_dst;
    for (const auto& p : outer.mu0) out.mu0.push_back(p.compose(inner.mu0));

    auto pull_inner = [&](const Poly& p) { return p.compose(inner.mu0); };

    const int rq1 = out.rank_q_src, rq2 = inner.rank_q_dst, rq3 = out.rank_q_dst;
    const int rb1 = out.rank_b_src, rb2 = inner.rank_b_dst, rb3 = out.rank_b_dst;

    out.mu_q.assign(rq3, std::vector<Poly>(rq1, Poly(out.src_dim)));
    for (int i = 0; i < rq3; ++i)
        for (int j = 0; j < rq1; ++j)
            for (int k = 0; k < rq2; ++k) out.mu_q[i][j] += pull_inner(outer.mu_q[i][k]) * inner.mu_q[k][j];

    out.mu_b.assign(rb3, std::vector<Poly>(rb1, Poly(out.src_dim)));
    for (int i = 0; i < rb3; ++i)
        for (int j = 0; j < rb1; ++j)
            for (int k = 0; k < rb2; ++k) out.mu_b[i][j] += pull_inner(outer.mu_b[i][k]) * inner.mu_b[k][j];

    // mu12 = mu_B,outer o mu12,inner + mu12,outer o wedge^2 mu_Q,inner
    Bundle pulled = Bundle{out.src_dim, rb3, "mu0*B2", true};
    out.mu12 = VForm::zero(2, inner.mu12.arg, pulled);
    for (int a = 0; a < rq1; ++a)
        for (int b = a + 1; b < rq1; ++b) {
            Section v = zero_section(pulled);
            Section vin = inner.mu12.at({a, b});
            for (int r = 0; r < rb3; ++r)
                for (int k = 0; k < rb2; ++k) v.comps[r] += pull_inner(outer.mu_b[r][k]) * vin.comps[k];
            for (int i = 0; i < rq2; ++i)
                for (int j = i + 1; j < rq2; ++j) {
                    Section w = outer.mu12.at({i, j});
                    if (w.is_zero()) continue;
                    Poly c = inner.mu_q[i][a] * inner.mu_q[j][b] - inner.mu_q[i][b] * inner.mu_q[j][a];
                    if (c.is_zero()) continue;
                    for (int r = 0; r < rb3; ++r) v.comps[r] += c * pull_inner(w.comps[r]);
                }
            if (!v.is_zero()) out.mu12.set({a, b}, v);
        }
    return out;
}

}  // namespace l2a
