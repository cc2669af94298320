#include "l2a/anchored.hpp"

namespace l2a {

Anchor Anchor::zero(const Bundle& b) {
    Anchor a{b, {}};
    a.mat.assign(b.rank, std::vector<Poly>(b.chart_dim, Poly(b.chart_dim)));
    return a;
}

std::vector<Poly> Anchor::vector_field(const Section& s) const {
    require_same_bundle(bundle, s.bundle, "anchor");
    std::vector<Poly> x(bundle.chart_dim, Poly(bundle.chart_dim));
    for (int i = 0; i < bundle.rank; ++i)
        for (int a = 0; a < bundle.chart_dim; ++a) x[a] += s.comps[i] * mat[i][a];
    return x;
}

Poly Anchor::derive(const Section& s, const Poly& f) const {
    require_same_bundle(bundle, s.bundle, "anchor");
    Poly acc(bundle.chart_dim);
    for (int i = 0; i < bundle.rank; ++i)
        for (int a = 0; a < bundle.chart_dim; ++a) acc += s.comps[i] * mat[i][a] * f.partial(a);
    return acc;
}

Poly Anchor::derive_frame(int i, const Poly& f) const {
    Poly acc(bundle.chart_dim);
    for (int a = 0; a < bundle.chart_dim; ++a) acc += mat[i][a] * f.partial(a);
    return acc;
}

Section Anchor::pullback(const std::vector<Poly>& theta) const {
    if (static_cast<int>(theta.size()) != bundle.chart_dim)
        throw std::invalid_argument("anchor pullback: wrong 1-form dimension");
    Section out = zero_section(bundle.dualized());
    for (int i = 0; i < bundle.rank; ++i)
        for (int a = 0; a < bundle.chart_dim; ++a) out.comps[i] += mat[i][a] * theta[a];
    return out;
}

Section Anchor::pullback_d(const Poly& f) const {
    std::vector<Poly> df(bundle.chart_dim, Poly(bundle.chart_dim));
    for (int a = 0; a < bundle.chart_dim; ++a) df[a] = f.partial(a);
    return pullback(df);
}

std::vector<Poly> vf_bracket(int dim, const std::vector<Poly>& x, const std::vector<Poly>& y) {
    std::vector<Poly> out(dim, Poly(dim));
    for (int b = 0; b < dim; ++b)
        for (int a = 0; a < dim; ++a) out[b] += x[a] * y[b].partial(a) - y[a] * x[b].partial(a);
    return out;
}

DullBracket DullBracket::zero(const Anchor& a, bool skew) {
    DullBracket db{a, {}, skew};
    int r = a.bundle.rank, n = a.bundle.chart_dim;
    db.symbols.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, Poly(n))));
    return db;
}

Section DullBracket::eval_frames(int i, int j) const {
    Section out = zero_section(anchor.bundle);
    for (int k = 0; k < anchor.bundle.rank; ++k) out.comps[k] = symbols[i][j][k];
    return out;
}

Section DullBracket::eval(const Section& q1, const Section& q2) const {
    require_same_bundle(anchor.bundle, q1.bundle, "bracket_eval");
    require_same_bundle(anchor.bundle, q2.bundle, "bracket_eval");
    const int r = anchor.bundle.rank;
    Section out = zero_section(anchor.bundle);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Poly c = q1.comps[i] * q2.comps[j];
            if (c.is_zero()) continue;
            for (int k = 0; k < r; ++k) out.comps[k] += c * symbols[i][j][k];
        }
    // Leibniz terms: + rho(q1)(q2_j) e_j - rho(q2)(q1_i) e_i.
    for (int k = 0; k < r; ++k) out.comps[k] += anchor.derive(q1, q2.comps[k]) - anchor.derive(q2, q1.comps[k]);
    return out;
}

bool DullBracket::table_is_skew() const {
    const int r = anchor.bundle.rank;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < r; ++k)
                if (!(symbols[i][j][k] + symbols[j][i][k]).is_zero()) return false;
    return true;
}

DorfmanConnection DorfmanConnection::zero(const Anchor& a) {
    DorfmanConnection dc{a, {}};
    int r = a.bundle.rank, n = a.bundle.chart_dim;
    dc.symbols.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, Poly(n))));
    return dc;
}

Covector DorfmanConnection::eval_frames(int i, int j) const {
    Covector out = zero_section(anchor.bundle.dualized());
    for (int k = 0; k < anchor.bundle.rank; ++k) out.comps[k] = symbols[i][j][k];
    return out;
}

Covector DorfmanConnection::eval(const Section& q, const Covector& tau) const {
    require_same_bundle(anchor.bundle, q.bundle, "dorfman_eval");
    require_same_bundle(anchor.bundle.dualized(), tau.bundle, "dorfman_eval");
    const int r = anchor.bundle.rank;
    Covector out = zero_section(anchor.bundle.dualized());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Poly c = q.comps[i] * tau.comps[j];
            if (c.is_zero()) continue;
            for (int k = 0; k < r; ++k) out.comps[k] += c * symbols[i][j][k];
        }
    // Derivation term rho(q)(tau_j) eps_j and the lower-slot correction
    // tau_i rho^* d q_i.
    for (int k = 0; k < r; ++k) out.comps[k] += anchor.derive(q, tau.comps[k]);
    for (int i = 0; i < r; ++i) {
        if (q.comps[i].is_zero() && tau.comps[i].is_zero()) continue;
        Section corr = anchor.pullback_d(q.comps[i]).scaled(tau.comps[i]);
        out = out + corr;
    }
    return out;
}

DorfmanConnection dualize_pair(const DullBracket& db) {
    DorfmanConnection dc = DorfmanConnection::zero(db.anchor);
    const int r = db.anchor.bundle.rank;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) dc.symbols[i][j][k] = -db.symbols[i][k][j];
    return dc;
}

DullBracket dualize_pair(const DorfmanConnection& dc, bool skew_flag) {
    DullBracket db = DullBracket::zero(dc.anchor, skew_flag);
    const int r = dc.anchor.bundle.rank;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) db.symbols[i][j][k] = -dc.symbols[i][k][j];
    return db;
}

Covector dorfman_curvature(const DorfmanConnection& dc, const Section& q1, const Section& q2, const Covector& tau) {
    DullBracket db = dualize_pair(dc);
    Covector a = dc.eval(q1, dc.eval(q2, tau));
    Covector b = dc.eval(q2, dc.eval(q1, tau));
    Covector c = dc.eval(db.eval(q1, q2), tau);
    return a - b - c;
}

Section jacobiator(const DullBracket& db, const Section& q1, const Section& q2, const Section& q3) {
    return db.eval(db.eval(q1, q2), q3) + db.eval(q2, db.eval(q1, q3)) - db.eval(q1, db.eval(q2, q3));
}

LinearConnection LinearConnection::zero(const Anchor& a, const Bundle& module) {
    if (a.bundle.chart_dim != module.chart_dim) throw BundleMismatch("connection: bundles over different charts");
    LinearConnection cn{a, module, {}};
    cn.symbols.assign(a.bundle.rank, std::vector<std::vector<Poly>>(module.rank, std::vector<Poly>(module.rank, Poly(module.chart_dim))));
    return cn;
}

Section LinearConnection::eval_frame(int i, const Section& b) const {
    require_same_bundle(module, b.bundle, "conn_eval");
    Section out = zero_section(module);
    for (int j = 0; j < module.rank; ++j) {
        if (!b.comps[j].is_zero())
            for (int k = 0; k < module.rank; ++k) out.comps[k] += b.comps[j] * symbols[i][j][k];
        out.comps[j] += anchor.derive_frame(i, b.comps[j]);
    }
    return out;
}

Section LinearConnection::eval(const Section& q, const Section& b) const {
    require_same_bundle(anchor.bundle, q.bundle, "conn_eval");
    require_same_bundle(module, b.bundle, "conn_eval");
    Section out = zero_section(module);
    for (int j = 0; j < module.rank; ++j) {
        if (!b.comps[j].is_zero())
            for (int i = 0; i < anchor.bundle.rank; ++i) {
                Poly c = q.comps[i] * b.comps[j];
                if (c.is_zero()) continue;
                for (int k = 0; k < module.rank; ++k) out.comps[k] += c * symbols[i][j][k];
            }
        out.comps[j] += anchor.derive(q, b.comps[j]);
    }
    return out;
}

LinearConnection LinearConnection::dual() const {
    LinearConnection d = LinearConnection::zero(anchor, module.dualized());
    for (int i = 0; i < anchor.bundle.rank; ++i)
        for (int j = 0; j < module.rank; ++j)
            for (int k = 0; k < module.rank; ++k) d.symbols[i][j][k] = -symbols[i][k][j];
    return d;
}

Section conn_curvature(const LinearConnection& cn, const DullBracket& db, const Section& q1, const Section& q2,
                       const Section& b) {
    require_same_bundle(cn.anchor.bundle, db.anchor.bundle, "conn_curvature");
    Section a = cn.eval(q1, cn.eval(q2, b));
    Section bb = cn.eval(q2, cn.eval(q1, b));
    Section c = cn.eval(db.eval(q1, q2), b);
    return a - bb - c;
}

VForm covariant_differential(const LinearConnection& cn, const DullBracket& db, const VForm& f) {
    require_same_bundle(f.arg, db.anchor.bundle, "covariant_differential");
    require_same_bundle(f.value, cn.module, "covariant_differential");
    const Bundle& q = f.arg;
    VForm out = VForm::zero(f.arity + 1, q, f.value);
    for (const auto& idx : increasing_tuples(q.rank, f.arity + 1)) {
        Section acc = zero_section(f.value);
        // sum_i (-1)^{i+1} nabla_{q_i} f(...hat i...)
        for (int i = 0; i < f.arity + 1; ++i) {
            std::vector<int> rest;
            for (int t = 0; t < f.arity + 1; ++t)
                if (t != i) rest.push_back(idx[t]);
            Section v = f.at(rest);
            if (!v.is_zero()) {
                Section term = cn.eval_frame(idx[i], v);
                acc = (i % 2 == 0) ? acc + term : acc - term;
            }
        }
        // sum_{i<j} (-1)^{i+j} f([[q_i,q_j]], ...hat i, hat j...)
        for (int i = 0; i < f.arity + 1; ++i)
            for (int j = i + 1; j < f.arity + 1; ++j) {
                Section br = db.eval_frames(idx[i], idx[j]);
                if (br.is_zero()) continue;
                std::vector<Section> args;
                args.push_back(br);
                for (int t = 0; t < f.arity + 1; ++t)
                    if (t != i && t != j) args.push_back(frame_section(q, idx[t]));
                Section term = f.eval(args);
                acc = ((i + j) % 2 == 1) ? acc + term : acc - term;
            }
        if (!acc.is_zero()) out.set(idx, acc);
    }
    return out;
}

Bundle scalar_bundle(int chart_dim) { return Bundle{chart_dim, 1, "1", false}; }

LinearConnection scalar_connection(const Anchor& a) {
    return LinearConnection::zero(a, scalar_bundle(a.bundle.chart_dim));
}

VForm scalar_vform(int arity, const Bundle& arg) { return VForm::zero(arity, arg, scalar_bundle(arg.chart_dim)); }

VForm vform_pair_value(const VForm& f, const Section& w_dual) {
    require_same_bundle(f.value.dualized(), w_dual.bundle, "vform_pair_value");
    VForm out = scalar_vform(f.arity, f.arg);
    for (const auto& [idx, comps] : f.entries) {
        Poly p = section_pairing(Section(f.value, comps), w_dual);
        if (!p.is_zero()) out.set(idx, Section(out.value, {p}));
    }
    return out;
}

VForm vform_lower_scalar(const VForm& eta, const HomField& phi) {
    require_same_bundle(eta.value, scalar_bundle(eta.arg.chart_dim), "vform_lower_scalar: scalar form expected");
    require_same_bundle(phi.src, eta.arg.dualized(), "vform_lower_scalar");
    if (eta.arity == 0) throw std::invalid_argument("vform_lower_scalar: arity must be positive");
    VForm out = VForm::zero(eta.arity - 1, eta.arg, phi.dst);
    for (const auto& idx : increasing_tuples(eta.arg.rank, eta.arity - 1)) {
        Section acc = zero_section(phi.dst);
        for (int a = 0; a < eta.arg.rank; ++a) {
            std::vector<int> full;
            full.push_back(a);
            full.insert(full.end(), idx.begin(), idx.end());
            Section v = eta.at(full);
            if (v.is_zero()) continue;
            acc = acc + phi.apply(frame_section(phi.src, a)).scaled(v.comps[0]);
        }
        if (!acc.is_zero()) out.set(idx, acc);
    }
    return out;
}

Report check_anchored_compat(const DullBracket& db, const DorfmanConnection& dc) {
    Report rep;
    rep.check = "anchored_compat";
    rep.note_axiom("anchor");
    rep.note_axiom("dorfman3");
    const Bundle& q = db.anchor.bundle;
    const int n = q.chart_dim;
    for (int i = 0; i < q.rank; ++i)
        for (int j = 0; j < q.rank; ++j) {
            std::vector<Poly> lhs = db.anchor.vector_field(db.eval_frames(i, j));
            std::vector<Poly> xi = db.anchor.vector_field(frame_section(q, i));
            std::vector<Poly> xj = db.anchor.vector_field(frame_section(q, j));
            std::vector<Poly> rhs = vf_bracket(n, xi, xj);
            for (int a = 0; a < n; ++a) {
                Poly r = lhs[a] - rhs[a];
                if (!r.is_zero()) rep.add("anchor", {i, j, a}, r.render());
            }
        }
    for (int i = 0; i < q.rank; ++i)
        for (int a = 0; a < n; ++a) {
            Poly xa = Poly::variable(n, a);
            Covector lhs = dc.eval(frame_section(q, i), dc.anchor.pullback_d(xa));
            Covector rhs = dc.anchor.pullback_d(dc.anchor.derive_frame(i, xa));
            Covector r = lhs - rhs;
            if (!r.is_zero()) rep.add("dorfman3", {i, a}, r.render());
        }
    rep.sort_canonical();
    return rep;
}

}  // namespace l2a
