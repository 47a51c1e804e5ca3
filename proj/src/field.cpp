#include "orbitcensus/field.hpp"

#include <algorithm>
#include <queue>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

void RatPoly2::normalize() {
    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::vector<Monomial> out;
    for (Monomial& m : terms) {
        if (!out.empty() && out.back().i == m.i && out.back().j == m.j)
            out.back().c += m.c;
        else
            out.push_back(std::move(m));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Monomial& m) { return m.c == 0; }),
              out.end());
    terms = std::move(out);
}

int RatPoly2::degree() const {
    int d = 0;
    for (const Monomial& m : terms) d = std::max(d, m.i + m.j);
    return d;
}

Rat RatPoly2::eval(const Rat& x, const Rat& y) const {
    // Powers are cached up to the degree; term count stays small here.
    int d = degree();
    std::vector<Rat> px(d + 1, Rat(1)), py(d + 1, Rat(1));
    for (int k = 1; k <= d; ++k) {
        px[k] = px[k - 1] * x;
        py[k] = py[k - 1] * y;
    }
    Rat acc(0);
    for (const Monomial& m : terms) acc += m.c * px[m.i] * py[m.j];
    return acc;
}

RatInterval RatPoly2::eval(const RatInterval& x, const RatInterval& y) const {
    int d = degree();
    std::vector<RatInterval> px(d + 1, RatInterval(Rat(1))), py(d + 1, RatInterval(Rat(1)));
    for (int k = 1; k <= d; ++k) {
        px[k] = rat_interval_pow(x, k);
        py[k] = rat_interval_pow(y, k);
    }
    RatInterval acc(Rat(0));
    for (const Monomial& m : terms) acc = acc + m.c * (px[m.i] * py[m.j]);
    return acc;
}

RatPoly2 RatPoly2::dx() const {
    RatPoly2 r;
    for (const Monomial& m : terms)
        if (m.i > 0) r.terms.push_back({m.i - 1, m.j, m.c * m.i});
    r.normalize();
    return r;
}

RatPoly2 RatPoly2::dy() const {
    RatPoly2 r;
    for (const Monomial& m : terms)
        if (m.j > 0) r.terms.push_back({m.i, m.j - 1, m.c * m.j});
    r.normalize();
    return r;
}

Rat RatPoly2::coeff_abs_sum() const {
    Rat s(0);
    for (const Monomial& m : terms) s += rat_abs(m.c);
    return s;
}

DPoly DPoly::compile(const RatPoly2& p) {
    DPoly d;
    for (const Monomial& m : p.terms) d.degx = std::max(d.degx, m.i);
    d.rows.assign(d.degx + 1, {});
    for (const Monomial& m : p.terms) {
        auto& row = d.rows[m.i];
        if (static_cast<int>(row.size()) <= m.j) row.resize(m.j + 1, 0.0);
        row[m.j] = rat_to_double(m.c);
    }
    return d;
}

PolyVectorField::PolyVectorField(RatPoly2 f1, RatPoly2 f2) : f1_(std::move(f1)), f2_(std::move(f2)) {
    f1_.normalize();
    f2_.normalize();
    degree_ = std::max(f1_.degree(), f2_.degree());
    df1dx_ = f1_.dx();
    df1dy_ = f1_.dy();
    df2dx_ = f2_.dx();
    df2dy_ = f2_.dy();
    d1_ = DPoly::compile(f1_);
    d2_ = DPoly::compile(f2_);
    dd1x_ = DPoly::compile(df1dx_);
    dd1y_ = DPoly::compile(df1dy_);
    dd2x_ = DPoly::compile(df2dx_);
    dd2y_ = DPoly::compile(df2dy_);
}

PolyVectorField PolyVectorField::negated() const {
    RatPoly2 g1 = f1_, g2 = f2_;
    for (Monomial& m : g1.terms) m.c = -m.c;
    for (Monomial& m : g2.terms) m.c = -m.c;
    return PolyVectorField(std::move(g1), std::move(g2));
}

namespace {

const Rat& domain_slack_sq() {
    static const Rat s = [] {
        Rat b = 1 + rat_pow2(-20);
        return Rat(b * b);
    }();
    return s;
}

}  // namespace

std::array<Rat, 2> evaluate(const PolyVectorField& f, const RatPoint& p) {
    if (p.x * p.x + p.y * p.y > domain_slack_sq())
        throw input_error("evaluate: point outside the slack disk");
    return {f.f1().eval(p.x, p.y), f.f2().eval(p.x, p.y)};
}

DPoint evaluate(const PolyVectorField& f, const DPoint& p) {
    if (p.x * p.x + p.y * p.y > rat_to_double(domain_slack_sq()) * (1 + 1e-12))
        throw input_error("evaluate: point outside the slack disk");
    return f.eval_raw(p.x, p.y);
}

RatMat2 jacobian(const PolyVectorField& f, const RatPoint& p) {
    if (p.x * p.x + p.y * p.y > domain_slack_sq())
        throw input_error("jacobian: point outside the slack disk");
    return {f.df1dx().eval(p.x, p.y), f.df1dy().eval(p.x, p.y), f.df2dx().eval(p.x, p.y),
            f.df2dy().eval(p.x, p.y)};
}

std::array<DPoint, 2> jacobian(const PolyVectorField& f, const DPoint& p) {
    if (p.x * p.x + p.y * p.y > rat_to_double(domain_slack_sq()) * (1 + 1e-12))
        throw input_error("jacobian: point outside the slack disk");
    return {f.jac_row1_raw(p.x, p.y), f.jac_row2_raw(p.x, p.y)};
}

FieldBounds coefficient_bounds(const PolyVectorField& f) {
    // l1 combination across components: sound for both the max-norm and the
    // l2-norm readings of ||f|| and ||Df|| on |x|,|y| <= 1.
    Rat mf = f.f1().coeff_abs_sum() + f.f2().coeff_abs_sum();
    Rat l = f.df1dx().coeff_abs_sum() + f.df1dy().coeff_abs_sum() + f.df2dx().coeff_abs_sum() +
            f.df2dy().coeff_abs_sum();
    FieldBounds b;
    b.L = l;
    b.M = rat_max(mf, l);
    b.inward_margin = 0;
    return b;
}

namespace {

// Composition of f with the rational circle chart
//   x = sigma (1 - t^2) / (1 + t^2),  y = 2t / (1 + t^2),  t in [-1, 1],
// sigma = +1 covers the right half circle, -1 the left. Returns the numerator
// polynomial N(t) of -f(c(t)).c(t); the denominator (1+t^2)^(deg+1) is
// positive, so sign and minimum questions reduce to N.
RatPoly1 inward_numerator(const PolyVectorField& f, int sigma) {
    const int deg = std::max(1, f.degree());
    RatPoly1 one_minus{{Rat(1), Rat(0), Rat(-1)}};   // 1 - t^2
    RatPoly1 one_plus{{Rat(1), Rat(0), Rat(1)}};     // 1 + t^2
    RatPoly1 two_t{{Rat(0), Rat(2)}};                // 2t
    RatPoly1 xnum = sigma > 0 ? one_minus : poly1_scale(one_minus, Rat(-1));

    std::vector<RatPoly1> powx(deg + 1), powy(deg + 1), powd(deg + 2);
    powx[0] = powy[0] = powd[0] = RatPoly1{{Rat(1)}};
    for (int k = 1; k <= deg; ++k) {
        powx[k] = poly1_mul(powx[k - 1], xnum);
        powy[k] = poly1_mul(powy[k - 1], two_t);
    }
    for (int k = 1; k <= deg + 1; ++k) powd[k] = poly1_mul(powd[k - 1], one_plus);

    auto compose = [&](const RatPoly2& p) {
        // p(c(t)) = P(t) / (1+t^2)^deg with
        // P = sum c_ij xnum^i (2t)^j (1+t^2)^(deg-i-j).
        RatPoly1 acc;
        for (const Monomial& m : p.terms) {
            RatPoly1 term = poly1_mul(powx[m.i], powy[m.j]);
            term = poly1_mul(term, powd[deg - m.i - m.j]);
            acc = poly1_add(acc, poly1_scale(term, m.c));
        }
        return acc;
    };

    RatPoly1 p1 = compose(f.f1());
    RatPoly1 p2 = compose(f.f2());
    // -f.c = -(f1*x + f2*y); numerator over (1+t^2)^(deg+1).
    RatPoly1 n = poly1_add(poly1_mul(p1, xnum), poly1_mul(p2, two_t));
    return poly1_scale(n, Rat(-1));
}

struct ChartInterval {
    int chart;  // 0 or 1
    RatInterval t;
    Rat lo;  // certified lower bound of g on this interval
};

}  // namespace

FieldBounds compute_bounds(const PolyVectorField& f, const InwardCheckOptions& opt) {
    FieldBounds b = coefficient_bounds(f);
    const int deg = std::max(1, f.degree());
    RatPoly1 num[2] = {inward_numerator(f, +1), inward_numerator(f, -1)};
    // (1 + t^2)^(deg+1) is monotone in t^2; bound it directly and tightly.
    auto denom_bounds = [&](const RatInterval& t) {
        Rat lo(1), hi(1);
        Rat mig = t.mig(), mag = t.mag();
        Rat blo = 1 + mig * mig, bhi = 1 + mag * mag;
        for (int k = 0; k < deg + 1; ++k) {
            lo *= blo;
            hi *= bhi;
        }
        return RatInterval{lo, hi};
    };
    auto denom_exact = [&](const Rat& t) -> Rat {
        Rat d(1), b = 1 + t * t;
        for (int k = 0; k < deg + 1; ++k) d *= b;
        return d;
    };
    auto g_bounds = [&](int chart, const RatInterval& t) {
        RatInterval n = poly1_eval(num[chart], t);
        RatInterval d = denom_bounds(t);  // d.lo >= 1
        Rat lo = n.lo >= 0 ? n.lo / d.hi : n.lo / d.lo;
        Rat hi = n.hi >= 0 ? n.hi / d.lo : n.hi / d.hi;
        return RatInterval{lo, hi};
    };
    auto g_exact = [&](int chart, const Rat& t) -> Rat {
        return poly1_eval(num[chart], t) / denom_exact(t);
    };

    // Branch & bound for the global minimum of g over both charts.
    auto cmp = [](const ChartInterval& a, const ChartInterval& b) { return a.lo > b.lo; };
    std::priority_queue<ChartInterval, std::vector<ChartInterval>, decltype(cmp)> queue(cmp);
    Rat point_min = rat_min(g_exact(0, Rat(0)), g_exact(1, Rat(0)));
    for (int chart = 0; chart < 2; ++chart) {
        RatInterval t{Rat(-1), Rat(1)};
        queue.push({chart, t, g_bounds(chart, t).lo});
        point_min = rat_min(point_min, rat_min(g_exact(chart, Rat(-1)), g_exact(chart, Rat(1))));
    }
    if (point_min <= 0) {
        // Exact witness at a chart point.
        for (int chart = 0; chart < 2; ++chart)
            for (Rat t : {Rat(-1), Rat(0), Rat(1)})
                if (g_exact(chart, t) <= 0) {
                    Rat dd = 1 + t * t;
                    double wx = rat_to_double((chart == 0 ? Rat(1) : Rat(-1)) * (1 - t * t) / dd);
                    double wy = rat_to_double(2 * t / dd);
                    throw inward_violation(wx, wy);
                }
    }

    const Rat tol = point_min * rat_pow2(-opt.target_bits);
    int processed = 0;
    Rat global_lo = queue.top().lo;
    while (!queue.empty()) {
        ChartInterval ci = queue.top();
        global_lo = ci.lo;
        if (global_lo > 0 && point_min - global_lo <= tol) break;
        queue.pop();
        if (++processed > opt.max_intervals)
            throw inconclusive_error("inward check budget exhausted");
        Rat mid = ci.t.mid();
        Rat gm = g_exact(ci.chart, mid);
        if (gm <= 0) {
            Rat dd = 1 + mid * mid;
            double wx = rat_to_double((ci.chart == 0 ? Rat(1) : Rat(-1)) * (1 - mid * mid) / dd);
            double wy = rat_to_double(2 * mid / dd);
            throw inward_violation(wx, wy);
        }
        point_min = rat_min(point_min, gm);
        RatInterval left{ci.t.lo, mid}, right{mid, ci.t.hi};
        queue.push({ci.chart, left, g_bounds(ci.chart, left).lo});
        queue.push({ci.chart, right, g_bounds(ci.chart, right).lo});
    }
    if (global_lo <= 0) throw inconclusive_error("inward margin not certified within budget");
    b.inward_margin = global_lo;
    return b;
}

}  // namespace orbitcensus
