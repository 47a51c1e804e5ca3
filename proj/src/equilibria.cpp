#include "orbitcensus/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

const char* eq_kind_name(EqKind k) {
    switch (k) {
        case EqKind::sink: return "sink";
        case EqKind::source: return "source";
        case EqKind::saddle: return "saddle";
        default: return "inconclusive";
    }
}

NewtonStep interval_newton_step(const PolyVectorField& f, const RatInterval& x,
                                const RatInterval& y) {
    NewtonStep out;
    out.x = x;
    out.y = y;
    RatInterval j11 = f.df1dx().eval(x, y), j12 = f.df1dy().eval(x, y);
    RatInterval j21 = f.df2dx().eval(x, y), j22 = f.df2dy().eval(x, y);
    RatInterval det = j11 * j22 - j12 * j21;
    if (det.contains_zero()) return out;  // no progress possible here
    Rat mx = x.mid(), my = y.mid();
    Rat f1 = f.f1().eval(mx, my), f2 = f.f2().eval(mx, my);
    RatInterval inv_det = rat_interval_inv(det);
    // N(X) = m - J(X)^{-1} f(m)
    RatInterval dx = (j22 * RatInterval(f1) - j12 * RatInterval(f2)) * inv_det;
    RatInterval dy = (j11 * RatInterval(f2) - j21 * RatInterval(f1)) * inv_det;
    RatInterval nx{mx - dx.hi, mx - dx.lo};
    RatInterval ny{my - dy.hi, my - dy.lo};
    if (nx.hi < x.lo || nx.lo > x.hi || ny.hi < y.lo || ny.lo > y.hi) {
        out.excluded = true;
        return out;
    }
    out.certified_unique = nx.lo > x.lo && nx.hi < x.hi && ny.lo > y.lo && ny.hi < y.hi;
    RatInterval ix{rat_max(nx.lo, x.lo), rat_min(nx.hi, x.hi)};
    RatInterval iy{rat_max(ny.lo, y.lo), rat_min(ny.hi, y.hi)};
    out.progressed = ix.width() < x.width() || iy.width() < y.width();
    out.x = ix;
    out.y = iy;
    return out;
}

namespace {

struct WorkBox {
    RatInterval x, y;
};

bool box_outside_disk(const RatInterval& x, const RatInterval& y) {
    Rat nx = x.mig(), ny = y.mig();
    return nx * nx + ny * ny > 1;
}

// Tighten a uniqueness-certified box by iterating the Newton operator.
WorkBox refine_certified(const PolyVectorField& f, WorkBox b, const Rat& target_width) {
    for (int it = 0; it < 80; ++it) {
        if (b.x.width() <= target_width && b.y.width() <= target_width) break;
        NewtonStep s = interval_newton_step(f, b.x, b.y);
        if (s.excluded || !s.progressed) break;
        b.x = s.x;
        b.y = s.y;
    }
    return b;
}

}  // namespace

ZeroCensus zero_census(const PolyVectorField& f, long k, const ZeroCensusOptions& opt) {
    if (k < 1) throw input_error("zero_census: k must be positive");
    ZeroCensus out;
    out.eps = Rat(1, k);

    // The root box is chosen so that no subdivision edge ever passes through
    // a dyadic rational point such as the origin: midpoints have the form
    // -8/7 + (127/56) q with q dyadic, which is never a dyadic rational.
    WorkBox root{RatInterval{Rat(-8, 7), Rat(9, 8)}, RatInterval{Rat(-8, 7), Rat(9, 8)}};
    std::deque<WorkBox> work{root};
    std::vector<WorkBox> certified;
    std::vector<WorkBox> unresolved;
    const Rat min_width = rat_pow2(-opt.min_width_bits);
    long processed = 0;

    while (!work.empty()) {
        WorkBox b = work.front();
        work.pop_front();
        if (++processed > opt.max_boxes)
            throw inconclusive_error("zero census budget exhausted with boxes pending");
        if (box_outside_disk(b.x, b.y)) continue;
        RatInterval v1 = f.f1().eval(b.x, b.y);
        if (!v1.contains_zero()) continue;
        RatInterval v2 = f.f2().eval(b.x, b.y);
        if (!v2.contains_zero()) continue;
        NewtonStep s = interval_newton_step(f, b.x, b.y);
        if (s.excluded) continue;
        if (s.certified_unique) {
            certified.push_back(refine_certified(f, {s.x, s.y}, rat_pow2(-opt.min_width_bits)));
            continue;
        }
        if (b.x.width() <= min_width && b.y.width() <= min_width) {
            unresolved.push_back(b);
            continue;
        }
        // Split the wider axis.
        if (b.x.width() >= b.y.width()) {
            Rat m = b.x.mid();
            work.push_back({RatInterval{b.x.lo, m}, b.y});
            work.push_back({RatInterval{m, b.x.hi}, b.y});
        } else {
            Rat m = b.y.mid();
            work.push_back({b.x, RatInterval{b.y.lo, m}});
            work.push_back({b.x, RatInterval{m, b.y.hi}});
        }
    }

    if (!unresolved.empty())
        throw inconclusive_error("zero census: " + std::to_string(unresolved.size()) +
                                 " boxes unresolved at minimum width");
    if (certified.empty())
        throw inconclusive_error("zero census found no certifiable zero (inward fields have one)");

    // Certified boxes from a spatial partition cannot share a zero; assemble
    // records deterministically by box order.
    std::sort(certified.begin(), certified.end(), [](const WorkBox& a, const WorkBox& b) {
        return a.x.lo != b.x.lo ? a.x.lo < b.x.lo : a.y.lo < b.y.lo;
    });
    Rat snap = rat_pow2(-40);
    for (const WorkBox& b : certified) {
        Cell box{{b.x.mid(), b.y.mid()}, rat_max(b.x.width(), b.y.width()) / 2 + rat_pow2(-60)};
        EquilibriumRecord rec = classify(f, box);
        out.records.push_back(rec);
        RatPoint center{rat_round_to_step(b.x.mid(), snap), rat_round_to_step(b.y.mid(), snap)};
        out.set.cells.push_back(Cell{center, Rat(3, 4) / k});
    }
    out.set.normalize();
    out.count = static_cast<long>(out.records.size());
    return out;
}

EquilibriumRecord classify(const PolyVectorField& f, const Cell& box) {
    EquilibriumRecord rec;
    // Tighten around the zero first so the Jacobian interval is sharp.
    WorkBox b{RatInterval{box.xlo(), box.xhi()}, RatInterval{box.ylo(), box.yhi()}};
    b = refine_certified(f, b, rat_pow2(-44));
    rec.box = Cell{{b.x.mid(), b.y.mid()}, rat_max(b.x.width(), b.y.width()) / 2 + rat_pow2(-60)};

    RatInterval j11 = f.df1dx().eval(b.x, b.y), j12 = f.df1dy().eval(b.x, b.y);
    RatInterval j21 = f.df2dx().eval(b.x, b.y), j22 = f.df2dy().eval(b.x, b.y);
    RatInterval tr = j11 + j22;
    RatInterval det = j11 * j22 - j12 * j21;
    RatInterval disc = tr * tr - Rat(4) * det;
    const Rat margin_floor = rat_pow2(-30);

    double t_mid = rat_to_double(tr.mid());
    double d_mid = rat_to_double(det.mid());
    double disc_mid = t_mid * t_mid - 4 * d_mid;

    if (det.hi < 0) {
        // Opposite-sign real eigenvalues: a saddle. disc >= tr^2 - 4 det > 0.
        RatInterval sq = rat_sqrt_enclosure(disc.lo, 48);
        sq = rat_interval_hull(sq, rat_sqrt_enclosure(disc.hi, 48));
        RatInterval lam = (tr - sq) * Rat(1, 2);   // negative root
        RatInterval mu = (tr + sq) * Rat(1, 2);    // positive root
        Rat margin = rat_min(lam.mig(), mu.mig());
        if (lam.hi >= 0 || mu.lo <= 0 || margin < margin_floor) {
            rec.kind = EqKind::inconclusive;
            return rec;
        }
        rec.kind = EqKind::saddle;
        rec.real_eigenvalues = true;
        rec.re_margin = margin;
        double sd = std::sqrt(std::max(0.0, disc_mid));
        double lam_d = (t_mid - sd) / 2, mu_d = (t_mid + sd) / 2;
        rec.eig_re[0] = lam_d;
        rec.eig_re[1] = mu_d;
        double a = rat_to_double(j11.mid()), bq = rat_to_double(j12.mid());
        double c = rat_to_double(j21.mid()), d = rat_to_double(j22.mid());
        auto eigvec = [&](double e) {
            double vx, vy;
            if (std::abs(bq) + std::abs(e - a) >= std::abs(c) + std::abs(e - d)) {
                vx = bq;
                vy = e - a;
            } else {
                vx = e - d;
                vy = c;
            }
            if (std::abs(vx) + std::abs(vy) < 1e-300) {
                vx = 1;
                vy = 0;
            }
            double n = std::hypot(vx, vy);
            return DPoint{vx / n, vy / n};
        };
        rec.stable_vec = eigvec(lam_d);
        rec.unstable_vec = eigvec(mu_d);
        return rec;
    }

    if (det.lo > 0) {
        // Same-sign real parts; the sign is the sign of the trace.
        RatInterval re_hull = tr * Rat(1, 2);
        if (disc.hi > 0) {
            RatInterval sq = rat_sqrt_enclosure(rat_max(disc.hi, Rat(0)), 48);
            re_hull = RatInterval{(tr.lo - sq.hi) / 2, (tr.hi + sq.hi) / 2};
        }
        Rat margin = re_hull.mig();
        if (margin < margin_floor || re_hull.contains_zero()) {
            rec.kind = EqKind::inconclusive;
            return rec;
        }
        rec.kind = re_hull.hi < 0 ? EqKind::sink : EqKind::source;
        rec.re_margin = margin;
        if (disc_mid >= 0) {
            double sd = std::sqrt(disc_mid);
            rec.real_eigenvalues = true;
            rec.eig_re[0] = (t_mid - sd) / 2;
            rec.eig_re[1] = (t_mid + sd) / 2;
        } else {
            double si = std::sqrt(-disc_mid);
            rec.eig_re[0] = rec.eig_re[1] = t_mid / 2;
            rec.eig_im[0] = si / 2;
            rec.eig_im[1] = -si / 2;
        }
        return rec;
    }

    rec.kind = EqKind::inconclusive;  // det interval straddles zero
    return rec;
}

}  // namespace orbitcensus
