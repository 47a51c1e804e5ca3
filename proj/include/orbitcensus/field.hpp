#ifndef ORBITCENSUS_FIELD_HPP
#define ORBITCENSUS_FIELD_HPP

#include <array>
#include <vector>

#include "orbitcensus/interval.hpp"
#include "orbitcensus/rational.hpp"

namespace orbitcensus {

struct DPoint {
    double x = 0, y = 0;
};

struct Monomial {
    int i = 0, j = 0;  // x^i * y^j
    Rat c;
};

// Bivariate polynomial with exact rational coefficients.
struct RatPoly2 {
    std::vector<Monomial> terms;  // no zero coefficients, sorted by (i, j)

    void normalize();
    int degree() const;
    Rat eval(const Rat& x, const Rat& y) const;
    RatInterval eval(const RatInterval& x, const RatInterval& y) const;
    RatPoly2 dx() const;
    RatPoly2 dy() const;
    Rat coeff_abs_sum() const;
};

// Compiled double-precision evaluator (row Horner form).
struct DPoly {
    int degx = -1;
    std::vector<std::vector<double>> rows;  // rows[i][j] = coeff of x^i y^j

    static DPoly compile(const RatPoly2& p);
    double eval(double x, double y) const {
        double acc = 0.0;
        for (int i = degx; i >= 0; --i) {
            const std::vector<double>& r = rows[i];
            double g = 0.0;
            for (std::size_t j = r.size(); j-- > 0;) g = g * y + r[j];
            acc = acc * x + g;
        }
        return acc;
    }
};

struct RatMat2 {
    Rat a, b, c, d;  // [[a, b], [c, d]]
};

class PolyVectorField {
  public:
    PolyVectorField() = default;
    PolyVectorField(RatPoly2 f1, RatPoly2 f2);

    const RatPoly2& f1() const { return f1_; }
    const RatPoly2& f2() const { return f2_; }
    int degree() const { return degree_; }

    // Partials, computed once at construction.
    const RatPoly2& df1dx() const { return df1dx_; }
    const RatPoly2& df1dy() const { return df1dy_; }
    const RatPoly2& df2dx() const { return df2dx_; }
    const RatPoly2& df2dy() const { return df2dy_; }

    // Fast double path used by the steppers; no domain check.
    DPoint eval_raw(double x, double y) const { return {d1_.eval(x, y), d2_.eval(x, y)}; }
    DPoint jac_row1_raw(double x, double y) const {
        return {dd1x_.eval(x, y), dd1y_.eval(x, y)};
    }
    DPoint jac_row2_raw(double x, double y) const {
        return {dd2x_.eval(x, y), dd2y_.eval(x, y)};
    }

    PolyVectorField negated() const;

  private:
    RatPoly2 f1_, f2_;
    RatPoly2 df1dx_, df1dy_, df2dx_, df2dy_;
    DPoly d1_, d2_, dd1x_, dd1y_, dd2x_, dd2y_;
    int degree_ = 0;
};

struct FieldBounds {
    Rat M;              // >= max(||f||, ||Df||) on the disk, any of the two norms
    Rat L;              // Lipschitz constant on the disk
    Rat inward_margin;  // certified lower bound of -f(x).x on the boundary circle
};

// Exact evaluation at a rational point; enforces |x| <= 1 + 2^-20 (l2).
std::array<Rat, 2> evaluate(const PolyVectorField& f, const RatPoint& p);
// Rounded evaluation; the result is within a few ulps per monomial
// (< 2^-48 for the coefficient sizes admitted here) of the exact value.
DPoint evaluate(const PolyVectorField& f, const DPoint& p);

RatMat2 jacobian(const PolyVectorField& f, const RatPoint& p);
std::array<DPoint, 2> jacobian(const PolyVectorField& f, const DPoint& p);

// Coefficient-sum bounds only (no boundary analysis, never throws).
FieldBounds coefficient_bounds(const PolyVectorField& f);

struct InwardCheckOptions {
    int max_intervals = 40000;
    long target_bits = 12;  // stop once the margin enclosure is this tight
};

// Full bounds: M, L and a validated positive lower bound of -f(x).x on the
// unit circle. Throws inward_violation (with a witness) or inconclusive_error.
FieldBounds compute_bounds(const PolyVectorField& f, const InwardCheckOptions& opt = {});

}  // namespace orbitcensus

#endif
