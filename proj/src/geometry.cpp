#include "e2/geometry.hpp"

#include <stdexcept>

namespace e2 {

Box::Box(QuadraticReal x0_, QuadraticReal x1_, QuadraticReal y0_, QuadraticReal y1_)
    : x0(std::move(x0_)), x1(std::move(x1_)), y0(std::move(y0_)), y1(std::move(y1_)) {
    if (x1 < x0 || y1 < y0) throw std::invalid_argument("box corners out of order");
}

Region::Region(FieldElement center, FieldElement q2)
    : center_(std::move(center)), q2_(std::move(q2)), q1_base_(center_), n_(0) {
    if (q2_.is_zero()) throw std::invalid_argument("region denominator q2 is zero");
    if (!q2_.is_integral()) throw std::invalid_argument("region denominator q2 is not integral");
    q1_base_ = center_ - q2_.inverse();
    if (!q1_base_.is_integral()) throw std::invalid_argument("center - 1/q2 is not integral");
    n_ = q2_.norm().abs().numerator();
}

Box fundamental_box(const QuadField& F) {
    long m = F.m;
    FieldElement w = F.omega();
    QuadraticReal one = QuadraticReal::rational(1, m);
    return Box(QuadraticReal::rational(0, m), one + w.embed(Embedding::v1), w.embed(Embedding::v2), one);
}

bool hyperbola_contains_point(const Point2& center, const Rational& radius, const Point2& p) {
    QuadraticReal prod = (p.x - center.x) * (p.y - center.y);
    return (prod - radius).sign() < 0 && (prod + radius).sign() > 0;
}

bool hyperbola_contains_box(const Point2& center, const Rational& radius, const Box& R) {
    QuadraticReal dx0 = R.x0 - center.x;
    QuadraticReal dx1 = R.x1 - center.x;
    QuadraticReal dy0 = R.y0 - center.y;
    QuadraticReal dy1 = R.y1 - center.y;
    auto inside = [&](const QuadraticReal& dx, const QuadraticReal& dy) {
        QuadraticReal prod = dx * dy;
        return (prod - radius).sign() < 0 && (prod + radius).sign() > 0;
    };
    return inside(dx0, dy0) && inside(dx1, dy0) && inside(dx0, dy1) && inside(dx1, dy1);
}

bool region_contains_point(const Region& V, const Point2& p) {
    return hyperbola_contains_point(embed(V.center()), Rational(Integer(1), V.n()), p);
}

bool region_contains_box(const Region& V, const Box& R) {
    return hyperbola_contains_box(embed(V.center()), Rational(Integer(1), V.n()), R);
}

std::array<Box, 4> subdivide(const Box& R) {
    const Rational half(Integer(1), Integer(2));
    QuadraticReal xm = (R.x0 + R.x1) * half;
    QuadraticReal ym = (R.y0 + R.y1) * half;
    return {Box(R.x0, xm, R.y0, ym), Box(xm, R.x1, R.y0, ym), Box(R.x0, xm, ym, R.y1), Box(xm, R.x1, ym, R.y1)};
}

Box box_at_path(const Box& root, std::string_view path) {
    Box b = root;
    for (char c : path) {
        if (c < '0' || c > '3') throw std::invalid_argument("leaf path digit must be 0-3");
        b = subdivide(b)[c - '0'];
    }
    return b;
}

}  // namespace e2
