#pragma once

// The plane picture: F embedded in R^2 by v = (v1, v2), axis-aligned boxes and
// the open hyperbolic regions V(q) = { |Nm(x - q)| < 1/|Nm(q2)| }.

#include "e2/field.hpp"

#include <array>
#include <string_view>

namespace e2 {

struct Point2 {
    QuadraticReal x;
    QuadraticReal y;
};

inline Point2 embed(const FieldElement& x) { return {x.embed(Embedding::v1), x.embed(Embedding::v2)}; }

/// Closed box [x0, x1] x [y0, y1].
struct Box {
    QuadraticReal x0, x1, y0, y1;

    Box(QuadraticReal x0_, QuadraticReal x1_, QuadraticReal y0_, QuadraticReal y1_);
    bool contains(const Point2& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
};

/// V(q) for q = [q1, q2]: its center q = q1_base + 1/q2 and its denominator q2.
class Region {
public:
    /// Throws std::invalid_argument unless q2 is integral and nonzero and
    /// center - 1/q2 is integral.
    Region(FieldElement center, FieldElement q2);

    const FieldElement& center() const { return center_; }
    const FieldElement& q2() const { return q2_; }
    const FieldElement& q1_base() const { return q1_base_; }
    /// |Nm(q2)|; the region has radius 1/n.
    const Integer& n() const { return n_; }

private:
    FieldElement center_;
    FieldElement q2_;
    FieldElement q1_base_;
    Integer n_;
};

/// R0 = [0, 1 + v1(omega)] x [v2(omega), 1], which contains the closure of
/// the fundamental domain { a v(1) + b v(omega) : a, b in [0, 1) }.
Box fundamental_box(const QuadField& F);

/// |(p.x - cx)(p.y - cy)| < radius, strictly.
bool hyperbola_contains_point(const Point2& center, const Rational& radius, const Point2& p);
/// All four corners inside; by convexity of |xy| along box edges this is
/// equivalent to the whole closed box being inside.
bool hyperbola_contains_box(const Point2& center, const Rational& radius, const Box& R);

bool region_contains_point(const Region& V, const Point2& p);
bool region_contains_box(const Region& V, const Box& R);

/// Children in the order lower-left, lower-right, upper-left, upper-right.
std::array<Box, 4> subdivide(const Box& R);

/// Follows quadrant digits 0-3 from `root`. Throws on any other character.
Box box_at_path(const Box& root, std::string_view path);

}  // namespace e2
