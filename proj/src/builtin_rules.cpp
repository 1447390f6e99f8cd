#include <stdexcept>

#include "geoproof/referential.hpp"

namespace geoproof {

// The built-in referential, written in the same rule text format users can
// load from a file. Kept as text so list-properties, docs, and tests all see
// exactly what the parser accepts. Rules that express one geometric property
// from different premise shapes share a justification sentence verbatim.
static const char* const kBuiltinRules = R"RULES(
% --- parallels and perpendiculars ---

rule perpPerpParallel granularity low
premises {
  perp(line(L1), line(L3)).
  perp(line(L2), line(L3)).
}
guards { distinct(L1, L2). }
result parallel(line(L1), line(L2))
justification "Two lines that are perpendicular to the same line are parallel.".

rule anglePerp granularity low
premises {
  angleValue(angle([A], V, [B]), value(X)).
  line(L1).
  line(L2).
}
guards {
  X ~ 90.
  on(A, L1). on(V, L1).
  on(V, L2). on(B, L2).
  distinct(L1, L2).
}
result perp(line(L1), line(L2))
justification "Two lines are perpendicular exactly when they meet at a right angle.".

rule perpAngle granularity low
premises {
  perp(line([V, A]), line([V, B])).
}
guards { distinct(A, B). }
result angleValue(angle([A], V, [B]), value(90))
justification "Two lines are perpendicular exactly when they meet at a right angle.".

% --- quadrilaterals ---

rule quadParallelSidesPgram granularity low
premises {
  isAQuad(quad(A, B, C, D)).
  parallel(line(L1), line(L2)).
  parallel(line(L3), line(L4)).
}
guards {
  on(A, L1). on(B, L1).
  on(C, L2). on(D, L2).
  on(B, L3). on(C, L3).
  on(A, L4). on(D, L4).
  distinct(L1, L2).
  distinct(L3, L4).
}
result parallelogram(quad(A, B, C, D))
justification "A parallelogram is a quadrilateral whose opposite sides are parallel.".

rule pgramSidesParallel granularity low
premises {
  parallelogram(quad(A, B, C, D)).
  line(L1).
  line(L2).
}
guards {
  on(A, L1). on(B, L1).
  on(C, L2). on(D, L2).
  distinct(L1, L2).
}
result parallel(line(L1), line(L2))
justification "A parallelogram is a quadrilateral whose opposite sides are parallel.".

rule pgramRightAngleRect granularity low
premises {
  parallelogram(quad(A, B, C, D)).
  angleValue(angle([D], A, [B]), value(X)).
}
guards { X ~ 90. }
result rectangle(quad(A, B, C, D))
justification "A parallelogram with a right angle is a rectangle.".

rule quadFourRightAnglesRect granularity low
premises {
  isAQuad(quad(A, B, C, D)).
  angleValue(angle([D], A, [B]), value(W)).
  angleValue(angle([A], B, [C]), value(X)).
  angleValue(angle([B], C, [D]), value(Y)).
  angleValue(angle([C], D, [A]), value(Z)).
}
guards { W ~ 90. X ~ 90. Y ~ 90. Z ~ 90. }
result rectangle(quad(A, B, C, D))
justification "A rectangle is a quadrilateral that has four right angles.".

rule rectangleFourRightAngles granularity low
premises {
  rectangle(quad(A, B, C, D)).
}
result angleValue(angle([D], A, [B]), value(90))
justification "A rectangle is a quadrilateral that has four right angles.".

rule rectanglePgram granularity low
premises {
  rectangle(Q).
}
result parallelogram(Q)
justification "Every rectangle is a parallelogram.".

rule quadAngleSum granularity low
premises {
  isAQuad(quad(A, B, C, D)).
  angleValue(angle([D], A, [B]), value(X)).
  angleValue(angle([A], B, [C]), value(Y)).
  angleValue(angle([B], C, [D]), value(Z)).
}
result angleValue(angle([C], D, [A]), value(360 - X - Y - Z))
justification "The interior angles of a quadrilateral sum to 360 degrees.".

% --- angles ---

rule adjacentShared granularity low
premises {
  line([V, B]).
  line([V, C]).
  line([V, D]).
}
guards { distinct(B, C). distinct(B, D). distinct(C, D). }
result adjacentAngles(angle([B], V, [C]), angle([C], V, [D]))
justification "Two angles at the same vertex that share a side are adjacent.".

rule supplementarySum granularity low
premises {
  angleValue(N1, value(X)).
  angleValue(N2, value(Y)).
}
guards { distinct(N1, N2). X + Y ~ 180. }
result supplementaryAngles(N1, N2)
justification "Two angles whose measures sum to 180 degrees are supplementary.".

rule equalMeasureEqualAngles granularity low
premises {
  angleValue(N1, value(X)).
  angleValue(N2, value(Y)).
}
guards { distinct(N1, N2). X ~ Y. }
result equalAngles(N1, N2)
justification "Two angles with the same measure are equal.".

% --- triangles ---

rule rightTrPerp granularity low
premises {
  perp(line([A, B]), line([A, C])).
  triangle(A, B, C).
}
result rightTriangle(triangle(A, B, C), A)
justification "A triangle with a right angle is a right triangle.".

rule rightTrAngle granularity low
premises {
  angleValue(angle([B], A, [C]), value(X)).
  triangle(A, B, C).
}
guards { X ~ 90. }
result rightTriangle(triangle(A, B, C), A)
justification "A triangle with a right angle is a right triangle.".

rule rightTrHasRightAngle granularity low
premises {
  rightTriangle(triangle(A, B, C), A).
}
result angleValue(angle([B], A, [C]), value(90))
justification "In a right triangle the two legs meet at a right angle.".

rule triangleAngleSum granularity high
premises {
  triangle(A, B, C).
  angleValue(angle([B], A, [C]), value(X)).
  angleValue(angle([A], B, [C]), value(Y)).
}
result angleValue(angle([A], C, [B]), value(180 - X - Y))
justification "The interior angles of a triangle sum to 180 degrees.".

rule pythagorasHyp granularity low
premises {
  rightTriangle(triangle(V, W1, W2), V).
  segmentLength(segment(V, W1), value(X)).
  segmentLength(segment(V, W2), value(Y)).
}
result segmentLength(segment(W1, W2), value(sqrt(X * X + Y * Y)))
justification "In a right triangle the square of the hypotenuse equals the sum of the squares of the legs.".

rule pythagorasLeg granularity low
premises {
  rightTriangle(triangle(V, W1, W2), V).
  segmentLength(segment(W1, W2), value(H)).
  segmentLength(segment(V, W1), value(X)).
}
guards { H > X. }
result segmentLength(segment(V, W2), value(sqrt(H * H - X * X)))
justification "In a right triangle the square of the hypotenuse equals the sum of the squares of the legs.".

% --- remarkable lines ---

rule midpointMedian granularity low
premises {
  midpoint(M, segment(W1, W2)).
  triangle(V, W1, W2).
  line(L).
}
guards { on(V, L). on(M, L). distinct(M, V). }
result median(line(L), triangle(V, W1, W2), V)
justification "A line through a vertex of a triangle and the midpoint of the opposite side is a median.".

rule isoscelesMedAlt granularity low
premises {
  median(line(L), triangle(V, W1, W2), V).
  altitude(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesMedBis granularity low
premises {
  median(line(L), triangle(V, W1, W2), V).
  bisector(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesAltBis granularity low
premises {
  altitude(line(L), triangle(V, W1, W2), V).
  bisector(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesPerpBisMed granularity low
premises {
  perpBisector(line(L), segment(W1, W2)).
  median(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesPerpBisAlt granularity low
premises {
  perpBisector(line(L), segment(W1, W2)).
  altitude(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesPerpBisBis granularity low
premises {
  perpBisector(line(L), segment(W1, W2)).
  bisector(line(L), triangle(V, W1, W2), V).
}
result isosceles(triangle(V, W1, W2), V)
justification "A triangle in which two remarkable lines from the same vertex coincide is isosceles.".

rule isoscelesLegLengths granularity low
premises {
  isosceles(triangle(V, W1, W2), V).
  segmentLength(segment(V, W1), value(X)).
}
result segmentLength(segment(V, W2), value(X))
justification "In an isosceles triangle the two sides that meet at the apex have equal length.".

% --- circumscribed circle ---

rule circumcenterPoint granularity low
premises {
  perpBisector(line(L1), segment(A, B)).
  perpBisector(line(L2), segment(A, C)).
  triangle(A, B, C).
  point(P).
}
guards { on(P, L1). on(P, L2). distinct(L1, L2). }
result circumcenter(P, triangle(A, B, C))
justification "The perpendicular bisectors of the sides of a triangle meet at the center of its circumscribed circle.".

rule circumcenterEquidistant granularity low
premises {
  circumcenter(P, triangle(A, B, C)).
  segmentLength(segment(P, A), value(X)).
}
result segmentLength(segment(P, B), value(X))
justification "The perpendicular bisectors of the sides of a triangle meet at the center of its circumscribed circle.".

rule circumcenterCircle granularity low
premises {
  circumcenter(P, triangle(A, B, C)).
  circleCenter(circle(K), P).
  onCircle(circle(K), A).
}
result onCircle(circle(K), B)
justification "The perpendicular bisectors of the sides of a triangle meet at the center of its circumscribed circle.".
)RULES";

const Referential& builtin_referential() {
    static const Referential instance = [] {
        ParsedReferential parsed = parse_rules(kBuiltinRules);
        if (!parsed.ok()) {
            std::string msg = "built-in rules failed to parse:";
            for (const auto& d : parsed.diagnostics) msg += "\n  " + format_diagnostic(d);
            throw std::logic_error(msg);
        }
        return std::move(*parsed.referential);
    }();
    return instance;
}

}  // namespace geoproof
