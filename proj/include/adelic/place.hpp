#pragma once

#include "adelic/curve.hpp"

namespace adelic {

// sentinel order for the zero element (no pole, no finite order)
inline constexpr int ORDER_INF = 1 << 28;

enum class PlaceKind {
  FiniteLine,    // finite place of the projective line
  InfiniteLine,  // x = infinity on the line
  Split,         // finite place where f is a nonzero square in the residue field
  Inert,         // finite place where f is a certified non-square
  Ramified,      // finite place with center dividing f (y vanishes)
  InfiniteOdd,   // the single point above x = infinity, deg f odd
};

// A closed point of the smooth model, with enough data to expand functions
// into Laurent series in the local uniformizer:
//   FiniteLine/Split/Inert: t = center(x);  Ramified: t = y;
//   InfiniteLine: t = 1/x;  InfiniteOdd: t = x^g / y.
struct Place {
  CurvePtr curve;
  PlaceKind kind = PlaceKind::FiniteLine;
  Poly center;            // monic irreducible over k; the zero poly at infinity
  RingPtr residue_field;  // flattened: Q, F_p, or a single-step extension
  Scalar x_image;         // image of x (finite places)
  Scalar y_image;         // image of y (Split/Inert; zero otherwise)
  int ram = 1;            // ramification index over the x-line
  int degree = 1;         // residue degree over k
  std::string id;

  bool is_infinite() const {
    return kind == PlaceKind::InfiniteLine || kind == PlaceKind::InfiniteOdd;
  }
  bool operator==(const Place& o) const { return id == o.id && same_curve(curve, o.curve); }
  bool operator!=(const Place& o) const { return !(*this == o); }
  bool operator<(const Place& o) const { return id < o.id; }
};

// all places above the closed point of the x-line cut out by a monic
// irreducible center (one or two, by splitting behavior)
std::vector<Place> places_over(const CurvePtr& C, const Poly& center);

// the place(s) above x = infinity (always exactly one for the supported models)
std::vector<Place> infinite_places(const CurvePtr& C);

// exact valuation of g at P (ORDER_INF for g = 0)
int order_at(const FFElt& g, const Place& P);

// valuation of dx at P
int dx_order(const Place& P);

// valuation of the differential g dx at P
int order_at_differential(const FFElt& g, const Place& P);

// places where g (resp. g dx) has a pole, sorted by id
std::vector<Place> poles_of_element(const FFElt& g);
std::vector<Place> poles_of_differential(const FFElt& g);

// every place above each irreducible factor of the given nonzero polynomial,
// plus (optionally) the infinite places; sorted by id
std::vector<Place> places_over_denominator(const CurvePtr& C, const Poly& den, bool with_infinite);

}  // namespace adelic
