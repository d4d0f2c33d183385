#pragma once

// Observation sets E in R as finite unions of half-open intervals [a, b),
// with procedural generators for the families used in the experiments and
// finite-window proxies for the asymptotic set predicates.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace obslab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted disjoint union of half-open intervals. The constructor normalizes:
/// empty pieces are dropped and overlapping or touching pieces are merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  double measure() const;
  /// |E ∩ [a, b)|
  double measure_in(double a, double b) const;
  bool contains(double x) const;

  IntervalUnion clip(double a, double b) const;
  /// Complement within [a, b).
  IntervalUnion complement(double a, double b) const;
  /// {-x : x in E}, renormalized to half-open form.
  IntervalUnion reflected() const;
  IntervalUnion united(const IntervalUnion& other) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> pieces_;
};

// Set descriptors. A descriptor is rendered to an IntervalUnion on a window.
struct FullLine {};
struct HalfLine {
  bool positive = true;
};
/// E whose complement is the union over |n| >= 1 of [n, n + min(1, |n|^-alpha)).
struct AlphaThinComplement {
  double alpha = 1.5;
};
/// Union over n of [n L, n L + gamma L).
struct Periodic {
  double gamma = 0.5;
  double period = 1.0;
};
struct Explicit {
  IntervalUnion set;
};

struct SetSpec {
  std::variant<FullLine, HalfLine, AlphaThinComplement, Periodic, Explicit> kind;
  /// When set, the descriptor denotes the complement of `kind`.
  bool complemented = false;

  /// Concrete union on [-x, x).
  IntervalUnion generate(double x) const;
  /// Mini-language form, round-trips through parse_set_spec.
  std::string describe() const;
  SetSpec complement() const;

  /// True if the set is a half-line (possibly via complement).
  std::optional<bool> half_line_sign() const;
  bool is_full_line() const;
};

/// Parses the set mini-language:
///   full
///   halfline:+ | halfline:-
///   athin-comp:alpha=<r>
///   periodic:gamma=<r>,L=<r>
///   intervals:[a,b);[c,d);...
/// A leading "!" denotes the complement. Throws PreconditionError on bad input.
SetSpec parse_set_spec(std::string_view text);

/// Generates the concrete set on [-x, x); x must be positive.
IntervalUnion generate(const SetSpec& spec, double x);

/// Finite proxy for limsup |S ∩ [x, x+1]| |x|^alpha: the maximum over integer
/// x in [2, x_max] and [-x_max, -2]. Requires x_max >= 10.
double alpha_thin_estimate(const IntervalUnion& s, double alpha, double x_max);

/// Finite proxy for liminf |E ∩ [-x, x]| / x: minimum over a logarithmic grid
/// of x in [x_min, x_max]. x_min defaults to x_max / 10.
double weak_thickness_estimate(const IntervalUnion& e, double x_max, double x_min = -1.0);

/// min over windows [x, x+L] inside [-x_max, x_max] of |E ∩ [x, x+L]| / L.
/// Exact: the window measure is piecewise linear in x, so it suffices to test
/// the breakpoints.
double thickness_ratio(const IntervalUnion& e, double window, double x_max);

}  // namespace obslab
