#include "obslab/sets.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <string>

#include "obslab/error.hpp"

namespace obslab {

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& i) { return !(i.hi > i.lo); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(p);
    }
  }
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const Interval& p : pieces_) m += p.length();
  return m;
}

double IntervalUnion::measure_in(double a, double b) const {
  if (!(b > a)) return 0.0;
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), a,
                             [](const Interval& p, double v) { return p.hi <= v; });
  double m = 0.0;
  for (; it != pieces_.end() && it->lo < b; ++it) m += std::min(b, it->hi) - std::max(a, it->lo);
  return m;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Interval& p) { return v < p.hi; });
  return it != pieces_.end() && it->lo <= x;
}

IntervalUnion IntervalUnion::clip(double a, double b) const {
  std::vector<Interval> out;
  for (const Interval& p : pieces_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (hi > lo) out.push_back({lo, hi});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::complement(double a, double b) const {
  std::vector<Interval> out;
  double cursor = a;
  for (const Interval& p : pieces_) {
    if (p.hi <= a) continue;
    if (p.lo >= b) break;
    if (p.lo > cursor) out.push_back({cursor, p.lo});
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < b) out.push_back({cursor, b});
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::reflected() const {
  std::vector<Interval> out;
  out.reserve(pieces_.size());
  for (const Interval& p : pieces_) out.push_back({-p.hi, -p.lo});
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::united(const IntervalUnion& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalUnion(std::move(all));
}

namespace {

IntervalUnion alpha_thin_complement_pieces(double alpha, double x) {
  std::vector<Interval> out;
  const long n_max = static_cast<long>(std::ceil(x)) + 1;
  for (long n = 1; n <= n_max; ++n) {
    const double len = std::min(1.0, std::pow(static_cast<double>(n), -alpha));
    // Stored lengths never exceed len.
    for (const double lo : {static_cast<double>(n), static_cast<double>(-n)}) {
      double hi = lo + len;
      if (hi - lo > len) hi = std::nextafter(hi, lo);
      out.push_back({lo, hi});
    }
  }
  return IntervalUnion(std::move(out)).clip(-x, x);
}

IntervalUnion generate_kind(const SetSpec& spec, double x) {
  struct Visitor {
    double x;
    IntervalUnion operator()(const FullLine&) const { return IntervalUnion({{-x, x}}); }
    IntervalUnion operator()(const HalfLine& h) const {
      return h.positive ? IntervalUnion({{0.0, x}}) : IntervalUnion({{-x, 0.0}});
    }
    IntervalUnion operator()(const AlphaThinComplement& a) const {
      return alpha_thin_complement_pieces(a.alpha, x).complement(-x, x);
    }
    IntervalUnion operator()(const Periodic& p) const {
      std::vector<Interval> out;
      const long n_lo = static_cast<long>(std::floor(-x / p.period)) - 1;
      const long n_hi = static_cast<long>(std::ceil(x / p.period)) + 1;
      for (long n = n_lo; n <= n_hi; ++n) out.push_back({n * p.period, (n + p.gamma) * p.period});
      return IntervalUnion(std::move(out)).clip(-x, x);
    }
    IntervalUnion operator()(const Explicit& e) const { return e.set.clip(-x, x); }
  };
  return std::visit(Visitor{x}, spec.kind);
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s, std::string_view context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw PreconditionError("bad number '" + std::string(s) + "' in set descriptor " + std::string(context));
  }
  return v;
}

// Parses "key=value,key=value" into the two requested keys.
void parse_params(std::string_view body, std::string_view text, std::string_view k1, double& v1,
                  std::string_view k2, double* v2) {
  bool got1 = false, got2 = false;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw PreconditionError("expected key=value in set descriptor " + std::string(text));
    const std::string_view key = item.substr(0, eq);
    const double val = parse_real(item.substr(eq + 1), text);
    if (key == k1 && !got1) {
      v1 = val;
      got1 = true;
    } else if (v2 && key == k2 && !got2) {
      *v2 = val;
      got2 = true;
    } else {
      throw PreconditionError("unexpected key '" + std::string(key) + "' in set descriptor " + std::string(text));
    }
  }
  if (!got1 || (v2 && !got2)) throw PreconditionError("missing parameter in set descriptor " + std::string(text));
}

}  // namespace

IntervalUnion SetSpec::generate(double x) const {
  if (!(x > 0) || !std::isfinite(x)) throw PreconditionError("set window half-width must be positive");
  IntervalUnion base = generate_kind(*this, x);
  return complemented ? base.complement(-x, x) : base;
}

IntervalUnion generate(const SetSpec& spec, double x) { return spec.generate(x); }

SetSpec SetSpec::complement() const {
  SetSpec s = *this;
  s.complemented = !complemented;
  return s;
}

std::optional<bool> SetSpec::half_line_sign() const {
  if (const auto* h = std::get_if<HalfLine>(&kind)) return complemented ? !h->positive : h->positive;
  return std::nullopt;
}

bool SetSpec::is_full_line() const { return !complemented && std::holds_alternative<FullLine>(kind); }

std::string SetSpec::describe() const {
  struct Visitor {
    std::string operator()(const FullLine&) const { return "full"; }
    std::string operator()(const HalfLine& h) const { return h.positive ? "halfline:+" : "halfline:-"; }
    std::string operator()(const AlphaThinComplement& a) const { return "athin-comp:alpha=" + fmt(a.alpha); }
    std::string operator()(const Periodic& p) const {
      return "periodic:gamma=" + fmt(p.gamma) + ",L=" + fmt(p.period);
    }
    std::string operator()(const Explicit& e) const {
      std::string s = "intervals:";
      bool first = true;
      for (const Interval& i : e.set.intervals()) {
        if (!first) s += ';';
        s += "[" + fmt(i.lo) + "," + fmt(i.hi) + ")";
        first = false;
      }
      return s;
    }
  };
  return (complemented ? "!" : "") + std::visit(Visitor{}, kind);
}

SetSpec parse_set_spec(std::string_view text) {
  const std::string_view original = text;
  SetSpec spec;
  if (!text.empty() && text.front() == '!') {
    spec.complemented = true;
    text.remove_prefix(1);
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (head == "full" && colon == std::string_view::npos) {
    spec.kind = FullLine{};
  } else if (head == "halfline") {
    if (body == "+") {
      spec.kind = HalfLine{true};
    } else if (body == "-") {
      spec.kind = HalfLine{false};
    } else {
      throw PreconditionError("halfline needs '+' or '-': " + std::string(original));
    }
  } else if (head == "athin-comp") {
    AlphaThinComplement a;
    parse_params(body, original, "alpha", a.alpha, "", nullptr);
    if (!(a.alpha > 0)) throw PreconditionError("athin-comp needs alpha > 0");
    spec.kind = a;
  } else if (head == "periodic") {
    Periodic p;
    parse_params(body, original, "gamma", p.gamma, "L", &p.period);
    if (!(p.period > 0) || !(p.gamma >= 0 && p.gamma <= 1)) {
      throw PreconditionError("periodic needs L > 0 and gamma in [0,1]");
    }
    spec.kind = p;
  } else if (head == "intervals") {
    std::vector<Interval> pieces;
    std::string_view rest = body;
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      std::string_view item = rest.substr(0, semi);
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      if (item.size() < 5 || item.front() != '[' || item.back() != ')') {
        throw PreconditionError("interval must look like [a,b): " + std::string(item));
      }
      item = item.substr(1, item.size() - 2);
      const auto comma = item.find(',');
      if (comma == std::string_view::npos) throw PreconditionError("interval must look like [a,b)");
      const double a = parse_real(item.substr(0, comma), original);
      const double b = parse_real(item.substr(comma + 1), original);
      if (!(b > a)) throw PreconditionError("interval with b <= a in " + std::string(original));
      pieces.push_back({a, b});
    }
    if (pieces.empty()) throw PreconditionError("intervals: needs at least one interval");
    spec.kind = Explicit{IntervalUnion(std::move(pieces))};
  } else {
    throw PreconditionError("unknown set descriptor: " + std::string(original));
  }
  return spec;
}

double alpha_thin_estimate(const IntervalUnion& s, double alpha, double x_max) {
  if (x_max < 10) throw PreconditionError("alpha_thin_estimate needs x_max >= 10");
  double best = 0.0;
  const long top = static_cast<long>(std::floor(x_max));
  for (long n = 2; n <= top; ++n) {
    const double w = std::pow(static_cast<double>(n), alpha);
    best = std::max(best, s.measure_in(n, n + 1.0) * w);
    best = std::max(best, s.measure_in(-n, -n + 1.0) * w);
  }
  return best;
}

double weak_thickness_estimate(const IntervalUnion& e, double x_max, double x_min) {
  if (x_min <= 0) x_min = x_max / 10.0;
  if (!(x_max >= x_min) || !(x_min > 0)) throw PreconditionError("weak_thickness_estimate needs 0 < x_min <= x_max");
  constexpr int kGrid = 64;
  const double ratio = std::log(x_max / x_min);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double x = x_min * std::exp(ratio * i / kGrid);
    best = std::min(best, e.measure_in(-x, x) / x);
  }
  return best;
}

double thickness_ratio(const IntervalUnion& e, double window, double x_max) {
  if (!(window > 0) || 2 * x_max < window) throw PreconditionError("thickness_ratio needs 0 < window <= 2 x_max");
  const double lo = -x_max;
  const double hi = x_max - window;
  std::vector<double> starts = {lo, hi};
  for (const Interval& p : e.intervals()) {
    for (double b : {p.lo, p.hi, p.lo - window, p.hi - window}) {
      if (b >= lo && b <= hi) starts.push_back(b);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double x : starts) best = std::min(best, e.measure_in(x, x + window) / window);
  return best;
}

}  // namespace obslab
