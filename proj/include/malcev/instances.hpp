#ifndef MALCEV_INSTANCES_HPP_
#define MALCEV_INSTANCES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/padic.hpp"
#include "malcev/rational.hpp"
#include "malcev/view.hpp"

namespace malcev {

enum class Family { interval, arc, padic, product };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::interval: return "interval";
    case Family::arc: return "arc";
    case Family::padic: return "padic";
    case Family::product: return "product";
  }
  return "?";
}

// Element of a symbolic instance. Interval and arc elements are rationals,
// p-adic elements are digit vectors, product elements are pairs. Comparison
// is structural (pairs compare by components, not pointers).
class Elem {
 public:
  Elem() : v_(Rational(0)) {}
  static Elem rational(Rational r) { return Elem(std::move(r)); }
  static Elem padic(PadicDigits d) { return Elem(std::move(d)); }
  static Elem pair(Elem l, Elem r) {
    Elem e;
    e.v_ = std::make_shared<const std::pair<Elem, Elem>>(std::move(l), std::move(r));
    return e;
  }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_padic() const { return std::holds_alternative<PadicDigits>(v_); }
  bool is_pair() const { return v_.index() == 2; }

  const Rational& rat() const {
    if (!is_rational()) throw input_error("element is not rational");
    return std::get<Rational>(v_);
  }
  const PadicDigits& digits() const {
    if (!is_padic()) throw input_error("element is not p-adic");
    return std::get<PadicDigits>(v_);
  }
  const Elem& left() const { return pair_ref().first; }
  const Elem& right() const { return pair_ref().second; }

  friend int compare(const Elem& a, const Elem& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index() ? -1 : 1;
    switch (a.v_.index()) {
      case 0: {
        const auto& x = std::get<Rational>(a.v_);
        const auto& y = std::get<Rational>(b.v_);
        return x < y ? -1 : (x == y ? 0 : 1);
      }
      case 1: {
        const auto& x = std::get<PadicDigits>(a.v_);
        const auto& y = std::get<PadicDigits>(b.v_);
        return x < y ? -1 : (x == y ? 0 : 1);
      }
      default: {
        const int l = compare(a.left(), b.left());
        return l != 0 ? l : compare(a.right(), b.right());
      }
    }
  }
  friend bool operator==(const Elem& a, const Elem& b) { return compare(a, b) == 0; }
  friend bool operator<(const Elem& a, const Elem& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Elem& a, const Elem& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Elem& a, const Elem& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Elem& a, const Elem& b) { return compare(a, b) >= 0; }

 private:
  explicit Elem(Rational r) : v_(std::move(r)) {}
  explicit Elem(PadicDigits d) : v_(std::move(d)) {}
  const std::pair<Elem, Elem>& pair_ref() const {
    if (!is_pair()) throw input_error("element is not a pair");
    return *std::get<std::shared_ptr<const std::pair<Elem, Elem>>>(v_);
  }

  std::variant<Rational, PadicDigits, std::shared_ptr<const std::pair<Elem, Elem>>> v_;
};

class Endo;
class Ball;

// An exact symbolic local group: dyadic/rational interval (-r, r) under
// partial addition, circle arc (-w, w) of representatives mod 1, p-adic ball
// p^e Z_p under (total) addition, or a finite product. Every domain test is
// an exact rational comparison or digit inspection; there is no tolerance.
class Instance {
 public:
  static Instance interval(Rational radius) {
    if (radius <= 0) throw input_error("interval radius must be positive");
    Instance s;
    s.fam_ = Family::interval;
    s.bound_ = std::move(radius);
    return s;
  }

  // Width capped at 1/4 so representative addition never wraps; the circle
  // structure enters only through morphisms into the circle group.
  static Instance arc(Rational width) {
    if (width <= 0 || width > Rational(1, 4))
      throw input_error("arc width must lie in (0, 1/4]");
    Instance s;
    s.fam_ = Family::arc;
    s.bound_ = std::move(width);
    return s;
  }

  static Instance padic(std::uint32_t p, std::uint32_t e, std::size_t precision) {
    if (p < 2) throw input_error("p must be a prime >= 2");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw input_error("p must be prime");
    if (precision < static_cast<std::size_t>(e) + 1)
      throw input_error("padic precision must exceed the ball exponent");
    Instance s;
    s.fam_ = Family::padic;
    s.p_ = p;
    s.e_ = e;
    s.precision_ = precision;
    return s;
  }

  static Instance product(Instance l, Instance r) {
    Instance s;
    s.fam_ = Family::product;
    s.left_ = std::make_shared<const Instance>(std::move(l));
    s.right_ = std::make_shared<const Instance>(std::move(r));
    return s;
  }

  Family family() const { return fam_; }
  const Rational& bound() const { return bound_; }  // interval radius / arc width
  std::uint32_t prime() const { return p_; }
  std::uint32_t ball_exponent() const { return e_; }
  std::size_t precision() const { return precision_; }
  const Instance& left() const { return *left_; }
  const Instance& right() const { return *right_; }

  Elem identity() const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: return Elem::rational(0);
      case Family::padic: return Elem::padic(padic_zero(precision_));
      case Family::product: return Elem::pair(left().identity(), right().identity());
    }
    throw input_error("bad family");
  }

  bool contains(const Elem& x) const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: return x.is_rational() && abs(x.rat()) < bound_;
      case Family::padic: {
        if (!x.is_padic()) return false;
        const auto& d = x.digits().d;
        if (d.empty()) return false;
        for (auto v : d)
          if (v >= p_) return false;
        if (d.size() < e_) throw precision_error("too few digits to certify carrier membership");
        for (std::size_t i = 0; i < e_; ++i)
          if (d[i] != 0) return false;
        return true;
      }
      case Family::product:
        return x.is_pair() && left().contains(x.left()) && right().contains(x.right());
    }
    return false;
  }

  // Partial product: exact sum where the Omega condition holds, nullopt
  // otherwise. p-adic addition is total with precision = min of inputs.
  std::optional<Elem> product(const Elem& x, const Elem& y) const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: {
        Rational s = x.rat() + y.rat();
        if (abs(s) < bound_) return Elem::rational(std::move(s));
        return std::nullopt;
      }
      case Family::padic: return Elem::padic(padic_add(p_, x.digits(), y.digits()));
      case Family::product: {
        auto l = left().product(x.left(), y.left());
        if (!l) return std::nullopt;
        auto r = right().product(x.right(), y.right());
        if (!r) return std::nullopt;
        return Elem::pair(std::move(*l), std::move(*r));
      }
    }
    return std::nullopt;
  }

  // Inversion (negation) is total on every family.
  std::optional<Elem> inverse(const Elem& x) const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: return Elem::rational(-x.rat());
      case Family::padic: return Elem::padic(padic_neg(p_, x.digits()));
      case Family::product:
        return Elem::pair(*left().inverse(x.left()), *right().inverse(x.right()));
    }
    return std::nullopt;
  }

  // Deterministic sampling policy: interval/arc draw (k/d) * bound with
  // d in 1..16 and |k| < d, so denominators are bounded by 16 * den(bound);
  // p-adic draws `precision` uniform digits (first e forced to 0); products
  // sample componentwise from one stream.
  Elem sample_one(SplitMix64& rng) const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: {
        const std::int64_t d = static_cast<std::int64_t>(rng.below(16)) + 1;
        const std::int64_t k = rng.range(-(d - 1), d - 1);
        return Elem::rational(Rational(k, d) * bound_);
      }
      case Family::padic: {
        PadicDigits dg{std::vector<std::uint16_t>(precision_, 0)};
        for (std::size_t i = e_; i < precision_; ++i)
          dg.d[i] = static_cast<std::uint16_t>(rng.below(p_));
        return Elem::padic(std::move(dg));
      }
      case Family::product: {
        Elem l = left().sample_one(rng);
        Elem r = right().sample_one(rng);
        return Elem::pair(std::move(l), std::move(r));
      }
    }
    throw input_error("bad family");
  }

  std::vector<Elem> sample(std::uint64_t seed, std::size_t n) const {
    SplitMix64 rng(seed);
    std::vector<Elem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(rng));
    return out;
  }

  std::string format(const Elem& x) const {
    switch (fam_) {
      case Family::interval:
      case Family::arc: return format_rational(x.rat());
      case Family::padic: {
        std::string s = "[";
        for (std::size_t i = 0; i < x.digits().d.size(); ++i) {
          if (i) s += ',';
          s += std::to_string(x.digits().d[i]);
        }
        return s + "]";
      }
      case Family::product:
        return "(" + left().format(x.left()) + ";" + right().format(x.right()) + ")";
    }
    return "?";
  }

 private:
  Instance() = default;
  Family fam_ = Family::interval;
  Rational bound_ = Rational(1);
  std::uint32_t p_ = 0, e_ = 0;
  std::size_t precision_ = 0;
  std::shared_ptr<const Instance> left_, right_;
};

// Family-compatible contractive endomorphism descriptor: rational scaling for
// interval/arc (0 < |s| < 1), multiply-by-p for the p-adic family, pairs for
// products.
class Endo {
 public:
  static Endo scale(Rational s) {
    if (s == 0 || abs(s) >= 1) throw input_error("scale must satisfy 0 < |s| < 1");
    Endo e;
    e.fam_ = Family::interval;  // also used for arcs
    e.scale_ = std::move(s);
    return e;
  }
  static Endo multiply_by_p() {
    Endo e;
    e.fam_ = Family::padic;
    return e;
  }
  static Endo pair(Endo l, Endo r) {
    Endo e;
    e.fam_ = Family::product;
    e.left_ = std::make_shared<const Endo>(std::move(l));
    e.right_ = std::make_shared<const Endo>(std::move(r));
    return e;
  }

  Family family() const { return fam_; }
  const Rational& scale_factor() const { return scale_; }
  const Endo& left() const { return *left_; }
  const Endo& right() const { return *right_; }

  void validate_for(const Instance& inst) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc:
        if (fam_ != Family::interval) throw input_error("endo family mismatch");
        return;
      case Family::padic:
        if (fam_ != Family::padic) throw input_error("endo family mismatch");
        return;
      case Family::product:
        if (fam_ != Family::product) throw input_error("endo family mismatch");
        left().validate_for(inst.left());
        right().validate_for(inst.right());
        return;
    }
  }

  // phi^n(x), exact. Multiplication by p prepends zero digits, so the p-adic
  // precision grows by n.
  Elem apply(const Instance& inst, const Elem& x, std::size_t n = 1) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc: {
        Rational v = x.rat();
        for (std::size_t i = 0; i < n; ++i) v *= scale_;
        return Elem::rational(std::move(v));
      }
      case Family::padic: {
        PadicDigits d = x.digits();
        for (std::size_t i = 0; i < n; ++i) d = padic_shift(d);
        return Elem::padic(std::move(d));
      }
      case Family::product: {
        Elem l = left().apply(inst.left(), x.left(), n);
        Elem r = right().apply(inst.right(), x.right(), n);
        return Elem::pair(std::move(l), std::move(r));
      }
    }
    throw input_error("bad family");
  }

 private:
  Endo() = default;
  Family fam_ = Family::interval;
  Rational scale_ = Rational(1, 2);
  std::shared_ptr<const Endo> left_, right_;
};

// Symmetric identity neighborhoods with exactly decidable membership:
// rational balls about 0 (open or closed) for interval/arc, p^m Z_p for the
// p-adic family, pairs for products. Images and preimages under an Endo are
// again balls, computed exactly; preimages are capped at the carrier.
class Ball {
 public:
  static Ball rational_ball(Rational radius, bool closed) {
    if (radius < 0 || (radius == 0 && !closed))
      throw input_error("empty ball");
    Ball b;
    b.fam_ = Family::interval;
    b.radius_ = std::move(radius);
    b.closed_ = closed;
    return b;
  }
  static Ball padic_ball(std::uint32_t exponent) {
    Ball b;
    b.fam_ = Family::padic;
    b.exponent_ = exponent;
    return b;
  }
  static Ball pair(Ball l, Ball r) {
    Ball b;
    b.fam_ = Family::product;
    b.left_ = std::make_shared<const Ball>(std::move(l));
    b.right_ = std::make_shared<const Ball>(std::move(r));
    return b;
  }
  static Ball carrier(const Instance& inst) {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc: return rational_ball(inst.bound(), false);
      case Family::padic: return padic_ball(inst.ball_exponent());
      case Family::product: return pair(carrier(inst.left()), carrier(inst.right()));
    }
    throw input_error("bad family");
  }

  Family family() const { return fam_; }
  const Rational& radius() const { return radius_; }
  bool closed() const { return closed_; }
  std::uint32_t exponent() const { return exponent_; }
  const Ball& left() const { return *left_; }
  const Ball& right() const { return *right_; }

  void validate_for(const Instance& inst) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc:
        if (fam_ != Family::interval) throw input_error("ball family mismatch");
        if (radius_ > inst.bound() || (radius_ == inst.bound() && closed_))
          throw input_error("ball exceeds carrier");
        return;
      case Family::padic:
        if (fam_ != Family::padic) throw input_error("ball family mismatch");
        if (exponent_ < inst.ball_exponent()) throw input_error("ball exceeds carrier");
        return;
      case Family::product:
        if (fam_ != Family::product) throw input_error("ball family mismatch");
        left().validate_for(inst.left());
        right().validate_for(inst.right());
        return;
    }
  }

  bool contains(const Instance& inst, const Elem& x) const {
    switch (fam_) {
      case Family::interval: {
        const Rational a = abs(x.rat());
        return closed_ ? a <= radius_ : a < radius_;
      }
      case Family::padic: return padic_in_ball(x.digits(), exponent_);
      case Family::product:
        return left().contains(inst.left(), x.left()) &&
               right().contains(inst.right(), x.right());
      default: return false;
    }
  }

  bool subset_of(const Ball& o) const {
    if (fam_ != o.fam_) throw input_error("ball family mismatch");
    switch (fam_) {
      case Family::interval:
        if (radius_ < o.radius_) return true;
        if (radius_ > o.radius_) return false;
        return !closed_ || o.closed_;
      case Family::padic: return exponent_ >= o.exponent_;
      case Family::product:
        return left().subset_of(o.left()) && right().subset_of(o.right());
      default: return false;
    }
  }

  bool operator==(const Ball& o) const {
    if (fam_ != o.fam_) return false;
    switch (fam_) {
      case Family::interval: return radius_ == o.radius_ && closed_ == o.closed_;
      case Family::padic: return exponent_ == o.exponent_;
      case Family::product: return left() == o.left() && right() == o.right();
      default: return false;
    }
  }

  Ball image(const Instance& inst, const Endo& phi) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc: return rational_ball(radius_ * abs(phi.scale_factor()), closed_);
      case Family::padic: return padic_ball(exponent_ + 1);
      case Family::product:
        return pair(left().image(inst.left(), phi.left()),
                    right().image(inst.right(), phi.right()));
    }
    throw input_error("bad family");
  }

  Ball preimage(const Instance& inst, const Endo& phi) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc: {
        Rational r = radius_ / abs(phi.scale_factor());
        if (r >= inst.bound()) return carrier(inst);
        return rational_ball(std::move(r), closed_);
      }
      case Family::padic: {
        const std::uint32_t m = exponent_ == 0 ? 0 : exponent_ - 1;
        return padic_ball(std::max(m, inst.ball_exponent()));
      }
      case Family::product:
        return pair(left().preimage(inst.left(), phi.left()),
                    right().preimage(inst.right(), phi.right()));
    }
    throw input_error("bad family");
  }

  // Topological interior; p-adic balls are clopen, rational closed balls open
  // up (a closed ball equal to the carrier bound cannot occur, see validate).
  Ball interior(const Instance& inst) const {
    switch (inst.family()) {
      case Family::interval:
      case Family::arc:
        if (!closed_) return *this;
        return rational_ball(radius_, false);
      case Family::padic: return *this;
      case Family::product:
        return pair(left().interior(inst.left()), right().interior(inst.right()));
    }
    throw input_error("bad family");
  }

  std::string describe(const Instance& inst) const {
    switch (fam_) {
      case Family::interval:
        return std::string(closed_ ? "closed" : "open") + " ball radius " +
               format_rational(radius_);
      case Family::padic:
        return "p^" + std::to_string(exponent_) + " Z_" + std::to_string(inst.prime());
      case Family::product:
        return "(" + left().describe(inst.left()) + " x " + right().describe(inst.right()) + ")";
      default: return "?";
    }
  }

 private:
  Ball() = default;
  Family fam_ = Family::interval;
  Rational radius_ = Rational(0);
  bool closed_ = true;
  std::uint32_t exponent_ = 0;
  std::shared_ptr<const Ball> left_, right_;
};

// Uniform local-group view over an instance.
struct InstanceView {
  const Instance* inst;

  using element = Elem;
  element identity() const { return inst->identity(); }
  std::optional<element> product(const element& x, const element& y) const {
    return inst->product(x, y);
  }
  std::optional<element> inverse(const element& x) const { return inst->inverse(x); }
};
static_assert(LocalGroupView<InstanceView>);

// x mod 1 with canonical representative in [0, 1).
inline Rational rational_mod1(const Rational& x) {
  BigInt n = numerator(x), d = denominator(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;  // floor division
  return x - Rational(q);
}

// The circle group Q/Z with representatives in [0, 1); extension target for
// arc morphisms.
struct CircleGroup {
  using element = Rational;
  element identity() const { return Rational(0); }
  element op(const element& a, const element& b) const { return rational_mod1(a + b); }
  element inv(const element& a) const { return a == 0 ? a : Rational(1) - a; }
};
static_assert(GroupView<CircleGroup>);

// The additive rationals; extension target separating formal sums from their
// mod-1 shadows.
struct LineGroup {
  using element = Rational;
  element identity() const { return Rational(0); }
  element op(const element& a, const element& b) const { return a + b; }
  element inv(const element& a) const { return -a; }
};
static_assert(GroupView<LineGroup>);

// A p-adic instance as a (total) group.
struct PadicGroup {
  const Instance* inst;  // must be a padic instance

  using element = Elem;
  element identity() const { return inst->identity(); }
  element op(const element& a, const element& b) const { return *inst->product(a, b); }
  element inv(const element& a) const { return *inst->inverse(a); }
};
static_assert(GroupView<PadicGroup>);

}  // namespace malcev

#endif  // MALCEV_INSTANCES_HPP_
