#include "alterweight/semiring.hpp"

#include <algorithm>
#include <cctype>

#include "alterweight/polynomial.hpp"

namespace alterweight {

Value::Value(PolyPtr p) : v_(std::move(p)) {
  if (!std::get<PolyPtr>(v_)) throw domain_error("null polynomial value");
}
Value::Value(Polynomial p) : v_(std::make_shared<const Polynomial>(std::move(p))) {}

const Polynomial& Value::poly() const {
  if (auto* p = std::get_if<PolyPtr>(&v_)) return **p;
  throw domain_error("value is not a polynomial element");
}
bool Value::as_bool() const {
  if (auto* b = std::get_if<bool>(&v_)) return *b;
  throw domain_error("value is not a boolean element");
}
const Int& Value::as_int() const {
  if (auto* n = std::get_if<Int>(&v_)) return *n;
  throw domain_error("value is not a natural element");
}
const Rat& Value::as_rat() const {
  if (auto* q = std::get_if<Rat>(&v_)) return *q;
  throw domain_error("value is not a rational element");
}
const MinPlus& Value::as_minplus() const {
  if (auto* m = std::get_if<MinPlus>(&v_)) return *m;
  throw domain_error("value is not a min-plus element");
}

bool operator==(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (auto* p = std::get_if<PolyPtr>(&a.v_)) {
    const auto& q = std::get<PolyPtr>(b.v_);
    return p->get() == q.get() || **p == *q;
  }
  return a.v_ == b.v_;
}

Value Semiring::neg(const Value&) const {
  throw domain_error("semiring " + name() + " has no subtraction");
}
SemiringPtr Semiring::base() const {
  throw domain_error("semiring " + name() + " is not a polynomial semiring");
}
int Semiring::poly_vars() const {
  throw domain_error("semiring " + name() + " is not a polynomial semiring");
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
}

Int parse_unsigned(const std::string& s, const char* what) {
  if (!all_digits(s)) throw parse_error(std::string(what) + ": bad literal '" + s + "'");
  return Int(s);
}

struct NatSemiring final : Semiring {
  SemiringKind kind() const override { return SemiringKind::nat; }
  std::string name() const override { return "nat"; }
  Value zero() const override { return Value(Int(0)); }
  Value one() const override { return Value(Int(1)); }
  Value add(const Value& a, const Value& b) const override {
    return Value(Int(a.as_int() + b.as_int()));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(Int(a.as_int() * b.as_int()));
  }
  std::string to_string(const Value& v) const override { return v.as_int().str(); }
  Value from_string(const std::string& s) const override {
    return Value(parse_unsigned(s, "nat"));
  }
};

struct RatSemiring final : Semiring {
  SemiringKind kind() const override { return SemiringKind::rat; }
  std::string name() const override { return "rat"; }
  Value zero() const override { return Value(Rat(0)); }
  Value one() const override { return Value(Rat(1)); }
  Value add(const Value& a, const Value& b) const override {
    return Value(Rat(a.as_rat() + b.as_rat()));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(Rat(a.as_rat() * b.as_rat()));
  }
  bool has_subtraction() const override { return true; }
  Value neg(const Value& a) const override { return Value(Rat(-a.as_rat())); }
  std::string to_string(const Value& v) const override {
    const Rat& q = v.as_rat();
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
  }
  Value from_string(const std::string& s) const override {
    std::string t = s;
    bool negative = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      negative = t[0] == '-';
      t = t.substr(1);
    }
    auto slash = t.find('/');
    Int num, den = 1;
    if (slash == std::string::npos) {
      num = parse_unsigned(t, "rat");
    } else {
      num = parse_unsigned(t.substr(0, slash), "rat");
      den = parse_unsigned(t.substr(slash + 1), "rat");
      if (den == 0) throw parse_error("rat: zero denominator in '" + s + "'");
    }
    Rat q(num, den);
    return Value(negative ? Rat(-q) : q);
  }
};

struct BoolSemiring final : Semiring {
  SemiringKind kind() const override { return SemiringKind::boolean; }
  std::string name() const override { return "bool"; }
  Value zero() const override { return Value(false); }
  Value one() const override { return Value(true); }
  Value add(const Value& a, const Value& b) const override {
    return Value(a.as_bool() || b.as_bool());
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(a.as_bool() && b.as_bool());
  }
  std::string to_string(const Value& v) const override { return v.as_bool() ? "1" : "0"; }
  Value from_string(const std::string& s) const override {
    if (s == "0") return Value(false);
    if (s == "1") return Value(true);
    throw parse_error("bool: bad literal '" + s + "'");
  }
};

struct MinPlusSemiring final : Semiring {
  SemiringKind kind() const override { return SemiringKind::minplus; }
  std::string name() const override { return "minplus"; }
  Value zero() const override { return Value(MinPlus::infinity()); }
  Value one() const override { return Value(MinPlus::of(0)); }
  Value add(const Value& a, const Value& b) const override {
    const MinPlus& x = a.as_minplus();
    const MinPlus& y = b.as_minplus();
    if (x.inf) return b;
    if (y.inf) return a;
    return Value(MinPlus::of(std::min(x.cost, y.cost)));
  }
  Value mul(const Value& a, const Value& b) const override {
    const MinPlus& x = a.as_minplus();
    const MinPlus& y = b.as_minplus();
    if (x.inf || y.inf) return Value(MinPlus::infinity());
    return Value(MinPlus::of(x.cost + y.cost));
  }
  std::string to_string(const Value& v) const override {
    const MinPlus& m = v.as_minplus();
    return m.inf ? "inf" : m.cost.str();
  }
  Value from_string(const std::string& s) const override {
    if (s == "inf") return Value(MinPlus::infinity());
    return Value(MinPlus::of(parse_unsigned(s, "minplus")));
  }
};

struct PolySemiring final : Semiring {
  SemiringPtr base_;
  int vars_;

  PolySemiring(SemiringPtr base, int vars) : base_(std::move(base)), vars_(vars) {
    if (!base_) throw domain_error("poly semiring needs a base semiring");
    if (vars_ < 0) throw domain_error("poly semiring needs a nonnegative variable count");
  }

  const Polynomial& element(const Value& v) const {
    const Polynomial& p = v.poly();
    if (p.vars() != vars_)
      throw domain_error("polynomial element has " + std::to_string(p.vars()) +
                         " variables, semiring " + name() + " expects " +
                         std::to_string(vars_));
    return p;
  }

  SemiringKind kind() const override { return SemiringKind::poly; }
  std::string name() const override {
    return "poly(" + base_->name() + "," + std::to_string(vars_) + ")";
  }
  Value zero() const override { return Value(Polynomial::zero(vars_)); }
  Value one() const override {
    return Value(Polynomial::constant(*base_, vars_, base_->one()));
  }
  Value add(const Value& a, const Value& b) const override {
    return Value(poly_add(*base_, element(a), element(b)));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(poly_mul(*base_, element(a), element(b)));
  }
  bool has_subtraction() const override { return base_->has_subtraction(); }
  Value neg(const Value& a) const override {
    Polynomial minus_one = Polynomial::constant(*base_, vars_, base_->neg(base_->one()));
    return Value(poly_mul(*base_, element(a), minus_one));
  }
  std::string to_string(const Value& v) const override {
    return poly_to_string(*base_, element(v));
  }
  Value from_string(const std::string& s) const override {
    return Value(poly_parse_expr(*base_, vars_, s));
  }
  SemiringPtr base() const override { return base_; }
  int poly_vars() const override { return vars_; }
};

}  // namespace

SemiringPtr nat_semiring() {
  static SemiringPtr s = std::make_shared<NatSemiring>();
  return s;
}
SemiringPtr rat_semiring() {
  static SemiringPtr s = std::make_shared<RatSemiring>();
  return s;
}
SemiringPtr bool_semiring() {
  static SemiringPtr s = std::make_shared<BoolSemiring>();
  return s;
}
SemiringPtr minplus_semiring() {
  static SemiringPtr s = std::make_shared<MinPlusSemiring>();
  return s;
}
SemiringPtr poly_semiring(SemiringPtr base, int vars) {
  if (!base) throw domain_error("polynomial semiring needs a base");
  if (vars < 1) throw domain_error("polynomial semiring needs at least one variable");
  return std::make_shared<PolySemiring>(std::move(base), vars);
}

SemiringPtr semiring_by_name(const std::string& name) {
  if (name == "nat") return nat_semiring();
  if (name == "rat") return rat_semiring();
  if (name == "bool") return bool_semiring();
  if (name == "minplus") return minplus_semiring();
  if (name.rfind("poly(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(5, name.size() - 6);
    int depth = 0;
    size_t comma = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ',' && depth == 0) comma = i;
    }
    if (comma == std::string::npos)
      throw parse_error("bad poly semiring name '" + name + "'");
    std::string count = inner.substr(comma + 1);
    if (count.empty() || count.size() > 9 || !all_digits(count) || std::stoi(count) < 1)
      throw parse_error("bad variable count in semiring name '" + name + "'");
    return poly_semiring(semiring_by_name(inner.substr(0, comma)), std::stoi(count));
  }
  throw parse_error("unknown semiring '" + name + "'");
}

AxiomReport check_axioms(const Semiring& s, const std::vector<Value>& samples) {
  AxiomReport report;
  auto fail = [&](const std::string& axiom, const std::string& witness) {
    report.ok = false;
    if (report.failures.size() < 32) report.failures.push_back(axiom + " at " + witness);
  };
  const Value zero = s.zero();
  const Value one = s.one();
  for (const Value& a : samples) {
    if (s.add(a, zero) != a) fail("additive identity", s.to_string(a));
    if (s.mul(a, one) != a) fail("multiplicative identity", s.to_string(a));
    if (s.mul(a, zero) != zero) fail("zero annihilates", s.to_string(a));
    if (s.has_subtraction() && s.add(a, s.neg(a)) != zero)
      fail("additive inverse", s.to_string(a));
    for (const Value& b : samples) {
      if (s.add(a, b) != s.add(b, a))
        fail("commutative addition", s.to_string(a) + ", " + s.to_string(b));
      if (s.mul(a, b) != s.mul(b, a))
        fail("commutative multiplication", s.to_string(a) + ", " + s.to_string(b));
      for (const Value& c : samples) {
        if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c)))
          fail("associative addition",
               s.to_string(a) + ", " + s.to_string(b) + ", " + s.to_string(c));
        if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)))
          fail("associative multiplication",
               s.to_string(a) + ", " + s.to_string(b) + ", " + s.to_string(c));
        if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)))
          fail("left distributivity",
               s.to_string(a) + ", " + s.to_string(b) + ", " + s.to_string(c));
        if (s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c)))
          fail("right distributivity",
               s.to_string(a) + ", " + s.to_string(b) + ", " + s.to_string(c));
      }
    }
  }
  return report;
}

}  // namespace alterweight
