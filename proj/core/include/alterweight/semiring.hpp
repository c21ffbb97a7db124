#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alterweight/errors.hpp"

namespace alterweight {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Polynomial;
using PolyPtr = std::shared_ptr<const Polynomial>;

// Element of the tropical carrier N ∪ {inf}.
struct MinPlus {
  bool inf = true;
  Int cost{};

  static MinPlus infinity() { return MinPlus{}; }
  static MinPlus of(Int c) { return MinPlus{false, std::move(c)}; }

  friend bool operator==(const MinPlus& a, const MinPlus& b) {
    return a.inf == b.inf && (a.inf || a.cost == b.cost);
  }
};

// One semiring element. Values carry no pointer to their semiring; which
// alternative is live is decided by the descriptor the value travels with,
// and every operation takes that descriptor explicitly.
class Value {
 public:
  using Storage = std::variant<bool, Int, Rat, MinPlus, PolyPtr>;

  Value() : v_(Int(0)) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(Int n) : v_(std::move(n)) {}
  explicit Value(long n) : v_(Int(n)) {}
  explicit Value(Rat q) : v_(std::move(q)) {}
  explicit Value(MinPlus m) : v_(std::move(m)) {}
  explicit Value(PolyPtr p);
  explicit Value(Polynomial p);

  const Storage& raw() const { return v_; }

  bool is_poly() const { return std::holds_alternative<PolyPtr>(v_); }
  const Polynomial& poly() const;
  bool as_bool() const;
  const Int& as_int() const;
  const Rat& as_rat() const;
  const MinPlus& as_minplus() const;

  // Structural equality on canonical forms; polynomial values compare deep.
  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  Storage v_;
};

enum class SemiringKind { nat, rat, boolean, minplus, poly };

class Semiring;
using SemiringPtr = std::shared_ptr<const Semiring>;

class Semiring {
 public:
  virtual ~Semiring() = default;

  virtual SemiringKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual Value zero() const = 0;
  virtual Value one() const = 0;
  virtual Value add(const Value&, const Value&) const = 0;
  virtual Value mul(const Value&, const Value&) const = 0;

  virtual bool has_subtraction() const { return false; }
  virtual Value neg(const Value&) const;

  virtual std::string to_string(const Value&) const = 0;
  virtual Value from_string(const std::string&) const = 0;

  bool is_zero(const Value& v) const { return v == zero(); }
  bool is_one(const Value& v) const { return v == one(); }

  // Only meaningful when kind() == poly.
  virtual SemiringPtr base() const;
  virtual int poly_vars() const;
};

SemiringPtr nat_semiring();
SemiringPtr rat_semiring();
SemiringPtr bool_semiring();
SemiringPtr minplus_semiring();
SemiringPtr poly_semiring(SemiringPtr base, int vars);

// Accepts "nat", "rat", "bool", "minplus", "poly(<base>,<k>)" (nested ok).
SemiringPtr semiring_by_name(const std::string& name);

inline Value lift_bool(const Semiring& s, bool b) { return b ? s.one() : s.zero(); }

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Checks the commutative semiring axioms (and additive inverses when the
// descriptor claims subtraction) on every combination drawn from samples.
AxiomReport check_axioms(const Semiring&, const std::vector<Value>& samples);

}  // namespace alterweight
