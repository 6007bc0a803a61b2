// Reduced fractions of MultiPoly: gcd(num, den) is a unit and the
// denominator has positive leading coefficient.
#pragma once

#include "conicmin/multipoly.hpp"

#include <map>

namespace conicmin {

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);  // reduces; throws on den = 0

  static RationalFunction constant(const VarList& vars, const Rat& q);
  static RationalFunction one(const VarList& vars);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_unit(); }
  MultiPoly as_polynomial() const;  // throws unless is_polynomial()

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string str() const;  // "num" or "(num)/(den)"

 private:
  void reduce();
  MultiPoly num_, den_;
};

// Exact substitution var -> value; variables absent from the map stay
// fixed (they must exist in the target ring).  All values share one
// target variable list.  Throws if the denominator vanishes.
RationalFunction substitute(const MultiPoly& f,
                            const std::map<std::string, RationalFunction>& assignment);

// Pad every term of f to total degree d with powers of a fresh variable.
MultiPoly homogenize(const MultiPoly& f, int d, const std::string& fresh_var);
// Set `var` to 1 and drop it from the ring.
MultiPoly dehomogenize(const MultiPoly& f, const std::string& var);

}  // namespace conicmin
