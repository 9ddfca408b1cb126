#pragma once

// Shared exact-arithmetic primitives and the error taxonomy.
//
// Everything in this library is exact: vectors are integer tuples (inputs
// with rational coordinates are cleared to a primitive integer representative,
// which loses nothing because every operation downstream is scale-free), and
// the few places that need unbounded intermediates (determinant expansions,
// angle comparisons on user input) widen to cpp_int.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flatframe {

using Int = long long;
using I128 = __int128;
using Vec = std::vector<Int>;
using BigInt = boost::multiprecision::cpp_int;

enum class Errc {
  UnknownSpace,
  UnsupportedParams,
  InconsistentCatalog,
  OrbitBudgetExceeded,
  ZeroVector,
  NotRankTwo,
  NoAdmissibleRay,
  NotAFrame,
  BudgetExceeded,
  NotZExpressible,
  MalformedMatrix,
  UnsupportedProfile,
  DimensionMismatch,
  InputError,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw Error(c, msg);
}

// internal invariant check; these fire only on library bugs, never on input
inline void check(bool ok, const char* msg) {
  if (!ok) throw Error(Errc::Internal, msg);
}

Int checked_narrow(I128 x);

Int vec_gcd(const Vec& v);  // gcd of |coords|, 0 for the zero vector
bool is_zero(const Vec& v);
I128 dot128(const Vec& a, const Vec& b);
Int dot(const Vec& a, const Vec& b);  // overflow-checked narrow of dot128

// Normal form for scale-free vectors: gcd of coordinates 1, first nonzero
// coordinate positive. Zero vector is left alone.
void make_primitive(Vec& v);
Vec primitive(Vec v);
// Same gcd reduction but keeping the given orientation.
void reduce_keep_sign(Vec& v);

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, Int k);

std::string vec_str(const Vec& v);  // "(1,0,-1)"

// Exact rational vector: numerators over one positive denominator,
// normalized. Cold paths only (Weyl orbits of arbitrary vectors).
struct RatVec {
  std::vector<BigInt> num;
  BigInt den{1};

  void normalize();
  bool operator==(const RatVec& o) const { return num == o.num && den == o.den; }
  bool operator<(const RatVec& o) const;
  std::string str() const;
};

RatVec ratvec_of(const Vec& v);

// Fraction-free (Bareiss) rank and determinant over exact integers.
// Entries are expected small (root/ray coordinates); intermediates use
// cpp_int so there is no overflow cliff for user-supplied frames either.
int exact_rank(const std::vector<Vec>& rows);
BigInt exact_det(const std::vector<Vec>& rows);  // square input

}  // namespace flatframe
