#include "flatframe/common.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flatframe {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownSpace: return "UnknownSpace";
    case Errc::UnsupportedParams: return "UnsupportedParams";
    case Errc::InconsistentCatalog: return "InconsistentCatalog";
    case Errc::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotRankTwo: return "NotRankTwo";
    case Errc::NoAdmissibleRay: return "NoAdmissibleRay";
    case Errc::NotAFrame: return "NotAFrame";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotZExpressible: return "NotZExpressible";
    case Errc::MalformedMatrix: return "MalformedMatrix";
    case Errc::UnsupportedProfile: return "UnsupportedProfile";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InputError: return "InputError";
    case Errc::Internal: return "Internal";
  }
  return "Internal";
}

Int checked_narrow(I128 x) {
  check(x <= I128(INT64_MAX) && x >= I128(INT64_MIN), "integer overflow in narrow");
  return static_cast<Int>(x);
}

Int vec_gcd(const Vec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

bool is_zero(const Vec& v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

I128 dot128(const Vec& a, const Vec& b) {
  check(a.size() == b.size(), "dot: dimension mismatch");
  I128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += I128(a[i]) * I128(b[i]);
  return s;
}

Int dot(const Vec& a, const Vec& b) { return checked_narrow(dot128(a, b)); }

void reduce_keep_sign(Vec& v) {
  Int g = vec_gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
}

void make_primitive(Vec& v) {
  reduce_keep_sign(v);
  for (Int x : v) {
    if (x > 0) return;
    if (x < 0) {
      for (Int& y : v) y = -y;
      return;
    }
  }
}

Vec primitive(Vec v) {
  make_primitive(v);
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  check(a.size() == b.size(), "add: dimension mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  check(a.size() == b.size(), "sub: dimension mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(const Vec& a, Int k) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

void RatVec::normalize() {
  check(den != 0, "RatVec: zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& x : num) x = -x;
  }
  BigInt g = den;
  for (const auto& x : num) g = boost::multiprecision::gcd(g, x < 0 ? BigInt(-x) : x);
  if (g > 1) {
    den /= g;
    for (auto& x : num) x /= g;
  }
}

bool RatVec::operator<(const RatVec& o) const {
  if (den != o.den) return den < o.den;
  return num < o.num;
}

std::string RatVec::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < num.size(); ++i) {
    if (i) os << ',';
    os << num[i];
    if (den != 1) os << '/' << den;
  }
  os << ')';
  return os.str();
}

RatVec ratvec_of(const Vec& v) {
  RatVec r;
  r.num.reserve(v.size());
  for (Int x : v) r.num.emplace_back(x);
  r.den = 1;
  r.normalize();
  return r;
}

namespace {

// One Bareiss elimination pass; returns (rank, last pivot value, swaps parity).
struct EchelonOut {
  int rank = 0;
  BigInt last_pivot = 1;
  int sign = 1;
};

EchelonOut bareiss(std::vector<std::vector<BigInt>>& m) {
  EchelonOut out;
  if (m.empty()) return out;
  const size_t rows = m.size(), cols = m[0].size();
  BigInt prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      out.sign = -out.sign;
    }
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    out.last_pivot = prev;
    ++r;
  }
  out.rank = static_cast<int>(r);
  return out;
}

std::vector<std::vector<BigInt>> widen(const std::vector<Vec>& rows) {
  std::vector<std::vector<BigInt>> m;
  m.reserve(rows.size());
  for (const Vec& v : rows) {
    std::vector<BigInt> r;
    r.reserve(v.size());
    for (Int x : v) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

int exact_rank(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  auto m = widen(rows);
  return bareiss(m).rank;
}

BigInt exact_det(const std::vector<Vec>& rows) {
  if (rows.empty()) return BigInt(1);
  check(rows.size() == rows[0].size(), "det: matrix not square");
  auto m = widen(rows);
  EchelonOut e = bareiss(m);
  if (e.rank < static_cast<int>(rows.size())) return BigInt(0);
  // Bareiss leaves det (up to swap sign) as the last pivot.
  return e.sign > 0 ? e.last_pivot : -e.last_pivot;
}

}  // namespace flatframe
